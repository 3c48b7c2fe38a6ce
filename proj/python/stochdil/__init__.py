"""Stochastic dilations of Markov matrices.

Matrices are nested row lists with T[m][n] the probability of n -> m.
Entries given as ``str``, ``int`` or ``fractions.Fraction`` are computed
exactly and returned as ``Fraction``; floats select floating-point mode.
"""

from ._core import (
    StochdilError,
    apply,
    birkhoff,
    coarse_grain,
    demo,
    entropy,
    extract,
    fixed_point,
    in_decreasing_region,
    iterate,
    ledger,
    noisy_dilation,
    run_cli,
    sinkhorn,
    sinkhorn_2x2,
    unistochastic,
    uniform_dilation,
    validate,
)

__all__ = [
    "StochdilError",
    "apply",
    "birkhoff",
    "coarse_grain",
    "demo",
    "entropy",
    "extract",
    "fixed_point",
    "in_decreasing_region",
    "iterate",
    "ledger",
    "noisy_dilation",
    "run_cli",
    "sinkhorn",
    "sinkhorn_2x2",
    "unistochastic",
    "uniform_dilation",
    "validate",
]
