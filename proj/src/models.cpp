#include "stochdil/models.hpp"

namespace stochdil::models {

Matrix two_state(const Scalar& a, const Scalar& b) {
  const Scalar one = Scalar::one(a.mode());
  return Matrix::from_rows({{one - b, a}, {b, one - a}});
}

Matrix maxwell_demon(Mode mode) {
  return Matrix::exact({
                           {"1", "0", "1/2", "0"},
                           {"0", "1/2", "0", "0"},
                           {"0", "0", "1/2", "0"},
                           {"0", "1/2", "0", "1"},
                       })
      .to_mode(mode);
}

}  // namespace stochdil::models
