#pragma once

#include "stochdil/coarse_grain.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace stochdil::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerification = 2;

struct RunReport {
  std::string command;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<Check> checks;
  nlohmann::json result = nlohmann::json::object();

  bool passed() const;
  std::optional<std::string> first_failure() const;
  nlohmann::json to_json() const;
};

/// Printed reference quantities for the Maxwell's-demon walk-through. The
/// defaults are the published values; tests perturb them as negative controls.
struct MaxwellReference {
  std::array<std::string, 4> one_step_image{"3/8", "1/8", "1/8", "3/8"};
  std::array<std::string, 4> limit{"1/2", "0", "0", "1/2"};
  // 16 x 16 dilation in units of 1/24.
  std::array<std::array<int, 16>, 16> dilation_24ths = {{
      {24, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2},
      {0, 0, 0, 0, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2},
      {0, 0, 0, 0, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2},
      {0, 0, 0, 0, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2},
      {0, 12, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1},
      {0, 0, 0, 0, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2},
      {0, 12, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1},
      {0, 0, 12, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1},
      {0, 0, 0, 0, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2},
      {0, 0, 12, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1},
      {0, 0, 0, 0, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2},
      {0, 0, 0, 0, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2},
      {0, 0, 0, 0, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2},
      {0, 0, 0, 0, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2},
      {0, 0, 0, 24, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
  }};
  double h_uniform = 1.38629;
  double h_one_step = 1.25548;
  double h_limit = 0.693147;
  double h_evolved = 1.73287;
  double h_marginal_total = 2.64178;
  double entropy_tolerance = 1e-4;
};

Matrix maxwell_dilation_reference(const MaxwellReference& ref = {});

/// Recomputes the Maxwell's-demon example end to end and compares each
/// quantity against `ref` (entropies within ref.entropy_tolerance, matrices
/// and distributions exactly).
RunReport demo_maxwell(const MaxwellReference& ref = {});

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Returns 0 on success, 1 on usage or I/O errors, 2 when a
/// validation or verification step fails.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stochdil::cli
