#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "cicc/prob.hpp"
#include "cicc/region.hpp"

namespace cicc {

/// Parsed problem description: the two channels, and optionally an explicit
/// input design plus default experiment parameters. See the README for the
/// file format.
struct ProblemSpec {
  int x1_size = 0, x2_size = 0, y_size = 0, z_size = 0;
  Channel py;  // (X1, X2) -> Y, rows in lexicographic (x1, x2) order
  Channel pz;  // (X1, X2) -> Z
  std::optional<InputDesign> design;
  std::optional<RateQuadruple> rates;
  std::optional<double> delta;
  std::optional<int> n;
  std::optional<std::uint64_t> seed;
};

/// Parses and validates a spec file. Probability rows whose sums deviate
/// from one by more than 1e-9 are rejected (StochasticityError naming the
/// row); rows inside the tolerance are scaled exactly to sum one.
ProblemSpec parse_spec(const std::filesystem::path& path);

/// Same, from in-memory text; `origin` labels error messages.
ProblemSpec parse_spec_text(std::string_view text, const std::string& origin);

}  // namespace cicc
