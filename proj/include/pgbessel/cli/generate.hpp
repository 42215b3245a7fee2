#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "pgbessel/cli/instance.hpp"
#include "pgbessel/config.hpp"

namespace pgb::cli {

// bessel:     Lambda and Theta pg-/qg-Bessel.
// frame:      Lambda a pg-frame for X_2, Theta Bessel.
// riesz:      Lambda a Riesz basis (sum dim Y_i = dim X_2), Theta Bessel.
// riesz-pair: both Riesz (sum dim Y_i = dim X_1 = dim X_2).
enum class GenKind { bessel, frame, riesz, riesz_pair };

std::string_view to_string(GenKind kind);
std::optional<GenKind> parse_gen_kind(std::string_view s);

struct GenRequest {
  GenKind kind = GenKind::bessel;
  std::size_t x1_dim = 2;
  std::size_t x2_dim = 2;
  std::vector<std::size_t> y_dims{1, 1};
  Exponent x1_exponent = 2.0;
  Exponent x2_exponent = 2.0;
  // One per Y_i; empty means all 2.
  std::vector<Exponent> y_exponents;
  Exponent frame_exponent = 2.0;
  std::uint64_t seed = 0;
  int max_attempts = 100;
  // Rejects draws whose stacked matrix has 2-norm condition number above
  // this, keeping inverses well inside the residual tolerances.
  double max_condition = 1e4;
  // |m_i| is drawn uniformly from [symbol_min, symbol_max] with a random sign.
  double symbol_min = 0.5;
  double symbol_max = 2.0;
};

// Entries are i.i.d. N(0,1); draws are rejected until classify confirms the
// requested kind. Throws retry_cap_exceeded (message includes the seed) when
// max_attempts draws all fail, invalid_argument for infeasible dimensions.
Instance gen(const GenRequest& req, const Config& cfg);

}  // namespace pgb::cli
