#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pgbessel/multipliers.hpp"
#include "pgbessel/operators.hpp"
#include "pgbessel/spaces.hpp"

namespace pgb::cli {

inline constexpr int kInstanceVersion = 1;

// A multiplier problem on disk. Lambda_i : X_2 -> Y_i with frame exponent p,
// Theta_i : X_1^* -> Y_i^* with frame exponent q = conj(p), symbol m.
// lambda[i] is Y_i.dim x X_2.dim, theta[i] is Y_i.dim x X_1.dim.
struct Instance {
  int version = kInstanceVersion;
  SpaceSpec x1{1, 2.0};
  SpaceSpec x2{1, 2.0};
  Exponent frame_exponent = 2.0;
  std::vector<SpaceSpec> y;
  std::vector<Eigen::MatrixXd> lambda;
  std::vector<Eigen::MatrixXd> theta;
  Eigen::VectorXd symbol;
  std::optional<Exponent> p1;
  std::optional<std::uint64_t> seed;

  OperatorSequence lambda_sequence() const;
  OperatorSequence theta_sequence() const;
  Symbol m() const { return Symbol(symbol); }

  // Throws shape_mismatch / invalid_argument naming the offending field.
  void validate() const;
};

// JSON document; doubles are written in shortest round-trip form so that
// parse(serialize(x)) reproduces every matrix entry bitwise.
std::string serialize(const Instance& inst);

// Throws Error(parse_error) with "line L, column C" for syntax errors and the
// JSON pointer of the field for schema errors.
Instance parse_instance(std::string_view text);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& inst, const std::filesystem::path& path);

}  // namespace pgb::cli
