#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pgbessel/config.hpp"

namespace pgb {

// Extended real exponent in [1, inf].
class Exponent {
 public:
  Exponent(double value);  // NOLINT: implicit from literals is intended

  static Exponent infinity();

  bool is_infinite() const { return infinite_; }
  // Only meaningful when finite.
  double value() const { return value_; }
  Exponent conjugate() const;

  std::string to_string() const;

  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

 private:
  Exponent() = default;
  double value_ = 1.0;
  bool infinite_ = false;
};

// q with 1/p + 1/q = 1; conj(1) = inf, conj(inf) = 1.
Exponent conjugate_exponent(Exponent p);

// (R^dim, l^exponent). The dual is represented concretely as (R^dim, l^q)
// under the coordinate pairing.
struct SpaceSpec {
  std::size_t dim = 1;
  Exponent exponent = 2.0;

  SpaceSpec(std::size_t d, Exponent e);
  SpaceSpec dual() const { return SpaceSpec(dim, exponent.conjugate()); }

  friend bool operator==(const SpaceSpec& a, const SpaceSpec& b) {
    return a.dim == b.dim && a.exponent == b.exponent;
  }
};

class Vector {
 public:
  Vector(Eigen::VectorXd entries, SpaceSpec space);

  const Eigen::VectorXd& entries() const { return entries_; }
  const SpaceSpec& space() const { return space_; }
  std::size_t dim() const { return space_.dim; }
  double operator[](std::size_t i) const { return entries_[static_cast<Eigen::Index>(i)]; }

 private:
  Eigen::VectorXd entries_;
  SpaceSpec space_;
};

// Element of the mixed-norm product space (sum Y_i)_{l_outer}.
class ProductVector {
 public:
  ProductVector(std::vector<Vector> blocks, Exponent outer);

  const std::vector<Vector>& blocks() const { return blocks_; }
  Exponent outer() const { return outer_; }
  std::size_t total_dim() const;
  // Blocks concatenated in order.
  Eigen::VectorXd stacked() const;

 private:
  std::vector<Vector> blocks_;
  Exponent outer_;
};

double p_norm(const Eigen::Ref<const Eigen::VectorXd>& v, Exponent p);
double p_norm(const Vector& v);

double dual_pairing(const Vector& x, const Vector& g);

double mixed_norm(const ProductVector& pv);

// Norm geometry of a product space (sum Y_i)_{l_outer} on stacked
// coordinates. A plain l^p space is the single-block case.
class MixedNormSpace {
 public:
  MixedNormSpace(std::vector<SpaceSpec> blocks, Exponent outer);
  static MixedNormSpace plain(const SpaceSpec& space);

  const std::vector<SpaceSpec>& blocks() const { return blocks_; }
  Exponent outer() const { return outer_; }
  std::size_t total_dim() const { return total_dim_; }
  std::size_t block_offset(std::size_t i) const { return offsets_[i]; }

  double norm(const Eigen::Ref<const Eigen::VectorXd>& v) const;
  MixedNormSpace dual() const;

  // When the mixed norm coincides with a plain l^s norm on the stacked
  // coordinates, returns s.
  std::optional<Exponent> effective_exponent() const;
  bool is_euclidean() const;

  // Hoelder extremal witness: w in the dual space with <v, w> = norm(v) and
  // dual norm(w) = 1 (w = 0 when v = 0). For smooth norms this is also the
  // gradient of the norm at v.
  Eigen::VectorXd witness(const Eigen::Ref<const Eigen::VectorXd>& v) const;

  // max of norm(x) over ||x||_inf <= 1, i.e. the norm of the all-ones vector.
  double linf_embedding_constant() const;
  // Upper bounds for the norms of the identity l^2 -> this and this -> l^2.
  double from_euclidean_constant() const;
  double to_euclidean_constant() const;

 private:
  std::vector<SpaceSpec> blocks_;
  Exponent outer_;
  std::vector<std::size_t> offsets_;
  std::size_t total_dim_ = 0;
};

// Witness for a single l^p vector; see MixedNormSpace::witness.
Eigen::VectorXd holder_witness(const Eigen::Ref<const Eigen::VectorXd>& v, Exponent p);

struct DualityGapOptions {
  bool run_grid = true;
  std::size_t angle_points = 20000;
  std::size_t max_grid_points = 4000000;
};

struct DualityGap {
  // sup over the unit ball of the l_p product, attained by the witness.
  double witness_sup = 0.0;
  double dual_norm = 0.0;
  double witness_gap = 0.0;
  // Brute-force grid value, when the grid ran.
  std::optional<double> grid_sup;
  std::optional<double> grid_gap;
  Eigen::VectorXd witness;
};

// g lies in (sum Y_i^*)_{l_q}; the supremum is taken over the unit ball of
// (sum Y_i)_{l_p} with p = conj(q). Throws oracle_budget_exceeded when the
// grid was requested but a block exceeds dimension 2 or the grid is too big.
DualityGap product_duality_gap(const ProductVector& g, const DualityGapOptions& opts = {});

}  // namespace pgb
