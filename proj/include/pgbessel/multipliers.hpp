#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pgbessel/config.hpp"
#include "pgbessel/frames.hpp"
#include "pgbessel/operators.hpp"

namespace pgb {

// Finite symbol m = (m_i).
class Symbol {
 public:
  explicit Symbol(Eigen::VectorXd entries);
  Symbol(std::initializer_list<double> entries);

  const Eigen::VectorXd& entries() const { return entries_; }
  std::size_t size() const { return static_cast<std::size_t>(entries_.size()); }
  double operator[](std::size_t i) const { return entries_[static_cast<Eigen::Index>(i)]; }

  double sup_norm() const;
  double inf_abs() const;
  double norm(Exponent p) const;
  bool is_zero() const { return entries_.isZero(0.0); }

  // 1/m entrywise; throws symbol_too_small if inf |m_i| <= min_abs.
  Symbol reciprocal(double min_abs = 0.0) const;
  Symbol operator-(const Symbol& other) const;
  Symbol operator+(const Symbol& other) const;
  Symbol scaled(double c) const;

 private:
  Eigen::VectorXd entries_;
};

// M_{m, Lambda, Theta} g = sum_i m_i Lambda_i^T Theta_i g, acting X_1^* -> X_2^*
// where Lambda acts on X_2 and Theta on X_1^*.
struct MultiplierOperator {
  Eigen::MatrixXd matrix;
  Symbol symbol;
  OperatorSequence left;   // Lambda role: contributes adjoints
  OperatorSequence right;  // Theta role
  SpaceSpec domain;        // X_1^*
  SpaceSpec codomain;      // X_2^*
  std::vector<std::string> advisories;
};

// Each entry is summed in a canonical order, so the result does not depend on
// the order of the index set.
MultiplierOperator assemble(const Symbol& m, const OperatorSequence& left, const OperatorSequence& right);

struct MultiplierBounds {
  BoundCertificate upper;                // B_Lambda B_Theta ||m||_inf
  std::optional<BoundCertificate> lower; // A_Lambda A_Theta ||m||_inf, Riesz pairs only
  NormBounds estimate;                   // ||M|| : X_1^* -> X_2^*
  FrameReport left_report;
  FrameReport right_report;
  std::optional<std::string> lower_skipped;
};

MultiplierBounds norm_bounds(const MultiplierOperator& mult, const Config& cfg);

// Inverse of M_{m,Lambda,Theta} as the multiplier M_{1/m, Theta~, Lambda~}.
// Requires Lambda to be a Riesz basis for X_2^*, Theta for X_1, and
// inf |m_i| > cfg.min_symbol.
MultiplierOperator invert(const Symbol& m, const OperatorSequence& left, const OperatorSequence& right,
                          const Config& cfg);

struct InjectivityWitness {
  Vector g;
  double image_norm = 0.0;
  std::size_t index = 0;  // the k with m_k != 0 used to build g
};

// g with M_{m,Lambda,Theta} g != 0, certifying M != 0 for m != 0. Throws
// hypothesis_violated unless Lambda is a Riesz basis, every Theta_i is
// nonzero and m has a nonzero entry.
InjectivityWitness injectivity_witness(const OperatorSequence& left, const OperatorSequence& right,
                                       const Symbol& m, const Config& cfg);

}  // namespace pgb
