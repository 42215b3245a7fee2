#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pgbessel/config.hpp"
#include "pgbessel/spaces.hpp"

namespace pgb {

// A finite family {Lambda_i : X -> Y_i}. mats[i] has shape Y_i.dim x X.dim.
class OperatorSequence {
 public:
  OperatorSequence(SpaceSpec domain, std::vector<SpaceSpec> codomains,
                   std::vector<Eigen::MatrixXd> mats, Exponent frame_exponent);

  const SpaceSpec& domain() const { return domain_; }
  const std::vector<SpaceSpec>& codomains() const { return codomains_; }
  const std::vector<Eigen::MatrixXd>& mats() const { return mats_; }
  const Eigen::MatrixXd& mat(std::size_t i) const { return mats_[i]; }
  Exponent frame_exponent() const { return frame_exponent_; }
  std::size_t size() const { return mats_.size(); }
  std::size_t stacked_rows() const;

  // (sum Y_i)_{l_p}, the range space of the analysis operator.
  MixedNormSpace analysis_space() const;
  // (sum Y_i^*)_{l_q}, the domain of the synthesis operator.
  MixedNormSpace synthesis_space() const { return analysis_space().dual(); }

  // Same spaces, different matrices.
  OperatorSequence with_mats(std::vector<Eigen::MatrixXd> mats) const;
  // Entrywise difference of two compatible sequences.
  OperatorSequence minus(const OperatorSequence& other) const;
  OperatorSequence scaled(double c) const;
  // Reindexed sequence: result[i] = this[order[i]].
  OperatorSequence permuted(const std::vector<std::size_t>& order) const;

 private:
  SpaceSpec domain_;
  std::vector<SpaceSpec> codomains_;
  std::vector<Eigen::MatrixXd> mats_;
  Exponent frame_exponent_;
};

enum class CertificateKind {
  exact,
  upper_certificate,   // rigorous upper bound
  lower_certificate,   // rigorous lower bound
  lower_estimate,      // attained at a witness, so a valid lower bound for a sup
  upper_estimate,      // attained at a witness, so a valid upper bound for an inf
};

std::string_view to_string(CertificateKind kind);

struct BoundCertificate {
  double value = 0.0;
  CertificateKind kind = CertificateKind::exact;
  std::optional<Eigen::VectorXd> witness;
  std::string method;
};

// Two-sided enclosure of an extremal quantity. For exact results both sides
// carry kind == exact and the same value.
struct NormBounds {
  BoundCertificate lower;
  BoundCertificate upper;

  bool exact() const { return lower.kind == CertificateKind::exact; }
  double gap() const { return upper.value - lower.value; }
};

// Stacked matrix [Lambda_1; ...; Lambda_k] of the analysis operator.
Eigen::MatrixXd stacked_matrix(const OperatorSequence& seq);
// Matrix of T: stacked dual coordinates -> X^*, i.e. [Lambda_1^T ... Lambda_k^T].
Eigen::MatrixXd synthesis_matrix(const OperatorSequence& seq);

ProductVector analysis_apply(const OperatorSequence& seq, const Vector& x);
Vector synthesis_apply(const OperatorSequence& seq, const ProductVector& g);

enum class Exactness { best_effort, require_exact };

// ||A||_{from -> to} for plain l^p spaces.
NormBounds matrix_opnorm(const Eigen::MatrixXd& a, Exponent from, Exponent to, const Config& cfg,
                         Exactness exactness = Exactness::best_effort);

// ||A||_{from -> to} between mixed-norm spaces on stacked coordinates.
NormBounds mixed_opnorm(const Eigen::MatrixXd& a, const MixedNormSpace& from,
                        const MixedNormSpace& to, const Config& cfg);

// inf_x ||A x||_to / ||x||_from. lower is a certificate (exact, branch-and-bound
// grid certificate, or left-inverse certificate); upper is the best ratio
// found, with its witness.
NormBounds lower_constant(const Eigen::MatrixXd& a, const MixedNormSpace& from,
                          const MixedNormSpace& to, const Config& cfg);

// ||U_Lambda|| : (X, l^p_X) -> (sum Y_i)_{l_p}, i.e. the optimal Bessel bound.
NormBounds analysis_opnorm(const OperatorSequence& seq, const Config& cfg);
// ||T_Lambda|| : (sum Y_i^*)_{l_q} -> X^*.
NormBounds synthesis_opnorm(const OperatorSequence& seq, const Config& cfg);

// Evaluates ||A x||_to / ||x||_from.
double norm_ratio(const Eigen::MatrixXd& a, const Eigen::VectorXd& x, const MixedNormSpace& from,
                  const MixedNormSpace& to);

}  // namespace pgb
