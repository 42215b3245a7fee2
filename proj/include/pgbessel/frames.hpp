#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pgbessel/config.hpp"
#include "pgbessel/operators.hpp"

namespace pgb {

// Classification of an operator sequence as pg-Bessel / pg-frame / qg-Riesz
// basis, with the bounds behind each decision.
struct FrameReport {
  bool is_bessel = true;
  bool is_frame = false;
  bool is_riesz = false;
  bool g_complete = false;

  // Optimal upper bound B and lower bound A in
  //   A ||x|| <= (sum ||Lambda_i x||^p)^(1/p) <= B ||x||.
  NormBounds bessel_bound;
  NormBounds lower_bound;
  // Extremal constants of ||T g|| / ||g||_q on stacked dual coordinates.
  NormBounds riesz_lower;
  NormBounds riesz_upper;

  // Values the decisions were taken on, and their provenance.
  double bessel_used = 0.0;
  double lower_used = 0.0;
  double riesz_lower_used = 0.0;
  std::string lower_policy;

  std::size_t rank_stacked = 0;    // SVD of the stacked analysis matrix
  std::size_t rank_synthesis = 0;  // full-pivot LU of the synthesis matrix
  bool frame_by_inequality = false;
  bool frame_by_surjectivity = false;
  bool routes_agree = false;
  bool square = false;

  std::vector<std::size_t> zero_members;
  std::optional<std::string> diagnosis;
};

// Requires a frame exponent in (1, inf).
FrameReport classify(const OperatorSequence& seq, const Config& cfg);

// The three equivalent conditions for a pg-frame to be a qg-Riesz basis,
// evaluated independently: (i) g-complete with positive Riesz constants,
// (ii) the synthesis operator has trivial kernel, (iii) the analysis
// operator is onto the product space.
struct RieszEquivalences {
  bool frame_hypothesis = false;
  bool riesz_inequalities = false;
  bool synthesis_injective = false;
  bool analysis_onto = false;

  bool agree() const {
    return riesz_inequalities == synthesis_injective && synthesis_injective == analysis_onto;
  }
};

RieszEquivalences riesz_equivalences_check(const OperatorSequence& seq, const Config& cfg);
RieszEquivalences riesz_equivalences_check(const OperatorSequence& seq, const FrameReport& report,
                                           const Config& cfg);

// Dual Riesz basis: Lambda~_i : X^* -> Y_i^* is block row i of T_Lambda^{-1}.
// The dual acts on X^* with codomains Y_i^* and frame exponent q.
struct DualSequence {
  OperatorSequence sequence;
  OperatorSequence source;
};

// Throws not_riesz when the synthesis matrix is non-square or singular.
DualSequence dual_riesz_basis(const OperatorSequence& seq, const Config& cfg);

// max_{k,i} ||Lambda~_k Lambda_i^T - delta_{ki} I||_max.
double biorthogonality_residual(const DualSequence& dual);
// ||sum_i Lambda_i^T Lambda~_i x - x||_2 / ||x||_2.
double reconstruction_residual(const DualSequence& dual, const Eigen::VectorXd& x);

std::size_t numerical_rank_svd(const Eigen::MatrixXd& a, double threshold);

}  // namespace pgb
