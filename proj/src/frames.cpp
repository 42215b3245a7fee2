#include "pgbessel/frames.hpp"

#include <cmath>
#include <sstream>

#include "pgbessel/error.hpp"

namespace pgb {

namespace {

void require_frame_exponent(const OperatorSequence& seq) {
  const Exponent p = seq.frame_exponent();
  if (p.is_infinite() || p.value() <= 1.0) {
    throw Error(ErrorCode::invalid_exponent,
                "frame exponent must lie in (1, inf), got " + p.to_string());
  }
}

std::size_t lu_rank(const Eigen::MatrixXd& a, double threshold) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  lu.setThreshold(threshold);
  return static_cast<std::size_t>(lu.rank());
}

std::size_t qr_rank(const Eigen::MatrixXd& a, double threshold) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(threshold);
  return static_cast<std::size_t>(qr.rank());
}

// Decision value for an infimum: certified when a certificate is available at
// this dimension, otherwise the estimate less the estimate tolerance.
double decision_value(const NormBounds& b, std::size_t dim, const Config& cfg, std::string* policy) {
  if (b.exact()) {
    if (policy) *policy = "exact";
    return b.lower.value;
  }
  if (dim <= cfg.grid_dim_limit) {
    if (policy) *policy = "grid-certified";
    return b.lower.value;
  }
  if (policy) *policy = "estimate-minus-slack";
  return b.upper.value * (1.0 - cfg.tol_estimate);
}

}  // namespace

std::size_t numerical_rank_svd(const Eigen::MatrixXd& a, double threshold) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > threshold * sv(0)) ++r;
  }
  return r;
}

FrameReport classify(const OperatorSequence& seq, const Config& cfg) {
  require_frame_exponent(seq);
  FrameReport r;
  const Eigen::MatrixXd stacked = stacked_matrix(seq);
  const Eigen::MatrixXd synth = stacked.transpose();
  const std::size_t n = seq.domain().dim;
  const std::size_t d = seq.stacked_rows();

  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq.mat(i).isZero(0.0)) r.zero_members.push_back(i);
  }

  const auto domain = MixedNormSpace::plain(seq.domain());
  const auto analysis = seq.analysis_space();
  r.bessel_bound = mixed_opnorm(stacked, domain, analysis, cfg);
  r.lower_bound = lower_constant(stacked, domain, analysis, cfg);
  r.bessel_used = r.bessel_bound.lower.value;
  r.lower_used = decision_value(r.lower_bound, n, cfg, &r.lower_policy);

  r.is_bessel = std::isfinite(r.bessel_bound.upper.value);
  r.frame_by_inequality = r.lower_used > cfg.frame_threshold * r.bessel_used;

  r.rank_stacked = numerical_rank_svd(stacked, cfg.rank_threshold);
  r.g_complete = r.rank_stacked == n;
  r.rank_synthesis = lu_rank(synth, cfg.rank_threshold);
  r.frame_by_surjectivity = r.rank_synthesis == n;
  r.routes_agree = r.frame_by_inequality == r.frame_by_surjectivity &&
                   r.frame_by_surjectivity == r.g_complete;
  r.is_frame = r.frame_by_inequality;

  const auto synth_domain = seq.synthesis_space();
  const auto dual_x = MixedNormSpace::plain(seq.domain().dual());
  r.riesz_upper = mixed_opnorm(synth, synth_domain, dual_x, cfg);
  r.riesz_lower = lower_constant(synth, synth_domain, dual_x, cfg);
  r.riesz_lower_used = decision_value(r.riesz_lower, d, cfg, nullptr);

  r.square = d == n;
  const bool riesz_constants = r.riesz_lower_used > cfg.frame_threshold * r.riesz_upper.lower.value;
  r.is_riesz = r.square && r.rank_synthesis == n && r.g_complete && riesz_constants;
  // In finite dimensions a Riesz basis is in particular a frame.
  r.is_riesz = r.is_riesz && r.is_frame;

  if (!r.square) {
    std::ostringstream os;
    os << "dimension-mismatch: sum of dim Y_i = " << d << " but dim X = " << n
       << "; a Riesz basis needs a bijective synthesis map";
    r.diagnosis = os.str();
  } else if (!r.zero_members.empty()) {
    r.diagnosis = "sequence has zero members";
  }
  return r;
}

RieszEquivalences riesz_equivalences_check(const OperatorSequence& seq, const Config& cfg) {
  return riesz_equivalences_check(seq, classify(seq, cfg), cfg);
}

RieszEquivalences riesz_equivalences_check(const OperatorSequence& seq, const FrameReport& report,
                                           const Config& cfg) {
  RieszEquivalences e;
  e.frame_hypothesis = report.is_frame;
  const Eigen::MatrixXd stacked = stacked_matrix(seq);
  const std::size_t d = seq.stacked_rows();

  e.riesz_inequalities =
      report.g_complete && report.riesz_lower_used > cfg.frame_threshold * report.riesz_upper.lower.value;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(stacked.transpose());
  lu.setThreshold(cfg.rank_threshold);
  e.synthesis_injective = lu.dimensionOfKernel() == 0;

  e.analysis_onto = qr_rank(stacked, cfg.rank_threshold) == d;
  return e;
}

DualSequence dual_riesz_basis(const OperatorSequence& seq, const Config& cfg) {
  const std::size_t n = seq.domain().dim;
  if (seq.stacked_rows() != n) {
    throw Error(ErrorCode::not_riesz, "synthesis matrix is not square");
  }
  const Eigen::MatrixXd synth = synthesis_matrix(seq);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(synth);
  lu.setThreshold(cfg.rank_threshold);
  if (!lu.isInvertible()) throw Error(ErrorCode::not_riesz, "synthesis matrix is singular");
  const Eigen::MatrixXd inv = lu.inverse();

  std::vector<SpaceSpec> codomains;
  std::vector<Eigen::MatrixXd> mats;
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto di = static_cast<Eigen::Index>(seq.codomains()[i].dim);
    mats.push_back(inv.middleRows(row, di));
    codomains.push_back(seq.codomains()[i].dual());
    row += di;
  }
  return DualSequence{OperatorSequence(seq.domain().dual(), std::move(codomains), std::move(mats),
                                       seq.frame_exponent().conjugate()),
                      seq};
}

double biorthogonality_residual(const DualSequence& dual) {
  double worst = 0.0;
  const auto& src = dual.source;
  const auto& dl = dual.sequence;
  for (std::size_t k = 0; k < dl.size(); ++k) {
    for (std::size_t i = 0; i < src.size(); ++i) {
      Eigen::MatrixXd prod = dl.mat(k) * src.mat(i).transpose();
      if (k == i) prod -= Eigen::MatrixXd::Identity(prod.rows(), prod.cols());
      worst = std::max(worst, prod.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double reconstruction_residual(const DualSequence& dual, const Eigen::VectorXd& x) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(x.size());
  for (std::size_t i = 0; i < dual.source.size(); ++i) {
    sum.noalias() += dual.source.mat(i).transpose() * (dual.sequence.mat(i) * x);
  }
  const double nx = x.norm();
  return nx == 0.0 ? (sum - x).norm() : (sum - x).norm() / nx;
}

}  // namespace pgb
