#include "pgbessel/multipliers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "pgbessel/error.hpp"

namespace pgb {

Symbol::Symbol(Eigen::VectorXd entries) : entries_(std::move(entries)) {
  if (entries_.size() == 0) throw Error(ErrorCode::invalid_argument, "symbol is empty");
  if (!entries_.allFinite()) throw Error(ErrorCode::invalid_argument, "symbol entries must be finite");
}

Symbol::Symbol(std::initializer_list<double> entries)
    : Symbol(Eigen::Map<const Eigen::VectorXd>(entries.begin(), static_cast<Eigen::Index>(entries.size()))) {}

double Symbol::sup_norm() const { return entries_.cwiseAbs().maxCoeff(); }
double Symbol::inf_abs() const { return entries_.cwiseAbs().minCoeff(); }
double Symbol::norm(Exponent p) const { return p_norm(entries_, p); }

Symbol Symbol::reciprocal(double min_abs) const {
  if (!(inf_abs() > min_abs)) {
    std::ostringstream os;
    os << "symbol-too-small: inf |m_i| = " << inf_abs() << " <= " << min_abs;
    throw Error(ErrorCode::symbol_too_small, os.str());
  }
  return Symbol(entries_.cwiseInverse());
}

Symbol Symbol::operator-(const Symbol& other) const {
  if (other.size() != size()) throw Error(ErrorCode::shape_mismatch, "symbol lengths differ");
  return Symbol(entries_ - other.entries_);
}

Symbol Symbol::operator+(const Symbol& other) const {
  if (other.size() != size()) throw Error(ErrorCode::shape_mismatch, "symbol lengths differ");
  return Symbol(entries_ + other.entries_);
}

Symbol Symbol::scaled(double c) const { return Symbol(c * entries_); }

namespace {

// Sum of a multiset of terms that depends only on the multiset: sort, then
// compensated summation.
double canonical_sum(std::vector<double>& terms) {
  std::sort(terms.begin(), terms.end());
  double sum = 0.0;
  double comp = 0.0;
  for (double t : terms) {
    const double s = sum + t;
    comp += std::abs(sum) >= std::abs(t) ? (sum - s) + t : (t - s) + sum;
    sum = s;
  }
  return sum + comp;
}

}  // namespace

MultiplierOperator assemble(const Symbol& m, const OperatorSequence& left, const OperatorSequence& right) {
  const std::size_t k = m.size();
  if (left.size() != k || right.size() != k) {
    std::ostringstream os;
    os << "index sets differ: |m| = " << k << ", |Lambda| = " << left.size() << ", |Theta| = " << right.size();
    throw Error(ErrorCode::shape_mismatch, os.str());
  }
  std::vector<std::string> advisories;
  for (std::size_t i = 0; i < k; ++i) {
    if (left.codomains()[i].dim != right.codomains()[i].dim) {
      std::ostringstream os;
      os << "operator " << i << ": Y_i has dimension " << left.codomains()[i].dim << " but Y_i^* has "
         << right.codomains()[i].dim;
      throw Error(ErrorCode::shape_mismatch, os.str());
    }
    if (!(right.codomains()[i].exponent == left.codomains()[i].exponent.conjugate())) {
      advisories.push_back("component " + std::to_string(i) +
                           ": Theta codomain exponent is not conjugate to Lambda codomain exponent");
    }
    if (right.mat(i).isZero(0.0)) advisories.push_back("Theta_" + std::to_string(i) + " is zero");
  }
  if (!(right.frame_exponent() == left.frame_exponent().conjugate())) {
    advisories.push_back("frame exponents are not conjugate");
  }

  const auto rows = static_cast<Eigen::Index>(left.domain().dim);
  const auto cols = static_cast<Eigen::Index>(right.domain().dim);
  std::vector<Eigen::MatrixXd> terms;
  terms.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    terms.push_back(m[i] * (left.mat(i).transpose() * right.mat(i)));
  }
  Eigen::MatrixXd out(rows, cols);
  std::vector<double> entry(k);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      for (std::size_t i = 0; i < k; ++i) entry[i] = terms[i](r, c);
      out(r, c) = canonical_sum(entry);
    }
  }
  return MultiplierOperator{std::move(out), m,
                            left,           right,
                            right.domain(), left.domain().dual(),
                            std::move(advisories)};
}

MultiplierBounds norm_bounds(const MultiplierOperator& mult, const Config& cfg) {
  MultiplierBounds out;
  out.left_report = classify(mult.left, cfg);
  out.right_report = classify(mult.right, cfg);
  const double sup = mult.symbol.sup_norm();

  const auto& bl = out.left_report.bessel_bound.upper;
  const auto& br = out.right_report.bessel_bound.upper;
  out.upper.value = bl.value * br.value * sup;
  out.upper.kind = (bl.kind == CertificateKind::exact && br.kind == CertificateKind::exact)
                       ? CertificateKind::exact
                       : CertificateKind::upper_certificate;
  out.upper.method = "bessel-product(" + bl.method + "," + br.method + ")";

  if (out.left_report.is_riesz && out.right_report.is_riesz) {
    const auto& al = out.left_report.riesz_lower.lower;
    const auto& ar = out.right_report.riesz_lower.lower;
    BoundCertificate lower;
    lower.value = al.value * ar.value * sup;
    lower.kind = (al.kind == CertificateKind::exact && ar.kind == CertificateKind::exact)
                     ? CertificateKind::exact
                     : CertificateKind::lower_certificate;
    lower.method = "riesz-product(" + al.method + "," + ar.method + ")";
    out.lower = lower;
  } else {
    out.lower_skipped = "lower bound needs Riesz bases on both sides";
  }

  out.estimate = mixed_opnorm(mult.matrix, MixedNormSpace::plain(mult.domain),
                              MixedNormSpace::plain(mult.codomain), cfg);
  return out;
}

MultiplierOperator invert(const Symbol& m, const OperatorSequence& left, const OperatorSequence& right,
                          const Config& cfg) {
  const Symbol reciprocal = m.reciprocal(cfg.min_symbol);
  if (!classify(left, cfg).is_riesz) {
    throw Error(ErrorCode::not_riesz, "Lambda is not a Riesz basis for X_2^*");
  }
  if (!classify(right, cfg).is_riesz) {
    throw Error(ErrorCode::not_riesz, "Theta is not a Riesz basis for X_1");
  }
  const DualSequence left_dual = dual_riesz_basis(left, cfg);
  const DualSequence right_dual = dual_riesz_basis(right, cfg);
  // M^{-1} = M_{1/m, Theta~, Lambda~}: Theta~ takes the adjoint slot.
  return assemble(reciprocal, right_dual.sequence, left_dual.sequence);
}

InjectivityWitness injectivity_witness(const OperatorSequence& left, const OperatorSequence& right,
                                       const Symbol& m, const Config& cfg) {
  if (m.is_zero()) throw Error(ErrorCode::hypothesis_violated, "symbol is identically zero");
  for (std::size_t i = 0; i < right.size(); ++i) {
    if (right.mat(i).isZero(0.0)) {
      throw Error(ErrorCode::hypothesis_violated, "Theta_" + std::to_string(i) + " is zero");
    }
  }
  if (!classify(left, cfg).is_riesz) {
    throw Error(ErrorCode::hypothesis_violated, "Lambda is not a Riesz basis");
  }
  const MultiplierOperator mult = assemble(m, left, right);
  const auto codomain = MixedNormSpace::plain(mult.codomain);

  std::vector<std::size_t> order(m.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::abs(m[a]) > std::abs(m[b]); });

  std::optional<InjectivityWitness> best;
  auto consider = [&](const Eigen::VectorXd& g, std::size_t k) {
    const double v = codomain.norm(mult.matrix * g);
    if (!best || v > best->image_norm) best = InjectivityWitness{Vector(g, mult.domain), v, k};
  };
  for (std::size_t k : order) {
    if (m[k] == 0.0) break;
    // Any g outside ker Theta_k works: M g = T_Lambda(m_i Theta_i g)_i and
    // T_Lambda is injective, while block k is m_k Theta_k g != 0.
    const Eigen::MatrixXd& th = right.mat(k);
    for (Eigen::Index j = 0; j < th.cols(); ++j) {
      if (!th.col(j).isZero(0.0)) consider(Eigen::VectorXd::Unit(th.cols(), j), k);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(th, Eigen::ComputeFullV);
    consider(svd.matrixV().col(0), k);
    if (best && best->image_norm > 0.0) break;
  }
  return *best;
}

}  // namespace pgb
