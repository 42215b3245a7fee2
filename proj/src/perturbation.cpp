#include "pgbessel/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pgbessel/error.hpp"

namespace pgb {

namespace {

constexpr double kCheckTolerance = 1e-9;

void require_same_shape(const OperatorSequence& a, const OperatorSequence& b, const char* what) {
  bool ok = a.size() == b.size() && a.domain() == b.domain() && a.frame_exponent() == b.frame_exponent();
  for (std::size_t i = 0; ok && i < a.size(); ++i) {
    ok = a.codomains()[i] == b.codomains()[i];
  }
  if (!ok) throw Error(ErrorCode::shape_mismatch, std::string(what) + ": sequences differ in shape or exponents");
}

// Multiplier matrices of two triples act between the same spaces, so the
// difference norm is measured on the base multiplier's spaces.
double measured_gap(const MultiplierOperator& a, const MultiplierOperator& b, const Config& cfg) {
  const Eigen::MatrixXd diff = a.matrix - b.matrix;
  return mixed_opnorm(diff, MixedNormSpace::plain(b.domain), MixedNormSpace::plain(b.codomain), cfg).lower.value;
}

}  // namespace

BoundCertificate aggregated_operator_norm(const OperatorSequence& seq, Exponent s, const Config& cfg) {
  Eigen::VectorXd terms(static_cast<Eigen::Index>(seq.size()));
  bool exact = true;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const NormBounds b =
        matrix_opnorm(seq.mat(i), seq.domain().exponent, seq.codomains()[i].exponent, cfg);
    terms[static_cast<Eigen::Index>(i)] = b.upper.value;
    exact = exact && b.exact();
  }
  BoundCertificate out;
  out.value = p_norm(terms, s);
  out.kind = exact ? CertificateKind::exact : CertificateKind::upper_certificate;
  out.method = "l^" + s.to_string() + "-aggregate of per-term operator norms";
  return out;
}

PerturbationReport perturbation_check(const OperatorSequence& base, const OperatorSequence& perturbed,
                                      const Config& cfg) {
  require_same_shape(base, perturbed, "perturbation_check");
  PerturbationReport r;
  const OperatorSequence diff = perturbed.minus(base);
  r.K = aggregated_operator_norm(diff, base.frame_exponent(), cfg);
  r.B_base = analysis_opnorm(base, cfg).upper;
  r.B_perturbed = analysis_opnorm(perturbed, cfg).lower;
  r.slack = r.B_base.value + r.K.value - r.B_perturbed.value;
  r.analysis_gap = analysis_opnorm(diff, cfg);
  r.synthesis_gap = synthesis_opnorm(diff, cfg);
  r.bessel_bound_holds = r.slack >= -kCheckTolerance;
  r.gaps_hold = r.analysis_gap.lower.value <= r.K.value + kCheckTolerance &&
                r.synthesis_gap.lower.value <= r.K.value + kCheckTolerance;
  return r;
}

std::string_view to_string(ContinuityKind kind) {
  switch (kind) {
    case ContinuityKind::symbol: return "symbol";
    case ContinuityKind::theta: return "theta";
    case ContinuityKind::lambda: return "lambda";
    case ContinuityKind::joint: return "joint";
  }
  return "unknown";
}

std::optional<ContinuityKind> parse_continuity_kind(std::string_view s) {
  for (auto k : {ContinuityKind::symbol, ContinuityKind::theta, ContinuityKind::lambda, ContinuityKind::joint}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::vector<ContinuityTrace> continuity_suite(ContinuityKind kind, const MultiplierTriple& base,
                                              const TripleGenerator& generator,
                                              const ContinuityOptions& opts, const Config& cfg) {
  if (opts.n_max < 1) throw Error(ErrorCode::invalid_argument, "n_max must be positive");
  const Exponent p1 = opts.p1;
  const Exponent q1 = p1.conjugate();
  const MultiplierOperator base_mult = assemble(base.m, base.lambda, base.theta);
  const double b_lambda = analysis_opnorm(base.lambda, cfg).upper.value;
  const double b_theta = analysis_opnorm(base.theta, cfg).upper.value;
  const double m_p1 = base.m.norm(p1);

  std::vector<MultiplierTriple> family;
  family.reserve(static_cast<std::size_t>(opts.n_max));
  for (int n = 1; n <= opts.n_max; ++n) {
    MultiplierTriple t = generator(n);
    if (t.m.size() != base.m.size()) {
      throw Error(ErrorCode::shape_mismatch, "generated symbol at n = " + std::to_string(n) + " has wrong length");
    }
    require_same_shape(base.lambda, t.lambda, "continuity generator (Lambda)");
    require_same_shape(base.theta, t.theta, "continuity generator (Theta)");
    family.push_back(std::move(t));
  }

  // Uniform Bessel bounds over the generated family.
  double b1 = 0.0;
  double b2 = 0.0;
  if (kind == ContinuityKind::joint) {
    for (const auto& t : family) {
      b1 = std::max(b1, analysis_opnorm(t.lambda, cfg).upper.value);
      b2 = std::max(b2, analysis_opnorm(t.theta, cfg).upper.value);
    }
  }

  std::vector<ContinuityTrace> traces;
  traces.reserve(family.size());
  for (std::size_t idx = 0; idx < family.size(); ++idx) {
    const MultiplierTriple& t = family[idx];
    ContinuityTrace tr;
    tr.n = static_cast<int>(idx) + 1;
    tr.p1 = p1.is_infinite() ? HUGE_VAL : p1.value();
    tr.q1 = q1.is_infinite() ? HUGE_VAL : q1.value();

    const Symbol dm = t.m - base.m;
    tr.symbol_deviation = dm.norm(p1);
    tr.symbol_deviation_sup = dm.sup_norm();
    tr.theta_deviation = aggregated_operator_norm(t.theta.minus(base.theta), q1, cfg).value;
    tr.lambda_deviation = aggregated_operator_norm(t.lambda.minus(base.lambda), q1, cfg).value;

    MultiplierOperator moved = base_mult;
    switch (kind) {
      case ContinuityKind::symbol:
        moved = assemble(t.m, base.lambda, base.theta);
        tr.symbol_term = b_lambda * b_theta * tr.symbol_deviation;
        tr.bound = tr.symbol_term;
        break;
      case ContinuityKind::theta:
        moved = assemble(base.m, base.lambda, t.theta);
        tr.theta_term = b_lambda * m_p1 * tr.theta_deviation;
        tr.bound = tr.theta_term;
        break;
      case ContinuityKind::lambda:
        moved = assemble(base.m, t.lambda, base.theta);
        tr.lambda_term = b_theta * m_p1 * tr.lambda_deviation;
        tr.bound = tr.lambda_term;
        break;
      case ContinuityKind::joint:
        moved = assemble(t.m, t.lambda, t.theta);
        tr.symbol_term = b1 * b2 * tr.symbol_deviation;
        tr.lambda_term = b2 * m_p1 * tr.lambda_deviation;
        tr.theta_term = b_lambda * m_p1 * tr.theta_deviation;
        tr.bound = tr.symbol_term + tr.lambda_term + tr.theta_term;
        break;
    }
    tr.measured = measured_gap(moved, base_mult, cfg);
    tr.holds = tr.measured <= tr.bound + opts.tolerance;
    traces.push_back(tr);
  }
  return traces;
}

bool continuity_converges(const std::vector<ContinuityTrace>& traces, double final_bound) {
  if (traces.empty()) return false;
  for (const auto& t : traces) {
    if (!t.holds) return false;
  }
  return traces.back().bound < final_bound;
}

TripleGenerator geometric_generator(ContinuityKind kind, const MultiplierTriple& base,
                                    const Eigen::VectorXd& symbol_direction,
                                    const std::vector<Eigen::MatrixXd>& lambda_directions,
                                    const std::vector<Eigen::MatrixXd>& theta_directions, double ratio) {
  const bool move_symbol = kind == ContinuityKind::symbol || kind == ContinuityKind::joint;
  const bool move_lambda = kind == ContinuityKind::lambda || kind == ContinuityKind::joint;
  const bool move_theta = kind == ContinuityKind::theta || kind == ContinuityKind::joint;
  if (move_symbol && symbol_direction.size() != static_cast<Eigen::Index>(base.m.size())) {
    throw Error(ErrorCode::shape_mismatch, "symbol direction has wrong length");
  }
  if (move_lambda && lambda_directions.size() != base.lambda.size()) {
    throw Error(ErrorCode::shape_mismatch, "Lambda directions have wrong length");
  }
  if (move_theta && theta_directions.size() != base.theta.size()) {
    throw Error(ErrorCode::shape_mismatch, "Theta directions have wrong length");
  }
  auto shifted = [](const OperatorSequence& seq, const std::vector<Eigen::MatrixXd>& dirs, double eps) {
    std::vector<Eigen::MatrixXd> mats;
    mats.reserve(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) mats.push_back(seq.mat(i) + eps * dirs[i]);
    return seq.with_mats(std::move(mats));
  };
  return [=](int n) {
    const double eps = std::pow(ratio, n);
    MultiplierTriple t = base;
    if (move_symbol) t.m = Symbol(base.m.entries() + eps * symbol_direction);
    if (move_lambda) t.lambda = shifted(base.lambda, lambda_directions, eps);
    if (move_theta) t.theta = shifted(base.theta, theta_directions, eps);
    return t;
  };
}

}  // namespace pgb
