#include "pgbessel/cli/commands.hpp"

#include <random>

#include "pgbessel/error.hpp"
#include "pgbessel/frames.hpp"
#include "pgbessel/multipliers.hpp"
#include "sampling.hpp"

namespace pgb::cli {

namespace {

Document space_document(const SpaceSpec& s) {
  Document d;
  d["dim"] = s.dim;
  d["p"] = s.exponent.to_string();
  return d;
}

Document advisories_document(const MultiplierOperator& m) {
  Document a = Document::array();
  for (const auto& s : m.advisories) a.push_back(s);
  return a;
}

Document frame_summary(const FrameReport& r) {
  Document d;
  d["is_bessel"] = r.is_bessel;
  d["is_frame"] = r.is_frame;
  d["is_riesz"] = r.is_riesz;
  d["bessel_bound"] = bounds_document(r.bessel_bound);
  d["lower_bound"] = bounds_document(r.lower_bound);
  d["lower_policy"] = r.lower_policy;
  if (r.diagnosis) d["diagnosis"] = *r.diagnosis;
  return d;
}

}  // namespace

Document bounds_command(const Instance& inst, const Config& cfg) {
  const MultiplierOperator mult = assemble(inst.m(), inst.lambda_sequence(), inst.theta_sequence());
  const MultiplierBounds b = norm_bounds(mult, cfg);
  Document d;
  d["upper"] = bound_document(b.upper);
  if (b.lower) {
    d["lower"] = bound_document(*b.lower);
  } else {
    d["lower"] = nullptr;
    if (b.lower_skipped) d["lower_skipped"] = *b.lower_skipped;
  }
  d["estimate"] = bounds_document(b.estimate);
  d["lambda"] = frame_summary(b.left_report);
  d["theta"] = frame_summary(b.right_report);
  d["advisories"] = advisories_document(mult);
  return d;
}

Document dual_command(const Instance& inst, const Config& cfg) {
  Document d;
  std::mt19937_64 rng(cfg.seed);
  const std::pair<const char*, OperatorSequence> seqs[] = {{"lambda", inst.lambda_sequence()},
                                                           {"theta", inst.theta_sequence()}};
  for (const auto& [name, seq] : seqs) {
    Document e;
    const Eigen::VectorXd x = normal_vector(rng, static_cast<Eigen::Index>(seq.domain().dim));
    if (!classify(seq, cfg).is_riesz) {
      e["status"] = "not-riesz";
      d[name] = e;
      continue;
    }
    const DualSequence dual = dual_riesz_basis(seq, cfg);
    e["status"] = "ok";
    e["domain"] = space_document(dual.sequence.domain());
    e["frame_exponent"] = dual.sequence.frame_exponent().to_string();
    Document codomains = Document::array();
    for (const auto& c : dual.sequence.codomains()) codomains.push_back(space_document(c));
    e["codomains"] = codomains;
    Document mats = Document::array();
    for (const auto& m : dual.sequence.mats()) mats.push_back(matrix_document(m));
    e["matrices"] = mats;
    e["biorthogonality_residual"] = biorthogonality_residual(dual);
    e["reconstruction_residual"] = reconstruction_residual(dual, x);
    d[name] = e;
  }
  return d;
}

Document multiply_command(const Instance& inst) {
  const MultiplierOperator mult = assemble(inst.m(), inst.lambda_sequence(), inst.theta_sequence());
  Document d;
  d["domain"] = space_document(mult.domain);
  d["codomain"] = space_document(mult.codomain);
  d["matrix"] = matrix_document(mult.matrix);
  d["advisories"] = advisories_document(mult);
  return d;
}

Document invert_command(const Instance& inst, const Config& cfg) {
  const auto left = inst.lambda_sequence();
  const auto right = inst.theta_sequence();
  const MultiplierOperator fwd = assemble(inst.m(), left, right);
  const MultiplierOperator inv = invert(inst.m(), left, right, cfg);
  const auto n1 = fwd.matrix.cols();
  const auto n2 = fwd.matrix.rows();
  Document d;
  d["domain"] = space_document(inv.domain);
  d["codomain"] = space_document(inv.codomain);
  d["matrix"] = matrix_document(inv.matrix);
  d["inverse_after_forward"] =
      (inv.matrix * fwd.matrix - Eigen::MatrixXd::Identity(n1, n1)).cwiseAbs().maxCoeff();
  d["forward_after_inverse"] =
      (fwd.matrix * inv.matrix - Eigen::MatrixXd::Identity(n2, n2)).cwiseAbs().maxCoeff();
  return d;
}

Document perturb_command(const Instance& inst, double delta, const Config& cfg) {
  if (!(delta >= 0.0)) throw Error(ErrorCode::invalid_argument, "delta must be non-negative");
  const OperatorSequence base = inst.lambda_sequence();
  std::mt19937_64 rng(cfg.seed);
  const auto dirs = unit_directions(rng, base);
  std::vector<Eigen::MatrixXd> mats;
  for (std::size_t i = 0; i < base.size(); ++i) mats.push_back(base.mat(i) + delta * dirs[i]);
  const PerturbationReport r = perturbation_check(base, base.with_mats(std::move(mats)), cfg);
  Document d;
  d["delta"] = delta;
  d["K"] = bound_document(r.K);
  d["B_base"] = bound_document(r.B_base);
  d["B_perturbed"] = bound_document(r.B_perturbed);
  d["slack"] = r.slack;
  d["analysis_gap"] = bounds_document(r.analysis_gap);
  d["synthesis_gap"] = bounds_document(r.synthesis_gap);
  d["bessel_bound_holds"] = r.bessel_bound_holds;
  d["gaps_hold"] = r.gaps_hold;
  return d;
}

Document continuity_command(const Instance& inst, const ContinuityRequest& req, const Config& cfg) {
  const MultiplierTriple base{inst.m(), inst.lambda_sequence(), inst.theta_sequence()};
  ContinuityOptions opts;
  opts.n_max = req.n_max;
  if (req.p1) {
    opts.p1 = *req.p1;
  } else if (inst.p1) {
    opts.p1 = *inst.p1;
  }
  std::mt19937_64 rng(cfg.seed);
  const auto lam_dirs = unit_directions(rng, base.lambda);
  const auto th_dirs = unit_directions(rng, base.theta);
  const Eigen::VectorXd sym_dir = Eigen::VectorXd::Unit(inst.symbol.size(), 0);
  const auto traces =
      continuity_suite(req.kind, base, geometric_generator(req.kind, base, sym_dir, lam_dirs, th_dirs), opts, cfg);
  Document d;
  d["kind"] = std::string(to_string(req.kind));
  d["p1"] = opts.p1.to_string();
  d["q1"] = opts.p1.conjugate().to_string();
  Document rows = Document::array();
  bool all = true;
  for (const auto& t : traces) {
    Document row;
    row["n"] = t.n;
    row["symbol_deviation"] = t.symbol_deviation;
    row["symbol_deviation_sup"] = t.symbol_deviation_sup;
    row["lambda_deviation"] = t.lambda_deviation;
    row["theta_deviation"] = t.theta_deviation;
    row["measured"] = t.measured;
    row["bound"] = t.bound;
    if (req.kind == ContinuityKind::joint) {
      row["symbol_term"] = t.symbol_term;
      row["lambda_term"] = t.lambda_term;
      row["theta_term"] = t.theta_term;
    }
    row["holds"] = t.holds;
    all = all && t.holds;
    rows.push_back(std::move(row));
  }
  d["all_hold"] = all;
  d["traces"] = std::move(rows);
  return d;
}

}  // namespace pgb::cli
