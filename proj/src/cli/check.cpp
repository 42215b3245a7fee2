#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "pgbessel/cli/report.hpp"
#include "pgbessel/error.hpp"
#include "pgbessel/frames.hpp"
#include "pgbessel/multipliers.hpp"
#include "pgbessel/perturbation.hpp"
#include "sampling.hpp"

namespace pgb::cli {

namespace {

constexpr double kIdentityTol = 1e-9;
constexpr double kInverseTol = 1e-8;
constexpr double kGridTol = 1e-3;
constexpr double kSoftLowerTol = 1e-3;
constexpr double kPerturbDelta = 1e-2;

using Clock = std::chrono::steady_clock;

void set_status(CheckItem& item, bool ok) { item.status = ok ? Status::pass : Status::fail; }

void add_bounds(CheckItem& item, const std::string& prefix, const NormBounds& b) {
  item.values.emplace_back(prefix + ".lower", b.lower.value);
  item.values.emplace_back(prefix + ".upper", b.upper.value);
  item.labels.emplace_back(prefix + ".lower.kind", std::string(to_string(b.lower.kind)));
  item.labels.emplace_back(prefix + ".upper.kind", std::string(to_string(b.upper.kind)));
}

const char* flag(bool b) { return b ? "true" : "false"; }

struct Named {
  std::string name;
  OperatorSequence seq;
};

class Runner {
 public:
  Runner(const Instance& inst, const Config& cfg) : inst_(inst), cfg_(cfg), rng_(cfg.seed) {}

  CheckReport run(const std::vector<Suite>& suites) {
    report_.config = cfg_;
    for (Suite s : suites) {
      switch (s) {
        case Suite::spaces: spaces(); break;
        case Suite::adjoint: adjoint(); break;
        case Suite::classify: classify_suite(); break;
        case Suite::riesz: riesz(); break;
        case Suite::dual: dual(); break;
        case Suite::bounds: bounds(); break;
        case Suite::invert: invert_suite(); break;
        case Suite::injectivity: injectivity(); break;
        case Suite::perturb: perturb(); break;
        case Suite::continuity: continuity(); break;
      }
    }
    return std::move(report_);
  }

 private:
  std::vector<Named> sequences() const {
    return {{"lambda", inst_.lambda_sequence()}, {"theta", inst_.theta_sequence()}};
  }

  // Runs body into a fresh item; library errors become failures.
  void item(Suite suite, const std::string& name, const std::function<void(CheckItem&)>& body) {
    CheckItem it;
    it.suite = std::string(to_string(suite));
    it.name = name;
    const auto t0 = Clock::now();
    try {
      body(it);
    } catch (const Error& e) {
      it.status = Status::fail;
      it.detail = std::string(to_string(e.code())) + ": " + e.what();
    }
    it.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    report_.items.push_back(std::move(it));
  }

  const FrameReport& report_for(const std::string& name, const OperatorSequence& seq) {
    auto it = classified_.find(name);
    if (it == classified_.end()) it = classified_.emplace(name, classify(seq, cfg_)).first;
    return it->second;
  }

  void spaces() {
    for (const auto& [name, seq] : sequences()) {
      const MixedNormSpace space = seq.synthesis_space();
      const Eigen::VectorXd stacked = normal_vector(rng_, static_cast<Eigen::Index>(space.total_dim()));
      item(Suite::spaces, name + "/product-duality", [&](CheckItem& it) {
        std::vector<Vector> blocks;
        bool small = true;
        for (std::size_t i = 0; i < space.blocks().size(); ++i) {
          const auto& b = space.blocks()[i];
          blocks.emplace_back(stacked.segment(static_cast<Eigen::Index>(space.block_offset(i)),
                                              static_cast<Eigen::Index>(b.dim)),
                              b);
          small = small && b.dim <= 2;
        }
        const ProductVector g(std::move(blocks), space.outer());
        DualityGapOptions opts;
        opts.run_grid = small;
        DualityGap gap;
        try {
          gap = product_duality_gap(g, opts);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::oracle_budget_exceeded) throw;
          opts.run_grid = false;
          gap = product_duality_gap(g, opts);
          it.labels.emplace_back("grid", "budget exceeded");
        }
        it.values.emplace_back("dual_norm", gap.dual_norm);
        it.values.emplace_back("witness_sup", gap.witness_sup);
        it.values.emplace_back("witness_gap", gap.witness_gap);
        bool ok = gap.witness_gap <= cfg_.tol_exact * std::max(1.0, gap.dual_norm);
        if (gap.grid_gap) {
          it.values.emplace_back("grid_sup", *gap.grid_sup);
          it.values.emplace_back("grid_gap", *gap.grid_gap);
          ok = ok && *gap.grid_gap <= kGridTol;
        } else if (!opts.run_grid && !small) {
          it.labels.emplace_back("grid", "skipped: block dimension above 2");
        }
        it.witness = gap.witness;
        set_status(it, ok);
      });
    }
  }

  void adjoint() {
    for (const auto& [name, seq] : sequences()) {
      const Eigen::VectorXd x = normal_vector(rng_, static_cast<Eigen::Index>(seq.domain().dim));
      const Eigen::VectorXd g = normal_vector(rng_, static_cast<Eigen::Index>(seq.stacked_rows()));
      item(Suite::adjoint, name + "/pairing", [&](CheckItem& it) {
        const ProductVector ux = analysis_apply(seq, Vector(x, seq.domain()));
        const MixedNormSpace synth = seq.synthesis_space();
        std::vector<Vector> blocks;
        for (std::size_t i = 0; i < seq.size(); ++i) {
          blocks.emplace_back(g.segment(static_cast<Eigen::Index>(synth.block_offset(i)),
                                        static_cast<Eigen::Index>(seq.codomains()[i].dim)),
                              seq.codomains()[i].dual());
        }
        const Vector tg = synthesis_apply(seq, ProductVector(std::move(blocks), synth.outer()));
        const double lhs = ux.stacked().dot(g);
        const double rhs = dual_pairing(Vector(x, seq.domain()), tg);
        const double scale = std::max(1.0, ux.stacked().norm() * g.norm());
        it.values.emplace_back("<Ux,g>", lhs);
        it.values.emplace_back("<x,Tg>", rhs);
        set_status(it, std::abs(lhs - rhs) <= cfg_.tol_exact * scale);
      });
    }
  }

  void classify_suite() {
    for (const auto& [name, seq] : sequences()) {
      item(Suite::classify, name, [&](CheckItem& it) {
        const FrameReport& r = report_for(name, seq);
        add_bounds(it, "bessel_bound", r.bessel_bound);
        add_bounds(it, "lower_bound", r.lower_bound);
        it.values.emplace_back("rank_stacked", static_cast<double>(r.rank_stacked));
        it.labels.emplace_back("is_bessel", flag(r.is_bessel));
        it.labels.emplace_back("is_frame", flag(r.is_frame));
        it.labels.emplace_back("is_riesz", flag(r.is_riesz));
        it.labels.emplace_back("g_complete", flag(r.g_complete));
        it.labels.emplace_back("lower_policy", r.lower_policy);
        if (r.diagnosis) it.detail = *r.diagnosis;
        // Inequality, surjectivity and rank routes must agree.
        set_status(it, r.is_bessel && r.routes_agree);
      });
    }
  }

  void riesz() {
    for (const auto& [name, seq] : sequences()) {
      item(Suite::riesz, name + "/equivalences", [&](CheckItem& it) {
        const FrameReport& r = report_for(name, seq);
        const RieszEquivalences e = riesz_equivalences_check(seq, r, cfg_);
        it.labels.emplace_back("is_riesz", flag(r.is_riesz));
        it.labels.emplace_back("frame_hypothesis", flag(e.frame_hypothesis));
        it.labels.emplace_back("riesz_inequalities", flag(e.riesz_inequalities));
        it.labels.emplace_back("synthesis_injective", flag(e.synthesis_injective));
        it.labels.emplace_back("analysis_onto", flag(e.analysis_onto));
        add_bounds(it, "riesz_lower", r.riesz_lower);
        add_bounds(it, "riesz_upper", r.riesz_upper);
        if (e.agree()) {
          it.status = Status::pass;
        } else if (!e.frame_hypothesis) {
          it.status = Status::skipped;
          it.detail = "not a frame: the equivalence is only asserted for frames";
        } else {
          it.status = Status::fail;
        }
      });
    }
  }

  void dual() {
    for (const auto& [name, seq] : sequences()) {
      const Eigen::VectorXd x = normal_vector(rng_, static_cast<Eigen::Index>(seq.domain().dim));
      item(Suite::dual, name, [&](CheckItem& it) {
        if (!report_for(name, seq).is_riesz) {
          it.status = Status::skipped;
          it.detail = "not-riesz";
          return;
        }
        const DualSequence d = dual_riesz_basis(seq, cfg_);
        const double bio = biorthogonality_residual(d);
        const double rec = reconstruction_residual(d, x);
        const DualSequence dd = dual_riesz_basis(d.sequence, cfg_);
        double back = 0.0;
        for (std::size_t i = 0; i < seq.size(); ++i) {
          back = std::max(back, (dd.sequence.mat(i) - seq.mat(i)).cwiseAbs().maxCoeff());
        }
        it.values.emplace_back("biorthogonality_residual", bio);
        it.values.emplace_back("reconstruction_residual", rec);
        it.values.emplace_back("double_dual_residual", back);
        set_status(it, bio <= kIdentityTol && rec <= kIdentityTol && back <= kIdentityTol);
      });
    }
  }

  void bounds() {
    item(Suite::bounds, "multiplier", [&](CheckItem& it) {
      const MultiplierOperator mult = assemble(inst_.m(), inst_.lambda_sequence(), inst_.theta_sequence());
      const MultiplierBounds b = norm_bounds(mult, cfg_);
      it.values.emplace_back("upper", b.upper.value);
      it.labels.emplace_back("upper.kind", std::string(to_string(b.upper.kind)));
      add_bounds(it, "estimate", b.estimate);
      bool ok = b.estimate.lower.value <= b.upper.value + kIdentityTol;
      if (b.lower) {
        it.values.emplace_back("lower", b.lower->value);
        it.labels.emplace_back("lower.kind", std::string(to_string(b.lower->kind)));
        const bool exact = b.lower->kind == CertificateKind::exact && b.estimate.exact();
        const double tol = exact ? kIdentityTol : kSoftLowerTol;
        ok = ok && b.estimate.lower.value >= b.lower->value - tol;
      } else if (b.lower_skipped) {
        it.labels.emplace_back("lower", *b.lower_skipped);
      }
      for (std::size_t i = 0; i < mult.advisories.size(); ++i) {
        it.labels.emplace_back("advisory." + std::to_string(i), mult.advisories[i]);
      }
      it.witness = b.estimate.lower.witness;
      set_status(it, ok);
    });
  }

  void invert_suite() {
    item(Suite::invert, "multiplier", [&](CheckItem& it) {
      const Symbol m = inst_.m();
      if (!(m.inf_abs() > cfg_.min_symbol)) {
        it.status = Status::skipped;
        it.detail = "symbol-too-small";
        it.values.emplace_back("inf_abs_symbol", m.inf_abs());
        return;
      }
      const auto left = inst_.lambda_sequence();
      const auto right = inst_.theta_sequence();
      if (!report_for("lambda", left).is_riesz || !report_for("theta", right).is_riesz) {
        it.status = Status::skipped;
        it.detail = "not-riesz";
        return;
      }
      const MultiplierOperator fwd = assemble(m, left, right);
      const MultiplierOperator inv = invert(m, left, right, cfg_);
      const auto n1 = fwd.matrix.cols();
      const auto n2 = fwd.matrix.rows();
      const double r1 = (inv.matrix * fwd.matrix - Eigen::MatrixXd::Identity(n1, n1)).cwiseAbs().maxCoeff();
      const double r2 = (fwd.matrix * inv.matrix - Eigen::MatrixXd::Identity(n2, n2)).cwiseAbs().maxCoeff();
      it.values.emplace_back("inverse_after_forward", r1);
      it.values.emplace_back("forward_after_inverse", r2);
      set_status(it, r1 <= kInverseTol && r2 <= kInverseTol);
    });
  }

  void injectivity() {
    item(Suite::injectivity, "multiplier", [&](CheckItem& it) {
      try {
        const InjectivityWitness w =
            injectivity_witness(inst_.lambda_sequence(), inst_.theta_sequence(), inst_.m(), cfg_);
        it.values.emplace_back("image_norm", w.image_norm);
        it.values.emplace_back("index", static_cast<double>(w.index));
        it.witness = w.g.entries();
        set_status(it, w.image_norm >= 1e-12);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::hypothesis_violated) throw;
        it.status = Status::skipped;
        it.detail = e.what();
      }
    });
  }

  void perturb() {
    for (const auto& [name, seq] : sequences()) {
      item(Suite::perturb, name + "/identical", [&](CheckItem& it) {
        const PerturbationReport r = perturbation_check(seq, seq, cfg_);
        it.values.emplace_back("K", r.K.value);
        it.values.emplace_back("slack", r.slack);
        it.values.emplace_back("analysis_gap", r.analysis_gap.lower.value);
        it.values.emplace_back("synthesis_gap", r.synthesis_gap.lower.value);
        set_status(it, r.K.value == 0.0 && r.analysis_gap.upper.value == 0.0 &&
                           r.synthesis_gap.upper.value == 0.0 && r.bessel_bound_holds);
      });
      const auto dirs = unit_directions(rng_, seq);
      item(Suite::perturb, name + "/random", [&](CheckItem& it) {
        std::vector<Eigen::MatrixXd> mats;
        for (std::size_t i = 0; i < seq.size(); ++i) mats.push_back(seq.mat(i) + kPerturbDelta * dirs[i]);
        const PerturbationReport r = perturbation_check(seq, seq.with_mats(std::move(mats)), cfg_);
        it.values.emplace_back("K", r.K.value);
        it.values.emplace_back("B_base", r.B_base.value);
        it.values.emplace_back("B_perturbed", r.B_perturbed.value);
        it.values.emplace_back("slack", r.slack);
        it.values.emplace_back("analysis_gap", r.analysis_gap.lower.value);
        it.values.emplace_back("synthesis_gap", r.synthesis_gap.lower.value);
        it.labels.emplace_back("K.kind", std::string(to_string(r.K.kind)));
        set_status(it, r.bessel_bound_holds && r.gaps_hold);
      });
    }
  }

  void continuity() {
    const MultiplierTriple base{inst_.m(), inst_.lambda_sequence(), inst_.theta_sequence()};
    ContinuityOptions opts;
    if (inst_.p1) opts.p1 = *inst_.p1;
    const Eigen::VectorXd sym_dir = Eigen::VectorXd::Unit(inst_.symbol.size(), 0);
    const auto lam_dirs = unit_directions(rng_, base.lambda);
    const auto th_dirs = unit_directions(rng_, base.theta);
    for (auto kind : {ContinuityKind::symbol, ContinuityKind::theta, ContinuityKind::lambda, ContinuityKind::joint}) {
      item(Suite::continuity, std::string(to_string(kind)), [&](CheckItem& it) {
        const auto traces =
            continuity_suite(kind, base, geometric_generator(kind, base, sym_dir, lam_dirs, th_dirs), opts, cfg_);
        bool holds = true;
        double worst = -HUGE_VAL;
        for (const auto& t : traces) {
          holds = holds && t.holds;
          worst = std::max(worst, t.measured - t.bound);
        }
        const double first = traces.front().bound;
        const double last = traces.back().bound;
        // Bounds are homogeneous in the deviation, so the schedule 2^-n
        // drives them to zero at the same rate. The slack absorbs rounding in
        // (x + eps d) - x, which is relative to eps and grows as eps shrinks.
        const double expected = first * std::pow(0.5, static_cast<double>(traces.size() - 1));
        const bool vanishing = last <= expected * 1.05;
        it.values.emplace_back("p1", traces.front().p1);
        it.values.emplace_back("first_bound", first);
        it.values.emplace_back("last_bound", last);
        it.values.emplace_back("last_measured", traces.back().measured);
        it.values.emplace_back("max_measured_minus_bound", worst);
        it.labels.emplace_back("bounds_vanish", flag(vanishing));
        set_status(it, holds && vanishing);
      });
    }
  }

  const Instance& inst_;
  Config cfg_;
  std::mt19937_64 rng_;
  CheckReport report_;
  std::map<std::string, FrameReport> classified_;
};

}  // namespace

CheckReport check(const Instance& inst, const std::vector<Suite>& suites, const Config& cfg) {
  inst.validate();
  return Runner(inst, cfg).run(suites);
}

}  // namespace pgb::cli
