// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status if
// any criterion fails. Every instance is drawn from a fixed seed.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pgbessel/cli/generate.hpp"
#include "pgbessel/error.hpp"
#include "pgbessel/frames.hpp"
#include "pgbessel/multipliers.hpp"
#include "pgbessel/perturbation.hpp"

using namespace pgb;
using pgb::cli::GenKind;
using pgb::cli::GenRequest;
using pgb::cli::Instance;

namespace {

const std::vector<Exponent> kExponents{1.5, 2.0, 3.0};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // Records the first failure only; later ones are counted.
  void fail(const std::string& what) {
    if (pass) detail << "first failure: " << what << "; ";
    pass = false;
    ++failures;
  }
  int failures = 0;
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : rng_(seed) {}
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal() { return normal_(rng_); }
  Exponent exponent() { return kExponents[static_cast<std::size_t>(integer(0, 2))]; }
  std::vector<std::size_t> partition(std::size_t total, std::size_t max_part) {
    std::vector<std::size_t> out;
    while (total > 0) {
      const auto part = static_cast<std::size_t>(integer(1, static_cast<int>(std::min(total, max_part))));
      out.push_back(part);
      total -= part;
    }
    return out;
  }
  Eigen::MatrixXd matrix(Eigen::Index r, Eigen::Index c) {
    Eigen::MatrixXd m(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
      for (Eigen::Index j = 0; j < c; ++j) m(i, j) = normal();
    }
    return m;
  }
  std::vector<Eigen::MatrixXd> unit_directions(const OperatorSequence& seq) {
    std::vector<Eigen::MatrixXd> out;
    for (const auto& m : seq.mats()) {
      Eigen::MatrixXd d = matrix(m.rows(), m.cols());
      out.push_back(d / d.norm());
    }
    return out;
  }
  std::uint64_t seed() { return rng_(); }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << std::scientific << v;
  return os.str();
}

// Random request of the given kind. Riesz kinds need sum dim Y_i = dim X.
GenRequest random_request(Rng& rng, GenKind kind, std::size_t max_dim, bool euclidean) {
  GenRequest req;
  req.kind = kind;
  const bool riesz = kind == GenKind::riesz || kind == GenKind::riesz_pair;
  const auto total = static_cast<std::size_t>(rng.integer(1, static_cast<int>(max_dim)));
  req.y_dims = rng.partition(total, 3);
  req.x2_dim = riesz ? total : static_cast<std::size_t>(rng.integer(1, static_cast<int>(max_dim)));
  req.x1_dim = kind == GenKind::riesz_pair ? total : static_cast<std::size_t>(rng.integer(1, static_cast<int>(max_dim)));
  auto pick = [&] { return euclidean ? Exponent(2.0) : rng.exponent(); };
  req.frame_exponent = pick();
  req.x1_exponent = pick();
  req.x2_exponent = pick();
  for (std::size_t i = 0; i < req.y_dims.size(); ++i) req.y_exponents.push_back(pick());
  req.seed = rng.seed();
  return req;
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Orthonormal row selectors on R^n with p = q = 2.
OperatorSequence selectors(std::size_t n) {
  std::vector<SpaceSpec> ys(n, SpaceSpec(1, 2.0));
  std::vector<Eigen::MatrixXd> mats;
  for (std::size_t i = 0; i < n; ++i) {
    mats.push_back(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))
                       .row(static_cast<Eigen::Index>(i)));
  }
  return OperatorSequence(SpaceSpec(n, 2.0), ys, mats, 2.0);
}

void ac1(Outcome& out) {
  double worst = 0.0;
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto s = selectors(n);
    const auto m = assemble(Symbol(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n))), s, s);
    const double r = max_abs(m.matrix - Eigen::MatrixXd::Identity(m.matrix.rows(), m.matrix.cols()));
    worst = std::max(worst, r);
    if (r > 1e-12) out.fail("n = " + std::to_string(n) + " residual " + fmt(r));
  }
  out.detail << "dims 1..8, max residual " << fmt(worst) << " (<= 1e-12)";
}

void ac2(Outcome& out) {
  const Config cfg;
  Rng rng(2002);
  double worst = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < 500; ++k) {
    const bool euclidean = k % 5 == 0;
    const Instance inst = cli::gen(random_request(rng, GenKind::bessel, 4, euclidean), cfg);
    const auto b = norm_bounds(assemble(inst.m(), inst.lambda_sequence(), inst.theta_sequence()), cfg);
    worst = std::max(worst, b.estimate.lower.value - b.upper.value);
    if (b.estimate.lower.value > b.upper.value + 1e-9) {
      out.fail("instance " + std::to_string(k) + " estimate " + fmt(b.estimate.lower.value) + " > upper " +
               fmt(b.upper.value));
    }
    if (euclidean) {
      if (!b.estimate.exact() || b.upper.kind != CertificateKind::exact) {
        out.fail("instance " + std::to_string(k) + " p = q = 2 but not exact");
      } else if (b.estimate.upper.value > b.upper.value * (1 + 1e-15)) {
        out.fail("instance " + std::to_string(k) + " exact estimate above exact upper bound");
      }
    }
  }
  // Diagonal instance: M = diag(3, -1, 0.5) attains B_Lambda B_Theta ||m||_inf = 3.
  const auto s = selectors(3);
  const auto d = norm_bounds(assemble(Symbol{3.0, -1.0, 0.5}, s, s), cfg);
  const bool equal = d.estimate.exact() && d.estimate.upper.value == d.upper.value;
  if (!equal) out.fail("diagonal instance: estimate " + fmt(d.estimate.upper.value) + " upper " + fmt(d.upper.value));
  out.detail << "500 Bessel pairs, max(estimate - upper) " << fmt(worst) << " (<= 1e-9); diagonal equality "
             << (equal ? "attained" : "missed");
}

void ac3(Outcome& out) {
  const Config cfg;
  Rng rng(3003);
  int p2 = 0;
  int other = 0;
  double worst2 = -std::numeric_limits<double>::infinity();
  double worst_other = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < 100; ++k) {
    const Instance inst = cli::gen(random_request(rng, GenKind::riesz_pair, 6, true), cfg);
    const auto b = norm_bounds(assemble(inst.m(), inst.lambda_sequence(), inst.theta_sequence()), cfg);
    if (!b.lower || b.lower->kind != CertificateKind::exact) {
      out.fail("p = 2 instance " + std::to_string(k) + " has no exact lower bound");
      continue;
    }
    ++p2;
    worst2 = std::max(worst2, b.lower->value - b.estimate.lower.value);
    if (b.estimate.lower.value < b.lower->value - 1e-9) out.fail("p = 2 instance " + std::to_string(k));
  }
  for (double p : {1.5, 3.0}) {
    for (int k = 0; k < 50; ++k) {
      GenRequest req = random_request(rng, GenKind::riesz_pair, 3, false);
      req.frame_exponent = p;
      const Instance inst = cli::gen(req, cfg);
      const auto b = norm_bounds(assemble(inst.m(), inst.lambda_sequence(), inst.theta_sequence()), cfg);
      if (!b.lower) {
        out.fail("p = " + fmt(p) + " instance " + std::to_string(k) + " has no lower bound");
        continue;
      }
      ++other;
      worst_other = std::max(worst_other, b.lower->value - b.estimate.lower.value);
      if (b.estimate.lower.value < b.lower->value - 1e-3) {
        out.fail("p = " + fmt(p) + " instance " + std::to_string(k) + " estimate " + fmt(b.estimate.lower.value) +
                 " below lower " + fmt(b.lower->value));
      }
    }
  }
  out.detail << p2 << " p = 2 Riesz pairs, max(lower - estimate) " << fmt(worst2) << " (<= 1e-9); " << other
             << " pairs at p in {1.5, 3}, max " << fmt(worst_other) << " (<= 1e-3)";
}

void ac4(Outcome& out) {
  const Config cfg;
  Rng rng(4004);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    GenRequest req = random_request(rng, GenKind::riesz_pair, 8, false);
    req.symbol_min = 0.1;
    const Instance inst = cli::gen(req, cfg);
    const auto lambda = inst.lambda_sequence();
    const auto theta = inst.theta_sequence();
    const Eigen::MatrixXd m = assemble(inst.m(), lambda, theta).matrix;
    const Eigen::MatrixXd inv = invert(inst.m(), lambda, theta, cfg).matrix;
    const double r1 = max_abs(inv * m - Eigen::MatrixXd::Identity(m.cols(), m.cols()));
    const double r2 = max_abs(m * inv - Eigen::MatrixXd::Identity(m.rows(), m.rows()));
    worst = std::max({worst, r1, r2});
    if (r1 > 1e-8 || r2 > 1e-8) out.fail("instance " + std::to_string(k) + " residuals " + fmt(r1) + ", " + fmt(r2));
  }
  out.detail << "100 Riesz pairs with inf|m| >= 0.1, max composition residual " << fmt(worst) << " (<= 1e-8)";
}

void ac5(Outcome& out) {
  const Config cfg;
  Rng rng(5005);
  double bi = 0.0;
  double rec = 0.0;
  double dd = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Instance inst = cli::gen(random_request(rng, GenKind::riesz, 8, false), cfg);
    const auto seq = inst.lambda_sequence();
    const auto dual = dual_riesz_basis(seq, cfg);
    const Eigen::VectorXd x = rng.matrix(static_cast<Eigen::Index>(seq.domain().dim), 1).col(0);
    const double b = biorthogonality_residual(dual);
    const double r = reconstruction_residual(dual, x);
    const auto twice = dual_riesz_basis(dual.sequence, cfg);
    double d = 0.0;
    for (std::size_t i = 0; i < seq.size(); ++i) d = std::max(d, max_abs(twice.sequence.mat(i) - seq.mat(i)));
    bi = std::max(bi, b);
    rec = std::max(rec, r);
    dd = std::max(dd, d);
    if (b > 1e-9 || r > 1e-9 || d > 1e-9) {
      out.fail("instance " + std::to_string(k) + " residuals " + fmt(b) + ", " + fmt(r) + ", " + fmt(d));
    }
  }
  out.detail << "100 Riesz bases, max biorthogonality " << fmt(bi) << ", reconstruction " << fmt(rec)
             << ", double dual " << fmt(dd) << " (each <= 1e-9)";
}

void ac6(Outcome& out) {
  Rng rng(6006);
  DualityGapOptions opts;
  opts.max_grid_points = 250000;
  double wg = 0.0;
  double gg = 0.0;
  const std::vector<Exponent> all{1.0, 1.5, 2.0, 3.0, Exponent::infinity()};
  for (int k = 0; k < 200; ++k) {
    const auto blocks = static_cast<std::size_t>(rng.integer(1, 3));
    std::vector<Vector> parts;
    for (std::size_t i = 0; i < blocks; ++i) {
      const auto dim = static_cast<std::size_t>(rng.integer(1, 2));
      const Exponent q = all[static_cast<std::size_t>(rng.integer(0, 4))];
      parts.emplace_back(rng.matrix(static_cast<Eigen::Index>(dim), 1).col(0), SpaceSpec(dim, q));
    }
    const Exponent outer = kExponents[static_cast<std::size_t>(rng.integer(0, 2))];
    const auto gap = product_duality_gap(ProductVector(parts, outer), opts);
    wg = std::max(wg, gap.witness_gap);
    gg = std::max(gg, *gap.grid_gap);
    if (gap.witness_gap > 1e-10 || *gap.grid_gap > 1e-3) {
      out.fail("functional " + std::to_string(k) + " gaps " + fmt(gap.witness_gap) + ", " + fmt(*gap.grid_gap));
    }
  }
  out.detail << "200 product functionals, max witness gap " << fmt(wg) << " (<= 1e-10), max grid gap " << fmt(gg)
             << " (<= 1e-3)";
}

void ac7(Outcome& out) {
  const Config cfg;
  Rng rng(7007);
  double slack = std::numeric_limits<double>::infinity();
  double excess = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < 200; ++k) {
    const Instance inst = cli::gen(random_request(rng, GenKind::bessel, 5, false), cfg);
    const auto base = k % 2 == 0 ? inst.lambda_sequence() : inst.theta_sequence();
    const double delta = std::pow(10.0, rng.uniform(-4.0, 0.0));
    const auto dirs = rng.unit_directions(base);
    std::vector<Eigen::MatrixXd> mats;
    for (std::size_t i = 0; i < base.size(); ++i) mats.push_back(base.mat(i) + delta * dirs[i]);
    const auto r = perturbation_check(base, base.with_mats(mats), cfg);
    slack = std::min(slack, r.slack);
    excess = std::max({excess, r.analysis_gap.lower.value - r.K.value, r.synthesis_gap.lower.value - r.K.value});
    if (r.slack < -1e-9 || r.analysis_gap.lower.value > r.K.value + 1e-9 ||
        r.synthesis_gap.lower.value > r.K.value + 1e-9) {
      out.fail("pair " + std::to_string(k));
    }
  }
  out.detail << "200 perturbed pairs, min slack " << fmt(slack) << " (>= -1e-9), max(gap - K) " << fmt(excess)
             << " (<= 1e-9)";
}

void ac8(Outcome& out) {
  const Config cfg;
  Rng rng(8008);
  int traces = 0;
  double worst = -std::numeric_limits<double>::infinity();
  double last = 0.0;
  for (int k = 0; k < 8; ++k) {
    const GenKind kind = k % 2 == 0 ? GenKind::riesz_pair : GenKind::bessel;
    const Instance inst = cli::gen(random_request(rng, kind, 4, false), cfg);
    const MultiplierTriple base{inst.m(), inst.lambda_sequence(), inst.theta_sequence()};
    Eigen::VectorXd sym = rng.matrix(static_cast<Eigen::Index>(base.m.size()), 1).col(0);
    sym /= sym.norm();
    const auto ld = rng.unit_directions(base.lambda);
    const auto td = rng.unit_directions(base.theta);
    for (auto part : {ContinuityKind::symbol, ContinuityKind::theta, ContinuityKind::lambda, ContinuityKind::joint}) {
      ContinuityOptions opts;
      opts.p1 = rng.exponent();
      opts.n_max = 40;
      const auto ts = continuity_suite(part, base, geometric_generator(part, base, sym, ld, td), opts, cfg);
      const std::string where = std::string(to_string(part)) + " on instance " + std::to_string(k);
      for (const auto& t : ts) {
        ++traces;
        worst = std::max(worst, t.measured - t.bound);
        if (t.measured > t.bound + 1e-9) out.fail(where + " at n = " + std::to_string(t.n));
        if (part == ContinuityKind::joint &&
            t.measured > t.symbol_term + t.lambda_term + t.theta_term + 1e-9) {
          out.fail(where + " triangle sum at n = " + std::to_string(t.n));
        }
      }
      last = std::max(last, ts.back().bound);
      if (ts.size() != 40 || !(ts.back().bound < 1e-10)) out.fail(where + " final bound " + fmt(ts.back().bound));
    }
  }
  out.detail << traces << " traces over 4 parts, max(measured - bound) " << fmt(worst)
             << " (<= 1e-9), largest bound at n = 40 " << fmt(last) << " (< 1e-10)";
}

void ac9(Outcome& out) {
  const Config cfg;
  Rng rng(9009);
  int deficient = 0;
  int frames = 0;
  for (int k = 0; k < 200; ++k) {
    const auto n = static_cast<std::size_t>(rng.integer(1, 4));
    const auto ys = rng.partition(static_cast<std::size_t>(rng.integer(1, 6)), 3);
    std::vector<SpaceSpec> codomains;
    std::vector<Eigen::MatrixXd> mats;
    for (auto d : ys) {
      codomains.emplace_back(d, rng.exponent());
      mats.push_back(rng.matrix(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(n)));
    }
    if (k % 4 == 0) {
      // Rank-deficient: every member factors through a space of dimension n - 1.
      ++deficient;
      const auto ni = static_cast<Eigen::Index>(n);
      const Eigen::MatrixXd basis = rng.matrix(std::max<Eigen::Index>(ni - 1, 1), ni);
      for (auto& m : mats) {
        m = ni == 1 ? Eigen::MatrixXd::Zero(m.rows(), m.cols()) : Eigen::MatrixXd(rng.matrix(m.rows(), ni - 1) * basis);
      }
    }
    const OperatorSequence seq(SpaceSpec(n, rng.exponent()), codomains, mats, rng.exponent());
    const auto r = classify(seq, cfg);
    if (r.is_frame) ++frames;
    if (!r.routes_agree) {
      out.fail("instance " + std::to_string(k) + ": inequality " + (r.frame_by_inequality ? "T" : "F") +
               ", surjectivity " + (r.frame_by_surjectivity ? "T" : "F") + ", rank " + (r.g_complete ? "T" : "F"));
    }
    if (k % 4 == 0 && r.is_frame) out.fail("rank-deficient instance " + std::to_string(k) + " classified as frame");
    if (r.is_frame && !riesz_equivalences_check(seq, r, cfg).agree()) {
      out.fail("instance " + std::to_string(k) + ": Riesz equivalences disagree");
    }
  }
  out.detail << "200 sequences (" << deficient << " rank-deficient, " << frames
             << " frames), classification routes agree";
}

void ac10(Outcome& out) {
  const Config cfg;
  Rng rng(10010);
  double smallest = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 100; ++k) {
    const Instance inst = cli::gen(random_request(rng, GenKind::riesz, 6, false), cfg);
    const auto lambda = inst.lambda_sequence();
    const auto theta = inst.theta_sequence();
    Eigen::VectorXd m = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(lambda.size()));
    m[rng.integer(0, static_cast<int>(m.size()) - 1)] = rng.uniform(0.1, 2.0) * (rng.integer(0, 1) ? 1 : -1);
    const auto w = injectivity_witness(lambda, theta, Symbol(m), cfg);
    smallest = std::min(smallest, w.image_norm);
    if (!(w.image_norm >= 1e-12)) out.fail("pair " + std::to_string(k) + " image norm " + fmt(w.image_norm));
  }
  out.detail << "100 spike symbols, min ||Mg|| " << fmt(smallest) << " (>= 1e-12)";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"AC1 parseval identity", ac1},     {"AC2 upper bound", ac2},         {"AC3 lower bound", ac3},
      {"AC4 invertibility", ac4},         {"AC5 dual bases", ac5},          {"AC6 product duality", ac6},
      {"AC7 perturbation", ac7},          {"AC8 continuity", ac8},          {"AC9 equivalences", ac9},
      {"AC10 injectivity", ac10},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      run(out);
    } catch (const Error& e) {
      out.fail(std::string("error ") + std::string(to_string(e.code())) + ": " + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out.pass) ++failed;
    std::cout << (out.pass ? "PASS " : "FAIL ") << name << ": " << out.detail.str();
    if (out.failures > 1) std::cout << " (" << out.failures << " failures)";
    std::cout << " [" << std::fixed << std::setprecision(2) << secs << " s]" << std::defaultfloat << "\n"
              << std::flush;
  }
  return failed == 0 ? 0 : 1;
}
