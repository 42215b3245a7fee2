#include <doctest.h>

#include <cmath>

#include "pgbessel/error.hpp"
#include "pgbessel/perturbation.hpp"
#include "support.hpp"

using namespace pgb;
using pgb::testing::Gen;
using pgb::testing::row;

namespace {

OperatorSequence block(const Eigen::MatrixXd& m) {
  return OperatorSequence(SpaceSpec(2, 2.0), {SpaceSpec(2, 2.0)}, {m}, 2.0);
}

MultiplierTriple selectors_triple() {
  const std::vector<SpaceSpec> ys{SpaceSpec(1, 2.0), SpaceSpec(1, 2.0)};
  const std::vector<Eigen::MatrixXd> mats{row({1, 0}), row({0, 1})};
  return {Symbol{1, 1}, OperatorSequence(SpaceSpec(2, 2.0), ys, mats, 2.0),
          OperatorSequence(SpaceSpec(2, 2.0), ys, mats, 2.0)};
}

const std::vector<Exponent> kInner{1.0, 1.5, 2.0, 3.0, Exponent::infinity()};
const std::vector<Exponent> kFrame{1.5, 2.0, 3.0};

std::vector<Eigen::MatrixXd> unit_directions(Gen& g, const OperatorSequence& seq) {
  std::vector<Eigen::MatrixXd> out;
  for (const auto& m : seq.mats()) {
    Eigen::MatrixXd d = g.matrix(m.rows(), m.cols());
    out.push_back(d / d.norm());
  }
  return out;
}

MultiplierTriple random_triple(Gen& g) {
  const Exponent p = g.pick(kFrame);
  const auto ys = testing::codomains(g.partition(static_cast<std::size_t>(g.integer(1, 4)), 2), {g.pick(kInner)});
  const SpaceSpec x1(static_cast<std::size_t>(g.integer(1, 3)), g.pick(kInner));
  const SpaceSpec x2(static_cast<std::size_t>(g.integer(1, 3)), g.pick(kInner));
  const auto lambda = g.sequence(x2, ys, p);
  const auto theta = g.sequence(x1.dual(), testing::duals(ys), p.conjugate());
  Eigen::VectorXd m(static_cast<Eigen::Index>(ys.size()));
  for (auto& v : m) v = g.uniform(-2, 2);
  return {Symbol(m), lambda, theta};
}

}  // namespace

TEST_CASE("perturbation examples") {
  const Config cfg;
  const auto base = block(Eigen::MatrixXd::Identity(2, 2));

  SUBCASE("no perturbation") {
    const auto r = perturbation_check(base, base, cfg);
    CHECK(r.K.value == 0.0);
    CHECK(r.analysis_gap.upper.value == 0.0);
    CHECK(r.synthesis_gap.upper.value == 0.0);
    CHECK(r.bessel_bound_holds);
    CHECK(r.gaps_hold);
  }
  SUBCASE("uniform scaling by 1.1") {
    const auto r = perturbation_check(base, base.scaled(1.1), cfg);
    CHECK(r.K.value == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(r.B_perturbed.value == doctest::Approx(1.1).epsilon(1e-12));
    CHECK(r.B_perturbed.value <= 1.1 + 1e-9);
    CHECK(r.slack >= -1e-9);
    CHECK(r.bessel_bound_holds);
    CHECK(r.gaps_hold);
  }
  SUBCASE("rank-one shear of size 0.01") {
    Eigen::MatrixXd t = Eigen::MatrixXd::Identity(2, 2);
    t(0, 1) = 0.01;
    const auto r = perturbation_check(base, block(t), cfg);
    CHECK(r.K.value == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(r.B_perturbed.value <= 1.01 + 1e-9);
    CHECK(r.analysis_gap.lower.value <= r.K.value + 1e-9);
    CHECK(r.synthesis_gap.lower.value <= r.K.value + 1e-9);
    CHECK(r.bessel_bound_holds);
    CHECK(r.gaps_hold);
  }
}

TEST_CASE("perturbation needs matching shapes") {
  const auto base = block(Eigen::MatrixXd::Identity(2, 2));
  const OperatorSequence other(SpaceSpec(2, 2.0), {SpaceSpec(1, 2.0), SpaceSpec(1, 2.0)}, {row({1, 0}), row({0, 1})},
                               2.0);
  try {
    perturbation_check(base, other, Config{});
    FAIL("compared sequences of different shape");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::shape_mismatch);
  }
}

TEST_CASE("aggregated operator norm") {
  const auto t = selectors_triple();
  const auto agg = aggregated_operator_norm(t.lambda.scaled(3.0), 2.0, Config{});
  CHECK(agg.value == doctest::Approx(3.0 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(aggregated_operator_norm(t.lambda, 1.0, Config{}).value == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("random perturbations respect the bound") {
  Gen g(401);
  const Config cfg;
  for (int k = 0; k < 60; ++k) {
    const auto n = static_cast<std::size_t>(g.integer(1, 4));
    const auto ys = testing::codomains(g.partition(static_cast<std::size_t>(g.integer(1, 5)), 2), {g.pick(kInner)});
    const auto base = g.sequence(SpaceSpec(n, g.pick(kInner)), ys, g.pick(kFrame));
    const double delta = std::pow(10.0, g.uniform(-4, 0));
    std::vector<Eigen::MatrixXd> mats;
    const auto dirs = unit_directions(g, base);
    for (std::size_t i = 0; i < base.size(); ++i) mats.push_back(base.mat(i) + delta * dirs[i]);
    const auto r = perturbation_check(base, base.with_mats(mats), cfg);
    CHECK(r.slack >= -1e-9);
    CHECK(r.analysis_gap.lower.value <= r.K.value + 1e-9);
    CHECK(r.synthesis_gap.lower.value <= r.K.value + 1e-9);
    CHECK(r.bessel_bound_holds);
    CHECK(r.gaps_hold);
  }
}

TEST_CASE("continuity kinds parse") {
  for (auto k : {ContinuityKind::symbol, ContinuityKind::theta, ContinuityKind::lambda, ContinuityKind::joint}) {
    CHECK(parse_continuity_kind(to_string(k)) == k);
  }
  CHECK_FALSE(parse_continuity_kind("sigma"));
}

TEST_CASE("symbol continuity on orthonormal selectors") {
  const auto base = selectors_triple();
  const auto gen = geometric_generator(ContinuityKind::symbol, base, Eigen::Vector2d(1, 0), {}, {});
  const auto traces = continuity_suite(ContinuityKind::symbol, base, gen, ContinuityOptions{}, Config{});
  REQUIRE(traces.size() == 40);
  for (const auto& t : traces) {
    // M^(n) - M = 2^-n e_1 e_1^T.
    CHECK(t.measured == std::ldexp(1.0, -t.n));
    CHECK(t.bound == doctest::Approx(std::ldexp(1.0, -t.n)).epsilon(1e-14));
    CHECK(t.holds);
  }
  CHECK(traces[33].bound < 1e-10);
  CHECK(continuity_converges(traces, 1e-10));
}

TEST_CASE("theta continuity on orthonormal selectors") {
  const auto base = selectors_triple();
  const std::vector<Eigen::MatrixXd> dirs{row({0, 1}), row({0, 0})};
  const auto gen = geometric_generator(ContinuityKind::theta, base, {}, {}, dirs);
  ContinuityOptions opts;
  opts.n_max = 10;
  const auto traces = continuity_suite(ContinuityKind::theta, base, gen, opts, Config{});
  for (const auto& t : traces) {
    // Only Theta_1 moves, by 2^-n in operator norm.
    CHECK(t.theta_deviation == doctest::Approx(std::ldexp(1.0, -t.n)).epsilon(1e-14));
    CHECK(t.measured == doctest::Approx(std::ldexp(1.0, -t.n)).epsilon(1e-12));
    CHECK(t.bound == doctest::Approx(std::sqrt(2.0) * std::ldexp(1.0, -t.n)).epsilon(1e-12));
    CHECK(t.holds);
  }
}

TEST_CASE("constant joint family") {
  const auto base = selectors_triple();
  const auto traces = continuity_suite(
      ContinuityKind::joint, base, [&](int) { return base; }, ContinuityOptions{}, Config{});
  for (const auto& t : traces) {
    CHECK(t.measured == 0.0);
    CHECK(t.bound == 0.0);
    CHECK(t.holds);
  }
}

TEST_CASE("random continuity families") {
  Gen g(409);
  const Config cfg;
  for (int k = 0; k < 12; ++k) {
    const auto base = random_triple(g);
    const Eigen::VectorXd sym = g.vector(static_cast<Eigen::Index>(base.m.size())).normalized();
    const auto ld = unit_directions(g, base.lambda);
    const auto td = unit_directions(g, base.theta);
    for (auto kind : {ContinuityKind::symbol, ContinuityKind::theta, ContinuityKind::lambda, ContinuityKind::joint}) {
      ContinuityOptions opts;
      opts.p1 = g.pick(kFrame);
      opts.n_max = 12;
      const auto traces = continuity_suite(kind, base, geometric_generator(kind, base, sym, ld, td), opts, cfg);
      for (const auto& t : traces) {
        CHECK(t.measured <= t.bound + 1e-9);
        CHECK(t.holds);
        if (kind == ContinuityKind::joint) {
          CHECK(t.bound == doctest::Approx(t.symbol_term + t.lambda_term + t.theta_term).epsilon(1e-14));
        }
      }
      // Directions are fixed, so each bound is a fixed multiple of 2^-n up to
      // the joint cross terms.
      for (std::size_t i = 1; i < traces.size(); ++i) {
        CHECK(traces[i].bound <= traces[i - 1].bound * 0.5 * 1.05);
      }
    }
  }
}

TEST_CASE("continuity rejects inconsistent families") {
  const auto base = selectors_triple();
  const TripleGenerator bad = [&](int n) {
    if (n < 3) return base;
    MultiplierTriple t{Symbol{1, 1, 1}, base.lambda, base.theta};
    return t;
  };
  try {
    continuity_suite(ContinuityKind::symbol, base, bad, ContinuityOptions{}, Config{});
    FAIL("accepted a family whose index set changes");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::shape_mismatch);
  }
  try {
    geometric_generator(ContinuityKind::lambda, base, {}, {row({1, 0})}, {});
    FAIL("accepted too few directions");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::shape_mismatch);
  }
}
