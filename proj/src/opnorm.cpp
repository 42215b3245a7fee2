// Operator-norm estimation between l^p and mixed l^p spaces.
//
// Upper bounds are rigorous: closed forms where one exists, otherwise the
// minimum over several Hoelder-type and interpolation bounds. Lower bounds for
// suprema are ratios evaluated at explicit witnesses found by a Boyd-type
// fixed-point ascent. Infima (lower frame/Riesz constants) are bracketed by a
// descent estimate from above and a branch-and-bound or left-inverse
// certificate from below.

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <random>
#include <sstream>

#include "pgbessel/error.hpp"
#include "pgbessel/operators.hpp"

namespace pgb {

double norm_ratio(const Eigen::MatrixXd& a, const Eigen::VectorXd& x, const MixedNormSpace& from,
                  const MixedNormSpace& to) {
  const double d = from.norm(x);
  if (d == 0.0) return 0.0;
  return to.norm(a * x) / d;
}

namespace {

struct Candidate {
  double value = 0.0;
  Eigen::VectorXd witness;
};

BoundCertificate make_cert(double value, CertificateKind kind, std::optional<Eigen::VectorXd> w,
                           std::string method) {
  BoundCertificate c;
  c.value = value;
  c.kind = kind;
  c.witness = std::move(w);
  c.method = std::move(method);
  return c;
}

NormBounds exact_bounds(double value, const Eigen::VectorXd& witness, const std::string& method) {
  return {make_cert(value, CertificateKind::exact, witness, method),
          make_cert(value, CertificateKind::exact, witness, method)};
}

double largest_singular_value(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues()(0);
}

bool is_exponent(const std::optional<Exponent>& e, double v) {
  return e && !e->is_infinite() && e->value() == v;
}

bool is_infinite(const std::optional<Exponent>& e) { return e && e->is_infinite(); }

// max over sign vectors of ||A s||_to. Sign flips are enumerated in Gray-code
// order so each step is a rank-one update.
Candidate vertex_enumeration(const Eigen::MatrixXd& a, const MixedNormSpace& to) {
  const auto n = a.cols();
  Eigen::VectorXd s = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd y = a * s;
  Candidate best{to.norm(y), s};
  // The first coordinate stays +1; x and -x give the same norm.
  const std::uint64_t patterns = n > 1 ? (std::uint64_t{1} << (n - 1)) : 1;
  for (std::uint64_t k = 1; k < patterns; ++k) {
    const auto bit = static_cast<Eigen::Index>(std::countr_zero(k)) + 1;
    s[bit] = -s[bit];
    y += (2.0 * s[bit]) * a.col(bit);
    const double v = to.norm(y);
    if (v > best.value) best = {v, s};
  }
  // Recompute from scratch to drop accumulated update error.
  best.value = to.norm(a * best.witness);
  return best;
}

// Closed forms. Returns nullopt when none applies.
std::optional<NormBounds> closed_form(const Eigen::MatrixXd& a, const MixedNormSpace& from,
                                      const MixedNormSpace& to, const Config& cfg) {
  const auto n = a.cols();
  if (a.isZero(0.0)) return exact_bounds(0.0, Eigen::VectorXd::Zero(n), "zero-matrix");

  if (from.is_euclidean() && to.is_euclidean()) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    return exact_bounds(svd.singularValues()(0), svd.matrixV().col(0), "largest-singular-value");
  }
  const auto fe = from.effective_exponent();
  const auto te = to.effective_exponent();
  if (is_exponent(fe, 1.0)) {
    Candidate best{-1.0, Eigen::VectorXd::Zero(n)};
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = to.norm(a.col(j));
      if (v > best.value) {
        best.value = v;
        best.witness.setZero();
        best.witness[j] = 1.0;
      }
    }
    return exact_bounds(best.value, best.witness, "max-column");
  }
  if (is_infinite(te)) {
    const MixedNormSpace fd = from.dual();
    Candidate best{-1.0, Eigen::VectorXd::Zero(n)};
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const Eigen::VectorXd row = a.row(i).transpose();
      const double v = fd.norm(row);
      if (v > best.value) best = {v, fd.witness(row)};
    }
    return exact_bounds(best.value, best.witness, "max-row-dual-norm");
  }
  if (is_infinite(fe) && static_cast<std::size_t>(n) <= cfg.vertex_limit) {
    auto best = vertex_enumeration(a, to);
    return exact_bounds(best.value, best.witness, "vertex-enumeration");
  }
  return std::nullopt;
}

// Plain-space norm at interpolation coordinates (1/p, 1/r) when a closed form
// is available there.
std::optional<double> exact_plain_norm(const Eigen::MatrixXd& a, double inv_p, double inv_r,
                                       const Config& cfg) {
  constexpr double eps = 1e-12;
  auto exponent_of = [](double inv) {
    return inv <= 0.0 ? Exponent::infinity() : Exponent(std::min(1.0 / inv, 1e300));
  };
  const bool p_one = inv_p >= 1.0 - eps;
  const bool r_inf = inv_r <= eps;
  const bool p_inf = inv_p <= eps;
  const bool center = std::abs(inv_p - 0.5) <= eps && std::abs(inv_r - 0.5) <= eps;
  if (!(p_one || r_inf || center || (p_inf && static_cast<std::size_t>(a.cols()) <= cfg.vertex_limit))) {
    return std::nullopt;
  }
  const Exponent p = p_one ? Exponent(1.0) : (p_inf ? Exponent::infinity() : exponent_of(inv_p));
  const Exponent r = r_inf ? Exponent::infinity() : exponent_of(inv_r);
  const auto from = MixedNormSpace::plain(SpaceSpec(static_cast<std::size_t>(a.cols()), center ? Exponent(2.0) : p));
  const auto to = MixedNormSpace::plain(SpaceSpec(static_cast<std::size_t>(a.rows()), center ? Exponent(2.0) : r));
  const auto cf = closed_form(a, from, to, cfg);
  if (!cf) return std::nullopt;
  return cf->upper.value;
}

// Riesz-Thorin: log ||A||_{1/p,1/r} is convex on segments of the unit square
// for complex scalars; restricting to real scalars costs at most a factor 2.
std::optional<double> riesz_thorin_bound(const Eigen::MatrixXd& a, Exponent p, Exponent r,
                                         const Config& cfg) {
  const double x = p.is_infinite() ? 0.0 : 1.0 / p.value();
  const double y = r.is_infinite() ? 0.0 : 1.0 / r.value();
  std::optional<double> best;
  auto consider = [&](double x0, double y0, double x1, double y1, double theta) {
    const auto n0 = exact_plain_norm(a, x0, y0, cfg);
    if (!n0) return;
    const auto n1 = exact_plain_norm(a, x1, y1, cfg);
    if (!n1) return;
    const double b = 2.0 * std::pow(*n0, 1.0 - theta) * std::pow(*n1, theta);
    if (!best || b < *best) best = b;
  };
  // Exit parameter of the ray (x, y) + t d from the unit square.
  auto exit_t = [](double px, double py, double dx, double dy) {
    double t = std::numeric_limits<double>::infinity();
    if (dx > 0) t = std::min(t, (1.0 - px) / dx);
    if (dx < 0) t = std::min(t, -px / dx);
    if (dy > 0) t = std::min(t, (1.0 - py) / dy);
    if (dy < 0) t = std::min(t, -py / dy);
    return t;
  };

  constexpr int directions = 90;
  for (int k = 0; k < directions; ++k) {
    const double phi = std::numbers::pi * static_cast<double>(k) / directions;
    const double dx = std::cos(phi);
    const double dy = std::sin(phi);
    const double tp = exit_t(x, y, dx, dy);
    const double tm = exit_t(x, y, -dx, -dy);
    if (!(tp + tm > 0.0) || !std::isfinite(tp + tm)) continue;
    const double theta = tm / (tp + tm);
    consider(std::clamp(x - tm * dx, 0.0, 1.0), std::clamp(y - tm * dy, 0.0, 1.0),
             std::clamp(x + tp * dx, 0.0, 1.0), std::clamp(y + tp * dy, 0.0, 1.0), theta);
  }
  // Segment from the Euclidean point through the target to the boundary.
  const double cx = x - 0.5;
  const double cy = y - 0.5;
  const double len = std::hypot(cx, cy);
  if (len > 1e-12) {
    const double dx = cx / len;
    const double dy = cy / len;
    const double tp = exit_t(x, y, dx, dy);
    if (std::isfinite(tp)) {
      const double theta = len / (len + tp);
      consider(0.5, 0.5, std::clamp(x + tp * dx, 0.0, 1.0), std::clamp(y + tp * dy, 0.0, 1.0), theta);
    }
  }
  return best;
}

struct UpperBound {
  double value;
  std::string method;
};

// Rigorous upper bound for ||A||_{from -> to} without any sampling.
UpperBound upper_bound(const Eigen::MatrixXd& a, const MixedNormSpace& from, const MixedNormSpace& to,
                       const Config& cfg) {
  if (auto cf = closed_form(a, from, to, cfg)) return {cf->upper.value, cf->upper.method};

  UpperBound best{std::numeric_limits<double>::infinity(), ""};
  auto consider = [&](double v, const char* method) {
    if (std::isfinite(v) && v < best.value) best = {v, method};
  };

  consider(from.to_euclidean_constant() * largest_singular_value(a) * to.from_euclidean_constant(),
           "euclidean-comparison");

  const MixedNormSpace fd = from.dual();
  Eigen::VectorXd col_norms(a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) col_norms[j] = to.norm(a.col(j));
  consider(fd.norm(col_norms), "holder-columns");

  Eigen::VectorXd row_norms(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) row_norms[i] = fd.norm(a.row(i).transpose());
  consider(to.norm(row_norms), "holder-rows");

  if (to.blocks().size() > 1) {
    // ||A x|| = || (||A_i x||)_i ||_outer <= || (||A_i||)_i ||_outer ||x||.
    Eigen::VectorXd per(static_cast<Eigen::Index>(to.blocks().size()));
    for (std::size_t i = 0; i < to.blocks().size(); ++i) {
      const auto rows = a.middleRows(static_cast<Eigen::Index>(to.block_offset(i)),
                                     static_cast<Eigen::Index>(to.blocks()[i].dim));
      per[static_cast<Eigen::Index>(i)] =
          upper_bound(rows, from, MixedNormSpace::plain(to.blocks()[i]), cfg).value;
    }
    consider(p_norm(per, to.outer()), "block-sum-codomain");
  }
  if (from.blocks().size() > 1) {
    // ||sum_j A_j x_j|| <= sum_j ||A_j|| ||x_j|| <= ||(||A_j||)||_{outer*} ||x||.
    Eigen::VectorXd per(static_cast<Eigen::Index>(from.blocks().size()));
    for (std::size_t j = 0; j < from.blocks().size(); ++j) {
      const auto cols = a.middleCols(static_cast<Eigen::Index>(from.block_offset(j)),
                                     static_cast<Eigen::Index>(from.blocks()[j].dim));
      per[static_cast<Eigen::Index>(j)] =
          upper_bound(cols, MixedNormSpace::plain(from.blocks()[j]), to, cfg).value;
    }
    consider(p_norm(per, from.outer().conjugate()), "block-sum-domain");
  }

  const auto fe = from.effective_exponent();
  const auto te = to.effective_exponent();
  if (fe && te) {
    if (auto rt = riesz_thorin_bound(a, *fe, *te, cfg)) consider(*rt, "riesz-thorin-x2");
  }
  return best;
}

Eigen::VectorXd random_start(Eigen::Index n, std::uint64_t seed, int restart) {
  // splitmix64 finalizer decorrelates (seed, restart) pairs.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(restart) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  std::mt19937_64 rng(z ^ (z >> 31));
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = normal(rng);
  return x;
}

// Deterministic start vectors: leading (or trailing) right singular vector,
// the all-ones vector, then seeded Gaussian vectors.
std::vector<Eigen::VectorXd> start_vectors(const Eigen::MatrixXd& a, const Config& cfg, bool smallest) {
  const auto n = a.cols();
  std::vector<Eigen::VectorXd> starts;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  starts.push_back(smallest ? Eigen::VectorXd(svd.matrixV().col(n - 1)) : Eigen::VectorXd(svd.matrixV().col(0)));
  starts.push_back(Eigen::VectorXd::Ones(n));
  for (int k = static_cast<int>(starts.size()); k < std::max(cfg.restarts, 2); ++k) {
    starts.push_back(random_start(n, cfg.seed, k));
  }
  return starts;
}

// Boyd's fixed-point iteration x <- argmax_{||x||<=1} <A^T J(Ax), x>. Each step
// maximizes the linearization of the convex map x -> ||Ax||, so the ratio is
// nondecreasing.
Candidate boyd_ascent(const Eigen::MatrixXd& a, const MixedNormSpace& from, const MixedNormSpace& to,
                      Eigen::VectorXd x, const Config& cfg) {
  const MixedNormSpace fd = from.dual();
  const double nx = from.norm(x);
  if (nx == 0.0) return {0.0, x};
  x /= nx;
  double value = to.norm(a * x);
  for (int it = 0; it < cfg.max_iterations; ++it) {
    const Eigen::VectorXd y = a * x;
    const Eigen::VectorXd h = a.transpose() * to.witness(y);
    if (h.isZero(0.0)) break;
    Eigen::VectorXd next = fd.witness(h);
    const double nn = from.norm(next);
    if (nn == 0.0) break;
    next /= nn;
    const double nv = to.norm(a * next);
    if (!(nv > value)) break;
    const bool converged = nv - value <= cfg.stop_delta * nv;
    x = std::move(next);
    value = nv;
    if (converged) break;
  }
  return {value, x};
}

// Minimizes the norm ratio on the unit sphere of `from` by gradient steps with
// an adaptive step length. The gradient of a mixed l^p norm is its Hoelder
// witness.
Candidate ratio_descent(const Eigen::MatrixXd& a, const MixedNormSpace& from, const MixedNormSpace& to,
                        Eigen::VectorXd x, double step, const Config& cfg) {
  const double nx = from.norm(x);
  if (nx == 0.0) return {std::numeric_limits<double>::infinity(), x};
  x /= nx;
  double value = to.norm(a * x);
  int stalls = 0;
  for (int it = 0; it < 4 * cfg.max_iterations && value > 0.0; ++it) {
    const Eigen::VectorXd y = a * x;
    const Eigen::VectorXd grad = a.transpose() * to.witness(y) - value * from.witness(x);
    if (grad.isZero(0.0)) break;
    bool moved = false;
    for (int tries = 0; tries < 60; ++tries) {
      Eigen::VectorXd trial = x - step * grad;
      const double nt = from.norm(trial);
      if (nt > 0.0) {
        trial /= nt;
        const double tv = to.norm(a * trial);
        if (tv < value) {
          const double improvement = value - tv;
          x = std::move(trial);
          stalls = improvement <= cfg.stop_delta * value ? stalls + 1 : 0;
          value = tv;
          step *= 2.0;
          moved = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!moved || stalls >= 3) break;
  }
  return {value, x};
}

struct GridResult {
  double certified;
  Candidate best;
  std::size_t cells;
};

// Branch and bound over the faces {x_k = 1, |x_j| <= 1} of the l^inf sphere.
// On a cell of face k with center c and half-width h, every x satisfies
//   ||A x||_to >= ||A c||_to - L_k h,   ||x||_from <= ||c||_from + C h
// with L_k = ||A without column k||_{inf -> to} and C = ||1||_from, which
// bounds the ratio below.
GridResult grid_lower_certificate(const Eigen::MatrixXd& a, const MixedNormSpace& from,
                                  const MixedNormSpace& to, double incumbent, const Config& cfg) {
  const auto n = a.cols();
  const double lip = vertex_enumeration(a, to).value;
  const double embed = from.linf_embedding_constant();
  std::vector<double> face_lip(static_cast<std::size_t>(n), 0.0);
  if (n > 1) {
    for (Eigen::Index k = 0; k < n; ++k) {
      Eigen::MatrixXd rest(a.rows(), n - 1);
      rest << a.leftCols(k), a.rightCols(n - 1 - k);
      face_lip[static_cast<std::size_t>(k)] = vertex_enumeration(rest, to).value;
    }
  }

  struct Cell {
    double lb;
    Eigen::Index face;
    Eigen::VectorXd center;  // free coordinates
    double half;
  };
  auto cmp = [](const Cell& l, const Cell& r) { return l.lb > r.lb; };
  std::priority_queue<Cell, std::vector<Cell>, decltype(cmp)> queue(cmp);

  Candidate best{std::numeric_limits<double>::infinity(), Eigen::VectorXd::Zero(n)};
  auto embed_point = [n](Eigen::Index face, const Eigen::VectorXd& c) {
    Eigen::VectorXd x(n);
    Eigen::Index f = 0;
    for (Eigen::Index j = 0; j < n; ++j) x[j] = (j == face) ? 1.0 : c[f++];
    return x;
  };
  auto evaluate = [&](Eigen::Index face, Eigen::VectorXd c, double half) {
    const Eigen::VectorXd x = embed_point(face, c);
    const double num = to.norm(a * x);
    const double den = from.norm(x);
    const double ratio = num / den;
    if (ratio < best.value) best = {ratio, x};
    const double lb = std::max(0.0, num - face_lip[static_cast<std::size_t>(face)] * half) / (den + embed * half);
    queue.push(Cell{lb, face, std::move(c), half});
  };

  for (Eigen::Index face = 0; face < n; ++face) evaluate(face, Eigen::VectorXd::Zero(n - 1), 1.0);

  std::size_t cells = static_cast<std::size_t>(n);
  double certified = 0.0;
  while (!queue.empty()) {
    Cell cell = queue.top();
    queue.pop();
    certified = cell.lb;
    const double upper = std::min(best.value, incumbent);
    const double tol = std::max(cfg.grid_rel_gap * upper, 1e-12 * lip);
    if (upper - cell.lb <= tol || cell.half == 0.0 || cells >= cfg.grid_cell_budget) break;
    const double h = 0.5 * cell.half;
    const auto free = n - 1;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free); ++mask) {
      Eigen::VectorXd c = cell.center;
      for (Eigen::Index j = 0; j < free; ++j) c[j] += ((mask >> j) & 1u) ? h : -h;
      evaluate(cell.face, std::move(c), h);
      ++cells;
    }
  }
  return {std::min(certified, best.value), best, cells};
}

}  // namespace

NormBounds mixed_opnorm(const Eigen::MatrixXd& a, const MixedNormSpace& from, const MixedNormSpace& to,
                        const Config& cfg) {
  if (static_cast<std::size_t>(a.cols()) != from.total_dim() ||
      static_cast<std::size_t>(a.rows()) != to.total_dim()) {
    throw Error(ErrorCode::dimension_mismatch, "matrix shape does not match the normed spaces");
  }
  if (auto cf = closed_form(a, from, to, cfg)) return *cf;

  // Restarts are reduced by max value, ties to the lowest restart index.
  Candidate best{-1.0, Eigen::VectorXd()};
  for (const auto& s : start_vectors(a, cfg, /*smallest=*/false)) {
    auto c = boyd_ascent(a, from, to, s, cfg);
    if (c.value > best.value) best = std::move(c);
  }
  best.value = norm_ratio(a, best.witness, from, to);

  const auto ub = upper_bound(a, from, to, cfg);
  NormBounds out;
  out.lower = make_cert(best.value, CertificateKind::lower_estimate, best.witness, "boyd-ascent");
  out.upper = make_cert(std::max(ub.value, best.value), CertificateKind::upper_certificate,
                        std::nullopt, ub.method);
  return out;
}

NormBounds matrix_opnorm(const Eigen::MatrixXd& a, Exponent from, Exponent to, const Config& cfg,
                         Exactness exactness) {
  const auto fs = MixedNormSpace::plain(SpaceSpec(static_cast<std::size_t>(a.cols()), from));
  const auto ts = MixedNormSpace::plain(SpaceSpec(static_cast<std::size_t>(a.rows()), to));
  if (exactness == Exactness::require_exact && !closed_form(a, fs, ts, cfg)) {
    if (from.is_infinite()) {
      throw Error(ErrorCode::vertex_limit_exceeded, "dimension exceeds the vertex enumeration limit");
    }
    throw Error(ErrorCode::no_closed_form, "no closed form for ||A||_{" + from.to_string() + "->" +
                                               to.to_string() + "}");
  }
  return mixed_opnorm(a, fs, ts, cfg);
}

NormBounds lower_constant(const Eigen::MatrixXd& a, const MixedNormSpace& from, const MixedNormSpace& to,
                          const Config& cfg) {
  if (static_cast<std::size_t>(a.cols()) != from.total_dim() ||
      static_cast<std::size_t>(a.rows()) != to.total_dim()) {
    throw Error(ErrorCode::dimension_mismatch, "matrix shape does not match the normed spaces");
  }
  const auto n = a.cols();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  const Eigen::VectorXd trailing = svd.matrixV().col(n - 1);

  if (a.isZero(0.0)) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    w[0] = 1.0;
    return exact_bounds(0.0, w, "zero-matrix");
  }
  if (from.is_euclidean() && to.is_euclidean()) {
    const double smin = a.rows() < n ? 0.0 : sv(n - 1);
    return exact_bounds(smin, trailing, "smallest-singular-value");
  }

  // Estimate from above.
  const double smax = sv(0);
  const double step = 1.0 / (smax * from.to_euclidean_constant() * to.from_euclidean_constant() + 1e-300);
  Candidate best{std::numeric_limits<double>::infinity(), trailing};
  auto consider = [&](const Eigen::VectorXd& x, const char*) {
    if (from.norm(x) == 0.0) return;
    const double r = norm_ratio(a, x, from, to);
    if (r < best.value) best = {r, x};
  };
  std::vector<Eigen::VectorXd> starts = start_vectors(a, cfg, /*smallest=*/true);
  for (Eigen::Index j = 0; j < n; ++j) starts.push_back(Eigen::VectorXd::Unit(n, j));
  for (const auto& s : starts) {
    consider(s, "start");
    auto c = ratio_descent(a, from, to, s, step, cfg);
    consider(c.witness, "descent");
  }

  const bool full_rank = a.rows() >= n && sv(n - 1) > cfg.rank_threshold * smax;
  std::optional<Eigen::MatrixXd> left_inverse;
  if (full_rank) {
    // inf ratio = 1 / ||A^{-1}||_{range -> from}; ascend on a left inverse.
    left_inverse = a.completeOrthogonalDecomposition().pseudoInverse();
    const auto inv_norm = mixed_opnorm(*left_inverse, to, from, cfg);
    if (inv_norm.lower.witness) {
      consider(*left_inverse * *inv_norm.lower.witness, "inverse-ascent");
    }
  }

  // Certificates from below.
  double cert = 0.0;
  std::string method = "trivial-zero";
  if (left_inverse) {
    const auto ub = upper_bound(*left_inverse, to, from, cfg);
    if (ub.value > 0.0 && 1.0 / ub.value > cert) {
      cert = 1.0 / ub.value;
      method = "left-inverse(" + ub.method + ")";
    }
  }
  if (static_cast<std::size_t>(n) <= cfg.grid_dim_limit) {
    const auto grid = grid_lower_certificate(a, from, to, best.value, cfg);
    if (grid.best.value < best.value) best = grid.best;
    if (grid.certified > cert) {
      cert = grid.certified;
      method = "grid-branch-and-bound";
    }
  }
  cert = std::min(cert, best.value);

  NormBounds out;
  out.lower = make_cert(cert, CertificateKind::lower_certificate, std::nullopt, method);
  out.upper = make_cert(best.value, CertificateKind::upper_estimate, best.witness, "ratio-descent");
  return out;
}

NormBounds analysis_opnorm(const OperatorSequence& seq, const Config& cfg) {
  return mixed_opnorm(stacked_matrix(seq), MixedNormSpace::plain(seq.domain()), seq.analysis_space(), cfg);
}

NormBounds synthesis_opnorm(const OperatorSequence& seq, const Config& cfg) {
  return mixed_opnorm(synthesis_matrix(seq), seq.synthesis_space(),
                      MixedNormSpace::plain(seq.domain().dual()), cfg);
}

}  // namespace pgb
