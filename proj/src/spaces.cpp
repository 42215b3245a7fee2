#include "pgbessel/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pgbessel/error.hpp"

namespace pgb {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_exponent: return "invalid-exponent";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::shape_mismatch: return "shape-mismatch";
    case ErrorCode::vertex_limit_exceeded: return "vertex-limit-exceeded";
    case ErrorCode::no_closed_form: return "no-closed-form";
    case ErrorCode::oracle_budget_exceeded: return "oracle-budget-exceeded";
    case ErrorCode::not_riesz: return "not-riesz";
    case ErrorCode::symbol_too_small: return "symbol-too-small";
    case ErrorCode::hypothesis_violated: return "hypothesis-violated";
    case ErrorCode::retry_cap_exceeded: return "retry-cap-exceeded";
    case ErrorCode::parse_error: return "parse-error";
  }
  return "unknown";
}

Exponent::Exponent(double value) {
  if (std::isnan(value) || value < 1.0) {
    std::ostringstream os;
    os << "exponent must lie in [1, inf], got " << value;
    throw Error(ErrorCode::invalid_exponent, os.str());
  }
  if (std::isinf(value)) {
    infinite_ = true;
    value_ = std::numeric_limits<double>::infinity();
  } else {
    value_ = value;
  }
}

Exponent Exponent::infinity() {
  Exponent e;
  e.infinite_ = true;
  e.value_ = std::numeric_limits<double>::infinity();
  return e;
}

Exponent Exponent::conjugate() const {
  if (infinite_) return Exponent(1.0);
  if (value_ == 1.0) return infinity();
  if (value_ == 2.0) return Exponent(2.0);
  return Exponent(value_ / (value_ - 1.0));
}

std::string Exponent::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << value_;
  return os.str();
}

Exponent conjugate_exponent(Exponent p) { return p.conjugate(); }

SpaceSpec::SpaceSpec(std::size_t d, Exponent e) : dim(d), exponent(e) {
  if (d == 0) throw Error(ErrorCode::invalid_argument, "space dimension must be positive");
}

Vector::Vector(Eigen::VectorXd entries, SpaceSpec space)
    : entries_(std::move(entries)), space_(space) {
  if (static_cast<std::size_t>(entries_.size()) != space_.dim) {
    throw Error(ErrorCode::dimension_mismatch, "vector length does not match its space");
  }
  if (!entries_.allFinite()) {
    throw Error(ErrorCode::invalid_argument, "vector entries must be finite");
  }
}

ProductVector::ProductVector(std::vector<Vector> blocks, Exponent outer)
    : blocks_(std::move(blocks)), outer_(outer) {
  if (blocks_.empty()) throw Error(ErrorCode::invalid_argument, "product vector needs a block");
}

std::size_t ProductVector::total_dim() const {
  std::size_t n = 0;
  for (const auto& b : blocks_) n += b.dim();
  return n;
}

Eigen::VectorXd ProductVector::stacked() const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(total_dim()));
  Eigen::Index at = 0;
  for (const auto& b : blocks_) {
    out.segment(at, b.entries().size()) = b.entries();
    at += b.entries().size();
  }
  return out;
}

double p_norm(const Eigen::Ref<const Eigen::VectorXd>& v, Exponent p) {
  if (v.size() == 0) return 0.0;
  const double peak = v.cwiseAbs().maxCoeff();
  if (p.is_infinite() || peak == 0.0) return peak;
  const double e = p.value();
  if (e == 1.0) return v.cwiseAbs().sum();
  // Squares of entries in this range neither overflow nor lose the result to
  // underflow.
  if (e == 2.0 && peak < 1e150 && peak > 1e-150) return v.norm();
  // Scale by the peak so |v_i|^p cannot overflow or underflow.
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) acc += std::pow(std::abs(v[i]) / peak, e);
  return peak * std::pow(acc, 1.0 / e);
}

double p_norm(const Vector& v) { return p_norm(v.entries(), v.space().exponent); }

double dual_pairing(const Vector& x, const Vector& g) {
  if (x.dim() != g.dim()) {
    throw Error(ErrorCode::dimension_mismatch, "dual pairing of vectors with different dimensions");
  }
  return x.entries().dot(g.entries());
}

double mixed_norm(const ProductVector& pv) {
  Eigen::VectorXd inner(static_cast<Eigen::Index>(pv.blocks().size()));
  for (std::size_t i = 0; i < pv.blocks().size(); ++i) {
    inner[static_cast<Eigen::Index>(i)] = p_norm(pv.blocks()[i]);
  }
  return p_norm(inner, pv.outer());
}

Eigen::VectorXd holder_witness(const Eigen::Ref<const Eigen::VectorXd>& v, Exponent p) {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(v.size());
  const double n = p_norm(v, p);
  if (n == 0.0) return w;
  if (p.is_infinite()) {
    Eigen::Index k = 0;
    v.cwiseAbs().maxCoeff(&k);
    w[k] = v[k] > 0 ? 1.0 : -1.0;
    return w;
  }
  const double e = p.value();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v[i] == 0.0) continue;
    const double s = v[i] > 0 ? 1.0 : -1.0;
    w[i] = (e == 1.0) ? s : s * std::pow(std::abs(v[i]) / n, e - 1.0);
  }
  return w;
}

MixedNormSpace::MixedNormSpace(std::vector<SpaceSpec> blocks, Exponent outer)
    : blocks_(std::move(blocks)), outer_(outer) {
  if (blocks_.empty()) throw Error(ErrorCode::invalid_argument, "product space needs a block");
  offsets_.reserve(blocks_.size());
  for (const auto& b : blocks_) {
    offsets_.push_back(total_dim_);
    total_dim_ += b.dim;
  }
}

MixedNormSpace MixedNormSpace::plain(const SpaceSpec& space) {
  return MixedNormSpace({space}, space.exponent);
}

double MixedNormSpace::norm(const Eigen::Ref<const Eigen::VectorXd>& v) const {
  if (static_cast<std::size_t>(v.size()) != total_dim_) {
    throw Error(ErrorCode::dimension_mismatch, "vector length does not match product space");
  }
  if (blocks_.size() == 1) return p_norm(v, blocks_[0].exponent);
  Eigen::VectorXd inner(static_cast<Eigen::Index>(blocks_.size()));
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    inner[static_cast<Eigen::Index>(i)] =
        p_norm(v.segment(static_cast<Eigen::Index>(offsets_[i]),
                         static_cast<Eigen::Index>(blocks_[i].dim)),
               blocks_[i].exponent);
  }
  return p_norm(inner, outer_);
}

MixedNormSpace MixedNormSpace::dual() const {
  std::vector<SpaceSpec> d;
  d.reserve(blocks_.size());
  for (const auto& b : blocks_) d.push_back(b.dual());
  return MixedNormSpace(std::move(d), outer_.conjugate());
}

std::optional<Exponent> MixedNormSpace::effective_exponent() const {
  const Exponent first = blocks_.front().exponent;
  for (const auto& b : blocks_) {
    if (!(b.exponent == first)) return std::nullopt;
  }
  if (blocks_.size() == 1 || outer_ == first) return first;
  // Every block one-dimensional: inner exponents are irrelevant.
  if (std::all_of(blocks_.begin(), blocks_.end(), [](const SpaceSpec& b) { return b.dim == 1; })) {
    return outer_;
  }
  return std::nullopt;
}

bool MixedNormSpace::is_euclidean() const {
  const auto e = effective_exponent();
  if (e && !e->is_infinite() && e->value() == 2.0) return true;
  if (std::all_of(blocks_.begin(), blocks_.end(), [](const SpaceSpec& b) { return b.dim == 1; })) {
    return !outer_.is_infinite() && outer_.value() == 2.0;
  }
  return false;
}

Eigen::VectorXd MixedNormSpace::witness(const Eigen::Ref<const Eigen::VectorXd>& v) const {
  if (static_cast<std::size_t>(v.size()) != total_dim_) {
    throw Error(ErrorCode::dimension_mismatch, "vector length does not match product space");
  }
  if (blocks_.size() == 1) return holder_witness(v, blocks_[0].exponent);

  const auto nb = static_cast<Eigen::Index>(blocks_.size());
  Eigen::VectorXd inner(nb);
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    inner[static_cast<Eigen::Index>(i)] =
        p_norm(v.segment(static_cast<Eigen::Index>(offsets_[i]),
                         static_cast<Eigen::Index>(blocks_[i].dim)),
               blocks_[i].exponent);
  }
  // The outer witness distributes weight over blocks; each block then uses
  // its own Hoelder witness.
  const Eigen::VectorXd weights = holder_witness(inner, outer_);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(v.size());
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const double wt = weights[static_cast<Eigen::Index>(i)];
    if (wt == 0.0) continue;
    const auto off = static_cast<Eigen::Index>(offsets_[i]);
    const auto len = static_cast<Eigen::Index>(blocks_[i].dim);
    w.segment(off, len) = wt * holder_witness(v.segment(off, len), blocks_[i].exponent);
  }
  return w;
}

double MixedNormSpace::linf_embedding_constant() const {
  return norm(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(total_dim_)));
}

namespace {

// ||I : l^a -> l^b|| on R^n.
double identity_norm(std::size_t n, Exponent from, Exponent to) {
  const double inv_from = from.is_infinite() ? 0.0 : 1.0 / from.value();
  const double inv_to = to.is_infinite() ? 0.0 : 1.0 / to.value();
  return std::pow(static_cast<double>(n), std::max(0.0, inv_to - inv_from));
}

}  // namespace

double MixedNormSpace::from_euclidean_constant() const {
  double c = 0.0;
  for (const auto& b : blocks_) c = std::max(c, identity_norm(b.dim, 2.0, b.exponent));
  return c * identity_norm(blocks_.size(), 2.0, outer_);
}

double MixedNormSpace::to_euclidean_constant() const {
  double c = 0.0;
  for (const auto& b : blocks_) c = std::max(c, identity_norm(b.dim, b.exponent, 2.0));
  return c * identity_norm(blocks_.size(), outer_, 2.0);
}

namespace {

// sup of <u, g> over the unit sphere of (R^d, l^r), d <= 2, by sampling.
double block_sup_grid(const Eigen::VectorXd& g, Exponent r, std::size_t angle_points) {
  if (g.size() == 1) return std::abs(g[0]);
  double best = 0.0;
  for (std::size_t k = 0; k < angle_points; ++k) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(angle_points);
    Eigen::Vector2d u(std::cos(t), std::sin(t));
    u /= p_norm(u, r);
    best = std::max(best, u.dot(g));
  }
  return best;
}

// sup of <t, s> over t >= 0 on the unit sphere of (R^k, l^p), by sampling the
// nonnegative faces of the l^inf sphere.
double weight_sup_grid(const Eigen::VectorXd& s, Exponent p, std::size_t per_axis) {
  const auto k = s.size();
  if (k == 1) return s[0];
  double best = 0.0;
  const auto free = k - 1;
  std::size_t total = 1;
  for (Eigen::Index i = 0; i < free; ++i) total *= per_axis;
  Eigen::VectorXd t(k);
  for (Eigen::Index face = 0; face < k; ++face) {
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rem = idx;
      for (Eigen::Index j = 0; j < k; ++j) {
        if (j == face) {
          t[j] = 1.0;
          continue;
        }
        const std::size_t c = rem % per_axis;
        rem /= per_axis;
        t[j] = static_cast<double>(c) / static_cast<double>(per_axis - 1);
      }
      best = std::max(best, t.dot(s) / p_norm(t, p));
    }
  }
  return best;
}

}  // namespace

DualityGap product_duality_gap(const ProductVector& g, const DualityGapOptions& opts) {
  std::vector<SpaceSpec> specs;
  for (const auto& b : g.blocks()) specs.push_back(b.space());
  const MixedNormSpace dual_space(specs, g.outer());
  const Eigen::VectorXd gs = g.stacked();

  DualityGap out;
  out.dual_norm = dual_space.norm(gs);
  out.witness = dual_space.witness(gs);
  const MixedNormSpace primal = dual_space.dual();
  const double wn = primal.norm(out.witness);
  out.witness_sup = wn > 0.0 ? out.witness.dot(gs) / wn : 0.0;
  out.witness_gap = std::abs(out.witness_sup - out.dual_norm);

  if (!opts.run_grid) return out;

  const auto k = g.blocks().size();
  for (const auto& b : g.blocks()) {
    if (b.dim() > 2) {
      throw Error(ErrorCode::oracle_budget_exceeded, "grid oracle supports blocks of dimension <= 2");
    }
  }
  std::size_t per_axis = 2;
  if (k > 1) {
    // Largest per-axis count with k * per_axis^(k-1) within budget.
    per_axis = static_cast<std::size_t>(std::floor(
        std::pow(static_cast<double>(opts.max_grid_points) / static_cast<double>(k),
                 1.0 / static_cast<double>(k - 1))));
    per_axis = std::min<std::size_t>(per_axis, 200001);
    if (per_axis < 50) {
      throw Error(ErrorCode::oracle_budget_exceeded, "too many blocks for the grid oracle budget");
    }
  }

  const Exponent p = g.outer().conjugate();
  Eigen::VectorXd s(static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i) {
    const auto& b = g.blocks()[i];
    s[static_cast<Eigen::Index>(i)] =
        block_sup_grid(b.entries(), b.space().exponent.conjugate(), opts.angle_points);
  }
  out.grid_sup = weight_sup_grid(s, p, per_axis);
  out.grid_gap = std::abs(*out.grid_sup - out.dual_norm);
  return out;
}

}  // namespace pgb
