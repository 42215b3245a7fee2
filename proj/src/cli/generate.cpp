#include "pgbessel/cli/generate.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include "pgbessel/error.hpp"
#include "pgbessel/frames.hpp"

namespace pgb::cli {

namespace {

std::vector<Eigen::MatrixXd> draw_mats(std::mt19937_64& rng, const std::vector<std::size_t>& rows,
                                       std::size_t cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Eigen::MatrixXd> out;
  out.reserve(rows.size());
  for (std::size_t r : rows) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = normal(rng);
    }
    out.push_back(std::move(m));
  }
  return out;
}

double condition_number(const Eigen::MatrixXd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  return smin > 0.0 ? s(0) / smin : HUGE_VAL;
}

bool accept(const OperatorSequence& seq, bool need_frame, bool need_riesz, double max_condition,
            const Config& cfg) {
  if (need_frame || need_riesz) {
    if (condition_number(stacked_matrix(seq)) > max_condition) return false;
  }
  const FrameReport r = classify(seq, cfg);
  if (!r.is_bessel) return false;
  if (need_frame && !r.is_frame) return false;
  if (need_riesz && !r.is_riesz) return false;
  return true;
}

}  // namespace

std::string_view to_string(GenKind kind) {
  switch (kind) {
    case GenKind::bessel: return "bessel";
    case GenKind::frame: return "frame";
    case GenKind::riesz: return "riesz";
    case GenKind::riesz_pair: return "riesz-pair";
  }
  return "unknown";
}

std::optional<GenKind> parse_gen_kind(std::string_view s) {
  for (auto k : {GenKind::bessel, GenKind::frame, GenKind::riesz, GenKind::riesz_pair}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

Instance gen(const GenRequest& req, const Config& cfg) {
  if (req.y_dims.empty()) throw Error(ErrorCode::invalid_argument, "gen: index set is empty");
  if (!req.y_exponents.empty() && req.y_exponents.size() != req.y_dims.size()) {
    throw Error(ErrorCode::invalid_argument, "gen: one exponent per Y_i is required");
  }
  if (!(req.symbol_min > 0.0 && req.symbol_max >= req.symbol_min)) {
    throw Error(ErrorCode::invalid_argument, "gen: symbol range must satisfy 0 < min <= max");
  }
  const std::size_t total = std::accumulate(req.y_dims.begin(), req.y_dims.end(), std::size_t{0});
  const bool lambda_frame = req.kind != GenKind::bessel;
  const bool lambda_riesz = req.kind == GenKind::riesz || req.kind == GenKind::riesz_pair;
  const bool theta_riesz = req.kind == GenKind::riesz_pair;
  if (lambda_frame && total < req.x2_dim) {
    throw Error(ErrorCode::invalid_argument, "gen: a frame needs sum dim Y_i >= dim X_2");
  }
  if (lambda_riesz && total != req.x2_dim) {
    throw Error(ErrorCode::invalid_argument, "gen: a Riesz basis needs sum dim Y_i = dim X_2");
  }
  if (theta_riesz && total != req.x1_dim) {
    throw Error(ErrorCode::invalid_argument, "gen: a Riesz pair needs sum dim Y_i = dim X_1");
  }

  Instance inst;
  inst.x1 = SpaceSpec(req.x1_dim, req.x1_exponent);
  inst.x2 = SpaceSpec(req.x2_dim, req.x2_exponent);
  inst.frame_exponent = req.frame_exponent;
  for (std::size_t i = 0; i < req.y_dims.size(); ++i) {
    inst.y.emplace_back(req.y_dims[i], req.y_exponents.empty() ? Exponent(2.0) : req.y_exponents[i]);
  }
  inst.seed = req.seed;

  std::mt19937_64 rng(req.seed);
  std::uniform_real_distribution<double> magnitude(req.symbol_min, req.symbol_max);
  std::bernoulli_distribution sign(0.5);
  for (int attempt = 0; attempt < req.max_attempts; ++attempt) {
    inst.lambda = draw_mats(rng, req.y_dims, req.x2_dim);
    inst.theta = draw_mats(rng, req.y_dims, req.x1_dim);
    inst.symbol.resize(static_cast<Eigen::Index>(req.y_dims.size()));
    for (Eigen::Index i = 0; i < inst.symbol.size(); ++i) {
      const double v = magnitude(rng);
      inst.symbol[i] = sign(rng) ? v : -v;
    }
    if (!accept(inst.lambda_sequence(), lambda_frame, lambda_riesz, req.max_condition, cfg)) continue;
    if (!accept(inst.theta_sequence(), theta_riesz, theta_riesz, req.max_condition, cfg)) continue;
    inst.validate();
    return inst;
  }
  throw Error(ErrorCode::retry_cap_exceeded,
              "gen: no " + std::string(to_string(req.kind)) + " instance after " +
                  std::to_string(req.max_attempts) + " attempts (seed " + std::to_string(req.seed) + ")");
}

}  // namespace pgb::cli
