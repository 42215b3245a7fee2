#pragma once

// Independent oracles and random generators for the test suites. Nothing
// here calls into the estimators under test.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "pgbessel/operators.hpp"
#include "pgbessel/spaces.hpp"

namespace pgb::testing {

// Direct (sum |v_i|^p)^(1/p), no rescaling.
inline double naive_norm(const Eigen::VectorXd& v, double p) {
  if (std::isinf(p)) return v.cwiseAbs().maxCoeff();
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += std::pow(std::abs(v[i]), p);
  return std::pow(s, 1.0 / p);
}

inline double exponent_value(Exponent e) {
  return e.is_infinite() ? std::numeric_limits<double>::infinity() : e.value();
}

// Dense sweep of the unit l^p circle in R^2. Returns {max, min} of
// ||A x||_r over ||x||_p = 1. Accuracy is O(1/points^2) for smooth ratios.
struct SweepResult {
  double max = 0.0;
  double min = std::numeric_limits<double>::infinity();
};

inline SweepResult circle_sweep(const Eigen::MatrixXd& a, double p, double r, int points = 200000) {
  SweepResult out;
  const double pi = std::acos(-1.0);
  for (int k = 0; k < points; ++k) {
    const double t = pi * k / points;  // x and -x give the same ratio
    Eigen::Vector2d x(std::cos(t), std::sin(t));
    x /= naive_norm(x, p);
    const double v = naive_norm(a * x, r);
    out.max = std::max(out.max, v);
    out.min = std::min(out.min, v);
  }
  return out;
}

// Mixed norm of a stacked vector with blocks of the given sizes.
inline double naive_mixed(const Eigen::VectorXd& v, const std::vector<std::size_t>& dims,
                          const std::vector<double>& inner, double outer) {
  Eigen::VectorXd per(static_cast<Eigen::Index>(dims.size()));
  Eigen::Index off = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const auto d = static_cast<Eigen::Index>(dims[i]);
    per[static_cast<Eigen::Index>(i)] = naive_norm(v.segment(off, d), inner[i]);
    off += d;
  }
  return naive_norm(per, outer);
}

// Sum_i m_i Lambda_i^T Theta_i in index order with plain accumulation.
inline Eigen::MatrixXd naive_multiplier(const Eigen::VectorXd& m, const std::vector<Eigen::MatrixXd>& lambda,
                                        const std::vector<Eigen::MatrixXd>& theta) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(lambda.at(0).cols(), theta.at(0).cols());
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    out += m[static_cast<Eigen::Index>(i)] * lambda[i].transpose() * theta[i];
  }
  return out;
}

inline Eigen::MatrixXd row(std::initializer_list<double> xs) {
  Eigen::MatrixXd m(1, static_cast<Eigen::Index>(xs.size()));
  Eigen::Index j = 0;
  for (double x : xs) m(0, j++) = x;
  return m;
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double normal() { return normal_(rng_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(integer(0, static_cast<int>(xs.size()) - 1))];
  }

  Eigen::VectorXd vector(Eigen::Index n) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = normal();
    return v;
  }
  Eigen::MatrixXd matrix(Eigen::Index r, Eigen::Index c) {
    Eigen::MatrixXd m(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
      for (Eigen::Index j = 0; j < c; ++j) m(i, j) = normal();
    }
    return m;
  }
  std::vector<std::size_t> partition(std::size_t total, std::size_t max_part) {
    std::vector<std::size_t> out;
    while (total > 0) {
      const auto part = static_cast<std::size_t>(integer(1, static_cast<int>(std::min(total, max_part))));
      out.push_back(part);
      total -= part;
    }
    return out;
  }

  OperatorSequence sequence(const SpaceSpec& domain, const std::vector<SpaceSpec>& codomains, Exponent p) {
    std::vector<Eigen::MatrixXd> mats;
    for (const auto& c : codomains) {
      mats.push_back(matrix(static_cast<Eigen::Index>(c.dim), static_cast<Eigen::Index>(domain.dim)));
    }
    return OperatorSequence(domain, codomains, std::move(mats), p);
  }

  // Square stacked matrix with 2-norm condition number below max_cond.
  OperatorSequence riesz_sequence(const SpaceSpec& domain, const std::vector<SpaceSpec>& codomains, Exponent p,
                                  double max_cond = 1e3) {
    for (;;) {
      OperatorSequence s = sequence(domain, codomains, p);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked_matrix(s));
      const auto& sv = svd.singularValues();
      if (sv(sv.size() - 1) * max_cond > sv(0)) return s;
    }
  }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

inline std::vector<SpaceSpec> codomains(const std::vector<std::size_t>& dims, const std::vector<Exponent>& r) {
  std::vector<SpaceSpec> out;
  for (std::size_t i = 0; i < dims.size(); ++i) out.emplace_back(dims[i], r[i % r.size()]);
  return out;
}

inline std::vector<SpaceSpec> duals(const std::vector<SpaceSpec>& ys) {
  std::vector<SpaceSpec> out;
  for (const auto& y : ys) out.push_back(y.dual());
  return out;
}

}  // namespace pgb::testing
