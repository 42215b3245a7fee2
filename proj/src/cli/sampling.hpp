#pragma once

#include <Eigen/Dense>

#include <random>
#include <vector>

#include "pgbessel/operators.hpp"

namespace pgb::cli {

inline Eigen::VectorXd normal_vector(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

// One N(0,1) matrix per member, scaled to unit Frobenius norm.
inline std::vector<Eigen::MatrixXd> unit_directions(std::mt19937_64& rng, const OperatorSequence& seq) {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(seq.size());
  for (const auto& m : seq.mats()) {
    Eigen::MatrixXd d = normal_vector(rng, m.size()).reshaped(m.rows(), m.cols());
    out.push_back(d / d.norm());
  }
  return out;
}

}  // namespace pgb::cli
