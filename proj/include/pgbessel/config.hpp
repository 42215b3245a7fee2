#pragma once

#include <cstddef>
#include <cstdint>

namespace pgb {

// Numerical policy shared by every module. A single value of this type is
// threaded through all computations so reports can echo it verbatim.
struct Config {
  // Relative tolerance for identities that hold exactly in real arithmetic.
  double tol_exact = 1e-10;
  // Tolerance for optimization-based estimates.
  double tol_estimate = 1e-6;

  // Multi-start ascent / descent.
  std::uint64_t seed = 0;
  int restarts = 16;
  int max_iterations = 500;
  double stop_delta = 1e-12;

  // p = inf exact norms enumerate 2^dim sign patterns.
  std::size_t vertex_limit = 20;

  // Branch-and-bound certificates for lower constants run only up to this
  // domain dimension.
  std::size_t grid_dim_limit = 3;
  std::size_t grid_cell_budget = 200000;
  double grid_rel_gap = 1e-3;

  // Rank decisions: singular values below rank_threshold * sigma_max count
  // as zero. Frame decisions: A > frame_threshold * B.
  double rank_threshold = 1e-10;
  double frame_threshold = 1e-8;

  // Smallest |m_i| accepted by invert.
  double min_symbol = 1e-12;
};

}  // namespace pgb
