#pragma once

#include <optional>

#include "pgbessel/cli/instance.hpp"
#include "pgbessel/cli/report.hpp"
#include "pgbessel/config.hpp"
#include "pgbessel/perturbation.hpp"

namespace pgb::cli {

// Each command returns a document for render(); errors propagate as pgb::Error.

// ||M|| with the Bessel-product upper bound and, for Riesz pairs, the lower bound.
Document bounds_command(const Instance& inst, const Config& cfg);
// Dual Riesz bases of Lambda and Theta where they exist, with residuals.
Document dual_command(const Instance& inst, const Config& cfg);
// Assembled matrix of M_{m,Lambda,Theta} and assembly advisories.
Document multiply_command(const Instance& inst);
// M^{-1} via dual bases and both composition residuals.
Document invert_command(const Instance& inst, const Config& cfg);
// Perturbation of Lambda along a seeded unit-Frobenius direction of size delta.
Document perturb_command(const Instance& inst, double delta, const Config& cfg);

struct ContinuityRequest {
  ContinuityKind kind = ContinuityKind::symbol;
  std::optional<Exponent> p1;  // falls back to the instance, then 2
  int n_max = 40;
};
// Full trace of one continuity part under the 2^-n schedule.
Document continuity_command(const Instance& inst, const ContinuityRequest& req, const Config& cfg);

}  // namespace pgb::cli
