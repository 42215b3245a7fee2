#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "pgbessel/config.hpp"
#include "pgbessel/multipliers.hpp"
#include "pgbessel/operators.hpp"

namespace pgb {

// Perturbing a Bessel sequence Lambda by Theta with
// (sum ||Lambda_i - Theta_i||^p)^(1/p) <= K keeps Theta Bessel with bound
// B + K, and both ||U_Theta - U_Lambda|| and ||T_Theta - T_Lambda|| stay <= K.
struct PerturbationReport {
  BoundCertificate K;            // from per-term upper certificates
  BoundCertificate B_base;       // upper certificate for Lambda
  BoundCertificate B_perturbed;  // lower estimate for Theta
  double slack = 0.0;            // B_base + K - B_perturbed
  NormBounds analysis_gap;       // ||U_Theta - U_Lambda||
  NormBounds synthesis_gap;      // ||T_Theta - T_Lambda||
  bool bessel_bound_holds = false;
  bool gaps_hold = false;
};

PerturbationReport perturbation_check(const OperatorSequence& base, const OperatorSequence& perturbed,
                                      const Config& cfg);

// (sum_i upper(||A_i||)^s)^(1/s) for the per-index operator norms of `seq`
// from its domain to each codomain.
BoundCertificate aggregated_operator_norm(const OperatorSequence& seq, Exponent s, const Config& cfg);

enum class ContinuityKind { symbol, theta, lambda, joint };

std::string_view to_string(ContinuityKind kind);
std::optional<ContinuityKind> parse_continuity_kind(std::string_view s);

struct MultiplierTriple {
  Symbol m;
  OperatorSequence lambda;
  OperatorSequence theta;
};

// Produces the n-th member (n >= 1) of an approximating family.
using TripleGenerator = std::function<MultiplierTriple(int n)>;

struct ContinuityTrace {
  int n = 0;
  // ||m^(n) - m||_{p1} (symbol part) and ||m^(n) - m||_inf for comparison.
  double symbol_deviation = 0.0;
  double symbol_deviation_sup = 0.0;
  // (sum_i upper(||gap_i||)^{q1})^{1/q1} for Theta and Lambda.
  double theta_deviation = 0.0;
  double lambda_deviation = 0.0;
  double measured = 0.0;  // lower estimate of ||M^(n) - M||
  double bound = 0.0;
  // Joint kind: the three terms of the triangle decomposition.
  double symbol_term = 0.0;
  double lambda_term = 0.0;
  double theta_term = 0.0;
  double p1 = 2.0;
  double q1 = 2.0;
  bool holds = false;
};

struct ContinuityOptions {
  Exponent p1 = 2.0;
  int n_max = 40;
  double tolerance = 1e-9;
};

// Evaluates one continuity bound for n = 1..n_max and records the measured
// multiplier gap next to the bound.
std::vector<ContinuityTrace> continuity_suite(ContinuityKind kind, const MultiplierTriple& base,
                                              const TripleGenerator& generator,
                                              const ContinuityOptions& opts, const Config& cfg);

// Every trace holds and the last bound is below `final_bound`.
bool continuity_converges(const std::vector<ContinuityTrace>& traces, double final_bound);

// Deviation schedule ratio^n applied along fixed directions. For kinds that do
// not move a component, that component stays at the base value.
TripleGenerator geometric_generator(ContinuityKind kind, const MultiplierTriple& base,
                                    const Eigen::VectorXd& symbol_direction,
                                    const std::vector<Eigen::MatrixXd>& lambda_directions,
                                    const std::vector<Eigen::MatrixXd>& theta_directions,
                                    double ratio = 0.5);

}  // namespace pgb
