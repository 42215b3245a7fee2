// pgbessel: generate multiplier instances and check them.
//
// Exit status: 0 when every check passes, 1 when a check fails or a
// computation is refused, 2 on usage or parse errors.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pgbessel/cli/commands.hpp"
#include "pgbessel/cli/generate.hpp"
#include "pgbessel/cli/instance.hpp"
#include "pgbessel/cli/report.hpp"
#include "pgbessel/error.hpp"

namespace {

using namespace pgb;
using namespace pgb::cli;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

Exponent parse_exponent(const std::string& s) {
  if (s == "inf") return Exponent::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw Error(ErrorCode::invalid_argument, "bad exponent '" + s + "'");
  return Exponent(v);
}

struct Globals {
  std::optional<std::uint64_t> seed;
  double tol_exact = Config{}.tol_exact;
  double tol_estimate = Config{}.tol_estimate;
  int restarts = Config{}.restarts;
  std::string output = "json";
  bool no_timing = false;
};

Config make_config(const Globals& g, const std::optional<Instance>& inst) {
  Config cfg;
  cfg.tol_exact = g.tol_exact;
  cfg.tol_estimate = g.tol_estimate;
  cfg.restarts = g.restarts;
  if (g.seed) {
    cfg.seed = *g.seed;
  } else if (inst && inst->seed) {
    cfg.seed = *inst->seed;
  }
  return cfg;
}

OutputFormat format_of(const Globals& g) { return g.output == "text" ? OutputFormat::text : OutputFormat::json; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bessel multipliers on finite-dimensional l^p product spaces"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "RNG seed (defaults to the instance seed, then 0)");
  app.add_option("--tol-exact", g.tol_exact, "tolerance for exact identities");
  app.add_option("--tol-estimate", g.tol_estimate, "tolerance for optimization estimates");
  app.add_option("--restarts", g.restarts, "multi-start count for norm estimation")->check(CLI::PositiveNumber);
  app.add_option("--output", g.output, "report format")->check(CLI::IsMember({"json", "text"}));

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "generate a random instance");
  std::string gen_kind = "bessel";
  std::size_t x1_dim = 2;
  std::optional<std::size_t> x2_dim;
  std::vector<std::size_t> y_dims{1, 1};
  std::string frame_p = "2";
  std::string x1_p = "2";
  std::string x2_p = "2";
  std::vector<std::string> y_r;
  int max_attempts = 100;
  double symbol_min = 0.5;
  std::string gen_out;
  gen_cmd->add_option("--kind", gen_kind, "bessel | frame | riesz | riesz-pair")
      ->check(CLI::IsMember({"bessel", "frame", "riesz", "riesz-pair"}));
  gen_cmd->add_option("--x1-dim", x1_dim, "dim X_1")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--x2-dim", x2_dim, "dim X_2 (default dim X_1)")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--y-dims", y_dims, "dims of Y_i, comma separated")->delimiter(',');
  gen_cmd->add_option("--p", frame_p, "frame exponent p in (1, inf)");
  gen_cmd->add_option("--x1-p", x1_p, "exponent of X_1");
  gen_cmd->add_option("--x2-p", x2_p, "exponent of X_2");
  gen_cmd->add_option("--y-r", y_r, "exponents of Y_i, comma separated")->delimiter(',');
  gen_cmd->add_option("--max-attempts", max_attempts, "rejection sampling cap");
  gen_cmd->add_option("--symbol-min", symbol_min, "smallest |m_i| drawn");
  gen_cmd->add_option("-o,--out", gen_out, "write the instance here instead of stdout");

  // commands reading an instance
  std::string instance_path;
  auto add_instance = [&](CLI::App* sub) {
    sub->add_option("instance", instance_path, "instance JSON file")->required();
  };
  auto* check_cmd = app.add_subcommand("check", "run verification suites on an instance");
  add_instance(check_cmd);
  std::string suites = "all";
  check_cmd->add_option("--suites", suites, "comma separated suites or 'all'");
  check_cmd->add_flag("--no-timing", g.no_timing, "omit wall-clock fields");

  auto* bounds_cmd = app.add_subcommand("bounds", "multiplier norm bounds");
  add_instance(bounds_cmd);
  auto* dual_cmd = app.add_subcommand("dual", "dual Riesz bases");
  add_instance(dual_cmd);
  auto* multiply_cmd = app.add_subcommand("multiply", "assemble the multiplier");
  add_instance(multiply_cmd);
  auto* invert_cmd = app.add_subcommand("invert", "invert the multiplier");
  add_instance(invert_cmd);
  auto* perturb_cmd = app.add_subcommand("perturb", "perturbation of Lambda");
  add_instance(perturb_cmd);
  double delta = 1e-2;
  perturb_cmd->add_option("--delta", delta, "perturbation size");
  auto* cont_cmd = app.add_subcommand("continuity", "continuity traces");
  add_instance(cont_cmd);
  std::string cont_kind = "symbol";
  std::optional<std::string> cont_p1;
  int n_max = 40;
  cont_cmd->add_option("--kind", cont_kind, "symbol | theta | lambda | joint")
      ->check(CLI::IsMember({"symbol", "theta", "lambda", "joint"}));
  cont_cmd->add_option("--p1", cont_p1, "auxiliary exponent p_1");
  cont_cmd->add_option("--n-max", n_max, "number of steps")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) {
      GenRequest req;
      req.kind = *parse_gen_kind(gen_kind);
      req.x1_dim = x1_dim;
      req.x2_dim = x2_dim.value_or(x1_dim);
      req.y_dims = y_dims;
      req.frame_exponent = parse_exponent(frame_p);
      req.x1_exponent = parse_exponent(x1_p);
      req.x2_exponent = parse_exponent(x2_p);
      for (const auto& r : y_r) req.y_exponents.push_back(parse_exponent(r));
      req.seed = g.seed.value_or(0);
      req.max_attempts = max_attempts;
      req.symbol_min = symbol_min;
      req.symbol_max = std::max(symbol_min, req.symbol_max);
      const Instance inst = gen(req, make_config(g, std::nullopt));
      if (gen_out.empty()) {
        std::cout << serialize(inst);
      } else {
        save_instance(inst, gen_out);
      }
      return 0;
    }

    const Instance inst = load_instance(instance_path);
    const Config cfg = make_config(g, inst);
    const OutputFormat fmt = format_of(g);

    if (check_cmd->parsed()) {
      const CheckReport report = check(inst, parse_suite_list(suites), cfg);
      std::cout << render(to_document(report, !g.no_timing), fmt);
      return report.ok() ? 0 : kExitFail;
    }
    if (bounds_cmd->parsed()) {
      std::cout << render(bounds_command(inst, cfg), fmt);
      return 0;
    }
    if (dual_cmd->parsed()) {
      std::cout << render(dual_command(inst, cfg), fmt);
      return 0;
    }
    if (multiply_cmd->parsed()) {
      std::cout << render(multiply_command(inst), fmt);
      return 0;
    }
    if (invert_cmd->parsed()) {
      std::cout << render(invert_command(inst, cfg), fmt);
      return 0;
    }
    if (perturb_cmd->parsed()) {
      const Document d = perturb_command(inst, delta, cfg);
      std::cout << render(d, fmt);
      return d["bessel_bound_holds"].get<bool>() && d["gaps_hold"].get<bool>() ? 0 : kExitFail;
    }
    if (cont_cmd->parsed()) {
      ContinuityRequest req;
      req.kind = *parse_continuity_kind(cont_kind);
      if (cont_p1) req.p1 = parse_exponent(*cont_p1);
      req.n_max = n_max;
      const Document d = continuity_command(inst, req, cfg);
      std::cout << render(d, fmt);
      return d["all_hold"].get<bool>() ? 0 : kExitFail;
    }
  } catch (const Error& e) {
    std::cerr << "pgbessel: " << to_string(e.code()) << ": " << e.what() << "\n";
    const bool usage = e.code() == ErrorCode::parse_error || e.code() == ErrorCode::invalid_argument ||
                       e.code() == ErrorCode::invalid_exponent;
    return usage ? kExitUsage : kExitFail;
  }
  return kExitUsage;
}
