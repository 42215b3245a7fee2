#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "pgbessel/cli/instance.hpp"
#include "pgbessel/config.hpp"
#include "pgbessel/operators.hpp"

namespace pgb::cli {

using Document = nlohmann::ordered_json;

enum class Status { pass, fail, skipped };
std::string_view to_string(Status s);

struct CheckItem {
  std::string suite;
  std::string name;
  Status status = Status::pass;
  std::string detail;
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::pair<std::string, std::string>> labels;  // certificate kinds, flags
  std::optional<Eigen::VectorXd> witness;
  double elapsed_ms = 0.0;
};

struct CheckReport {
  std::vector<CheckItem> items;
  Config config;

  bool ok() const;
  std::size_t count(Status s) const;
};

enum class Suite { spaces, adjoint, classify, riesz, dual, bounds, invert, injectivity, perturb, continuity };

std::string_view to_string(Suite s);
std::optional<Suite> parse_suite(std::string_view s);
std::vector<Suite> all_suites();
// Comma-separated list, or "all". Throws invalid_argument naming the bad entry.
std::vector<Suite> parse_suite_list(std::string_view s);

// Runs the selected suites in a fixed order. All randomness is drawn from
// cfg.seed, so the report is a function of (instance, cfg) apart from timing.
CheckReport check(const Instance& inst, const std::vector<Suite>& suites, const Config& cfg);

enum class OutputFormat { json, text };

Document config_document(const Config& cfg);
Document bound_document(const BoundCertificate& b);
Document bounds_document(const NormBounds& b);
Document matrix_document(const Eigen::MatrixXd& m);
Document to_document(const CheckReport& report, bool timing);

// JSON is printed with two-space indentation; text is one "path: value" line
// per leaf.
std::string render(const Document& doc, OutputFormat format);

}  // namespace pgb::cli
