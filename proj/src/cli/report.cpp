#include "pgbessel/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "pgbessel/error.hpp"

namespace pgb::cli {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "unknown";
}

bool CheckReport::ok() const { return count(Status::fail) == 0; }

std::size_t CheckReport::count(Status s) const {
  std::size_t n = 0;
  for (const auto& it : items) n += it.status == s ? 1 : 0;
  return n;
}

std::string_view to_string(Suite s) {
  switch (s) {
    case Suite::spaces: return "spaces";
    case Suite::adjoint: return "adjoint";
    case Suite::classify: return "classify";
    case Suite::riesz: return "riesz";
    case Suite::dual: return "dual";
    case Suite::bounds: return "bounds";
    case Suite::invert: return "invert";
    case Suite::injectivity: return "injectivity";
    case Suite::perturb: return "perturb";
    case Suite::continuity: return "continuity";
  }
  return "unknown";
}

std::vector<Suite> all_suites() {
  return {Suite::spaces, Suite::adjoint, Suite::classify,    Suite::riesz,   Suite::dual,
          Suite::bounds, Suite::invert,  Suite::injectivity, Suite::perturb, Suite::continuity};
}

std::optional<Suite> parse_suite(std::string_view s) {
  for (auto k : all_suites()) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::vector<Suite> parse_suite_list(std::string_view s) {
  if (s == "all" || s.empty()) return all_suites();
  std::vector<Suite> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t end = std::min(s.find(',', start), s.size());
    const std::string_view tok = s.substr(start, end - start);
    auto suite = parse_suite(tok);
    if (!suite) throw Error(ErrorCode::invalid_argument, "unknown suite '" + std::string(tok) + "'");
    out.push_back(*suite);
    start = end + 1;
  }
  return out;
}

namespace {

// JSON has no infinity; non-finite values are written as strings.
Document number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

Document vector_document(const Eigen::VectorXd& v) {
  Document out = Document::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v[i]));
  return out;
}

void flatten(const Document& doc, const std::string& path, std::ostringstream& os) {
  if (doc.is_object()) {
    for (const auto& [k, v] : doc.items()) flatten(v, path.empty() ? k : path + "." + k, os);
    return;
  }
  if (doc.is_array()) {
    const bool scalar_row = std::all_of(doc.begin(), doc.end(), [](const Document& d) { return d.is_primitive(); });
    if (scalar_row) {
      os << path << ": [";
      for (std::size_t i = 0; i < doc.size(); ++i) {
        if (i) os << ", ";
        if (doc[i].is_number_float()) {
          os << std::setprecision(12) << doc[i].get<double>();
        } else if (doc[i].is_string()) {
          os << doc[i].get<std::string>();
        } else {
          os << doc[i].dump();
        }
      }
      os << "]\n";
      return;
    }
    for (std::size_t i = 0; i < doc.size(); ++i) flatten(doc[i], path + "[" + std::to_string(i) + "]", os);
    return;
  }
  os << path << ": ";
  if (doc.is_number_float()) {
    os << std::setprecision(12) << doc.get<double>();
  } else if (doc.is_string()) {
    os << doc.get<std::string>();
  } else {
    os << doc.dump();
  }
  os << "\n";
}

}  // namespace

Document config_document(const Config& cfg) {
  Document d;
  d["seed"] = cfg.seed;
  d["tol_exact"] = cfg.tol_exact;
  d["tol_estimate"] = cfg.tol_estimate;
  d["restarts"] = cfg.restarts;
  d["max_iterations"] = cfg.max_iterations;
  d["vertex_limit"] = cfg.vertex_limit;
  d["grid_dim_limit"] = cfg.grid_dim_limit;
  d["rank_threshold"] = cfg.rank_threshold;
  d["frame_threshold"] = cfg.frame_threshold;
  d["min_symbol"] = cfg.min_symbol;
  return d;
}

Document bound_document(const BoundCertificate& b) {
  Document d;
  d["value"] = number(b.value);
  d["kind"] = std::string(to_string(b.kind));
  d["method"] = b.method;
  if (b.witness) d["witness"] = vector_document(*b.witness);
  return d;
}

Document bounds_document(const NormBounds& b) {
  Document d;
  d["lower"] = bound_document(b.lower);
  d["upper"] = bound_document(b.upper);
  return d;
}

Document matrix_document(const Eigen::MatrixXd& m) {
  Document rows = Document::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(vector_document(m.row(r).transpose()));
  return rows;
}

Document to_document(const CheckReport& report, bool timing) {
  Document d;
  d["config"] = config_document(report.config);
  Document summary;
  summary["pass"] = report.count(Status::pass);
  summary["fail"] = report.count(Status::fail);
  summary["skipped"] = report.count(Status::skipped);
  summary["ok"] = report.ok();
  d["summary"] = summary;
  Document items = Document::array();
  for (const auto& it : report.items) {
    Document e;
    e["suite"] = it.suite;
    e["name"] = it.name;
    e["status"] = std::string(to_string(it.status));
    if (!it.detail.empty()) e["detail"] = it.detail;
    if (!it.values.empty()) {
      Document vals;
      for (const auto& [k, v] : it.values) vals[k] = number(v);
      e["values"] = vals;
    }
    if (!it.labels.empty()) {
      Document labs;
      for (const auto& [k, v] : it.labels) labs[k] = v;
      e["labels"] = labs;
    }
    if (it.witness) e["witness"] = vector_document(*it.witness);
    if (timing) e["elapsed_ms"] = it.elapsed_ms;
    items.push_back(std::move(e));
  }
  d["checks"] = std::move(items);
  return d;
}

std::string render(const Document& doc, OutputFormat format) {
  if (format == OutputFormat::json) return doc.dump(2) + "\n";
  std::ostringstream os;
  flatten(doc, "", os);
  return os.str();
}

}  // namespace pgb::cli
