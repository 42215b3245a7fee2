#include "pgbessel/cli/instance.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pgbessel/error.hpp"

namespace pgb::cli {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::parse_error, "field " + path + ": " + msg);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) field_error(path + "/" + key, "missing");
  return *it;
}

double read_number(const json& j, const std::string& path) {
  if (!j.is_number()) field_error(path, "expected a number");
  return j.get<double>();
}

std::size_t read_dim(const json& j, const std::string& path) {
  if (!j.is_number_unsigned() || j.get<std::uint64_t>() == 0) field_error(path, "expected a positive integer");
  return j.get<std::size_t>();
}

Exponent read_exponent(const json& j, const std::string& path) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return Exponent::infinity();
    field_error(path, "exponent string must be \"inf\"");
  }
  const double v = read_number(j, path);
  try {
    return Exponent(v);
  } catch (const Error& e) {
    field_error(path, e.what());
  }
}

ojson write_exponent(Exponent e) {
  if (e.is_infinite()) return "inf";
  return e.value();
}

SpaceSpec read_space(const json& j, const std::string& path, const char* exp_key) {
  if (!j.is_object()) field_error(path, "expected an object");
  return SpaceSpec(read_dim(require(j, "dim", path), path + "/dim"),
                   read_exponent(require(j, exp_key, path), path + "/" + exp_key));
}

Eigen::MatrixXd read_matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) field_error(path, "expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  Eigen::Index cols = -1;
  Eigen::MatrixXd out;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto rpath = path + "/" + std::to_string(r);
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.empty()) field_error(rpath, "expected a non-empty array of numbers");
    if (cols < 0) {
      cols = static_cast<Eigen::Index>(row.size());
      out.resize(rows, cols);
    } else if (static_cast<Eigen::Index>(row.size()) != cols) {
      field_error(rpath, "row length " + std::to_string(row.size()) + " differs from " + std::to_string(cols));
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      out(r, c) = read_number(row[static_cast<std::size_t>(c)], rpath + "/" + std::to_string(c));
    }
  }
  return out;
}

ojson write_matrix(const Eigen::MatrixXd& m) {
  ojson rows = ojson::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ojson row = ojson::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Eigen::MatrixXd> read_matrices(const json& j, const std::string& path) {
  if (!j.is_array()) field_error(path, "expected an array of matrices");
  std::vector<Eigen::MatrixXd> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_matrix(j[i], path + "/" + std::to_string(i)));
  return out;
}

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

OperatorSequence Instance::lambda_sequence() const { return OperatorSequence(x2, y, lambda, frame_exponent); }

OperatorSequence Instance::theta_sequence() const {
  std::vector<SpaceSpec> duals;
  duals.reserve(y.size());
  for (const auto& s : y) duals.push_back(s.dual());
  return OperatorSequence(x1.dual(), std::move(duals), theta, frame_exponent.conjugate());
}

void Instance::validate() const {
  if (version != kInstanceVersion) {
    field_error("/version", "unsupported version " + std::to_string(version));
  }
  if (y.empty()) field_error("/y", "index set is empty");
  if (lambda.size() != y.size()) field_error("/lambda", "expected " + std::to_string(y.size()) + " matrices");
  if (theta.size() != y.size()) field_error("/theta", "expected " + std::to_string(y.size()) + " matrices");
  if (static_cast<std::size_t>(symbol.size()) != y.size()) {
    field_error("/symbol", "expected " + std::to_string(y.size()) + " entries");
  }
  auto check_shape = [&](const Eigen::MatrixXd& m, std::size_t rows, std::size_t cols, const std::string& path) {
    if (static_cast<std::size_t>(m.rows()) != rows || static_cast<std::size_t>(m.cols()) != cols) {
      field_error(path, "shape " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                            std::to_string(rows) + "x" + std::to_string(cols));
    }
    if (!m.allFinite()) field_error(path, "entries must be finite");
  };
  for (std::size_t i = 0; i < y.size(); ++i) {
    check_shape(lambda[i], y[i].dim, x2.dim, "/lambda/" + std::to_string(i));
    check_shape(theta[i], y[i].dim, x1.dim, "/theta/" + std::to_string(i));
  }
  if (!symbol.allFinite()) field_error("/symbol", "entries must be finite");
  if (frame_exponent.is_infinite() || frame_exponent.value() <= 1.0) {
    field_error("/frame_exponent", "must lie in (1, inf)");
  }
}

std::string serialize(const Instance& inst) {
  ojson j;
  j["version"] = inst.version;
  j["x1"] = {{"dim", inst.x1.dim}, {"p", write_exponent(inst.x1.exponent)}};
  j["x2"] = {{"dim", inst.x2.dim}, {"p", write_exponent(inst.x2.exponent)}};
  j["frame_exponent"] = write_exponent(inst.frame_exponent);
  j["y"] = ojson::array();
  for (const auto& s : inst.y) {
    j["y"].push_back(ojson{{"dim", s.dim}, {"r", write_exponent(s.exponent)}});
  }
  j["lambda"] = ojson::array();
  for (const auto& m : inst.lambda) j["lambda"].push_back(write_matrix(m));
  j["theta"] = ojson::array();
  for (const auto& m : inst.theta) j["theta"].push_back(write_matrix(m));
  j["symbol"] = ojson::array();
  for (Eigen::Index i = 0; i < inst.symbol.size(); ++i) j["symbol"].push_back(inst.symbol[i]);
  if (inst.p1) j["p1"] = write_exponent(*inst.p1);
  if (inst.seed) j["seed"] = *inst.seed;
  return j.dump(2) + "\n";
}

Instance parse_instance(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse_error, line_column(text, e.byte) + ": malformed JSON");
  }
  if (!j.is_object()) field_error("/", "expected an object");

  Instance inst;
  const json& ver = require(j, "version", "");
  if (!ver.is_number_integer()) field_error("/version", "expected an integer");
  inst.version = ver.get<int>();
  inst.x1 = read_space(require(j, "x1", ""), "/x1", "p");
  inst.x2 = read_space(require(j, "x2", ""), "/x2", "p");
  inst.frame_exponent = read_exponent(require(j, "frame_exponent", ""), "/frame_exponent");
  const json& ys = require(j, "y", "");
  if (!ys.is_array()) field_error("/y", "expected an array");
  for (std::size_t i = 0; i < ys.size(); ++i) inst.y.push_back(read_space(ys[i], "/y/" + std::to_string(i), "r"));
  inst.lambda = read_matrices(require(j, "lambda", ""), "/lambda");
  inst.theta = read_matrices(require(j, "theta", ""), "/theta");
  const json& sym = require(j, "symbol", "");
  if (!sym.is_array()) field_error("/symbol", "expected an array");
  inst.symbol.resize(static_cast<Eigen::Index>(sym.size()));
  for (std::size_t i = 0; i < sym.size(); ++i) {
    inst.symbol[static_cast<Eigen::Index>(i)] = read_number(sym[i], "/symbol/" + std::to_string(i));
  }
  if (auto it = j.find("p1"); it != j.end()) inst.p1 = read_exponent(*it, "/p1");
  if (auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_unsigned()) field_error("/seed", "expected a non-negative integer");
    inst.seed = it->get<std::uint64_t>();
  }
  inst.validate();
  return inst;
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::parse_error, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_instance(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::invalid_argument, "cannot write " + path.string());
  out << serialize(inst);
}

}  // namespace pgb::cli
