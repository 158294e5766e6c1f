#include "mubcert/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mubcert/error.hpp"

namespace mubcert {

namespace {

void emit(const Json& value, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* newline = indent > 0 ? "\n" : "";
  switch (value.type()) {
    case Json::value_t::number_float:
      out += format_real(value.get<double>(), 17);
      return;
    case Json::value_t::object: {
      if (value.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += newline;
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) {
          out += ",";
          out += newline;
        }
        first = false;
        out += pad;
        out += Json(key).dump();
        out += indent > 0 ? ": " : ":";
        emit(item, indent, depth + 1, out);
      }
      out += newline;
      out += close_pad;
      out += "}";
      return;
    }
    case Json::value_t::array: {
      if (value.empty()) {
        out += "[]";
        return;
      }
      // arrays of scalars stay on one line
      const bool flat = std::none_of(value.begin(), value.end(), [](const Json& v) { return v.is_structured(); });
      out += "[";
      bool first = true;
      for (const Json& item : value) {
        if (!first) out += flat ? ", " : ",";
        if (!flat) {
          out += newline;
          out += pad;
        }
        first = false;
        emit(item, indent, depth + 1, out);
      }
      if (!flat) {
        out += newline;
        out += close_pad;
      }
      out += "]";
      return;
    }
    default:
      out += value.dump();
  }
}

Json optional_real(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json real_matrix(const RealMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

[[noreturn]] void parse_fail(std::string_view source, const std::string& what) {
  throw Error(ErrorCode::ParseError, std::string(source) + ": " + what);
}

ComplexMatrix operator_from_json(const Json& op, int dim, std::string_view source, const std::string& where) {
  if (!op.is_array() || op.size() != static_cast<std::size_t>(dim)) {
    parse_fail(source, where + ": expected " + std::to_string(dim) + " rows");
  }
  ComplexMatrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const Json& row = op[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(dim)) {
      parse_fail(source, where + " row " + std::to_string(r) + ": expected " + std::to_string(dim) + " entries");
    }
    for (int c = 0; c < dim; ++c) {
      const Json& entry = row[static_cast<std::size_t>(c)];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
        parse_fail(source, where + " entry (" + std::to_string(r) + "," + std::to_string(c) + "): expected [re, im]");
      }
      m(r, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return m;
}

Povm povm_from_json(const Json& list, int dim, std::string_view source, const std::string& key) {
  if (!list.is_array() || list.empty()) parse_fail(source, "\"" + key + "\" must be a non-empty array of operators");
  std::vector<ComplexMatrix> ops;
  for (std::size_t i = 0; i < list.size(); ++i) {
    ops.push_back(operator_from_json(list[i], dim, source, key + "[" + std::to_string(i) + "]"));
  }
  try {
    return validate_povm(std::move(ops));
  } catch (const Error& e) {
    throw Error(e.code(), std::string(source) + ": measurement " + key + ": " + e.what());
  }
}

}  // namespace

std::string format_real(double value, int digits) {
  if (!std::isfinite(value)) return "null";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

std::string dump_json(const Json& value, int indent) {
  std::string out;
  emit(value, indent, 0, out);
  out += "\n";
  return out;
}

Json to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const MeasurementPair& pair) {
  Json doc;
  doc["dim"] = pair.dim();
  doc["A"] = Json::array();
  for (const ComplexMatrix& op : pair.a.operators()) doc["A"].push_back(to_json(op));
  doc["B"] = Json::array();
  for (const ComplexMatrix& op : pair.b.operators()) doc["B"].push_back(to_json(op));
  return doc;
}

Json to_json(const OverlapData& data) {
  Json doc;
  doc["t"] = real_matrix(data.t);
  doc["s"] = real_matrix(data.s);
  doc["n"] = real_matrix(data.n);
  return doc;
}

Json to_json(const AspBounds& b) {
  Json doc;
  doc["d"] = b.d;
  doc["p_bar"] = b.p_bar;
  doc["p_q"] = b.p_q;
  doc["p_0"] = b.p_0;
  doc["entropy_threshold"] = b.entropy_threshold;
  doc["s_min"] = b.s_min;
  doc["s_max"] = b.s_max;
  doc["h_s_lower"] = b.h_s_lower;
  doc["norm_sum_lower"] = optional_real(b.norm_sum_lower);
  doc["incompat_upper"] = optional_real(b.incompat_upper);
  doc["uncertainty_lower"] = b.uncertainty_lower;
  return doc;
}

Json to_json(const CertificationReport& report) {
  Json doc;
  doc["log_base"] = 2;
  doc["entropy_unit"] = "bits";
  doc["dim"] = report.dim;
  doc["p_bar"] = report.p_bar;
  doc["asp_bounds"] = to_json(report.asp_bounds);
  const DirectQuantities& d = report.direct;
  Json direct;
  direct["overlap_entropy"] = d.overlap_entropy;
  direct["norm_sum_a"] = d.norm_sum_a;
  direct["norm_sum_b"] = d.norm_sum_b;
  direct["overlap_data"] = to_json(d.overlap_data);
  direct["incompat_upper_direct"] = optional_real(d.incompat_upper_direct);
  direct["uncertainty_lower_direct"] = d.uncertainty_lower_direct;
  direct["mub_flag"] = d.mub_flag;
  doc["direct"] = std::move(direct);
  doc["degeneracy_flags"] = Json::array();
  for (bool flag : report.degeneracy_flags) doc["degeneracy_flags"].push_back(flag);
  doc["consistency"] = Json::array();
  for (const ConsistencyCheck& c : report.checks) {
    doc["consistency"].push_back(Json{{"name", c.name}, {"slack", c.slack}, {"passed", c.passed}});
  }
  doc["consistent"] = report.consistent;
  return doc;
}

Json to_json(const QracConfiguration& config) {
  Json doc = to_json(config.pair);
  doc["states"] = Json::array();
  for (const ComplexMatrix& rho : config.states) doc["states"].push_back(to_json(rho));
  return doc;
}

Json to_json(const SeesawResult& r) {
  Json doc;
  doc["best_asp"] = r.best_asp;
  doc["p_q"] = ideal_asp(r.best_configuration.dim());
  doc["gap"] = ideal_asp(r.best_configuration.dim()) - r.best_asp;
  doc["restarts_run"] = r.restarts_run;
  doc["iterations_per_restart"] = r.iterations_per_restart;
  doc["restart_best_asp"] = r.restart_best_asp;
  doc["converged"] = r.converged;
  doc["best_configuration"] = to_json(r.best_configuration);
  return doc;
}

Json to_json(const SuiteOutcome& o) {
  Json doc;
  doc["suite_name"] = o.suite_name;
  doc["trials"] = o.trials;
  doc["worst_margin"] = o.worst_margin;
  doc["worst_case_seed"] = o.worst_case_seed;
  doc["tolerance"] = o.tolerance;
  doc["violations"] = o.violations;
  doc["passed"] = o.passed;
  return doc;
}

MeasurementPair pair_from_json(const Json& doc, std::string_view source) {
  if (!doc.is_object()) parse_fail(source, "top level must be an object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer()) parse_fail(source, "missing integer \"dim\"");
  const int dim = doc["dim"].get<int>();
  if (dim < 1) parse_fail(source, "\"dim\" must be positive");
  if (!doc.contains("A") || !doc.contains("B")) parse_fail(source, "missing \"A\" or \"B\"");
  Povm a = povm_from_json(doc["A"], dim, source, "A");
  Povm b = povm_from_json(doc["B"], dim, source, "B");
  return {std::move(a), std::move(b)};
}

MeasurementPair read_measurement_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    std::ifstream again(path);
    std::string text((std::istreambuf_iterator<char>(again)), std::istreambuf_iterator<char>());
    const std::size_t offset = std::min(e.byte, text.size());
    const std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + offset, '\n'));
    parse_fail(path.string(), "line " + std::to_string(line) + ": " + e.what());
  }
  return pair_from_json(doc, path.string());
}

void write_measurement_file(const std::filesystem::path& path, const MeasurementPair& pair) {
  write_text_file(path, dump_json(to_json(pair)));
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace mubcert
