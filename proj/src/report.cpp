// SPDX-License-Identifier: Apache-2.0

#include "scalarspec/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace scalarspec {

namespace {

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> defaults = {
      {"identities", 1e-9},     {"bounds", 1e-9},
      {"newton", 1e-10},        {"pointwise", 1e-12},
      {"integral", 1e-6},       {"minmax", 1e-6},
      {"minmax_umbilical", 1e-8},
      {"centering", 1e-8},      {"moebius_norm", 1e-12},
      {"conformal", 1e-10},     {"differential", 1e-6},
      {"hessian", 1e-5},        {"discrete_sphere", 2e-3},
      {"discrete_lambda2", 5e-3}, {"order_band", 0.3},
  };
  return defaults;
}

}  // namespace

void RunReport::sort_rows() {
  std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    if (a.suite != b.suite) return a.suite < b.suite;
    if (a.n != b.n) return a.n < b.n;
    const int am = a.m.value_or(-1), bm = b.m.value_or(-1);
    if (am != bm) return am < bm;
    if (a.case_name != b.case_name) return a.case_name < b.case_name;
    return a.quantity < b.quantity;
  });
}

std::string format_float(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string report_to_csv(const RunReport& report) {
  std::ostringstream out;
  out << "suite,case,n,m,c_or_r,quantity,value,bound_or_target,slack,tolerance,pass\n";
  for (const auto& row : report.rows) {
    out << row.suite << ',' << row.case_name << ',' << row.n << ',';
    if (row.m) out << *row.m;
    out << ',';
    if (row.c_or_r) out << format_float(*row.c_or_r);
    out << ',' << row.quantity << ',' << format_float(row.value) << ','
        << format_float(row.bound_or_target) << ',' << format_float(row.slack) << ','
        << format_float(row.tolerance) << ',' << (row.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string report_to_json(const RunReport& report) {
  nlohmann::json doc;
  doc["suite"] = report.suite;
  doc["overall_pass"] = report.overall_pass;
  doc["wall_time_s"] = report.wall_time_s;
  doc["tool_version"] = report.tool_version;
  auto& rows = doc["rows"] = nlohmann::json::array();
  for (const auto& row : report.rows) {
    nlohmann::json jr;
    jr["suite"] = row.suite;
    jr["case"] = row.case_name;
    jr["n"] = row.n;
    if (row.m)
      jr["m"] = *row.m;
    else
      jr["m"] = nullptr;
    if (row.c_or_r)
      jr["c_or_r"] = *row.c_or_r;
    else
      jr["c_or_r"] = nullptr;
    jr["quantity"] = row.quantity;
    jr["value"] = row.value;
    jr["bound_or_target"] = row.bound_or_target;
    jr["slack"] = row.slack;
    jr["tolerance"] = row.tolerance;
    jr["pass"] = row.pass;
    rows.push_back(std::move(jr));
  }
  return doc.dump(2);
}

RunReport report_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& err) {
    throw ParameterError(std::string("report: bad JSON: ") + err.what());
  }
  RunReport report;
  try {
    report.suite = doc.at("suite").get<std::string>();
    report.overall_pass = doc.at("overall_pass").get<bool>();
    report.wall_time_s = doc.at("wall_time_s").get<double>();
    report.tool_version = doc.at("tool_version").get<std::string>();
    for (const auto& jr : doc.at("rows")) {
      ReportRow row;
      row.suite = jr.at("suite").get<std::string>();
      row.case_name = jr.at("case").get<std::string>();
      row.n = jr.at("n").get<int>();
      if (!jr.at("m").is_null()) row.m = jr.at("m").get<int>();
      if (!jr.at("c_or_r").is_null()) row.c_or_r = jr.at("c_or_r").get<double>();
      row.quantity = jr.at("quantity").get<std::string>();
      row.value = jr.at("value").get<double>();
      row.bound_or_target = jr.at("bound_or_target").get<double>();
      row.slack = jr.at("slack").get<double>();
      row.tolerance = jr.at("tolerance").get<double>();
      row.pass = jr.at("pass").get<bool>();
      report.rows.push_back(std::move(row));
    }
  } catch (const nlohmann::json::exception& err) {
    throw ParameterError(std::string("report: bad field: ") + err.what());
  }
  return report;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << text;
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

double SweepConfig::tol(const std::string& name) const {
  if (auto it = tolerances.find(name); it != tolerances.end()) return it->second;
  const auto& defaults = default_tolerances();
  if (auto it = defaults.find(name); it != defaults.end()) return it->second;
  throw ParameterError("unknown tolerance name: " + name);
}

void SweepConfig::validate() const {
  if (n_min < 3 || n_max < n_min) throw ParameterError("config: need 3 <= n_min <= n_max");
  if (resolution < 8 || resolution % 2 != 0)
    throw ParameterError("config: resolution must be even and >= 8");
  for (int g : grid_sizes)
    if (g < 64) throw ParameterError("config: grid sizes must be >= 64");
  for (double r : r_list)
    if (!(r > 1.0)) throw ParameterError("config: umbilical r values must exceed 1");
  for (const auto& [name, value] : tolerances) {
    if (!(value > 0.0)) throw ParameterError("config: tolerance must be positive: " + name);
    if (!default_tolerances().count(name)) throw ParameterError("config: unknown tolerance: " + name);
  }
}

SweepConfig config_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
    if (!doc.is_object()) throw ParameterError("config: top level must be a JSON object");
  } catch (const nlohmann::json::exception& err) {
    throw ParameterError(std::string("config: bad JSON: ") + err.what());
  }
  SweepConfig config;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "n_min")
        config.n_min = value.get<int>();
      else if (key == "n_max")
        config.n_max = value.get<int>();
      else if (key == "m_policy") {
        if (value.is_string()) {
          if (value.get<std::string>() != "all")
            throw ParameterError("config: m_policy must be \"all\" or a list");
          config.m_list.clear();
        } else {
          config.m_list = value.get<std::vector<int>>();
        }
      } else if (key == "r_list")
        config.r_list = value.get<std::vector<double>>();
      else if (key == "resolution")
        config.resolution = value.get<int>();
      else if (key == "grid_sizes")
        config.grid_sizes = value.get<std::vector<int>>();
      else if (key == "tolerances")
        config.tolerances = value.get<std::map<std::string, double>>();
      else if (key == "seed")
        config.seed = value.get<std::uint64_t>();
      else
        throw ParameterError("config: unknown key: " + key);
    }
  } catch (const nlohmann::json::exception& err) {
    throw ParameterError(std::string("config: bad field: ") + err.what());
  }
  config.validate();
  return config;
}

std::string config_to_json(const SweepConfig& config) {
  nlohmann::json doc;
  doc["n_min"] = config.n_min;
  doc["n_max"] = config.n_max;
  if (config.m_list.empty())
    doc["m_policy"] = "all";
  else
    doc["m_policy"] = config.m_list;
  doc["r_list"] = config.r_list;
  doc["resolution"] = config.resolution;
  doc["grid_sizes"] = config.grid_sizes;
  doc["tolerances"] = config.tolerances;
  doc["seed"] = config.seed;
  return doc.dump(2);
}

}  // namespace scalarspec
