#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "blowdiag/criteria.hpp"

#ifndef BLOWDIAG_VERSION
#define BLOWDIAG_VERSION "0.1.0"
#endif

namespace blowdiag {

/// Bumped whenever the CSV column list changes.
inline constexpr int series_format_version = 1;

inline std::string tool_version() { return BLOWDIAG_VERSION; }

/// 64-bit FNV-1a, hex encoded.
inline std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// CSV: header "t,<columns in enum order>", empty cell for an absent value.
// ---------------------------------------------------------------------------

inline std::string series_csv(const DiagnosticSeries& series) {
  std::string out = "t";
  for (int c = 0; c < column_count; ++c) out += std::string(",") + column_name(static_cast<Column>(c));
  out += '\n';
  for (const auto& s : series.samples()) {
    out += format_double(s.t);
    for (const auto& v : s.values) {
      out += ',';
      if (v) out += format_double(*v);
    }
    out += '\n';
  }
  return out;
}

namespace detail {

inline std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

inline double parse_double(const std::string& s, const std::string& where) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error(where + ": cannot parse number '" + s + "'");
  }
  if (pos != s.size()) throw std::runtime_error(where + ": trailing characters in '" + s + "'");
  return v;
}

inline std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << text;
  if (!os) throw std::runtime_error("write failed for " + path);
}

}  // namespace detail

/// Parses samples from CSV text. Columns are matched by header name, so files
/// holding a subset of the columns are accepted; unknown columns are an error.
inline std::vector<DiagnosticSample> parse_series_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("series csv: missing header");
  const auto header = detail::split(line, ',');
  if (header.empty() || header[0] != "t") throw std::runtime_error("series csv: first column must be 't'");
  std::vector<Column> cols;
  for (std::size_t i = 1; i < header.size(); ++i) {
    auto c = parse_column(header[i]);
    if (!c) throw std::runtime_error("series csv: unknown column '" + header[i] + "'");
    cols.push_back(*c);
  }
  std::vector<DiagnosticSample> out;
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto cells = detail::split(line, ',');
    const std::string where = "series csv row " + std::to_string(row);
    if (cells.size() != header.size()) throw std::runtime_error(where + ": expected " + std::to_string(header.size()) + " cells");
    DiagnosticSample s;
    s.t = detail::parse_double(cells[0], where);
    for (std::size_t i = 1; i < cells.size(); ++i)
      if (!cells[i].empty()) s[cols[i - 1]] = detail::parse_double(cells[i], where);
    out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON sidecar
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json constants_json(const FittedConstants& c) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  auto put = [&](const char* name, const std::optional<double>& v) {
    if (v) j[name] = *v;
  };
  put("commutator", c.commutator);
  put("alpha_bound", c.alpha_bound);
  put("gn", c.gn);
  put("growth", c.growth);
  put("K", c.K);
  return j;
}

inline FittedConstants constants_from_json(const nlohmann::json& j) {
  FittedConstants c;
  auto get = [&](const char* name, std::optional<double>& v) {
    if (j.contains(name) && j[name].is_number()) v = j[name].get<double>();
  };
  get("commutator", c.commutator);
  get("alpha_bound", c.alpha_bound);
  get("gn", c.gn);
  get("growth", c.growth);
  get("K", c.K);
  return c;
}

inline nlohmann::ordered_json sidecar_json(const DiagnosticSeries& series) {
  const auto& m = series.meta();
  nlohmann::ordered_json j;
  j["format_version"] = series_format_version;
  j["tool_version"] = tool_version();
  j["model"] = to_string(m.model);
  j["source"] = m.source;
  j["grid"] = {{"dim", m.dim}, {"n", m.n}};
  j["params"] = {{"k", m.k}, {"p", m.p}, {"N", m.dim}};
  j["nu"] = m.nu;
  if (m.base_norm) j["base_norm"] = *m.base_norm;
  j["config_hash"] = m.config_hash;
  j["seed"] = m.seed;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();
  for (const auto& [k, v] : m.extra) extra[k] = v;
  j["extra"] = extra;
  j["fitted_constants"] = constants_json(m.constants);
  nlohmann::ordered_json cols = nlohmann::ordered_json::array({"t"});
  for (int c = 0; c < column_count; ++c) cols.push_back(column_name(static_cast<Column>(c)));
  j["columns"] = cols;
  return j;
}

inline SeriesMetadata metadata_from_json(const nlohmann::json& j) {
  if (!j.contains("format_version") || j["format_version"].get<int>() != series_format_version)
    throw std::runtime_error("series sidecar: unsupported format_version");
  SeriesMetadata m;
  m.model = parse_model(j.at("model").get<std::string>());
  m.source = j.value("source", std::string("simulation"));
  m.dim = j.at("grid").at("dim").get<int>();
  m.n = j.at("grid").at("n").get<int>();
  m.k = j.at("params").at("k").get<int>();
  m.p = j.at("params").at("p").get<double>();
  m.nu = j.value("nu", 0.0);
  if (j.contains("base_norm")) m.base_norm = j["base_norm"].get<double>();
  m.config_hash = j.value("config_hash", std::string());
  m.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("extra"))
    for (auto it = j["extra"].begin(); it != j["extra"].end(); ++it) m.extra[it.key()] = it.value().get<std::string>();
  if (j.contains("fitted_constants")) m.constants = constants_from_json(j["fitted_constants"]);
  return m;
}

/// Sidecar path for a CSV path: "run.csv" → "run.json".
inline std::string sidecar_path(const std::string& csv_path) {
  const auto dot = csv_path.rfind('.');
  const auto slash = csv_path.find_last_of('/');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) return csv_path.substr(0, dot) + ".json";
  return csv_path + ".json";
}

inline void write_series(const DiagnosticSeries& series, const std::string& csv_path) {
  detail::write_file(csv_path, series_csv(series));
  detail::write_file(sidecar_path(csv_path), sidecar_json(series).dump(2) + "\n");
}

inline DiagnosticSeries read_series(const std::string& csv_path) {
  const auto meta = metadata_from_json(nlohmann::json::parse(detail::read_file(sidecar_path(csv_path))));
  DiagnosticSeries series(meta);
  for (auto& s : parse_series_csv(detail::read_file(csv_path))) series.append(std::move(s));
  return series;
}

// ---------------------------------------------------------------------------
// Verdict report
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json verdict_json(const CriterionVerdict& v) {
  nlohmann::ordered_json j;
  j["criterion"] = v.criterion;
  j["model"] = v.model;
  j["T_star"] = v.T_star;
  j["outcome"] = to_string(v.outcome);
  nlohmann::ordered_json ev = nlohmann::ordered_json::object();
  for (const auto& [k, x] : v.evidence) ev[k] = std::isfinite(x) ? nlohmann::ordered_json(x) : nlohmann::ordered_json(nullptr);
  j["evidence"] = ev;
  j["window"] = {{"begin", v.window.begin}, {"end", v.window.end}};
  j["indices"] = v.indices;
  j["notes"] = v.notes;
  return j;
}

inline nlohmann::ordered_json verdict_report(const DiagnosticSeries& series, const std::vector<CriterionVerdict>& verdicts,
                                             const CriteriaOptions& opt, double eps0) {
  nlohmann::ordered_json j;
  j["tool_version"] = tool_version();
  j["config_hash"] = series.meta().config_hash;
  j["model"] = to_string(series.meta().model);
  j["params"] = {{"k", series.meta().k}, {"p", series.meta().p}, {"N", series.meta().dim}};
  j["options"] = {{"tol", opt.tol},
                  {"window_fraction", opt.window_fraction},
                  {"min_window", opt.min_window},
                  {"eps0", eps0}};
  if (opt.K) j["options"]["K"] = *opt.K;
  j["fitted_constants"] = constants_json(series.meta().constants);
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& v : verdicts) arr.push_back(verdict_json(v));
  j["verdicts"] = arr;
  return j;
}

}  // namespace blowdiag
