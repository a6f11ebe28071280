// io.hpp: JSON descriptors for spectra and level sequences, CSV output for
// entropy curves, and JSON serialization of check reports and presets.
#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "optham/bounds.hpp"
#include "optham/errors.hpp"
#include "optham/hamiltonian.hpp"
#include "optham/optimal.hpp"
#include "optham/oracle.hpp"
#include "optham/spectrum.hpp"

namespace optham::io {

using json = nlohmann::ordered_json;

// Shortest round-trip-stable decimal rendering used for all numeric output.
inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadConfig("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw BadConfig("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

namespace detail {

inline double require_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw BadConfig(std::string("descriptor needs numeric field \"") + key +
                    "\"");
  }
  return j[key].get<double>();
}

inline std::vector<double> require_number_array(const json& j,
                                                const char* key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw BadConfig(std::string("descriptor needs array field \"") + key +
                    "\"");
  }
  std::vector<double> out;
  out.reserve(j[key].size());
  for (const auto& v : j[key]) {
    if (!v.is_number()) {
      throw BadConfig(std::string("array \"") + key +
                      "\" must hold numbers only");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace detail

// Spectrum descriptor:
//   {"type":"uniform","n":10}
//   {"type":"linear","n":10}
//   {"type":"geometric","E0":1.0}   (or "q":0.5 for the ratio directly)
//   {"type":"explicit","p":[...]}
//   {"type":"truncated","p":[...],"tail_tol":1e-12}
inline Spectrum spectrum_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw BadConfig("spectrum descriptor needs a string field \"type\"");
  }
  std::string type = j["type"].get<std::string>();
  if (type == "uniform" || type == "linear") {
    double n = detail::require_number(j, "n");
    if (!(n >= 2.0) || n != static_cast<double>(static_cast<std::size_t>(n))) {
      throw BadConfig("field \"n\" must be an integer >= 2");
    }
    auto count = static_cast<std::size_t>(n);
    return type == "uniform" ? Spectrum::uniform(count)
                             : Spectrum::linear(count);
  }
  if (type == "geometric") {
    if (j.contains("q")) {
      double q = detail::require_number(j, "q");
      if (!(q > 0.0) || !(q < 1.0)) throw BadConfig("\"q\" must lie in (0,1)");
      return Spectrum::geometric(q);
    }
    double e0 = detail::require_number(j, "E0");
    if (!(e0 > 0.0)) throw BadConfig("\"E0\" must be > 0");
    return Spectrum::oscillator(e0);
  }
  if (type == "explicit") {
    return Spectrum::from_probabilities(detail::require_number_array(j, "p"));
  }
  if (type == "truncated") {
    double tol = j.contains("tail_tol") ? detail::require_number(j, "tail_tol")
                                        : 1e-12;
    return Spectrum::truncated(detail::require_number_array(j, "p"), tol);
  }
  throw BadConfig("unknown spectrum type: " + type);
}

// Command-line spectrum forms: "uniform:N", "linear:N", "geometric:E0", or a
// path to a JSON descriptor file.
inline Spectrum parse_spectrum_arg(const std::string& text) {
  auto colon = text.find(':');
  if (colon != std::string::npos) {
    std::string kind = text.substr(0, colon);
    std::string arg = text.substr(colon + 1);
    if (kind == "uniform" || kind == "linear" || kind == "geometric") {
      json j;
      j["type"] = kind;
      try {
        if (kind == "geometric") {
          j["E0"] = std::stod(arg);
        } else {
          j["n"] = std::stod(arg);
        }
      } catch (const std::exception&) {
        throw BadConfig("bad spectrum argument: " + text);
      }
      return spectrum_from_json(j);
    }
  }
  return spectrum_from_json(load_json(text));
}

// Level-sequence descriptor: {"levels":[...],"finite_domain":bool}. A false
// finite_domain continues the listed levels arithmetically with the last
// listed gap, which must be positive.
inline Hamiltonian hamiltonian_from_json(const json& j) {
  if (!j.is_object()) throw BadConfig("level descriptor must be an object");
  std::vector<double> levels = detail::require_number_array(j, "levels");
  if (!j.contains("finite_domain") || !j["finite_domain"].is_boolean()) {
    throw BadConfig("level descriptor needs boolean field \"finite_domain\"");
  }
  if (j["finite_domain"].get<bool>()) {
    return Hamiltonian::finite(levels);
  }
  if (levels.size() < 2) {
    throw BadConfig("an infinite level sequence needs at least two levels");
  }
  double gap = levels[levels.size() - 1] - levels[levels.size() - 2];
  if (!(gap > 0.0)) {
    throw BadConfig("arithmetic continuation needs a positive last gap");
  }
  return Hamiltonian::arithmetic_tail(levels, gap);
}

inline Hamiltonian load_hamiltonian(const std::string& path) {
  return hamiltonian_from_json(load_json(path));
}

// CSV for entropy curves: E,theta,m,case,S_opt with an optional S_ref column
// holding the unconstrained-envelope entropy at the same mean energy.
// unit_scale divides entropy columns (ln 2 converts nats to bits).
inline void write_curve_csv(std::ostream& os, const std::vector<CurveRow>& rows,
                            bool reference, double unit_scale = 1.0) {
  os << "E,theta,m,case,S_opt";
  if (reference) os << ",S_ref";
  os << "\n";
  for (const auto& row : rows) {
    os << format_number(row.E) << ',' << format_number(row.theta) << ','
       << row.m << ',' << regime_label(row.regime) << ','
       << format_number(row.entropy / unit_scale);
    if (reference) {
      os << ',' << format_number(Spectrum::oscillator(row.E).entropy() /
                                 unit_scale);
    }
    os << "\n";
  }
}

inline json report_to_json(const oracle::CheckReport& r) {
  json j;
  j["claim"] = r.claim;
  j["trials"] = r.trials;
  j["worst_violation"] = r.worst_violation;
  j["pass"] = r.pass;
  return j;
}

inline json reports_to_json(const std::vector<oracle::CheckReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  return arr;
}

inline json presets_to_json() {
  json arr = json::array();
  for (const auto& p : characteristic_presets()) {
    json j;
    j["name"] = p.name;
    j["C"] = p.C;
    j["D"] = p.D;
    j["metric_note"] = p.metric_note;
    arr.push_back(j);
  }
  return arr;
}

inline std::vector<CharacteristicPreset> presets_from_json(const json& arr) {
  if (!arr.is_array()) throw BadConfig("preset table must be a JSON array");
  std::vector<CharacteristicPreset> out;
  out.reserve(arr.size());
  for (const auto& j : arr) {
    CharacteristicPreset p;
    if (!j.contains("name") || !j["name"].is_string() ||
        !j.contains("metric_note") || !j["metric_note"].is_string()) {
      throw BadConfig("preset entries need string \"name\" and \"metric_note\"");
    }
    p.name = j["name"].get<std::string>();
    p.C = detail::require_number(j, "C");
    p.D = detail::require_number(j, "D");
    p.metric_note = j["metric_note"].get<std::string>();
    out.push_back(p);
  }
  return out;
}

}  // namespace optham::io
