// JSON and CSV serialisation: game tables, strategies, equilibrium
// certificates and scenario reports. JSON object keys are emitted in sorted
// order and doubles round-trip exactly, so equal values give identical bytes.
// Serialized reports omit the runtime field to keep repeated runs
// byte-identical.
#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qgame/equilibrium.hpp"
#include "qgame/game.hpp"
#include "qgame/scenarios.hpp"
#include "qgame/strategies.hpp"

namespace qgame {

using json = nlohmann::json;

// ---- GameSpec ----

inline json to_json(const GameSpec& g) {
  return json{{"name", g.name},
              {"payoffs",
               {{"CC", {g.a_cc, g.b_cc}},
                {"CD", {g.a_cd, g.b_cd}},
                {"DC", {g.a_dc, g.b_dc}},
                {"DD", {g.a_dd, g.b_dd}}}}};
}

inline GameSpec game_from_json(const json& j) {
  if (!j.is_object() || !j.contains("name") || !j.contains("payoffs")) {
    throw std::invalid_argument(
        "game JSON must be {\"name\":..., \"payoffs\":{...}}");
  }
  const json& p = j.at("payoffs");
  auto pair_at = [&](const char* key) {
    if (!p.contains(key) || !p.at(key).is_array() || p.at(key).size() != 2 ||
        !p.at(key)[0].is_number() || !p.at(key)[1].is_number()) {
      throw std::invalid_argument(
          std::string("game JSON: payoffs.") + key +
          " must be a [alice, bob] number pair");
    }
    return std::pair<double, double>(p.at(key)[0].get<double>(),
                                     p.at(key)[1].get<double>());
  };
  const auto cc = pair_at("CC");
  const auto cd = pair_at("CD");
  const auto dc = pair_at("DC");
  const auto dd = pair_at("DD");
  return GameSpec::make(j.at("name").get<std::string>(), cc.first, cd.first,
                        dc.first, dd.first, cc.second, cd.second, dc.second,
                        dd.second);
}

// ---- Strategy ----

inline json matrix_to_json(const Mat2& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      rows.push_back({m(i, j).real(), m(i, j).imag()});
    }
  }
  return rows;
}

inline Mat2 matrix_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) {
    throw std::invalid_argument(
        "strategy JSON: a matrix must be 4 row-major [re, im] entries");
  }
  Mat2 m;
  for (std::size_t k = 0; k < 4; ++k) {
    const json& e = j[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
        !e[1].is_number()) {
      throw std::invalid_argument(
          "strategy JSON: matrix entries must be [re, im] pairs");
    }
    m(k / 2, k % 2) = Complex(e[0].get<double>(), e[1].get<double>());
  }
  return m;
}

inline json to_json(const Strategy& s) {
  json j;
  switch (s.kind()) {
    case Strategy::Kind::unitary:
      j["kind"] = "unitary";
      j["matrices"] = json::array({matrix_to_json(s.unitary_matrix())});
      break;
    case Strategy::Kind::channel: {
      j["kind"] = "channel";
      json ms = json::array();
      for (const auto& k : s.kraus()) ms.push_back(matrix_to_json(k));
      j["matrices"] = ms;
      break;
    }
    case Strategy::Kind::mixture: {
      j["kind"] = "mixture";
      json ms = json::array();
      for (const auto& m : s.matrices()) ms.push_back(matrix_to_json(m));
      j["matrices"] = ms;
      j["probs"] = s.probabilities();
      break;
    }
  }
  return j;
}

inline Strategy strategy_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) {
    throw std::invalid_argument("strategy JSON must carry a \"kind\"");
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "unitary") {
    if (j.contains("params")) {
      const json& p = j.at("params");
      if (p.contains("alpha") || p.contains("gamma")) {
        return u_general(p.value("alpha", 0.0), p.value("theta", 0.0),
                         p.value("gamma", 0.0));
      }
      if (p.contains("phi")) {
        return u_two_param(p.value("theta", 0.0), p.at("phi").get<double>());
      }
      if (p.contains("theta")) {
        return u_one_param(p.at("theta").get<double>());
      }
      throw std::invalid_argument(
          "strategy JSON: params must name theta, phi and/or alpha, gamma");
    }
    if (!j.contains("matrices") || !j.at("matrices").is_array() ||
        j.at("matrices").size() != 1) {
      throw std::invalid_argument(
          "strategy JSON: a unitary needs params or exactly one matrix");
    }
    return Strategy::unitary(matrix_from_json(j.at("matrices")[0]));
  }
  if (kind == "channel") {
    if (!j.contains("matrices") || !j.at("matrices").is_array()) {
      throw std::invalid_argument("strategy JSON: channel needs matrices");
    }
    std::vector<Mat2> kraus;
    for (const auto& m : j.at("matrices")) {
      kraus.push_back(matrix_from_json(m));
    }
    return Strategy::channel(std::move(kraus));
  }
  if (kind == "mixture") {
    if (!j.contains("matrices") || !j.contains("probs") ||
        !j.at("matrices").is_array() || !j.at("probs").is_array() ||
        j.at("matrices").size() != j.at("probs").size()) {
      throw std::invalid_argument(
          "strategy JSON: mixture needs matching probs and matrices arrays");
    }
    std::vector<std::pair<double, Mat2>> comps;
    for (std::size_t i = 0; i < j.at("probs").size(); ++i) {
      comps.emplace_back(j.at("probs")[i].get<double>(),
                         matrix_from_json(j.at("matrices")[i]));
    }
    return Strategy::mixture(comps);
  }
  throw std::invalid_argument("strategy JSON: unknown kind '" + kind +
                              "' (expected unitary, channel or mixture)");
}

// ---- SearchConfig / certificates ----

inline json to_json(const SearchConfig& cfg, StrategySet set) {
  return json{{"grid_points_per_axis", cfg.grid_points_per_axis},
              {"restarts", cfg.restarts},
              {"max_iterations", cfg.max_iterations},
              {"epsilon", cfg.epsilon},
              {"seed", cfg.seed},
              {"set", std::string(to_string(set))}};
}

inline json to_json(const EquilibriumCertificate& cert) {
  json j{{"profile", {to_json(cert.alice), to_json(cert.bob)}},
         {"payoffs", {cert.payoffs.alice, cert.payoffs.bob}},
         {"gains", {cert.max_gain_a, cert.max_gain_b}},
         {"verdict", cert.verdict()},
         {"witness", cert.witness ? to_json(*cert.witness) : json(nullptr)},
         {"config", to_json(cert.config, cert.set)},
         {"certification",
          "numerical search (grid + multi-start simplex refinement); exact "
          "only up to the configured grid and restart budget"}};
  if (cert.witness_player) {
    j["witness_player"] =
        *cert.witness_player == Player::alice ? "alice" : "bob";
  }
  if (cert.strict) j["strict"] = *cert.strict;
  return j;
}

// ---- Scenario reports ----

inline json to_json(const Claim& c) {
  json j{{"description", c.description},
         {"pass", c.pass}};
  if (c.numeric) {
    j["expected"] = c.expected_value;
    j["observed"] = c.observed_value;
    j["tolerance"] = c.tolerance;
  } else {
    j["expected"] = c.expected_text;
    j["observed"] = c.observed_text;
    j["tolerance"] = 0.0;
  }
  return j;
}

// Runtime is intentionally not serialised: reports for equal inputs are
// byte-identical across runs.
inline json to_json(const ScenarioReport& r) {
  json claims = json::array();
  for (const auto& c : r.claims) claims.push_back(to_json(c));
  json j{{"scenario", r.scenario}, {"claims", claims}, {"pass", r.passed()}};
  if (!r.conventions.empty()) {
    json conv;
    for (const auto& [k, v] : r.conventions) conv[k] = v;
    j["conventions"] = conv;
  }
  return j;
}

namespace detail {

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

inline std::string to_csv(const ScenarioReport& r) {
  std::ostringstream os;
  os << "id,description,expected,observed,tolerance,pass\n";
  for (const auto& c : r.claims) {
    os << detail::csv_escape(r.scenario) << ','
       << detail::csv_escape(c.description) << ',';
    if (c.numeric) {
      os << detail::format_double(c.expected_value) << ','
         << detail::format_double(c.observed_value) << ','
         << detail::format_double(c.tolerance);
    } else {
      os << detail::csv_escape(c.expected_text) << ','
         << detail::csv_escape(c.observed_text) << ",0";
    }
    os << ',' << (c.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

inline std::string to_csv(const EquilibriumCertificate& cert) {
  std::ostringstream os;
  os << "verdict,payoff_a,payoff_b,gain_a,gain_b,set,strict\n";
  os << cert.verdict() << ',' << detail::format_double(cert.payoffs.alice)
     << ',' << detail::format_double(cert.payoffs.bob) << ','
     << detail::format_double(cert.max_gain_a) << ','
     << detail::format_double(cert.max_gain_b) << ',' << to_string(cert.set)
     << ',' << (cert.strict ? (*cert.strict ? "true" : "false") : "") << '\n';
  return os.str();
}

inline std::string to_csv(const std::vector<ScenarioReport>& reports) {
  std::ostringstream os;
  os << "id,description,expected,observed,tolerance,pass\n";
  for (const auto& r : reports) {
    std::istringstream body(to_csv(r));
    std::string line;
    std::getline(body, line);  // drop per-report header
    while (std::getline(body, line)) os << line << '\n';
  }
  return os.str();
}

// ---- argument helpers shared by the CLI ----

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open file: " + path);
  }
  json j;
  in >> j;
  return j;
}

// Accepts a preset name, inline JSON (leading '{') or a JSON file path.
inline GameSpec game_from_arg(const std::string& arg) {
  if (arg == "pd" || arg == "prisoners_dilemma") {
    return GameSpec::prisoners_dilemma();
  }
  if (arg == "chicken") return GameSpec::chicken();
  if (!arg.empty() && arg.front() == '{') {
    return game_from_json(json::parse(arg));
  }
  return game_from_json(load_json_file(arg));
}

// Accepts a reserved name (C, D, Q, R), inline JSON or a JSON file path.
inline Strategy strategy_from_arg(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') {
    return strategy_from_json(json::parse(arg));
  }
  if (arg.size() > 5 && arg.rfind(".json") == arg.size() - 5) {
    return strategy_from_json(load_json_file(arg));
  }
  return named_strategy(arg);
}

}  // namespace qgame
