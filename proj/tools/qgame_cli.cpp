// Command-line front end: payoff evaluation, best responses, equilibrium
// certification, grid enumeration and the canned reproduction suites.
//
// Exit codes: 0 success/certified, 1 refuted or failed claims,
// 2 usage/validation error, 3 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qgame/equilibrium.hpp"
#include "qgame/game.hpp"
#include "qgame/json_io.hpp"
#include "qgame/scenarios.hpp"
#include "qgame/strategies.hpp"

namespace {

struct Output {
  std::string format = "table";  // json | csv | table
  std::string path;              // empty = stdout

  void emit(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      if (!text.empty() && text.back() != '\n') std::cout << '\n';
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
    if (!out) throw std::runtime_error("failed writing output file: " + path);
  }
};

std::string payoff_table(const qgame::PayoffPair& p,
                         const std::array<double, 4>& probs) {
  char buf[256];
  std::string s;
  std::snprintf(buf, sizeof(buf), "P_A = %.12g\nP_B = %.12g\n", p.alice,
                p.bob);
  s += buf;
  const char* labels[] = {"CC", "CD", "DC", "DD"};
  for (int i = 0; i < 4; ++i) {
    std::snprintf(buf, sizeof(buf), "P(%s) = %.12g\n", labels[i],
                  probs[static_cast<std::size_t>(i)]);
    s += buf;
  }
  return s;
}

std::string certificate_table(const qgame::EquilibriumCertificate& cert) {
  char buf[256];
  std::string s = "verdict: ";
  s += cert.verdict();
  s += '\n';
  std::snprintf(buf, sizeof(buf),
                "payoffs: (%.12g, %.12g)\ngains:   (%.3g, %.3g)\n",
                cert.payoffs.alice, cert.payoffs.bob, cert.max_gain_a,
                cert.max_gain_b);
  s += buf;
  if (cert.witness_player) {
    s += "witness: ";
    s += (*cert.witness_player == qgame::Player::alice ? "alice" : "bob");
    s += " deviates; see JSON output for the strategy\n";
  }
  if (cert.strict) {
    s += std::string("strict:  ") + (*cert.strict ? "yes" : "no") + "\n";
  }
  s += "note: numerical certification up to the configured search budget\n";
  return s;
}

std::string report_table(const qgame::ScenarioReport& rep) {
  std::string s = "== " + rep.scenario + " ==\n";
  for (const auto& [k, v] : rep.conventions) {
    s += "# " + k + ": " + v + "\n";
  }
  char buf[512];
  for (const auto& c : rep.claims) {
    if (c.numeric) {
      std::snprintf(buf, sizeof(buf), "[%s] %-58s expected %.10g observed %.10g (tol %.1g)\n",
                    c.pass ? "PASS" : "FAIL", c.description.c_str(),
                    c.expected_value, c.observed_value, c.tolerance);
    } else {
      std::snprintf(buf, sizeof(buf), "[%s] %-58s expected %s observed %s\n",
                    c.pass ? "PASS" : "FAIL", c.description.c_str(),
                    c.expected_text.c_str(), c.observed_text.c_str());
    }
    s += buf;
  }
  std::snprintf(buf, sizeof(buf), "%s: %s (%.2fs)\n", rep.scenario.c_str(),
                rep.passed() ? "all claims pass" : "FAILED", rep.runtime_seconds);
  s += buf;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-qubit quantum game toolkit"};
  app.require_subcommand(1);

  std::string game_arg = "pd";
  qgame::SearchConfig cfg;
  Output output;

  auto add_common = [&](CLI::App* sub, bool with_game = true) {
    if (with_game) {
      sub->add_option("--game", game_arg,
                      "preset (pd, chicken) or game JSON (inline or path)");
    }
    sub->add_option("--grid", cfg.grid_points_per_axis,
                    "grid points per parameter axis");
    sub->add_option("--restarts", cfg.restarts, "multi-start restarts");
    sub->add_option("--max-iters", cfg.max_iterations,
                    "simplex iterations per start");
    sub->add_option("--epsilon", cfg.epsilon, "Nash tolerance");
    sub->add_option("--seed", cfg.seed, "search seed");
    sub->add_option("--output", output.format, "json, csv or table")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    sub->add_option("--out", output.path, "write output to this path");
  };

  // payoff
  std::string alice_arg = "C", bob_arg = "C";
  auto* cmd_payoff =
      app.add_subcommand("payoff", "expected payoffs of a strategy profile");
  cmd_payoff->add_option("--alice", alice_arg, "Alice's strategy (C, D, Q, R or JSON)");
  cmd_payoff->add_option("--bob", bob_arg, "Bob's strategy");
  add_common(cmd_payoff);

  // best-response
  std::string fixed_arg = "C", responder_arg = "alice", set_arg = "GU";
  auto* cmd_br = app.add_subcommand(
      "best-response", "best response against a fixed opponent strategy");
  cmd_br->add_option("--fixed", fixed_arg, "the fixed opponent strategy");
  cmd_br->add_option("--responder", responder_arg, "alice or bob")
      ->check(CLI::IsMember({"alice", "bob"}));
  cmd_br->add_option("--set", set_arg, "strategy set: CL, TP, GU, CP");
  add_common(cmd_br);

  // nash
  auto* cmd_nash =
      app.add_subcommand("nash", "certify or refute a strategy profile");
  cmd_nash->add_option("--alice", alice_arg, "Alice's strategy");
  cmd_nash->add_option("--bob", bob_arg, "Bob's strategy");
  cmd_nash->add_option("--set", set_arg, "strategy set: CL, TP, GU, CP");
  add_common(cmd_nash);

  // find-nash
  auto* cmd_find = app.add_subcommand(
      "find-nash", "enumerate grid equilibria in a low-dimensional set");
  cmd_find->add_option("--set", set_arg, "strategy set: CL or TP");
  add_common(cmd_find);

  // reproduce
  std::string suite_arg = "both";
  auto* cmd_repro = app.add_subcommand(
      "reproduce", "run the canned analysis suites for the bundled games");
  cmd_repro->add_option("--game", suite_arg, "pd, chicken or both")
      ->check(CLI::IsMember({"pd", "prisoners_dilemma", "chicken", "both"}));
  add_common(cmd_repro, /*with_game=*/false);

  // properties
  auto* cmd_props = app.add_subcommand(
      "properties", "run the cross-module property suite");
  add_common(cmd_props, /*with_game=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    cfg.validate();
    const qgame::EwlContext ctx = qgame::build_context();

    if (*cmd_payoff) {
      const qgame::GameSpec game = qgame::game_from_arg(game_arg);
      const qgame::Strategy sa = qgame::strategy_from_arg(alice_arg);
      const qgame::Strategy sb = qgame::strategy_from_arg(bob_arg);
      const qgame::Mat4 sigma = qgame::apply_strategies(ctx, sa, sb);
      const auto probs = qgame::outcome_probabilities(ctx, sigma);
      const qgame::PayoffPair p = qgame::expected_payoffs(game, ctx, sigma);
      if (output.format == "json") {
        qgame::json j{{"payoffs", {p.alice, p.bob}},
                      {"probabilities",
                       {{"CC", probs[0]},
                        {"CD", probs[1]},
                        {"DC", probs[2]},
                        {"DD", probs[3]}}}};
        output.emit(j.dump(2));
      } else if (output.format == "csv") {
        std::string csv = "quantity,value\nP_A," +
                          qgame::detail::format_double(p.alice) + "\nP_B," +
                          qgame::detail::format_double(p.bob) + "\n";
        const char* labels[] = {"CC", "CD", "DC", "DD"};
        for (int i = 0; i < 4; ++i) {
          csv += std::string("P(") + labels[i] + ")," +
                 qgame::detail::format_double(probs[static_cast<std::size_t>(i)]) +
                 "\n";
        }
        output.emit(csv);
      } else {
        output.emit(payoff_table(p, probs));
      }
      return 0;
    }

    if (*cmd_br) {
      const qgame::GameSpec game = qgame::game_from_arg(game_arg);
      const qgame::Strategy fixed = qgame::strategy_from_arg(fixed_arg);
      const qgame::Player responder = responder_arg == "alice"
                                          ? qgame::Player::alice
                                          : qgame::Player::bob;
      const qgame::StrategySet set = qgame::parse_strategy_set(set_arg);
      const auto [strategy, value] =
          qgame::best_response(game, ctx, fixed, responder, set, cfg);
      if (output.format == "json") {
        qgame::json j{{"responder", responder_arg},
                      {"value", value},
                      {"strategy", qgame::to_json(strategy)},
                      {"config", qgame::to_json(cfg, set)}};
        output.emit(j.dump(2));
      } else {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "best %s payoff: %.12g\n",
                      responder_arg.c_str(), value);
        output.emit(std::string(buf) + qgame::to_json(strategy).dump(2));
      }
      return 0;
    }

    if (*cmd_nash) {
      const qgame::GameSpec game = qgame::game_from_arg(game_arg);
      const qgame::Strategy sa = qgame::strategy_from_arg(alice_arg);
      const qgame::Strategy sb = qgame::strategy_from_arg(bob_arg);
      const qgame::StrategySet set = qgame::parse_strategy_set(set_arg);
      const auto cert = qgame::verify_nash(game, ctx, sa, sb, set, cfg);
      if (output.format == "json") {
        output.emit(qgame::to_json(cert).dump(2));
      } else if (output.format == "csv") {
        output.emit(qgame::to_csv(cert));
      } else {
        output.emit(certificate_table(cert));
      }
      return cert.certified ? 0 : 1;
    }

    if (*cmd_find) {
      const qgame::GameSpec game = qgame::game_from_arg(game_arg);
      const qgame::StrategySet set = qgame::parse_strategy_set(set_arg);
      const auto classes = qgame::find_nash_grid(game, ctx, set, cfg);
      if (output.format == "json") {
        qgame::json j = qgame::json::array();
        for (const auto& cert : classes) j.push_back(qgame::to_json(cert));
        output.emit(j.dump(2));
      } else if (output.format == "csv") {
        std::string csv;
        for (std::size_t i = 0; i < classes.size(); ++i) {
          const std::string one = qgame::to_csv(classes[i]);
          csv += i == 0 ? one : one.substr(one.find('\n') + 1);
        }
        if (classes.empty()) {
          csv = "verdict,payoff_a,payoff_b,gain_a,gain_b,set,strict\n";
        }
        output.emit(csv);
      } else {
        std::string s;
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "%zu equilibrium class(es) found (numerical, grid %d)\n",
                      classes.size(), cfg.grid_points_per_axis);
        s += buf;
        for (const auto& cert : classes) {
          std::snprintf(buf, sizeof(buf),
                        "- payoffs (%.10g, %.10g), %s\n", cert.payoffs.alice,
                        cert.payoffs.bob,
                        cert.strict.value_or(false)
                            ? "strict"
                            : "weak (payoff ties with non-equivalent deviations)");
          s += buf;
        }
        output.emit(s);
      }
      return 0;
    }

    if (*cmd_repro || *cmd_props) {
      std::vector<qgame::ScenarioReport> reports;
      if (*cmd_props) {
        reports.push_back(qgame::run_property_suite(cfg));
      } else {
        if (suite_arg == "pd" || suite_arg == "prisoners_dilemma" ||
            suite_arg == "both") {
          reports.push_back(qgame::run_pd_suite(cfg));
        }
        if (suite_arg == "chicken" || suite_arg == "both") {
          reports.push_back(qgame::run_chicken_suite(cfg));
        }
      }
      bool all_pass = true;
      for (const auto& r : reports) all_pass = all_pass && r.passed();

      if (output.format == "json") {
        if (reports.size() == 1) {
          output.emit(qgame::to_json(reports[0]).dump(2));
        } else {
          qgame::json j = qgame::json::array();
          for (const auto& r : reports) j.push_back(qgame::to_json(r));
          output.emit(j.dump(2));
        }
      } else if (output.format == "csv") {
        output.emit(qgame::to_csv(reports));
      } else {
        std::string s;
        for (const auto& r : reports) s += report_table(r);
        output.emit(s);
      }
      return all_pass ? 0 : 1;
    }
  } catch (const qgame::json::exception& e) {
    std::cerr << "error: invalid JSON: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
