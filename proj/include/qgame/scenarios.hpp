// Canned, seeded analysis suites for the two bundled games plus the
// cross-module property checks. Each suite emits an ordered claim list with
// expected values, observed values and tolerances; a suite is green only if
// every claim passes. Deterministic under a fixed seed.
#pragma once

#include <chrono>
#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qgame/equilibrium.hpp"
#include "qgame/game.hpp"
#include "qgame/qmath.hpp"
#include "qgame/strategies.hpp"

namespace qgame {

struct Claim {
  std::string description;
  bool numeric = true;
  double expected_value = 0.0;
  double observed_value = 0.0;
  double tolerance = 0.0;
  std::string expected_text;
  std::string observed_text;
  bool pass = false;
};

struct ScenarioReport {
  std::string scenario;
  std::vector<std::pair<std::string, std::string>> conventions;
  std::vector<Claim> claims;
  double runtime_seconds = 0.0;

  bool passed() const {
    for (const auto& c : claims) {
      if (!c.pass) return false;
    }
    return true;
  }

  void add_numeric(std::string desc, double expected, double observed,
                   double tol) {
    Claim c;
    c.description = std::move(desc);
    c.numeric = true;
    c.expected_value = expected;
    c.observed_value = observed;
    c.tolerance = tol;
    c.pass = std::abs(expected - observed) <= tol;
    claims.push_back(std::move(c));
  }

  void add_verdict(std::string desc, const std::string& expected,
                   const std::string& observed) {
    Claim c;
    c.description = std::move(desc);
    c.numeric = false;
    c.expected_text = expected;
    c.observed_text = observed;
    c.pass = expected == observed;
    claims.push_back(std::move(c));
  }

  void add_bool(std::string desc, bool expected, bool observed) {
    add_verdict(std::move(desc), expected ? "true" : "false",
                observed ? "true" : "false");
  }
};

namespace detail {

// Classical mixed-strategy payoffs with cooperation probabilities p, q; the
// independent oracle for the one-parameter set.
inline PayoffPair classical_mixed_payoffs(const GameSpec& g, double p,
                                          double q) {
  PayoffPair out;
  out.alice = g.a_cc * p * q + g.a_cd * p * (1 - q) + g.a_dc * (1 - p) * q +
              g.a_dd * (1 - p) * (1 - q);
  out.bob = g.b_cc * p * q + g.b_cd * p * (1 - q) + g.b_dc * (1 - p) * q +
            g.b_dd * (1 - p) * (1 - q);
  return out;
}

class SuiteTimer {
 public:
  explicit SuiteTimer(ScenarioReport& r) : report_(r) {
    start_ = std::chrono::steady_clock::now();
  }
  ~SuiteTimer() {
    report_.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start_)
            .count();
  }

 private:
  ScenarioReport& report_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

inline ScenarioReport run_pd_suite(const SearchConfig& cfg) {
  cfg.validate();
  ScenarioReport rep;
  rep.scenario = "prisoners_dilemma";
  detail::SuiteTimer timer(rep);

  const GameSpec game = GameSpec::prisoners_dilemma();
  const EwlContext ctx = build_context();
  const Strategy c = strategy_c();
  const Strategy d = strategy_d();
  const Strategy q = strategy_q();

  // classical embedding
  {
    const struct {
      const char* label;
      const Strategy* a;
      const Strategy* b;
      double ea, eb;
    } rows[] = {{"(C,C)", &c, &c, 3, 3},
                {"(C,D)", &c, &d, 0, 5},
                {"(D,C)", &d, &c, 5, 0},
                {"(D,D)", &d, &d, 1, 1}};
    for (const auto& r : rows) {
      const PayoffPair p = payoffs_for(game, ctx, *r.a, *r.b);
      rep.add_numeric(std::string("classical embedding P_A") + r.label, r.ea,
                      p.alice, 1e-12);
      rep.add_numeric(std::string("classical embedding P_B") + r.label, r.eb,
                      p.bob, 1e-12);
    }
  }

  // one-parameter set: dominant defection, (D,D) equilibrium
  rep.add_bool("D dominant for Alice in CL", true,
               check_dominant(game, ctx, d, Player::alice, StrategySet::CL,
                              cfg));
  rep.add_bool("D dominant for Bob in CL", true,
               check_dominant(game, ctx, d, Player::bob, StrategySet::CL,
                              cfg));
  {
    const auto cert = verify_nash(game, ctx, d, d, StrategySet::CL, cfg);
    rep.add_verdict("(D,D) in CL", "certified", cert.verdict());
    rep.add_numeric("P_A(D,D)", 1, cert.payoffs.alice, 1e-9);
    rep.add_numeric("P_B(D,D)", 1, cert.payoffs.bob, 1e-9);
    rep.add_numeric("max unilateral gain at (D,D) in CL", 0,
                    std::max({cert.max_gain_a, cert.max_gain_b, 0.0}), 1e-9);
    rep.add_bool("(1,1) Pareto optimal", false,
                 check_pareto(game, cert.payoffs));
  }

  // CL payoffs equal classical mixed strategies with p = cos^2(theta/2)
  {
    double max_dev = 0.0;
    const auto thetas = detail::linspace(0.0, M_PI, 51);
    const detail::PurePairEvaluator eval(game, ctx);
    for (double ta : thetas) {
      for (double tb : thetas) {
        const PayoffPair ewl =
            eval.pair(detail::one_param_matrix(ta), detail::one_param_matrix(tb));
        const PayoffPair cls = detail::classical_mixed_payoffs(
            game, std::cos(ta / 2) * std::cos(ta / 2),
            std::cos(tb / 2) * std::cos(tb / 2));
        max_dev = std::max({max_dev, std::abs(ewl.alice - cls.alice),
                            std::abs(ewl.bob - cls.bob)});
      }
    }
    rep.add_numeric("CL vs classical mixed strategies, max |dev| (51x51)", 0,
                    max_dev, 1e-9);
  }

  // two-parameter set: unique equilibrium (Q,Q), Pareto optimal
  {
    const auto cert = verify_nash(game, ctx, q, q, StrategySet::TP, cfg);
    rep.add_verdict("(Q,Q) in TP", "certified", cert.verdict());
    rep.add_numeric("P_A(Q,Q)", 3, cert.payoffs.alice, 1e-9);
    rep.add_numeric("P_B(Q,Q)", 3, cert.payoffs.bob, 1e-9);
    rep.add_numeric("max unilateral gain at (Q,Q) in TP", 0,
                    std::max({cert.max_gain_a, cert.max_gain_b, 0.0}), 1e-6);
    rep.add_bool("(3,3) Pareto optimal", true,
                 check_pareto(game, cert.payoffs));
  }
  {
    const auto classes = find_nash_grid(game, ctx, StrategySet::TP, cfg);
    std::size_t strict_count = 0;
    bool unique_is_qq = false;
    SearchConfig light = cfg;
    light.grid_points_per_axis = 7;
    light.restarts = 8;
    for (const auto& cls : classes) {
      if (cls.strict.value_or(false)) {
        ++strict_count;
        unique_is_qq = strategies_equivalent(game, ctx, cls.alice, q, light) &&
                       strategies_equivalent(game, ctx, cls.bob, q, light);
      }
    }
    rep.add_numeric("strict TP equilibrium classes (numerical, grid search)",
                    1, static_cast<double>(strict_count), 0);
    rep.add_bool("unique TP equilibrium class is (Q,Q)", true, unique_is_qq);
  }

  // general unitaries: optimal answer sweep, no pure equilibrium
  {
    double overlap_dev = 0.0, pa_dev = 0.0, pb_dev = 0.0;
    for (int i = 0; i < 1000; ++i) {
      std::mt19937_64 rng(
          detail::sub_seed(cfg.seed, 21, static_cast<std::uint64_t>(i)));
      const Strategy sb = Strategy::unitary(random_su2(rng));
      const Strategy sa = optimal_answer(sb);
      const Mat4 sigma = apply_strategies(ctx, sa, sb);
      const double overlap =
          trace(ctx.projector(Outcome::dc) * sigma).real();
      overlap_dev = std::max(overlap_dev, std::abs(1.0 - overlap));
      const PayoffPair p = expected_payoffs(game, ctx, sigma);
      pa_dev = std::max(pa_dev, std::abs(p.alice - 5.0));
      pb_dev = std::max(pb_dev, std::abs(p.bob));
    }
    rep.add_numeric("optimal answer: max |1 - <psi_DC overlap>| (1000)", 0,
                    overlap_dev, 1e-9);
    rep.add_numeric("optimal answer: max |P_A - 5|", 0, pa_dev, 1e-9);
    rep.add_numeric("optimal answer: max |P_B|", 0, pb_dev, 1e-9);
  }
  {
    bool all_refuted = true;
    for (int i = 0; i < 100 && all_refuted; ++i) {
      std::mt19937_64 rng(
          detail::sub_seed(cfg.seed, 22, static_cast<std::uint64_t>(i)));
      const Strategy sa = Strategy::unitary(random_su2(rng));
      const Strategy sb = Strategy::unitary(random_su2(rng));
      const PayoffPair cur = payoffs_for(game, ctx, sa, sb);
      // closed-form optimal answers as the deviation oracle
      const double gain_a =
          payoffs_for(game, ctx, optimal_answer(sb), sb).alice - cur.alice;
      const double gain_b =
          payoffs_for(game, ctx, sa, bob_optimal_answer(sa)).bob - cur.bob;
      if (std::max(gain_a, gain_b) <= 1e-9) all_refuted = false;
    }
    rep.add_bool("no pure GU profile survives deviation (100 samples)", true,
                 all_refuted);
  }

  // mixed equilibrium
  const Strategy mix_a = Strategy::mixture(
      {{0.5, Mat2::identity()}, {0.5, Mat2{Complex(0, -1), 0, 0, Complex(0, 1)}}});
  const Strategy mix_b = Strategy::mixture(
      {{0.5, Mat2{0, 1, -1, 0}}, {0.5, Mat2{0, Complex(0, -1), Complex(0, -1), 0}}});
  {
    const PayoffPair p = payoffs_for(game, ctx, mix_a, mix_b);
    rep.add_numeric("mixed equilibrium P_A", 2.5, p.alice, 1e-12);
    rep.add_numeric("mixed equilibrium P_B", 2.5, p.bob, 1e-12);
    const auto cert = verify_mixed_nash(game, ctx, mix_a, mix_b, cfg);
    rep.add_verdict("mixed profile vs pure GU deviations", "certified",
                    cert.verdict());
    const auto br_b =
        best_response(game, ctx, mix_a, Player::bob, StrategySet::GU, cfg);
    rep.add_numeric("best pure response vs Alice's mixture", 2.5,
                    br_b.second, 1e-4);
    const auto br_a =
        best_response(game, ctx, mix_b, Player::alice, StrategySet::GU, cfg);
    rep.add_numeric("best pure response vs Bob's mixture", 2.5, br_a.second,
                    1e-4);
  }

  // dual equilibrium
  {
    const auto dual = dual_profile({mix_a, mix_b});
    const auto cert =
        verify_mixed_nash(game, ctx, dual.first, dual.second, cfg);
    rep.add_verdict("Q-conjugated dual of the mixed profile", "certified",
                    cert.verdict());
    rep.add_numeric("dual profile P_A", 2.5, cert.payoffs.alice, 1e-12);
    rep.add_numeric("dual profile P_B", 2.5, cert.payoffs.bob, 1e-12);
  }

  // focal strategy R
  const Strategy r = focal_r();
  {
    const Mat4 sigma = apply_strategies(ctx, r, c);
    Mat4 mixed = Mat4::identity();
    mixed *= Complex(0.25);
    rep.add_numeric("R twirl: max |(R,C)(rho) - I/4|", 0,
                    max_abs_diff(sigma, mixed), 1e-12);
    const PayoffPair p = payoffs_for(game, ctx, r, r);
    rep.add_numeric("P_A(R,R)", 2.25, p.alice, 1e-9);
    rep.add_numeric("P_B(R,R)", 2.25, p.bob, 1e-9);
    rep.add_bool("R channel-identical to its Q-conjugate", true,
                 channels_equal(r, conjugate_by_q(r), 1e-12));
    rep.add_bool("strategies_equivalent(R, Q-conjugate of R)", true,
                 strategies_equivalent(game, ctx, r, conjugate_by_q(r), cfg));
  }

  // CP measurement equilibrium
  {
    const auto [ma, mb] = measurement_strategy_pair();
    const Mat4 sigma = apply_strategies(ctx, ma, mb);
    Mat4 expect;
    expect(1, 1) = 0.5;
    expect(2, 2) = 0.5;
    rep.add_numeric("measurement pair: max |sigma - (|01><01|+|10><10|)/2|",
                    0, max_abs_diff(sigma, expect), 1e-12);
    const PayoffPair p = expected_payoffs(game, ctx, sigma);
    rep.add_numeric("measurement pair P_A", 2.5, p.alice, 1e-12);
    rep.add_numeric("measurement pair P_B", 2.5, p.bob, 1e-12);
    SearchConfig cp_cfg = cfg;
    cp_cfg.epsilon = 1e-4;
    const auto cert = verify_nash(game, ctx, ma, mb, StrategySet::CP, cp_cfg);
    rep.add_verdict("measurement pair vs CP deviations", "certified",
                    cert.verdict());
    rep.add_numeric("max CP deviation gain at measurement pair", 0,
                    std::max({cert.max_gain_a, cert.max_gain_b, 0.0}), 1e-4);
  }

  // CP focal equilibrium
  {
    SearchConfig cp_cfg = cfg;
    cp_cfg.epsilon = 1e-4;
    const auto cert = verify_nash(game, ctx, r, r, StrategySet::CP, cp_cfg);
    rep.add_verdict("(R,R) vs CP deviations", "certified", cert.verdict());
    rep.add_numeric("P_A(R,R) under CP certification", 2.25,
                    cert.payoffs.alice, 1e-9);
    rep.add_numeric("max CP deviation gain at (R,R)", 0,
                    std::max({cert.max_gain_a, cert.max_gain_b, 0.0}), 1e-4);
  }

  return rep;
}

inline ScenarioReport run_chicken_suite(const SearchConfig& cfg) {
  cfg.validate();
  ScenarioReport rep;
  rep.scenario = "chicken";
  rep.conventions.emplace_back(
      "payoff_orientation",
      "A_DC = B_CD = 8 (defector vs cooperator), A_CD = B_DC = 2; the "
      "orientation under which (C,D) and (D,C) are the pure classical "
      "equilibria and the mixed classical equilibrium pays 4");
  detail::SuiteTimer timer(rep);

  const GameSpec game = GameSpec::chicken();
  const EwlContext ctx = build_context();
  const Strategy c = strategy_c();
  const Strategy d = strategy_d();
  const Strategy q = strategy_q();
  const Strategy coin = u_one_param(M_PI / 2.0);

  SearchConfig light = cfg;
  light.grid_points_per_axis = 7;
  light.restarts = 8;

  // classical pure equilibria via grid enumeration
  {
    const auto classes = find_nash_grid(game, ctx, StrategySet::CL, cfg);
    std::size_t strict_count = 0;
    bool found_cd = false, found_dc = false, found_weak_mixed = false;
    for (const auto& cls : classes) {
      if (cls.strict.value_or(false)) {
        ++strict_count;
        if (strategies_equivalent(game, ctx, cls.alice, c, light) &&
            strategies_equivalent(game, ctx, cls.bob, d, light)) {
          found_cd = true;
        }
        if (strategies_equivalent(game, ctx, cls.alice, d, light) &&
            strategies_equivalent(game, ctx, cls.bob, c, light)) {
          found_dc = true;
        }
      } else if (strategies_equivalent(game, ctx, cls.alice, coin, light) &&
                 strategies_equivalent(game, ctx, cls.bob, coin, light)) {
        found_weak_mixed = true;
      }
    }
    rep.add_numeric("strict CL equilibrium classes (numerical, grid search)",
                    2, static_cast<double>(strict_count), 0);
    rep.add_bool("CL pure equilibria are exactly {(C,D), (D,C)}", true,
                 found_cd && found_dc && strict_count == 2);
    rep.add_bool("classical mixed point found as a weak equilibrium", true,
                 found_weak_mixed);
  }

  // classical mixed equilibrium at p = 1/2
  {
    const auto cert = verify_nash(game, ctx, coin, coin, StrategySet::CL, cfg);
    rep.add_verdict("(coin, coin) in CL", "certified", cert.verdict());
    rep.add_numeric("mixed classical payoff P_A", 4, cert.payoffs.alice,
                    1e-9);
    rep.add_numeric("mixed classical payoff P_B", 4, cert.payoffs.bob, 1e-9);
  }

  // CL payoffs equal classical mixed strategies
  {
    double max_dev = 0.0;
    const auto thetas = detail::linspace(0.0, M_PI, 51);
    const detail::PurePairEvaluator eval(game, ctx);
    for (double ta : thetas) {
      for (double tb : thetas) {
        const PayoffPair ewl = eval.pair(detail::one_param_matrix(ta),
                                         detail::one_param_matrix(tb));
        const PayoffPair cls = detail::classical_mixed_payoffs(
            game, std::cos(ta / 2) * std::cos(ta / 2),
            std::cos(tb / 2) * std::cos(tb / 2));
        max_dev = std::max({max_dev, std::abs(ewl.alice - cls.alice),
                            std::abs(ewl.bob - cls.bob)});
      }
    }
    rep.add_numeric("CL vs classical mixed strategies, max |dev| (51x51)", 0,
                    max_dev, 1e-9);
  }

  // TP: the pure classical equilibria fall, (Q,Q) takes over
  {
    const auto cert_cd = verify_nash(game, ctx, c, d, StrategySet::TP, cfg);
    rep.add_verdict("(C,D) in TP", "refuted", cert_cd.verdict());
    const auto cert_dc = verify_nash(game, ctx, d, c, StrategySet::TP, cfg);
    rep.add_verdict("(D,C) in TP", "refuted", cert_dc.verdict());
    const bool witness_is_q =
        cert_dc.witness && cert_dc.witness_player == Player::bob &&
        strategies_equivalent(game, ctx, *cert_dc.witness, q, light);
    rep.add_bool("witness at (D,C) is Bob deviating to Q", true, witness_is_q);
    rep.add_numeric("P_B(D,Q)", 8, payoffs_for(game, ctx, d, q).bob, 1e-12);
    rep.add_numeric("P_B(D,C)", 2, payoffs_for(game, ctx, d, c).bob, 1e-12);
  }
  {
    const auto cert = verify_nash(game, ctx, q, q, StrategySet::TP, cfg);
    rep.add_verdict("(Q,Q) in TP", "certified", cert.verdict());
    rep.add_numeric("P_A(Q,Q)", 6, cert.payoffs.alice, 1e-9);
    rep.add_numeric("P_B(Q,Q)", 6, cert.payoffs.bob, 1e-9);
    rep.add_numeric("max unilateral gain at (Q,Q) in TP", 0,
                    std::max({cert.max_gain_a, cert.max_gain_b, 0.0}), 1e-6);
    rep.add_bool("(6,6) Pareto optimal", true,
                 check_pareto(game, cert.payoffs));
    const auto classes = find_nash_grid(game, ctx, StrategySet::TP, cfg);
    std::size_t strict_count = 0;
    bool unique_is_qq = false;
    for (const auto& cls : classes) {
      if (cls.strict.value_or(false)) {
        ++strict_count;
        unique_is_qq = strategies_equivalent(game, ctx, cls.alice, q, light) &&
                       strategies_equivalent(game, ctx, cls.bob, q, light);
      }
    }
    rep.add_numeric("strict TP equilibrium classes (numerical, grid search)",
                    1, static_cast<double>(strict_count), 0);
    rep.add_bool("unique TP equilibrium class is (Q,Q)", true, unique_is_qq);
  }

  // CP focal equilibrium
  {
    const Strategy r = focal_r();
    const PayoffPair p = payoffs_for(game, ctx, r, r);
    rep.add_numeric("P_A(R,R)", 4, p.alice, 1e-9);
    rep.add_numeric("P_B(R,R)", 4, p.bob, 1e-9);
    SearchConfig cp_cfg = cfg;
    cp_cfg.epsilon = 1e-4;
    const auto cert = verify_nash(game, ctx, r, r, StrategySet::CP, cp_cfg);
    rep.add_verdict("(R,R) vs CP deviations", "certified", cert.verdict());
    rep.add_numeric("max CP deviation gain at (R,R)", 0,
                    std::max({cert.max_gain_a, cert.max_gain_b, 0.0}), 1e-4);
  }

  return rep;
}

inline ScenarioReport run_property_suite(const SearchConfig& cfg) {
  cfg.validate();
  ScenarioReport rep;
  rep.scenario = "properties";
  detail::SuiteTimer timer(rep);

  const GameSpec game = GameSpec::prisoners_dilemma();
  const EwlContext ctx = build_context();
  const detail::ParamSpace cp_space{StrategySet::CP};

  auto random_strategy = [&](std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kind(0, 2);
    switch (kind(rng)) {
      case 0:
        return Strategy::unitary(random_su2(rng));
      case 1: {
        std::uniform_int_distribution<int> nn(1, 4);
        const int n = nn(rng);
        std::vector<std::pair<double, Mat2>> comps;
        std::uniform_real_distribution<double> u(0.05, 1.0);
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
          const double w = u(rng);
          comps.emplace_back(w, random_su2(rng));
          total += w;
        }
        double acc = 0.0;
        for (int i = 0; i < n - 1; ++i) {
          comps[static_cast<std::size_t>(i)].first /= total;
          acc += comps[static_cast<std::size_t>(i)].first;
        }
        comps.back().first = 1.0 - acc;
        return Strategy::mixture(comps);
      }
      default: {
        std::vector<double> x(32);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (auto& v : x) v = u(rng);
        return Strategy::channel(cp_space.kraus_at(x));
      }
    }
  };

  // trace preservation, density validity, probability normalisation
  {
    double trace_dev = 0.0, prob_sum_dev = 0.0, min_prob = 1.0;
    bool all_density = true;
    for (int i = 0; i < 60; ++i) {
      std::mt19937_64 rng(
          detail::sub_seed(cfg.seed, 31, static_cast<std::uint64_t>(i)));
      const Strategy sa = random_strategy(rng);
      const Strategy sb = random_strategy(rng);
      const Mat4 sigma = apply_strategies(ctx, sa, sb);
      trace_dev = std::max(trace_dev, std::abs(trace(sigma).real() - 1.0) +
                                          std::abs(trace(sigma).imag()));
      if (!is_density(sigma, 1e-9)) all_density = false;
      const auto probs = outcome_probabilities(ctx, sigma);
      double sum = 0.0;
      for (double p : probs) {
        sum += p;
        min_prob = std::min(min_prob, p);
      }
      prob_sum_dev = std::max(prob_sum_dev, std::abs(sum - 1.0));
    }
    rep.add_numeric("max |tr sigma - 1| over random strategy pairs", 0,
                    trace_dev, 1e-10);
    rep.add_bool("every final state passes is_density(1e-9)", true,
                 all_density);
    rep.add_numeric("max |sum of outcome probabilities - 1|", 0, prob_sum_dev,
                    1e-10);
    rep.add_numeric("most negative outcome probability", 0,
                    std::min(min_prob, 0.0), 1e-10);
  }

  // payoff pairs stay inside the achievable hull
  {
    const auto hull = detail::payoff_hull(game);
    const detail::PurePairEvaluator eval(game, ctx);
    bool all_inside = true;
    for (int i = 0; i < 1000 && all_inside; ++i) {
      std::mt19937_64 rng(
          detail::sub_seed(cfg.seed, 32, static_cast<std::uint64_t>(i)));
      const PayoffPair p = eval.pair(random_su2(rng), random_su2(rng));
      all_inside = detail::hull_contains(hull, {p.alice, p.bob}, 1e-9);
    }
    rep.add_bool("1000 random GU payoff pairs inside the PD hull", true,
                 all_inside);
  }

  // joint Q-conjugation invariance of payoffs
  {
    double max_dev = 0.0;
    for (int i = 0; i < 200; ++i) {
      std::mt19937_64 rng(
          detail::sub_seed(cfg.seed, 33, static_cast<std::uint64_t>(i)));
      const Strategy sa = Strategy::unitary(random_su2(rng));
      const Strategy sb = Strategy::unitary(random_su2(rng));
      const PayoffPair p = payoffs_for(game, ctx, sa, sb);
      const PayoffPair pc =
          payoffs_for(game, ctx, conjugate_by_q(sa), conjugate_by_q(sb));
      max_dev = std::max({max_dev, std::abs(p.alice - pc.alice),
                          std::abs(p.bob - pc.bob)});
    }
    rep.add_numeric("max payoff deviation under joint Q-conjugation (200)", 0,
                    max_dev, 1e-10);
  }

  // mixtures act unitally: reduced states maximally mixed, majorisation holds
  {
    double max_dev = 0.0;
    bool majorised = true;
    Mat2 half = Mat2::identity();
    half *= Complex(0.5);
    for (int i = 0; i < 100; ++i) {
      std::mt19937_64 rng(
          detail::sub_seed(cfg.seed, 34, static_cast<std::uint64_t>(i)));
      Strategy sa = random_strategy(rng);
      Strategy sb = random_strategy(rng);
      if (sa.kind() == Strategy::Kind::channel) sa = strategy_c();
      if (sb.kind() == Strategy::Kind::channel) sb = strategy_c();
      const Mat4 sigma = apply_strategies(ctx, sa, sb);
      const Mat2 red_a = partial_trace(sigma, Player::alice);
      const Mat2 red_b = partial_trace(sigma, Player::bob);
      max_dev = std::max({max_dev, max_abs_diff(red_a, half),
                          max_abs_diff(red_b, half)});
      const Mat2 init_a = partial_trace(ctx.initial_state(), Player::alice);
      if (!is_more_mixed(red_a, init_a, 1e-10) ||
          !is_more_mixed(red_b, init_a, 1e-10)) {
        majorised = false;
      }
    }
    rep.add_numeric("max |reduced state - I/2| after unitary mixtures", 0,
                    max_dev, 1e-10);
    rep.add_bool("reduced final states majorised by reduced initial states",
                 true, majorised);
  }

  // set inclusions: identical payoffs across CL -> TP -> GU -> CP embeddings
  {
    double max_dev = 0.0;
    for (int i = 0; i < 50; ++i) {
      std::mt19937_64 rng(
          detail::sub_seed(cfg.seed, 35, static_cast<std::uint64_t>(i)));
      std::uniform_real_distribution<double> ut(0.0, M_PI);
      const double theta = ut(rng);
      const Strategy opp = Strategy::unitary(random_su2(rng));
      const Strategy s_cl = u_one_param(theta);
      const Strategy s_tp = u_two_param(theta, 0.0);
      const Strategy s_gu = u_general(0.0, theta, 0.0);
      const Strategy s_cp =
          Strategy::channel({detail::one_param_matrix(theta)});
      const PayoffPair base = payoffs_for(game, ctx, s_cl, opp);
      for (const Strategy* s : {&s_tp, &s_gu, &s_cp}) {
        const PayoffPair p = payoffs_for(game, ctx, *s, opp);
        max_dev = std::max({max_dev, std::abs(p.alice - base.alice),
                            std::abs(p.bob - base.bob)});
      }
    }
    rep.add_numeric("max payoff deviation across CL/TP/GU/CP embeddings", 0,
                    max_dev, 1e-12);
  }

  return rep;
}

}  // namespace qgame
