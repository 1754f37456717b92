// Acceptance suite: runs every top-level criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit code 0 iff all pass.

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "qgame/equilibrium.hpp"
#include "qgame/game.hpp"
#include "qgame/json_io.hpp"
#include "qgame/parallel.hpp"
#include "qgame/scenarios.hpp"
#include "qgame/strategies.hpp"

using namespace qgame;

namespace {

int g_failures = 0;

struct Criterion {
  explicit Criterion(std::string n) : name(std::move(n)) {}

  std::string name;
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void expect_near(double expected, double observed, double tol,
                   const std::string& what) {
    if (!(std::abs(expected - observed) <= tol)) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%s: expected %.12g, got %.12g (tol %g)",
                    what.c_str(), expected, observed, tol);
      detail += buf;
    }
  }
  ~Criterion() {
    std::printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
  }
};

}  // namespace

int main() {
  const EwlContext ctx = build_context();
  const GameSpec pd = GameSpec::prisoners_dilemma();
  const GameSpec chicken = GameSpec::chicken();
  const SearchConfig cfg;  // grid 61, restarts 100, epsilon 1e-6, seed 42
  const Strategy c = strategy_c();
  const Strategy d = strategy_d();
  const Strategy q = strategy_q();
  const Strategy r = focal_r();

  SearchConfig light = cfg;
  light.grid_points_per_axis = 7;
  light.restarts = 8;

  {  // 1. classical embedding
    Criterion crit{"1. classical embedding reproduces the PD payoff table"};
    const struct {
      const Strategy* a;
      const Strategy* b;
      double ea, eb;
      const char* label;
    } rows[] = {{&c, &c, 3, 3, "(C,C)"},
                {&c, &d, 0, 5, "(C,D)"},
                {&d, &c, 5, 0, "(D,C)"},
                {&d, &d, 1, 1, "(D,D)"}};
    for (const auto& row : rows) {
      const PayoffPair p = payoffs_for(pd, ctx, *row.a, *row.b);
      crit.expect_near(row.ea, p.alice, 1e-12,
                       std::string("P_A") + row.label);
      crit.expect_near(row.eb, p.bob, 1e-12, std::string("P_B") + row.label);
    }
  }

  {  // 2. PD in the one-parameter set
    Criterion crit{"2. PD one-parameter set: dominant (D,D), classical"};
    crit.expect(check_dominant(pd, ctx, d, Player::alice, StrategySet::CL,
                               cfg),
                "D not dominant for Alice");
    crit.expect(
        check_dominant(pd, ctx, d, Player::bob, StrategySet::CL, cfg),
        "D not dominant for Bob");
    const auto cert = verify_nash(pd, ctx, d, d, StrategySet::CL, cfg);
    crit.expect(cert.certified, "(D,D) not certified");
    crit.expect_near(1, cert.payoffs.alice, 1e-12, "P_A(D,D)");
    crit.expect_near(1, cert.payoffs.bob, 1e-12, "P_B(D,D)");
    crit.expect(std::max(cert.max_gain_a, cert.max_gain_b) <= 1e-9,
                "gain above 1e-9");
    double max_dev = 0.0;
    const auto thetas = detail::linspace(0.0, M_PI, 51);
    const detail::PurePairEvaluator eval(pd, ctx);
    for (double ta : thetas) {
      for (double tb : thetas) {
        const PayoffPair ewl = eval.pair(detail::one_param_matrix(ta),
                                         detail::one_param_matrix(tb));
        const double pa = std::cos(ta / 2) * std::cos(ta / 2);
        const double pb = std::cos(tb / 2) * std::cos(tb / 2);
        const PayoffPair cls = detail::classical_mixed_payoffs(pd, pa, pb);
        max_dev = std::max({max_dev, std::abs(ewl.alice - cls.alice),
                            std::abs(ewl.bob - cls.bob)});
      }
    }
    crit.expect(max_dev <= 1e-9,
                "payoff surface deviates from classical mixed strategies");
  }

  {  // 3. PD in the two-parameter set
    Criterion crit{"3. PD two-parameter set: unique Nash (Q,Q) = (3,3)"};
    const auto cert = verify_nash(pd, ctx, q, q, StrategySet::TP, cfg);
    crit.expect(cert.certified, "(Q,Q) not certified");
    crit.expect_near(3, cert.payoffs.alice, 1e-12, "P_A(Q,Q)");
    crit.expect_near(3, cert.payoffs.bob, 1e-12, "P_B(Q,Q)");
    crit.expect(std::max(cert.max_gain_a, cert.max_gain_b) <= 1e-6,
                "gain above 1e-6");
    const auto classes = find_nash_grid(pd, ctx, StrategySet::TP, cfg);
    std::size_t strict_count = 0;
    bool is_qq = false;
    for (const auto& cls : classes) {
      if (cls.strict.value_or(false)) {
        ++strict_count;
        is_qq = strategies_equivalent(pd, ctx, cls.alice, q, light) &&
                strategies_equivalent(pd, ctx, cls.bob, q, light);
      }
    }
    crit.expect(strict_count == 1,
                "strict class count " + std::to_string(strict_count));
    crit.expect(is_qq, "the unique class is not (Q,Q)");
    crit.expect(check_pareto(pd, cert.payoffs), "(3,3) not Pareto optimal");
  }

  {  // 4. PD general unitaries
    Criterion crit{"4. PD general unitaries: optimal answers, no pure Nash"};
    double min_overlap = 1.0, pa_dev = 0.0, pb_dev = 0.0;
    for (int i = 0; i < 1000; ++i) {
      std::mt19937_64 g(
          detail::sub_seed(cfg.seed, 91, static_cast<std::uint64_t>(i)));
      const Strategy sb = Strategy::unitary(random_su2(g));
      const Strategy sa = optimal_answer(sb);
      const Mat4 sigma = apply_strategies(ctx, sa, sb);
      min_overlap = std::min(
          min_overlap, trace(ctx.projector(Outcome::dc) * sigma).real());
      const PayoffPair p = expected_payoffs(pd, ctx, sigma);
      pa_dev = std::max(pa_dev, std::abs(p.alice - 5.0));
      pb_dev = std::max(pb_dev, std::abs(p.bob));
    }
    crit.expect(min_overlap >= 1.0 - 1e-9,
                "overlap dropped to " + std::to_string(min_overlap));
    crit.expect(pa_dev <= 1e-9 && pb_dev <= 1e-9, "payoffs deviate from (5,0)");

    bool all_refuted = true;
    double min_gain = 1e9;
    double worst_search = 5.0;  // search sanity: best response reaches 5
    for (int i = 0; i < 100 && all_refuted; ++i) {
      std::mt19937_64 g(
          detail::sub_seed(cfg.seed, 92, static_cast<std::uint64_t>(i)));
      const Strategy sa = Strategy::unitary(random_su2(g));
      const Strategy sb = Strategy::unitary(random_su2(g));
      const auto cert = verify_nash(pd, ctx, sa, sb, StrategySet::GU, cfg);
      const double gain = std::max(cert.max_gain_a, cert.max_gain_b);
      min_gain = std::min(min_gain, gain);
      worst_search = std::min({worst_search,
                               cert.payoffs.alice + cert.max_gain_a,
                               cert.payoffs.bob + cert.max_gain_b});
      if (cert.certified || gain <= 0.0 || !cert.witness) {
        all_refuted = false;
      }
    }
    crit.expect(all_refuted,
                "a random pure profile survived (min gain " +
                    std::to_string(min_gain) + ")");
    crit.expect(worst_search >= 5.0 - 1e-4,
                "a deviation search fell short of the closed-form value 5 (" +
                    std::to_string(worst_search) + ")");
  }

  const Strategy mix_a = Strategy::mixture(
      {{0.5, Mat2::identity()},
       {0.5, Mat2{Complex(0, -1), 0, 0, Complex(0, 1)}}});
  const Strategy mix_b = Strategy::mixture(
      {{0.5, Mat2{0, 1, -1, 0}},
       {0.5, Mat2{0, Complex(0, -1), Complex(0, -1), 0}}});

  {  // 5. PD mixed equilibrium
    Criterion crit{"5. PD mixed equilibrium at (2.5, 2.5) and its dual"};
    const PayoffPair p = payoffs_for(pd, ctx, mix_a, mix_b);
    crit.expect_near(2.5, p.alice, 1e-12, "P_A(mix)");
    crit.expect_near(2.5, p.bob, 1e-12, "P_B(mix)");
    const auto br_b =
        best_response(pd, ctx, mix_a, Player::bob, StrategySet::GU, cfg);
    crit.expect(br_b.second <= 2.5 + 1e-4,
                "Bob's pure response exceeds 2.5 + 1e-4");
    const auto br_a =
        best_response(pd, ctx, mix_b, Player::alice, StrategySet::GU, cfg);
    crit.expect(br_a.second <= 2.5 + 1e-4,
                "Alice's pure response exceeds 2.5 + 1e-4");
    const auto dual = dual_profile({mix_a, mix_b});
    const auto cert = verify_mixed_nash(pd, ctx, dual.first, dual.second, cfg);
    crit.expect(cert.certified, "dual profile not certified");
    crit.expect_near(2.5, cert.payoffs.alice, 1e-12, "dual P_A");
    crit.expect_near(2.5, cert.payoffs.bob, 1e-12, "dual P_B");
  }

  {  // 6. focal strategy R
    Criterion crit{"6. focal R: twirl to I/4, payoffs, self-duality"};
    Mat4 mixed = Mat4::identity();
    mixed *= Complex(0.25);
    crit.expect(max_abs_diff(apply_strategies(ctx, r, c), mixed) <= 1e-12,
                "(R,C) does not reach I/4");
    crit.expect(max_abs_diff(apply_strategies(ctx, c, r), mixed) <= 1e-12,
                "(C,R) does not reach I/4");
    const PayoffPair p_pd = payoffs_for(pd, ctx, r, r);
    crit.expect_near(2.25, p_pd.alice, 1e-12, "PD P_A(R,R)");
    crit.expect_near(2.25, p_pd.bob, 1e-12, "PD P_B(R,R)");
    const PayoffPair p_ch = payoffs_for(chicken, ctx, r, r);
    crit.expect_near(4, p_ch.alice, 1e-12, "Chicken P_A(R,R)");
    crit.expect_near(4, p_ch.bob, 1e-12, "Chicken P_B(R,R)");
    crit.expect(channels_equal(r, conjugate_by_q(r), 1e-12),
                "conjugate_by_q(R) is a different channel");
    SearchConfig eq_cfg = cfg;
    eq_cfg.epsilon = 1e-6;
    crit.expect(strategies_equivalent(pd, ctx, r, conjugate_by_q(r), eq_cfg),
                "R not payoff-equivalent to its conjugate");
  }

  {  // 7. PD completely positive maps
    Criterion crit{"7. PD CP set: measurement equilibrium at (2.5, 2.5)"};
    const auto [ma, mb] = measurement_strategy_pair();
    const Mat4 sigma = apply_strategies(ctx, ma, mb);
    Mat4 expect_sigma;
    expect_sigma(1, 1) = 0.5;
    expect_sigma(2, 2) = 0.5;
    crit.expect(max_abs_diff(sigma, expect_sigma) <= 1e-12,
                "final state deviates from (|01><01|+|10><10|)/2");
    const PayoffPair p = expected_payoffs(pd, ctx, sigma);
    crit.expect_near(2.5, p.alice, 1e-12, "P_A");
    crit.expect_near(2.5, p.bob, 1e-12, "P_B");
    SearchConfig cp_cfg = cfg;
    cp_cfg.epsilon = 1e-4;
    const auto cert = verify_nash(pd, ctx, ma, mb, StrategySet::CP, cp_cfg);
    crit.expect(cert.max_gain_a <= 1e-4,
                "Alice's CP deviation gain " + std::to_string(cert.max_gain_a));
    crit.expect(cert.max_gain_b <= 1e-4,
                "Bob's CP deviation gain " + std::to_string(cert.max_gain_b));
  }

  {  // 8. chicken
    Criterion crit{"8. Chicken: classical pair, P_B values, TP Nash (6,6)"};
    const auto cl_classes = find_nash_grid(chicken, ctx, StrategySet::CL, cfg);
    std::size_t strict_count = 0;
    bool found_cd = false, found_dc = false;
    for (const auto& cls : cl_classes) {
      if (!cls.strict.value_or(false)) continue;
      ++strict_count;
      if (strategies_equivalent(chicken, ctx, cls.alice, c, light) &&
          strategies_equivalent(chicken, ctx, cls.bob, d, light)) {
        found_cd = true;
      } else if (strategies_equivalent(chicken, ctx, cls.alice, d, light) &&
                 strategies_equivalent(chicken, ctx, cls.bob, c, light)) {
        found_dc = true;
      }
    }
    crit.expect(strict_count == 2 && found_cd && found_dc,
                "pure classical equilibria are not exactly {(C,D),(D,C)}");

    const Strategy coin = u_one_param(M_PI / 2);
    const auto mixed_cert =
        verify_nash(chicken, ctx, coin, coin, StrategySet::CL, cfg);
    crit.expect(mixed_cert.certified, "mixed classical point not certified");
    crit.expect_near(4, mixed_cert.payoffs.alice, 1e-9, "mixed payoff P_A");
    crit.expect_near(4, mixed_cert.payoffs.bob, 1e-9, "mixed payoff P_B");

    crit.expect_near(8, payoffs_for(chicken, ctx, d, q).bob, 1e-12,
                     "P_B(D,Q)");
    crit.expect_near(2, payoffs_for(chicken, ctx, d, c).bob, 1e-12,
                     "P_B(D,C)");

    const auto cert = verify_nash(chicken, ctx, q, q, StrategySet::TP, cfg);
    crit.expect(cert.certified, "(Q,Q) not certified");
    crit.expect_near(6, cert.payoffs.alice, 1e-12, "P_A(Q,Q)");
    crit.expect_near(6, cert.payoffs.bob, 1e-12, "P_B(Q,Q)");
    const auto tp_classes = find_nash_grid(chicken, ctx, StrategySet::TP, cfg);
    std::size_t tp_strict = 0;
    bool tp_is_qq = false;
    for (const auto& cls : tp_classes) {
      if (cls.strict.value_or(false)) {
        ++tp_strict;
        tp_is_qq = strategies_equivalent(chicken, ctx, cls.alice, q, light) &&
                   strategies_equivalent(chicken, ctx, cls.bob, q, light);
      }
    }
    crit.expect(tp_strict == 1 && tp_is_qq,
                "TP strict classes != {(Q,Q)} (count " +
                    std::to_string(tp_strict) + ")");
    crit.expect(check_pareto(chicken, cert.payoffs),
                "(6,6) not Pareto optimal");
  }

  {  // 9. property suite
    Criterion crit{"9. property suite green"};
    const auto rep = run_property_suite(cfg);
    for (const auto& claim : rep.claims) {
      crit.expect(claim.pass, "property failed: " + claim.description);
    }
  }

  {  // 10. determinism
    Criterion crit{"10. reproduce: byte-identical reports across runs/threads"};
    auto render = [&] {
      const auto pd_rep = run_pd_suite(cfg);
      const auto ch_rep = run_chicken_suite(cfg);
      return std::make_pair(
          to_json(pd_rep).dump(2) + "\n" + to_json(ch_rep).dump(2),
          pd_rep.passed() && ch_rep.passed());
    };
    const auto [run1, green1] = render();
    const auto [run2, green2] = render();
    crit.expect(green1 && green2, "suites not green");
    crit.expect(run1 == run2, "consecutive runs differ");
    set_thread_cap(1);
    const std::string run_single = render().first;
    set_thread_cap(4);
    const std::string run_quad = render().first;
    set_thread_cap(0);
    crit.expect(run1 == run_single, "single-thread run differs");
    crit.expect(run1 == run_quad, "four-thread run differs");
  }

  if (g_failures == 0) {
    std::printf("acceptance: all criteria pass\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
  return 1;
}
