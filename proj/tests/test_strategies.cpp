#include <catch2/catch_amalgamated.hpp>

#include "qgame/game.hpp"
#include "qgame/qmath.hpp"
#include "qgame/strategies.hpp"
#include "test_helpers.hpp"

using namespace qgame;

namespace {
const Mat2 kD{0, 1, -1, 0};
const Mat2 kQ{Complex(0, 1), 0, 0, Complex(0, -1)};

// Oracle: probability of landing in the given measurement outcome.
double outcome_weight(const EwlContext& ctx, const Strategy& a,
                      const Strategy& b, Outcome o) {
  const Mat4 sigma = apply_strategies(ctx, a, b);
  return trace(ctx.projector(o) * sigma).real();
}
}  // namespace

TEST_CASE("one-parameter rotations") {
  REQUIRE(approx_equal(u_one_param(0.0).unitary_matrix(), Mat2::identity()));
  REQUIRE(approx_equal(u_one_param(M_PI).unitary_matrix(), kD, 1e-15));

  const double r = 1.0 / std::sqrt(2.0);
  REQUIRE(approx_equal(u_one_param(M_PI / 2).unitary_matrix(),
                       Mat2{r, r, -r, r}, 1e-15));

  REQUIRE_THROWS_AS(u_one_param(-0.1), std::domain_error);
  REQUIRE_THROWS_AS(u_one_param(M_PI + 0.1), std::domain_error);
}

TEST_CASE("two-parameter unitaries") {
  REQUIRE(approx_equal(u_two_param(0, 0).unitary_matrix(), Mat2::identity()));
  REQUIRE(approx_equal(u_two_param(0, M_PI / 2).unitary_matrix(), kQ, 1e-15));
  REQUIRE(approx_equal(u_two_param(M_PI, 0).unitary_matrix(), kD, 1e-15));

  REQUIRE_THROWS_AS(u_two_param(0, M_PI), std::domain_error);
  REQUIRE_THROWS_AS(u_two_param(4.0, 0), std::domain_error);
}

TEST_CASE("general unitary chart") {
  REQUIRE(approx_equal(u_general(0, 0, 0).unitary_matrix(), Mat2::identity()));

  // chart overlap with the two-parameter set
  for (double a : {0.0, 0.3, 1.0, M_PI / 2}) {
    REQUIRE(approx_equal(u_general(a, 0, 0).unitary_matrix(),
                         u_two_param(0, a).unitary_matrix(), 1e-15));
  }

  auto g = qtest::rng(11);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  for (int i = 0; i < 25; ++i) {
    REQUIRE(is_unitary(u_general(u(g), u(g), u(g)).unitary_matrix(), 1e-12));
  }
}

TEST_CASE("strategy constructors reject invalid input") {
  Mat2 two = Mat2::identity();
  two *= Complex(2.0);
  REQUIRE_THROWS_AS(Strategy::unitary(two), std::invalid_argument);

  REQUIRE_THROWS_AS(Strategy::channel({Mat2{1, 0, 0, 0}}),
                    std::invalid_argument);  // not trace preserving
  REQUIRE_THROWS_AS(Strategy::channel({}), std::invalid_argument);

  REQUIRE_THROWS_AS(
      Strategy::mixture({{0.7, Mat2::identity()}, {0.2, kD}}),
      std::invalid_argument);  // probabilities do not sum to 1
  REQUIRE_THROWS_AS(Strategy::mixture({{1.5, Mat2::identity()},
                                       {-0.5, kD}}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(Strategy::mixture({{1.0, two}}), std::invalid_argument);

  std::vector<std::pair<double, Mat2>> nine(9, {1.0 / 9, Mat2::identity()});
  REQUIRE_THROWS_AS(Strategy::mixture(nine), std::invalid_argument);

  // channels are capped at 8 Kraus operators
  Mat2 third = Mat2::identity();
  third *= Complex(1.0 / 3.0);
  REQUIRE_THROWS_AS(Strategy::channel(std::vector<Mat2>(9, third)),
                    std::invalid_argument);
  Mat2 eighth = Mat2::identity();
  eighth *= Complex(1.0 / std::sqrt(8.0));
  REQUIRE_NOTHROW(Strategy::channel(std::vector<Mat2>(8, eighth)));
}

TEST_CASE("optimal answer steers onto psi_DC") {
  const EwlContext ctx = build_context();
  const GameSpec pd = GameSpec::prisoners_dilemma();

  // against C the answer is D up to a global phase
  REQUIRE(equal_up_to_global_phase(
      optimal_answer(strategy_c()).unitary_matrix(), kD, 1e-12));

  // against Q the answer is [[0, i], [i, 0]] with payoffs (5, 0)
  const Strategy t_q = optimal_answer(strategy_q());
  REQUIRE(approx_equal(t_q.unitary_matrix(),
                       Mat2{0, Complex(0, 1), Complex(0, 1), 0}, 1e-15));
  const PayoffPair p = payoffs_for(pd, ctx, t_q, strategy_q());
  REQUIRE(std::abs(p.alice - 5.0) < 1e-12);
  REQUIRE(std::abs(p.bob) < 1e-12);

  // sweep: the final state lands exactly on the DC outcome
  for (int i = 0; i < 1000; ++i) {
    std::mt19937_64 g(1000 + static_cast<std::uint64_t>(i));
    const Strategy sb = Strategy::unitary(random_su2(g));
    const Strategy sa = optimal_answer(sb);
    REQUIRE(is_unitary(sa.unitary_matrix(), 1e-12));
    REQUIRE(outcome_weight(ctx, sa, sb, Outcome::dc) > 1.0 - 1e-9);
  }

  REQUIRE_THROWS_AS(optimal_answer(focal_r()), std::invalid_argument);
}

TEST_CASE("Bob's mirror answer steers onto psi_CD") {
  const EwlContext ctx = build_context();
  const GameSpec pd = GameSpec::prisoners_dilemma();

  {
    const Strategy sb = bob_optimal_answer(strategy_c());
    const PayoffPair p = payoffs_for(pd, ctx, strategy_c(), sb);
    REQUIRE(std::abs(p.alice) < 1e-12);
    REQUIRE(std::abs(p.bob - 5.0) < 1e-12);
  }
  {
    const Strategy sb = bob_optimal_answer(strategy_q());
    const PayoffPair p = payoffs_for(pd, ctx, strategy_q(), sb);
    REQUIRE(std::abs(p.alice) < 1e-12);
    REQUIRE(std::abs(p.bob - 5.0) < 1e-12);
  }

  // printed pattern [[-i b, a], [-d, -i c]] against a random Alice matrix
  auto g = qtest::rng(13);
  for (int i = 0; i < 200; ++i) {
    const Mat2 ua = random_su2(g);
    const Strategy sb = bob_optimal_answer(Strategy::unitary(ua));
    const Mat2& m = sb.unitary_matrix();
    const Complex im(0, 1);
    REQUIRE(std::abs(m(0, 0) - (-im * ua(0, 1))) < 1e-15);
    REQUIRE(std::abs(m(0, 1) - ua(0, 0)) < 1e-15);
    REQUIRE(std::abs(m(1, 0) - (-ua(1, 1))) < 1e-15);
    REQUIRE(std::abs(m(1, 1) - (-im * ua(1, 0))) < 1e-15);
    REQUIRE(outcome_weight(ctx, Strategy::unitary(ua), sb, Outcome::cd) >
            1.0 - 1e-9);
  }
}

TEST_CASE("mixtures") {
  const EwlContext ctx = build_context();
  const GameSpec pd = GameSpec::prisoners_dilemma();

  // degenerate mixture behaves exactly like its single component
  const Strategy single = Strategy::mixture({{1.0, Mat2::identity()}});
  REQUIRE(channels_equal(single, strategy_c(), 1e-15));
  auto g = qtest::rng(17);
  for (int i = 0; i < 10; ++i) {
    const Strategy opp = Strategy::unitary(random_su2(g));
    const PayoffPair a = payoffs_for(pd, ctx, single, opp);
    const PayoffPair b = payoffs_for(pd, ctx, strategy_c(), opp);
    REQUIRE(std::abs(a.alice - b.alice) < 1e-12);
    REQUIRE(std::abs(a.bob - b.bob) < 1e-12);
  }

  // the equilibrium mixtures of the text
  const Strategy mix_a = Strategy::mixture(
      {{0.5, Mat2::identity()}, {0.5, Mat2{Complex(0, -1), 0, 0, Complex(0, 1)}}});
  const Strategy mix_b = Strategy::mixture(
      {{0.5, kD}, {0.5, Mat2{0, Complex(0, -1), Complex(0, -1), 0}}});

  // mixture application agrees with the explicit double convex combination
  const Mat4 sigma = apply_strategies(ctx, mix_a, mix_b);
  Mat4 oracle;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const auto [pa, ua] = mix_a.component(i);
      const auto [pb, ub] = mix_b.component(j);
      const Mat4 joint = tensor(ua, ub);
      oracle += Complex(pa * pb) * (joint * ctx.initial_state() * dagger(joint));
    }
  }
  REQUIRE(max_abs_diff(sigma, oracle) < 1e-14);

  // the four crossing identities: (i, i) pays (0, 5), (i, 3-i) pays (5, 0)
  for (std::size_t i = 0; i < 2; ++i) {
    const Strategy sa = Strategy::unitary(mix_a.component(i).second);
    for (std::size_t j = 0; j < 2; ++j) {
      const Strategy sb = Strategy::unitary(mix_b.component(j).second);
      const PayoffPair p = payoffs_for(pd, ctx, sa, sb);
      if (i == j) {
        REQUIRE(std::abs(p.alice) < 1e-12);
        REQUIRE(std::abs(p.bob - 5.0) < 1e-12);
      } else {
        REQUIRE(std::abs(p.alice - 5.0) < 1e-12);
        REQUIRE(std::abs(p.bob) < 1e-12);
      }
    }
  }
}

TEST_CASE("focal strategy R is the uniform Pauli twirl") {
  const EwlContext ctx = build_context();
  const Strategy r = focal_r();

  // oracle: explicit four-term sum applied on Alice's side
  Mat4 twirled;
  for (const Mat2& p :
       {Mat2::identity(), pauli_x(), pauli_y(), pauli_z()}) {
    const Mat4 joint = tensor(p, Mat2::identity());
    twirled += Complex(0.25) * (joint * ctx.initial_state() * dagger(joint));
  }
  Mat4 mixed = Mat4::identity();
  mixed *= Complex(0.25);
  REQUIRE(max_abs_diff(twirled, mixed) < 1e-15);

  REQUIRE(max_abs_diff(apply_strategies(ctx, r, strategy_c()), mixed) <
          1e-15);
  auto g = qtest::rng(19);
  for (int i = 0; i < 10; ++i) {
    const Strategy opp = Strategy::unitary(random_su2(g));
    REQUIRE(max_abs_diff(apply_strategies(ctx, r, opp), mixed) < 1e-12);
    REQUIRE(max_abs_diff(apply_strategies(ctx, opp, r), mixed) < 1e-12);
  }

  const GameSpec pd = GameSpec::prisoners_dilemma();
  const PayoffPair p_pd = payoffs_for(pd, ctx, r, r);
  REQUIRE(std::abs(p_pd.alice - 2.25) < 1e-12);
  REQUIRE(std::abs(p_pd.bob - 2.25) < 1e-12);

  const GameSpec ch = GameSpec::chicken();
  const PayoffPair p_ch = payoffs_for(ch, ctx, r, r);
  REQUIRE(std::abs(p_ch.alice - 4.0) < 1e-12);
  REQUIRE(std::abs(p_ch.bob - 4.0) < 1e-12);
}

TEST_CASE("measurement strategy pair") {
  const EwlContext ctx = build_context();
  const auto [ma, mb] = measurement_strategy_pair();

  // Kraus completeness
  for (const Strategy* s : {&ma, &mb}) {
    Mat2 sum;
    for (const auto& k : s->kraus()) sum += dagger(k) * k;
    REQUIRE(max_abs_diff(sum, Mat2::identity()) < 1e-15);
  }

  // joint action gives the equal mixture of |01> and |10>
  const Mat4 sigma = apply_strategies(ctx, ma, mb);
  Mat4 expect;
  expect(1, 1) = 0.5;
  expect(2, 2) = 0.5;
  REQUIRE(max_abs_diff(sigma, expect) < 1e-15);

  const GameSpec pd = GameSpec::prisoners_dilemma();
  const PayoffPair p = expected_payoffs(pd, ctx, sigma);
  REQUIRE(std::abs(p.alice - 2.5) < 1e-12);
  REQUIRE(std::abs(p.bob - 2.5) < 1e-12);

  // each channel alone preserves trace on random inputs
  auto g = qtest::rng(23);
  for (int i = 0; i < 10; ++i) {
    const Mat2 rho = qtest::random_density<2>(g);
    REQUIRE(std::abs(trace(apply_to_qubit(ma, rho)).real() - 1.0) < 1e-12);
    REQUIRE(std::abs(trace(apply_to_qubit(mb, rho)).real() - 1.0) < 1e-12);
  }
}

TEST_CASE("conjugation by Q") {
  REQUIRE(approx_equal(conjugate_by_q(strategy_c()).unitary_matrix(),
                       Mat2::identity()));

  // direct 2x2 conjugation oracle: Q D Q^dag = -D
  Mat2 minus_d = kD;
  minus_d *= Complex(-1.0);
  const Mat2 oracle = kQ * kD * dagger(kQ);
  REQUIRE(approx_equal(oracle, minus_d, 1e-15));
  REQUIRE(approx_equal(conjugate_by_q(strategy_d()).unitary_matrix(), minus_d,
                       1e-15));

  // the twirl is closed under Q-conjugation: identical channel action on a
  // full operator basis
  const Strategy r = focal_r();
  const Strategy rq = conjugate_by_q(r);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      Mat2 unit;
      unit(i, j) = 1.0;
      REQUIRE(max_abs_diff(apply_to_qubit(r, unit), apply_to_qubit(rq, unit)) <
              1e-15);
    }
  }
  REQUIRE(channels_equal(r, rq, 1e-15));

  REQUIRE_THROWS_AS(conjugate_by_q(measurement_strategy_pair().first),
                    std::invalid_argument);
}

TEST_CASE("set inclusions: identical payoffs across embeddings") {
  const EwlContext ctx = build_context();
  const GameSpec pd = GameSpec::prisoners_dilemma();
  auto g = qtest::rng(29);
  std::uniform_real_distribution<double> ut(0.0, M_PI);
  for (int i = 0; i < 20; ++i) {
    const double theta = ut(g);
    REQUIRE(approx_equal(u_one_param(theta).unitary_matrix(),
                         u_two_param(theta, 0).unitary_matrix(), 1e-15));
    REQUIRE(approx_equal(u_one_param(theta).unitary_matrix(),
                         u_general(0, theta, 0).unitary_matrix(), 1e-15));

    const Strategy opp = Strategy::unitary(random_su2(g));
    const Strategy as_unitary = u_one_param(theta);
    const Strategy as_channel =
        Strategy::channel({as_unitary.unitary_matrix()});
    const PayoffPair a = payoffs_for(pd, ctx, as_unitary, opp);
    const PayoffPair b = payoffs_for(pd, ctx, as_channel, opp);
    REQUIRE(std::abs(a.alice - b.alice) < 1e-12);
    REQUIRE(std::abs(a.bob - b.bob) < 1e-12);
  }
}

TEST_CASE("named strategy lookup") {
  REQUIRE(approx_equal(named_strategy("C").unitary_matrix(),
                       Mat2::identity()));
  REQUIRE(approx_equal(named_strategy("D").unitary_matrix(), kD));
  REQUIRE(approx_equal(named_strategy("Q").unitary_matrix(), kQ));
  REQUIRE(named_strategy("R").kind() == Strategy::Kind::mixture);
  REQUIRE_THROWS_WITH(named_strategy("X"),
                      Catch::Matchers::ContainsSubstring("C, D, Q, R"));
}
