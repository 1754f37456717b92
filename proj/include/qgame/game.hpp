// The game fabric: classical payoff tables, the fixed entangled initial state
// with its measurement basis, strategy application and the payoff functionals.
#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "qgame/qmath.hpp"
#include "qgame/strategies.hpp"

namespace qgame {

// Measurement outcomes in fixed order; first letter Alice, second Bob.
enum class Outcome { cc = 0, cd = 1, dc = 2, dd = 3 };

inline constexpr std::array<Outcome, 4> kAllOutcomes = {
    Outcome::cc, Outcome::cd, Outcome::dc, Outcome::dd};

inline std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::cc: return "CC";
    case Outcome::cd: return "CD";
    case Outcome::dc: return "DC";
    case Outcome::dd: return "DD";
  }
  return "?";
}

struct PayoffPair {
  double alice = 0.0;
  double bob = 0.0;
};

// Classical payoff table: eight entries, first index Alice's outcome letter,
// second Bob's.
struct GameSpec {
  std::string name;
  double a_cc, a_cd, a_dc, a_dd;
  double b_cc, b_cd, b_dc, b_dd;

  static GameSpec make(std::string name, double a_cc, double a_cd, double a_dc,
                       double a_dd, double b_cc, double b_cd, double b_dc,
                       double b_dd) {
    GameSpec g{std::move(name), a_cc, a_cd, a_dc, a_dd,
               b_cc,            b_cd, b_dc, b_dd};
    for (double v : {g.a_cc, g.a_cd, g.a_dc, g.a_dd, g.b_cc, g.b_cd, g.b_dc,
                     g.b_dd}) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("GameSpec: payoff entries must be finite");
      }
    }
    return g;
  }

  static GameSpec prisoners_dilemma() {
    return make("prisoners_dilemma", 3, 0, 5, 1, 3, 5, 0, 1);
  }

  // Orientation: the defector against a cooperator earns 8, the cooperator 2.
  // This is the assignment under which (C,D) and (D,C) are the two pure
  // classical equilibria and the mixed equilibrium pays 4.
  static GameSpec chicken() {
    return make("chicken", 6, 2, 8, 0, 6, 8, 2, 0);
  }

  double alice_coeff(Outcome o) const {
    switch (o) {
      case Outcome::cc: return a_cc;
      case Outcome::cd: return a_cd;
      case Outcome::dc: return a_dc;
      case Outcome::dd: return a_dd;
    }
    return 0.0;
  }
  double bob_coeff(Outcome o) const {
    switch (o) {
      case Outcome::cc: return b_cc;
      case Outcome::cd: return b_cd;
      case Outcome::dc: return b_dc;
      case Outcome::dd: return b_dd;
    }
    return 0.0;
  }
};

// Zero-sum iff A_xy + B_xy = 0 for every outcome; payoffs being
// outcome-probability averages makes this both sufficient and necessary.
inline bool classify_zero_sum(const GameSpec& g) {
  return g.a_cc + g.b_cc == 0.0 && g.a_cd + g.b_cd == 0.0 &&
         g.a_dc + g.b_dc == 0.0 && g.a_dd + g.b_dd == 0.0;
}

// Initial state rho = |psi><psi| with |psi> = (|00> + i|11>)/sqrt(2) and the
// four rank-1 measurement projectors. Immutable after construction.
class EwlContext {
 public:
  static EwlContext standard() {
    const double r = 1.0 / std::sqrt(2.0);
    const Complex i(0, 1);
    std::array<StateVector, 4> basis = {
        StateVector{r, 0, 0, i * r},    // |psi_CC> = (|00> + i|11>)/sqrt(2)
        StateVector{0, r, -i * r, 0},   // |psi_CD> = (|01> - i|10>)/sqrt(2)
        StateVector{0, -i * r, r, 0},   // |psi_DC> = (|10> - i|01>)/sqrt(2)
        StateVector{i * r, 0, 0, r},    // |psi_DD> = (|11> + i|00>)/sqrt(2)
    };
    return EwlContext(std::move(basis));
  }

  const Mat4& initial_state() const { return rho_; }
  const StateVector& initial_ket() const { return basis_[0]; }
  const Mat4& projector(Outcome o) const {
    return projectors_[static_cast<std::size_t>(o)];
  }
  const StateVector& basis_state(Outcome o) const {
    return basis_[static_cast<std::size_t>(o)];
  }

 private:
  explicit EwlContext(std::array<StateVector, 4> basis)
      : basis_{std::move(basis)},
        projectors_{outer(basis_[0]), outer(basis_[1]), outer(basis_[2]),
                    outer(basis_[3])},
        rho_(projectors_[0]) {}

  std::array<StateVector, 4> basis_;
  std::array<Mat4, 4> projectors_;
  Mat4 rho_;
};

inline EwlContext build_context() { return EwlContext::standard(); }

// Final state sigma = (s_A (x) s_B)(rho), via the canonical Kraus
// decompositions of both strategies.
inline Mat4 apply_strategies(const EwlContext& ctx, const Strategy& alice,
                             const Strategy& bob) {
  alice.validate();
  bob.validate();
  Mat4 sigma;
  for (const auto& ka : alice.kraus_operators()) {
    for (const auto& kb : bob.kraus_operators()) {
      const Mat4 joint = tensor(ka, kb);
      sigma += joint * ctx.initial_state() * dagger(joint);
    }
  }
  return sigma;
}

// The four outcome probabilities tr[pi_xy sigma]. Any imaginary residue above
// 1e-8 signals a corrupted state and raises.
inline std::array<double, 4> outcome_probabilities(const EwlContext& ctx,
                                                   const Mat4& sigma) {
  std::array<double, 4> p{};
  for (Outcome o : kAllOutcomes) {
    const Complex t = trace(ctx.projector(o) * sigma);
    if (std::abs(t.imag()) > 1e-8) {
      throw std::runtime_error(
          "outcome_probabilities: outcome probability has imaginary part " +
          std::to_string(t.imag()));
    }
    p[static_cast<std::size_t>(o)] = t.real();
  }
  return p;
}

inline PayoffPair expected_payoffs(const GameSpec& game, const EwlContext& ctx,
                                   const Mat4& sigma) {
  const auto p = outcome_probabilities(ctx, sigma);
  PayoffPair out;
  for (Outcome o : kAllOutcomes) {
    const double prob = p[static_cast<std::size_t>(o)];
    out.alice += game.alice_coeff(o) * prob;
    out.bob += game.bob_coeff(o) * prob;
  }
  return out;
}

// Payoffs with the coefficient permutation CC <-> DD, CD <-> DC; equals the
// ordinary payoff when Q is composed after the first player's strategy.
inline PayoffPair shifted_payoffs(const GameSpec& game, const EwlContext& ctx,
                                  const Mat4& sigma) {
  const auto p = outcome_probabilities(ctx, sigma);
  auto swapped = [](Outcome o) {
    switch (o) {
      case Outcome::cc: return Outcome::dd;
      case Outcome::cd: return Outcome::dc;
      case Outcome::dc: return Outcome::cd;
      case Outcome::dd: return Outcome::cc;
    }
    return o;
  };
  PayoffPair out;
  for (Outcome o : kAllOutcomes) {
    const double prob = p[static_cast<std::size_t>(o)];
    out.alice += game.alice_coeff(swapped(o)) * prob;
    out.bob += game.bob_coeff(swapped(o)) * prob;
  }
  return out;
}

inline PayoffPair payoffs_for(const GameSpec& game, const EwlContext& ctx,
                              const Strategy& alice, const Strategy& bob) {
  return expected_payoffs(game, ctx, apply_strategies(ctx, alice, bob));
}

}  // namespace qgame
