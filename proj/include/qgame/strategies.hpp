// Strategy representations for one player: a single unitary, a Kraus channel,
// or a finite probabilistic mixture of unitaries, together with the named
// strategies and derived constructions the game analysis relies on.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qgame/qmath.hpp"

namespace qgame {

// Nested strategy sets, ordered by inclusion CL < TP < GU < CP.
enum class StrategySet { CL, TP, GU, CP };

inline std::string_view to_string(StrategySet s) {
  switch (s) {
    case StrategySet::CL: return "CL";
    case StrategySet::TP: return "TP";
    case StrategySet::GU: return "GU";
    case StrategySet::CP: return "CP";
  }
  return "?";
}

inline StrategySet parse_strategy_set(std::string_view name) {
  if (name == "CL" || name == "cl") return StrategySet::CL;
  if (name == "TP" || name == "tp") return StrategySet::TP;
  if (name == "GU" || name == "gu") return StrategySet::GU;
  if (name == "CP" || name == "cp") return StrategySet::CP;
  throw std::invalid_argument("unknown strategy set '" + std::string(name) +
                              "' (expected CL, TP, GU or CP)");
}

class Strategy {
 public:
  enum class Kind { unitary, channel, mixture };

  static Strategy unitary(const Mat2& u, double tol = kValidityTol) {
    if (!is_unitary(u, tol)) {
      throw std::invalid_argument("Strategy::unitary: matrix is not unitary");
    }
    Strategy s(Kind::unitary);
    s.mats_.push_back(u);
    return s;
  }

  static Strategy channel(std::vector<Mat2> kraus, double tol = kValidityTol,
                          std::size_t max_rank = 8) {
    if (kraus.empty() || kraus.size() > max_rank) {
      throw std::invalid_argument("Strategy::channel: need 1.." +
                                  std::to_string(max_rank) +
                                  " Kraus operators");
    }
    Mat2 sum;
    for (const auto& k : kraus) sum += dagger(k) * k;
    if (max_abs_diff(sum, Mat2::identity()) > tol) {
      throw std::invalid_argument(
          "Strategy::channel: Kraus operators do not sum to identity "
          "(not trace-preserving)");
    }
    Strategy s(Kind::channel);
    s.mats_ = std::move(kraus);
    return s;
  }

  static Strategy mixture(const std::vector<std::pair<double, Mat2>>& comps,
                          double prob_tol = 1e-12, std::size_t max_n = 8) {
    if (comps.empty() || comps.size() > max_n) {
      throw std::invalid_argument("Strategy::mixture: need 1.." +
                                  std::to_string(max_n) + " components");
    }
    double total = 0.0;
    for (const auto& [p, u] : comps) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(
            "Strategy::mixture: probabilities must lie in [0, 1]");
      }
      if (!is_unitary(u)) {
        throw std::invalid_argument(
            "Strategy::mixture: every component must be unitary");
      }
      total += p;
    }
    if (std::abs(total - 1.0) > prob_tol) {
      throw std::invalid_argument(
          "Strategy::mixture: probabilities must sum to 1");
    }
    Strategy s(Kind::mixture);
    for (const auto& [p, u] : comps) {
      s.probs_.push_back(p);
      s.mats_.push_back(u);
    }
    return s;
  }

  Kind kind() const { return kind_; }

  const Mat2& unitary_matrix() const {
    require(Kind::unitary, "unitary_matrix");
    return mats_[0];
  }

  const std::vector<Mat2>& kraus() const {
    require(Kind::channel, "kraus");
    return mats_;
  }

  std::size_t component_count() const { return mats_.size(); }

  std::pair<double, const Mat2&> component(std::size_t i) const {
    require(Kind::mixture, "component");
    return {probs_[i], mats_[i]};
  }

  const std::vector<double>& probabilities() const {
    require(Kind::mixture, "probabilities");
    return probs_;
  }

  const std::vector<Mat2>& matrices() const { return mats_; }

  // Canonical Kraus decomposition: {U} for a unitary, {sqrt(p_i) U_i} for a
  // mixture, the stored operators for a channel.
  std::vector<Mat2> kraus_operators() const {
    switch (kind_) {
      case Kind::unitary:
      case Kind::channel:
        return mats_;
      case Kind::mixture: {
        std::vector<Mat2> ks;
        ks.reserve(mats_.size());
        for (std::size_t i = 0; i < mats_.size(); ++i) {
          ks.push_back(Complex(std::sqrt(probs_[i])) * mats_[i]);
        }
        return ks;
      }
    }
    return {};
  }

  // Re-checks the stored invariant; used by appliers before consuming a value.
  void validate(double tol = kValidityTol) const {
    switch (kind_) {
      case Kind::unitary:
        if (!is_unitary(mats_[0], tol)) {
          throw std::invalid_argument("Strategy: unitary invariant violated");
        }
        break;
      case Kind::channel: {
        Mat2 sum;
        for (const auto& k : mats_) sum += dagger(k) * k;
        if (max_abs_diff(sum, Mat2::identity()) > tol) {
          throw std::invalid_argument("Strategy: channel invariant violated");
        }
        break;
      }
      case Kind::mixture: {
        double total = 0.0;
        for (std::size_t i = 0; i < mats_.size(); ++i) {
          total += probs_[i];
          if (!is_unitary(mats_[i], tol)) {
            throw std::invalid_argument(
                "Strategy: mixture component not unitary");
          }
        }
        if (std::abs(total - 1.0) > 1e-9) {
          throw std::invalid_argument("Strategy: mixture weights corrupted");
        }
        break;
      }
    }
  }

 private:
  explicit Strategy(Kind k) : kind_(k) {}
  void require(Kind k, const char* what) const {
    if (kind_ != k) {
      throw std::logic_error(std::string("Strategy::") + what +
                             ": wrong strategy kind");
    }
  }

  Kind kind_;
  std::vector<Mat2> mats_;
  std::vector<double> probs_;
};

inline Mat2 pauli_x() { return Mat2{0, 1, 1, 0}; }
inline Mat2 pauli_y() {
  return Mat2{0, Complex(0, -1), Complex(0, 1), 0};
}
inline Mat2 pauli_z() { return Mat2{1, 0, 0, -1}; }

namespace detail {

inline Mat2 one_param_matrix(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  return Mat2{c, s, -s, c};
}

inline Mat2 two_param_matrix(double theta, double phi) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  return Mat2{std::polar(c, phi), s, -s, std::polar(c, -phi)};
}

// Full SU(2) chart with the global phase fixed; payoffs are insensitive to
// the dropped phase.
inline Mat2 general_matrix(double alpha, double theta, double gamma) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  return Mat2{std::polar(c, alpha), std::polar(s, gamma),
              -std::polar(s, -gamma), std::polar(c, -alpha)};
}

}  // namespace detail

// One-parameter rotations U(theta), theta in [0, pi]. theta = 0 is C
// (cooperate, identity), theta = pi is D (defect, spin flip).
inline Strategy u_one_param(double theta) {
  if (!(theta >= 0.0 && theta <= M_PI)) {
    throw std::domain_error("u_one_param: theta must lie in [0, pi]");
  }
  return Strategy::unitary(detail::one_param_matrix(theta));
}

// Two-parameter unitaries U(theta, phi), theta in [0, pi], phi in [0, pi/2].
inline Strategy u_two_param(double theta, double phi) {
  if (!(theta >= 0.0 && theta <= M_PI)) {
    throw std::domain_error("u_two_param: theta must lie in [0, pi]");
  }
  if (!(phi >= 0.0 && phi <= M_PI / 2.0)) {
    throw std::domain_error("u_two_param: phi must lie in [0, pi/2]");
  }
  return Strategy::unitary(detail::two_param_matrix(theta, phi));
}

// Three-angle SU(2) chart; angles wrap, no range restriction.
inline Strategy u_general(double alpha, double theta, double gamma) {
  return Strategy::unitary(detail::general_matrix(alpha, theta, gamma));
}

inline Strategy strategy_c() { return Strategy::unitary(Mat2::identity()); }
inline Strategy strategy_d() { return Strategy::unitary(Mat2{0, 1, -1, 0}); }
inline Strategy strategy_q() {
  return Strategy::unitary(Mat2{Complex(0, 1), 0, 0, Complex(0, -1)});
}

// Uniform Pauli twirl: the four-term unitary mixture that sends any input
// state to the maximally mixed state, realising the focal strategy R.
inline Strategy focal_r() {
  return Strategy::mixture({{0.25, Mat2::identity()},
                            {0.25, pauli_x()},
                            {0.25, pauli_y()},
                            {0.25, pauli_z()}});
}

// Alice's optimal answer to a unitary Bob strategy [[a, b], [c, d]]:
// T = [[-i b, a], [-d, -i c]]. Steers the joint state onto |psi_DC>, the
// outcome that pays Alice the maximum.
inline Strategy optimal_answer(const Strategy& bob) {
  if (bob.kind() != Strategy::Kind::unitary) {
    throw std::invalid_argument("optimal_answer: requires a unitary strategy");
  }
  const Mat2& u = bob.unitary_matrix();
  const Complex i(0, 1);
  return Strategy::unitary(
      Mat2{-i * u(0, 1), u(0, 0), -u(1, 1), -i * u(1, 0)});
}

// Bob's mirror construction against a unitary Alice strategy [[a, b], [c, d]]:
// [[-i b, a], [-d, -i c]] applied on Bob's side steers onto |psi_CD>.
inline Strategy bob_optimal_answer(const Strategy& alice) {
  if (alice.kind() != Strategy::Kind::unitary) {
    throw std::invalid_argument(
        "bob_optimal_answer: requires a unitary strategy");
  }
  const Mat2& u = alice.unitary_matrix();
  const Complex i(0, 1);
  return Strategy::unitary(
      Mat2{-i * u(0, 1), u(0, 0), -u(1, 1), -i * u(1, 0)});
}

// The measurement-and-flip channel pair: Alice measures in the computational
// basis, Bob measures and applies the spin flip D.
inline std::pair<Strategy, Strategy> measurement_strategy_pair() {
  const Mat2 p0{1, 0, 0, 0};
  const Mat2 p1{0, 0, 0, 1};
  const Mat2 d{0, 1, -1, 0};
  Strategy alice = Strategy::channel({p0, p1});
  Strategy bob = Strategy::channel({d * p0, d * p1});
  return {std::move(alice), std::move(bob)};
}

// Conjugates every component matrix by Q = diag(i, -i). Defined for unitaries
// and mixtures only.
inline Strategy conjugate_by_q(const Strategy& s) {
  const Mat2 q{Complex(0, 1), 0, 0, Complex(0, -1)};
  const Mat2 qd = dagger(q);
  switch (s.kind()) {
    case Strategy::Kind::unitary:
      return Strategy::unitary(q * s.unitary_matrix() * qd);
    case Strategy::Kind::mixture: {
      std::vector<std::pair<double, Mat2>> comps;
      for (std::size_t i = 0; i < s.component_count(); ++i) {
        auto [p, u] = s.component(i);
        comps.emplace_back(p, q * u * qd);
      }
      return Strategy::mixture(comps);
    }
    case Strategy::Kind::channel:
      throw std::invalid_argument(
          "conjugate_by_q: defined for unitary and mixture strategies only");
  }
  throw std::logic_error("conjugate_by_q: unreachable");
}

// Single-qubit channel action sum_k K rho K^dag.
inline Mat2 apply_to_qubit(const Strategy& s, const Mat2& rho) {
  Mat2 out;
  for (const auto& k : s.kraus_operators()) out += k * rho * dagger(k);
  return out;
}

// Two strategies are the same channel iff they act identically on a basis of
// 2x2 operators (the four matrix units).
inline bool channels_equal(const Strategy& a, const Strategy& b,
                           double tol = kValidityTol) {
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      Mat2 unit;
      unit(i, j) = 1.0;
      if (max_abs_diff(apply_to_qubit(a, unit), apply_to_qubit(b, unit)) >
          tol) {
        return false;
      }
    }
  }
  return true;
}

// Haar-random SU(2) element via a uniformly random unit quaternion.
inline Mat2 random_su2(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  double w, x, y, z, n;
  do {
    w = gauss(rng);
    x = gauss(rng);
    y = gauss(rng);
    z = gauss(rng);
    n = std::sqrt(w * w + x * x + y * y + z * z);
  } while (n < 1e-12);
  w /= n;
  x /= n;
  y /= n;
  z /= n;
  // w I + i (x X + y Y + z Z)
  return Mat2{Complex(w, z), Complex(y, x), Complex(-y, x), Complex(w, -z)};
}

// Resolves the reserved strategy names. Anything else must come in as JSON.
inline Strategy named_strategy(std::string_view name) {
  if (name == "C") return strategy_c();
  if (name == "D") return strategy_d();
  if (name == "Q") return strategy_q();
  if (name == "R") return focal_r();
  throw std::invalid_argument("unknown strategy name '" + std::string(name) +
                              "' (valid names: C, D, Q, R)");
}

}  // namespace qgame
