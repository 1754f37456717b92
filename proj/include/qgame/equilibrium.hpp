// Solution-concept machinery: best-response search over each strategy set,
// epsilon-Nash certification, grid enumeration of equilibria, dominance and
// Pareto checks, dual profiles and payoff-equivalence testing.
//
// All searches are deterministic for a fixed seed: work is chunked
// independently of the thread count, restart sub-seeds derive from
// (seed, restart index), and reductions break ties on value by
// lexicographically smallest parameters.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qgame/game.hpp"
#include "qgame/nelder_mead.hpp"
#include "qgame/parallel.hpp"
#include "qgame/qmath.hpp"
#include "qgame/strategies.hpp"

namespace qgame {

struct SearchConfig {
  int grid_points_per_axis = 61;
  int restarts = 100;
  int max_iterations = 300;
  double epsilon = 1e-6;  // Nash tolerance, payoff units
  std::uint64_t seed = 42;

  void validate() const {
    if (grid_points_per_axis < 2) {
      throw std::invalid_argument("SearchConfig: grid_points_per_axis >= 2");
    }
    if (restarts < 1) {
      throw std::invalid_argument("SearchConfig: restarts >= 1");
    }
    if (!(epsilon > 0)) {
      throw std::invalid_argument("SearchConfig: epsilon must be positive");
    }
  }
};

struct EquilibriumCertificate {
  Strategy alice;
  Strategy bob;
  PayoffPair payoffs;
  double max_gain_a = 0.0;
  double max_gain_b = 0.0;
  bool certified = false;
  std::optional<Strategy> witness;          // best deviation when refuted
  std::optional<Player> witness_player;
  // Set by grid enumeration: true when neither player has a payoff-tying
  // deviation outside their own strategy's equivalence class.
  std::optional<bool> strict;
  StrategySet set = StrategySet::GU;
  SearchConfig config;

  const char* verdict() const { return certified ? "certified" : "refuted"; }
};

namespace detail {

using Vec4 = std::array<Complex, 4>;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t stream,
                              std::uint64_t index) {
  return splitmix64(splitmix64(seed ^ (0xa5a5a5a5ULL + stream)) ^
                    (index * 0x9e3779b97f4a7c15ULL + 1));
}

inline Vec4 apply_alice_side(const Mat2& u, const Vec4& v) {
  return {u(0, 0) * v[0] + u(0, 1) * v[2], u(0, 0) * v[1] + u(0, 1) * v[3],
          u(1, 0) * v[0] + u(1, 1) * v[2], u(1, 0) * v[1] + u(1, 1) * v[3]};
}

inline Vec4 apply_bob_side(const Mat2& u, const Vec4& v) {
  return {u(0, 0) * v[0] + u(0, 1) * v[1], u(1, 0) * v[0] + u(1, 1) * v[1],
          u(0, 0) * v[2] + u(0, 1) * v[3], u(1, 0) * v[2] + u(1, 1) * v[3]};
}

// Payoff evaluation for one responder against a fixed opponent strategy.
// The opponent's Kraus operators are folded into the initial ket once, so a
// single evaluation costs a few complex multiplies.
class ResponderEvaluator {
 public:
  ResponderEvaluator(const GameSpec& game, const EwlContext& ctx,
                     const Strategy& fixed, Player responder)
      : responder_(responder) {
    for (std::size_t o = 0; o < 4; ++o) {
      const auto& b = ctx.basis_state(static_cast<Outcome>(o));
      for (std::size_t i = 0; i < 4; ++i) bra_[o][i] = std::conj(b[i]);
      const Outcome oc = static_cast<Outcome>(o);
      own_coeff_[o] = responder == Player::alice ? game.alice_coeff(oc)
                                                 : game.bob_coeff(oc);
      other_coeff_[o] = responder == Player::alice ? game.bob_coeff(oc)
                                                   : game.alice_coeff(oc);
    }
    const auto& psi = ctx.initial_ket().amplitudes();
    for (const Mat2& k : fixed.kraus_operators()) {
      transformed_.push_back(responder == Player::alice
                                 ? apply_bob_side(k, psi)
                                 : apply_alice_side(k, psi));
    }
  }

  std::array<double, 4> probabilities(const Mat2& u) const {
    std::array<double, 4> p{};
    for (const Vec4& v : transformed_) accumulate(u, v, p);
    return p;
  }

  double own_payoff(const Mat2& u) const {
    const auto p = probabilities(u);
    return p[0] * own_coeff_[0] + p[1] * own_coeff_[1] +
           p[2] * own_coeff_[2] + p[3] * own_coeff_[3];
  }

  PayoffPair pair_payoffs(const Mat2& u) const {
    const auto p = probabilities(u);
    const double own = p[0] * own_coeff_[0] + p[1] * own_coeff_[1] +
                       p[2] * own_coeff_[2] + p[3] * own_coeff_[3];
    const double other = p[0] * other_coeff_[0] + p[1] * other_coeff_[1] +
                         p[2] * other_coeff_[2] + p[3] * other_coeff_[3];
    return responder_ == Player::alice ? PayoffPair{own, other}
                                       : PayoffPair{other, own};
  }

  double own_payoff_channel(const std::vector<Mat2>& kraus) const {
    std::array<double, 4> p{};
    for (const Mat2& k : kraus) {
      for (const Vec4& v : transformed_) accumulate(k, v, p);
    }
    return p[0] * own_coeff_[0] + p[1] * own_coeff_[1] +
           p[2] * own_coeff_[2] + p[3] * own_coeff_[3];
  }

 private:
  void accumulate(const Mat2& u, const Vec4& v,
                  std::array<double, 4>& p) const {
    const Vec4 w = responder_ == Player::alice ? apply_alice_side(u, v)
                                               : apply_bob_side(u, v);
    for (std::size_t o = 0; o < 4; ++o) {
      const Complex amp = bra_[o][0] * w[0] + bra_[o][1] * w[1] +
                          bra_[o][2] * w[2] + bra_[o][3] * w[3];
      p[o] += std::norm(amp);
    }
  }

  Player responder_;
  std::vector<Vec4> transformed_;
  std::array<Vec4, 4> bra_{};
  std::array<double, 4> own_coeff_{};
  std::array<double, 4> other_coeff_{};
};

// Both players pure: evaluates payoff pairs straight from the initial ket.
class PurePairEvaluator {
 public:
  PurePairEvaluator(const GameSpec& game, const EwlContext& ctx) {
    for (std::size_t o = 0; o < 4; ++o) {
      const auto& b = ctx.basis_state(static_cast<Outcome>(o));
      for (std::size_t i = 0; i < 4; ++i) bra_[o][i] = std::conj(b[i]);
      a_coeff_[o] = game.alice_coeff(static_cast<Outcome>(o));
      b_coeff_[o] = game.bob_coeff(static_cast<Outcome>(o));
    }
    const auto& psi = ctx.initial_ket().amplitudes();
    for (std::size_t idx = 0; idx < 4; ++idx) {
      if (std::abs(psi[idx]) > 0.0) support_.push_back({idx, psi[idx]});
    }
  }

  PayoffPair pair(const Mat2& ua, const Mat2& ub) const {
    Vec4 w{};
    for (const auto& [idx, amp] : support_) {
      const std::size_t ap = idx >> 1, bp = idx & 1;
      for (std::size_t a = 0; a < 2; ++a) {
        const Complex f = ua(a, ap) * amp;
        w[2 * a + 0] += f * ub(0, bp);
        w[2 * a + 1] += f * ub(1, bp);
      }
    }
    PayoffPair out;
    for (std::size_t o = 0; o < 4; ++o) {
      const Complex ov = bra_[o][0] * w[0] + bra_[o][1] * w[1] +
                         bra_[o][2] * w[2] + bra_[o][3] * w[3];
      const double p = std::norm(ov);
      out.alice += a_coeff_[o] * p;
      out.bob += b_coeff_[o] * p;
    }
    return out;
  }

 private:
  std::array<Vec4, 4> bra_{};
  std::array<double, 4> a_coeff_{}, b_coeff_{};
  std::vector<std::pair<std::size_t, Complex>> support_;
};

// Lexicographic tie-break: prefer higher value; within 1e-12 prefer the
// lexicographically smallest parameter vector.
inline bool better_candidate(double value, const std::vector<double>& params,
                             double inc_value,
                             const std::vector<double>& inc_params) {
  if (value > inc_value + 1e-12) return true;
  if (value < inc_value - 1e-12) return false;
  return params < inc_params;
}

struct Candidate {
  double value = -std::numeric_limits<double>::infinity();
  std::vector<double> params;
};

// Keeps the k best candidates in deterministic order.
class TopK {
 public:
  explicit TopK(std::size_t k) : k_(k) {}
  void offer(double value, const std::vector<double>& params) {
    for (std::size_t i = 0; i < items_.size(); ++i) {
      if (better_candidate(value, params, items_[i].value, items_[i].params)) {
        items_.insert(items_.begin() + static_cast<std::ptrdiff_t>(i),
                      {value, params});
        if (items_.size() > k_) items_.pop_back();
        return;
      }
    }
    if (items_.size() < k_) items_.push_back({value, params});
  }
  void merge(const TopK& other) {
    for (const auto& c : other.items_) offer(c.value, c.params);
  }
  const std::vector<Candidate>& items() const { return items_; }

 private:
  std::size_t k_;
  std::vector<Candidate> items_;
};

inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    xs[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return xs;
}

// Parameter charts for the searchable strategy sets.
struct ParamSpace {
  StrategySet set;

  std::size_t dims() const {
    switch (set) {
      case StrategySet::CL: return 1;
      case StrategySet::TP: return 2;
      case StrategySet::GU: return 3;
      case StrategySet::CP: return 32;
    }
    return 0;
  }

  std::vector<double> lower() const {
    switch (set) {
      case StrategySet::CL: return {0.0};
      case StrategySet::TP: return {0.0, 0.0};
      case StrategySet::GU: return {-M_PI, 0.0, -M_PI};
      case StrategySet::CP: return std::vector<double>(32, -1.0);
    }
    return {};
  }

  std::vector<double> upper() const {
    switch (set) {
      case StrategySet::CL: return {M_PI};
      case StrategySet::TP: return {M_PI, M_PI / 2.0};
      case StrategySet::GU: return {M_PI, M_PI, M_PI};
      case StrategySet::CP: return std::vector<double>(32, 1.0);
    }
    return {};
  }

  bool unitary_chart() const { return set != StrategySet::CP; }

  Mat2 unitary_at(const std::vector<double>& x) const {
    switch (set) {
      case StrategySet::CL: return detail::one_param_matrix(x[0]);
      case StrategySet::TP: return detail::two_param_matrix(x[0], x[1]);
      case StrategySet::GU: return detail::general_matrix(x[0], x[1], x[2]);
      case StrategySet::CP: break;
    }
    throw std::logic_error("ParamSpace::unitary_at: CP is not a unitary set");
  }

  // Stiefel-style chart for rank <= 4 channels: 32 raw reals form two complex
  // 8-vectors, Gram-Schmidt makes them the orthonormal columns of the stacked
  // Kraus matrix [K1; K2; K3; K4].
  std::vector<Mat2> kraus_at(const std::vector<double>& x) const {
    std::array<std::array<Complex, 8>, 2> col{};
    for (std::size_t c = 0; c < 2; ++c) {
      for (std::size_t r = 0; r < 8; ++r) {
        col[c][r] = Complex(x[16 * c + 2 * r], x[16 * c + 2 * r + 1]);
      }
    }
    auto norm_of = [](const std::array<Complex, 8>& v) {
      double n = 0;
      for (const auto& z : v) n += std::norm(z);
      return std::sqrt(n);
    };
    // column 0
    if (norm_of(col[0]) < 1e-8) col[0][0] = 1.0;
    {
      const double n = norm_of(col[0]);
      for (auto& z : col[0]) z /= n;
    }
    // column 1, orthogonal to column 0
    Complex overlap{};
    for (std::size_t r = 0; r < 8; ++r)
      overlap += std::conj(col[0][r]) * col[1][r];
    for (std::size_t r = 0; r < 8; ++r) col[1][r] -= overlap * col[0][r];
    if (norm_of(col[1]) < 1e-8) {
      for (std::size_t basis = 0; basis < 8; ++basis) {
        std::array<Complex, 8> cand{};
        cand[basis] = 1.0;
        Complex ov{};
        for (std::size_t r = 0; r < 8; ++r)
          ov += std::conj(col[0][r]) * cand[r];
        for (std::size_t r = 0; r < 8; ++r) cand[r] -= ov * col[0][r];
        if (norm_of(cand) > 0.5) {
          col[1] = cand;
          break;
        }
      }
    }
    {
      const double n = norm_of(col[1]);
      for (auto& z : col[1]) z /= n;
    }
    std::vector<Mat2> kraus(4);
    for (std::size_t i = 0; i < 4; ++i) {
      kraus[i] = Mat2{col[0][2 * i], col[1][2 * i], col[0][2 * i + 1],
                      col[1][2 * i + 1]};
    }
    return kraus;
  }

  Strategy strategy_at(const std::vector<double>& x) const {
    if (unitary_chart()) return Strategy::unitary(unitary_at(x));
    return Strategy::channel(kraus_at(x));
  }
};

// Raw CP parameters encoding a given channel exactly (used as search seeds).
inline std::vector<double> cp_params_for(const std::vector<Mat2>& kraus) {
  std::vector<double> x(32, 0.0);
  for (std::size_t i = 0; i < kraus.size() && i < 4; ++i) {
    for (std::size_t r = 0; r < 2; ++r) {
      for (std::size_t c = 0; c < 2; ++c) {
        const Complex z = kraus[i](r, c);
        const std::size_t row = 2 * i + r;
        x[16 * c + 2 * row] = z.real();
        x[16 * c + 2 * row + 1] = z.imag();
      }
    }
  }
  return x;
}

}  // namespace detail

struct BestResponseDetail {
  Strategy strategy;
  double value = 0.0;
  std::vector<double> params;
};

// Best response of `responder` within `set` against the fixed opponent
// strategy. Deterministic for a fixed config.
inline BestResponseDetail best_response_detailed(
    const GameSpec& game, const EwlContext& ctx, const Strategy& fixed,
    Player responder, StrategySet set, const SearchConfig& cfg) {
  cfg.validate();
  fixed.validate();
  const detail::ResponderEvaluator eval(game, ctx, fixed, responder);
  const detail::ParamSpace space{set};
  const auto lower = space.lower();
  const auto upper = space.upper();

  const NelderMeadOptions nm_opts{cfg.max_iterations, 1e-10, 1e-12};

  if (set == StrategySet::CL || set == StrategySet::TP) {
    // Exhaustive grid, then simplex refinement from the best grid points.
    const int n = cfg.grid_points_per_axis;
    const auto axis0 = detail::linspace(lower[0], upper[0], n);
    const auto axis1 = set == StrategySet::TP
                           ? detail::linspace(lower[1], upper[1], n)
                           : std::vector<double>{};
    const std::size_t total = set == StrategySet::CL
                                  ? axis0.size()
                                  : axis0.size() * axis1.size();
    const std::size_t n_chunks = 64;
    std::vector<detail::TopK> chunk_top(n_chunks, detail::TopK(4));
    detail::TopK top(4);
    chunked_run(
        total, n_chunks,
        [&](std::size_t c, std::size_t lo, std::size_t hi) {
          for (std::size_t k = lo; k < hi; ++k) {
            std::vector<double> x;
            if (set == StrategySet::CL) {
              x = {axis0[k]};
            } else {
              x = {axis0[k / axis1.size()], axis1[k % axis1.size()]};
            }
            chunk_top[c].offer(eval.own_payoff(space.unitary_at(x)), x);
          }
        },
        [&](std::size_t c) { top.merge(chunk_top[c]); });

    detail::Candidate best;
    for (const auto& seed : top.items()) {
      auto r = nelder_mead_maximize(
          [&](const std::vector<double>& x) {
            return eval.own_payoff(space.unitary_at(x));
          },
          seed.params, lower, upper,
          0.5 / static_cast<double>(n - 1), nm_opts);
      if (detail::better_candidate(r.value, r.x, best.value, best.params)) {
        best = {r.value, r.x};
      }
    }
    return {space.strategy_at(best.params), best.value, best.params};
  }

  // Multi-start simplex search (GU: 3 angles; CP: 32-parameter Kraus chart).
  std::vector<std::vector<double>> starts;
  if (set == StrategySet::GU) {
    starts.push_back({0.0, 0.0, 0.0});            // C
    starts.push_back({0.0, M_PI, 0.0});           // D
    starts.push_back({M_PI / 2.0, 0.0, 0.0});     // Q
  } else {
    starts.push_back(detail::cp_params_for({Mat2::identity()}));
    const Mat2 p0{1, 0, 0, 0};
    const Mat2 p1{0, 0, 0, 1};
    const Mat2 d{0, 1, -1, 0};
    starts.push_back(detail::cp_params_for({p0, p1}));
    starts.push_back(detail::cp_params_for({d * p0, d * p1}));
  }
  const std::size_t fixed_starts = starts.size();
  const std::size_t n_starts = fixed_starts +
                               static_cast<std::size_t>(cfg.restarts);
  const std::uint64_t stream =
      (responder == Player::alice ? 11 : 13) +
      (set == StrategySet::GU ? 0 : 100);
  starts.resize(n_starts);
  for (std::size_t r = fixed_starts; r < n_starts; ++r) {
    std::mt19937_64 rng(detail::sub_seed(cfg.seed, stream, r));
    std::vector<double> x(space.dims());
    for (std::size_t i = 0; i < x.size(); ++i) {
      std::uniform_real_distribution<double> u(lower[i], upper[i]);
      x[i] = u(rng);
    }
    starts[r] = std::move(x);
  }

  auto objective = [&](const std::vector<double>& x) {
    return space.unitary_chart()
               ? eval.own_payoff(space.unitary_at(x))
               : eval.own_payoff_channel(space.kraus_at(x));
  };

  std::vector<detail::Candidate> results(n_starts);
  chunked_run(
      n_starts, std::min<std::size_t>(n_starts, 64),
      [&](std::size_t, std::size_t lo, std::size_t hi) {
        for (std::size_t r = lo; r < hi; ++r) {
          auto res =
              nelder_mead_maximize(objective, starts[r], lower, upper,
                                   set == StrategySet::GU ? 0.15 : 0.25,
                                   nm_opts);
          results[r] = {res.value, res.x};
        }
      },
      [](std::size_t) {});

  detail::Candidate best;
  for (const auto& c : results) {
    if (detail::better_candidate(c.value, c.params, best.value, best.params)) {
      best = c;
    }
  }
  return {space.strategy_at(best.params), best.value, best.params};
}

inline std::pair<Strategy, double> best_response(
    const GameSpec& game, const EwlContext& ctx, const Strategy& fixed,
    Player responder, StrategySet set, const SearchConfig& cfg) {
  auto r = best_response_detailed(game, ctx, fixed, responder, set, cfg);
  return {std::move(r.strategy), r.value};
}

// Runs the deviation search for both players and issues a certificate.
inline EquilibriumCertificate verify_nash(const GameSpec& game,
                                          const EwlContext& ctx,
                                          const Strategy& s_a,
                                          const Strategy& s_b, StrategySet set,
                                          const SearchConfig& cfg) {
  const PayoffPair current = payoffs_for(game, ctx, s_a, s_b);
  auto br_a = best_response_detailed(game, ctx, s_b, Player::alice, set, cfg);
  auto br_b = best_response_detailed(game, ctx, s_a, Player::bob, set, cfg);
  const double gain_a = br_a.value - current.alice;
  const double gain_b = br_b.value - current.bob;

  EquilibriumCertificate cert{s_a,    s_b,    current, gain_a,
                              gain_b, false,  {},      {},
                              {},     set,    cfg};
  cert.certified = std::max(gain_a, gain_b) <= cfg.epsilon;
  if (!cert.certified) {
    if (gain_a >= gain_b) {
      cert.witness = br_a.strategy;
      cert.witness_player = Player::alice;
    } else {
      cert.witness = br_b.strategy;
      cert.witness_player = Player::bob;
    }
  }
  return cert;
}

// Mixed-strategy certification. A mixture's payoff is a convex combination of
// its pure components' payoffs, so the best pure deviation bounds every mixed
// deviation; the search runs over pure GU strategies only.
inline EquilibriumCertificate verify_mixed_nash(const GameSpec& game,
                                                const EwlContext& ctx,
                                                const Strategy& mix_a,
                                                const Strategy& mix_b,
                                                const SearchConfig& cfg) {
  for (const Strategy* s : {&mix_a, &mix_b}) {
    if (s->kind() == Strategy::Kind::channel) {
      throw std::invalid_argument(
          "verify_mixed_nash: profile must consist of unitary mixtures");
    }
  }
  auto cert = verify_nash(game, ctx, mix_a, mix_b, StrategySet::GU, cfg);
  cert.set = StrategySet::GU;
  return cert;
}

namespace detail {

struct Pt {
  double x, y;
};

inline double cross(const Pt& o, const Pt& a, const Pt& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew monotone chain, counter-clockwise, collinear points dropped.
inline std::vector<Pt> convex_hull(std::vector<Pt> pts) {
  std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Pt& a, const Pt& b) {
                          return a.x == b.x && a.y == b.y;
                        }),
            pts.end());
  if (pts.size() <= 2) return pts;
  std::vector<Pt> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& pt : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pt) <= 0) --k;
    h[k++] = pt;
  }
  const std::size_t lower_size = k + 1;
  for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
    while (k >= lower_size && cross(h[k - 2], h[k - 1], *it) <= 0) --k;
    h[k++] = *it;
  }
  h.resize(k - 1);
  return h;
}

// Sutherland-Hodgman clip of a (possibly degenerate) hull against f(v) >= 0.
inline std::vector<Pt> clip_halfplane(
    const std::vector<Pt>& poly, const std::function<double(const Pt&)>& f) {
  std::vector<Pt> out;
  if (poly.empty()) return out;
  if (poly.size() == 1) {
    if (f(poly[0]) >= 0) out.push_back(poly[0]);
    return out;
  }
  const std::size_t m = poly.size();
  const std::size_t edges = poly.size() == 2 ? 1 : m;
  for (std::size_t i = 0; i < edges; ++i) {
    const Pt& a = poly[i];
    const Pt& b = poly[(i + 1) % m];
    const double fa = f(a), fb = f(b);
    if (fa >= 0) out.push_back(a);
    if ((fa < 0) != (fb < 0)) {
      const double t = fa / (fa - fb);
      out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
  }
  if (poly.size() == 2 && f(poly[1]) >= 0) out.push_back(poly[1]);
  return out;
}

inline std::vector<Pt> payoff_hull(const GameSpec& game) {
  return convex_hull({{game.a_cc, game.b_cc},
                      {game.a_cd, game.b_cd},
                      {game.a_dc, game.b_dc},
                      {game.a_dd, game.b_dd}});
}

// Membership in the hull within tol (signed distance against each edge).
inline bool hull_contains(const std::vector<Pt>& hull, const Pt& p,
                          double tol) {
  if (hull.empty()) return false;
  if (hull.size() == 1) {
    return std::abs(p.x - hull[0].x) <= tol && std::abs(p.y - hull[0].y) <= tol;
  }
  if (hull.size() == 2) {
    const double len = std::hypot(hull[1].x - hull[0].x,
                                  hull[1].y - hull[0].y);
    if (std::abs(cross(hull[0], hull[1], p)) > tol * std::max(1.0, len)) {
      return false;
    }
    const double t = ((p.x - hull[0].x) * (hull[1].x - hull[0].x) +
                      (p.y - hull[0].y) * (hull[1].y - hull[0].y)) /
                     (len * len);
    return t >= -tol && t <= 1.0 + tol;
  }
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Pt& a = hull[i];
    const Pt& b = hull[(i + 1) % hull.size()];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    if (cross(a, b, p) < -tol * std::max(1.0, len)) return false;
  }
  return true;
}

}  // namespace detail

// Pareto optimality against the achievable payoff set, the convex hull of the
// four outcome payoff pairs, by hull-edge inspection.
inline bool check_pareto(const GameSpec& game, const PayoffPair& p,
                         double tol = 1e-9) {
  const auto hull = detail::payoff_hull(game);
  const double slack = 1e-12;
  const auto above = detail::clip_halfplane(hull, [&](const detail::Pt& v) {
    return v.y - (p.bob - slack);
  });
  for (const auto& v : above) {
    if (v.x > p.alice + tol) return false;
  }
  const auto right = detail::clip_halfplane(hull, [&](const detail::Pt& v) {
    return v.x - (p.alice - slack);
  });
  for (const auto& v : right) {
    if (v.y > p.bob + tol) return false;
  }
  return true;
}

// Both strategies conjugated by Q; payoff-invariant as a profile.
inline std::pair<Strategy, Strategy> dual_profile(
    const std::pair<Strategy, Strategy>& profile) {
  return {conjugate_by_q(profile.first), conjugate_by_q(profile.second)};
}

// Payoff equivalence: identical payoff pairs against a grid + multistart
// sample of opponent strategies, tested from both seats.
inline bool strategies_equivalent(const GameSpec& game, const EwlContext& ctx,
                                  const Strategy& s1, const Strategy& s2,
                                  const SearchConfig& cfg) {
  cfg.validate();
  std::vector<Strategy> opponents = {strategy_c(), strategy_d(), strategy_q(),
                                     focal_r()};
  const int g = std::min(cfg.grid_points_per_axis, 9);
  const auto thetas = detail::linspace(0.0, M_PI, g);
  const auto phis = detail::linspace(0.0, M_PI / 2.0, g);
  for (double t : thetas) {
    for (double ph : phis) {
      opponents.push_back(Strategy::unitary(detail::two_param_matrix(t, ph)));
    }
  }
  const int randoms = std::min(cfg.restarts, 32);
  for (int r = 0; r < randoms; ++r) {
    std::mt19937_64 rng(detail::sub_seed(cfg.seed, 7, static_cast<std::uint64_t>(r)));
    opponents.push_back(Strategy::unitary(random_su2(rng)));
  }

  for (const auto& opp : opponents) {
    const PayoffPair a1 = payoffs_for(game, ctx, s1, opp);
    const PayoffPair a2 = payoffs_for(game, ctx, s2, opp);
    if (std::abs(a1.alice - a2.alice) > cfg.epsilon ||
        std::abs(a1.bob - a2.bob) > cfg.epsilon) {
      return false;
    }
    const PayoffPair b1 = payoffs_for(game, ctx, opp, s1);
    const PayoffPair b2 = payoffs_for(game, ctx, opp, s2);
    if (std::abs(b1.alice - b2.alice) > cfg.epsilon ||
        std::abs(b1.bob - b2.bob) > cfg.epsilon) {
      return false;
    }
  }
  return true;
}

// Dominance on the full opponent-vs-alternative grid of the given set.
inline bool check_dominant(const GameSpec& game, const EwlContext& ctx,
                           const Strategy& candidate, Player player,
                           StrategySet set, const SearchConfig& cfg) {
  cfg.validate();
  if (set != StrategySet::CL && set != StrategySet::TP) {
    throw std::invalid_argument("check_dominant: set must be CL or TP");
  }
  const detail::ParamSpace space{set};
  const int n = cfg.grid_points_per_axis;
  const auto axis0 = detail::linspace(space.lower()[0], space.upper()[0], n);
  const auto axis1 =
      set == StrategySet::TP
          ? detail::linspace(space.lower()[1], space.upper()[1], n)
          : std::vector<double>{};
  const std::size_t per_player =
      set == StrategySet::CL ? axis0.size() : axis0.size() * axis1.size();

  auto params_of = [&](std::size_t k) {
    return set == StrategySet::CL
               ? std::vector<double>{axis0[k]}
               : std::vector<double>{axis0[k / axis1.size()],
                                     axis1[k % axis1.size()]};
  };

  std::vector<Mat2> mats(per_player);
  for (std::size_t k = 0; k < per_player; ++k) {
    mats[k] = space.unitary_at(params_of(k));
  }

  for (std::size_t o = 0; o < per_player; ++o) {
    const Strategy opp = space.strategy_at(params_of(o));
    // evaluator for `player` responding to this opponent strategy
    const detail::ResponderEvaluator eval(game, ctx, opp, player);
    double cand_value;
    if (candidate.kind() == Strategy::Kind::unitary) {
      cand_value = eval.own_payoff(candidate.unitary_matrix());
    } else {
      const PayoffPair pp = player == Player::alice
                                ? payoffs_for(game, ctx, candidate, opp)
                                : payoffs_for(game, ctx, opp, candidate);
      cand_value = player == Player::alice ? pp.alice : pp.bob;
    }
    for (std::size_t a = 0; a < per_player; ++a) {
      if (eval.own_payoff(mats[a]) > cand_value + cfg.epsilon) return false;
    }
  }
  return true;
}

// Exhaustive grid enumeration of equilibria for the low-dimensional sets.
// The on-grid deviation screen keeps every profile whose grid gain is below
// a curvature-aware slack (payoff span times squared grid spacing): around
// an equilibrium with locally unique best responses the gain grows
// quadratically with the offset, so such equilibria survive as near-critical
// profiles even between grid points. Weak equilibria on indifference
// manifolds have linearly growing gains and are only found when they lie on
// the grid (the odd default grid carries the midpoints that matter here).
// Survivors are certified by the full deviation search; refuted survivors
// get a few best-response polish rounds and one more attempt. Certified
// classes are classified strict/weak and deduplicated under strategy
// equivalence. Certification is numerical: exact only up to grid resolution
// and refinement budget.
inline std::vector<EquilibriumCertificate> find_nash_grid(
    const GameSpec& game, const EwlContext& ctx, StrategySet set,
    const SearchConfig& cfg) {
  cfg.validate();
  if (set != StrategySet::CL && set != StrategySet::TP) {
    throw std::invalid_argument("find_nash_grid: set must be CL or TP");
  }
  const detail::ParamSpace space{set};
  const int n = cfg.grid_points_per_axis;
  const auto axis0 = detail::linspace(space.lower()[0], space.upper()[0], n);
  const auto axis1 =
      set == StrategySet::TP
          ? detail::linspace(space.lower()[1], space.upper()[1], n)
          : std::vector<double>{};
  const std::size_t per_player =
      set == StrategySet::CL ? axis0.size() : axis0.size() * axis1.size();

  auto params_of = [&](std::size_t k) {
    return set == StrategySet::CL
               ? std::vector<double>{axis0[k]}
               : std::vector<double>{axis0[k / axis1.size()],
                                     axis1[k % axis1.size()]};
  };

  std::vector<Mat2> mats(per_player);
  for (std::size_t k = 0; k < per_player; ++k) {
    mats[k] = space.unitary_at(params_of(k));
  }

  const detail::PurePairEvaluator eval(game, ctx);

  // Pass 1: column maxima of Alice's payoff and row maxima of Bob's.
  std::vector<double> colmax_a(per_player,
                               -std::numeric_limits<double>::infinity());
  std::vector<double> rowmax_b(per_player,
                               -std::numeric_limits<double>::infinity());
  {
    const std::size_t n_chunks = 64;
    std::vector<std::vector<double>> local_col(
        n_chunks, std::vector<double>(
                      per_player, -std::numeric_limits<double>::infinity()));
    chunked_run(
        per_player, n_chunks,
        [&](std::size_t c, std::size_t lo, std::size_t hi) {
          for (std::size_t a = lo; a < hi; ++a) {
            double rmax = -std::numeric_limits<double>::infinity();
            for (std::size_t b = 0; b < per_player; ++b) {
              const PayoffPair p = eval.pair(mats[a], mats[b]);
              if (p.alice > local_col[c][b]) local_col[c][b] = p.alice;
              if (p.bob > rmax) rmax = p.bob;
            }
            rowmax_b[a] = rmax;
          }
        },
        [&](std::size_t c) {
          for (std::size_t b = 0; b < per_player; ++b) {
            colmax_a[b] = std::max(colmax_a[b], local_col[c][b]);
          }
        });
  }

  // Pass 2: profiles whose on-grid deviation gain stays below the
  // curvature-aware slack for both players.
  const double payoff_span = [&game] {
    double lo = game.a_cc, hi = game.a_cc;
    for (double v : {game.a_cd, game.a_dc, game.a_dd, game.b_cc, game.b_cd,
                     game.b_dc, game.b_dd}) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return hi - lo;
  }();
  double max_spacing = 0.0;
  for (std::size_t i = 0; i < space.dims(); ++i) {
    max_spacing = std::max(max_spacing, (space.upper()[i] - space.lower()[i]) /
                                            static_cast<double>(n - 1));
  }
  const double screen_tol =
      std::max(cfg.epsilon, payoff_span * max_spacing * max_spacing);

  std::vector<std::pair<std::size_t, std::size_t>> survivors;
  {
    const std::size_t n_chunks = 64;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> local(
        n_chunks);
    chunked_run(
        per_player, n_chunks,
        [&](std::size_t c, std::size_t lo, std::size_t hi) {
          for (std::size_t a = lo; a < hi; ++a) {
            for (std::size_t b = 0; b < per_player; ++b) {
              const PayoffPair p = eval.pair(mats[a], mats[b]);
              if (p.alice >= colmax_a[b] - screen_tol &&
                  p.bob >= rowmax_b[a] - screen_tol) {
                local[c].emplace_back(a, b);
              }
            }
          }
        },
        [&](std::size_t c) {
          survivors.insert(survivors.end(), local[c].begin(), local[c].end());
        });
  }

  SearchConfig light = cfg;
  light.grid_points_per_axis = 7;
  light.restarts = 8;

  std::vector<EquilibriumCertificate> classes;
  auto is_duplicate = [&](const Strategy& sa, const Strategy& sb) {
    for (const auto& cls : classes) {
      if (strategies_equivalent(game, ctx, sa, cls.alice, light) &&
          strategies_equivalent(game, ctx, sb, cls.bob, light)) {
        return true;
      }
    }
    return false;
  };

  for (const auto& [a, b] : survivors) {
    Strategy sa = space.strategy_at(params_of(a));
    Strategy sb = space.strategy_at(params_of(b));
    if (is_duplicate(sa, sb)) continue;

    EquilibriumCertificate cert = verify_nash(game, ctx, sa, sb, set, cfg);
    if (!cert.certified) {
      // near-critical grid point: pull it onto the equilibrium (if any) by
      // alternating best responses, then retry
      for (int round = 0; round < 3; ++round) {
        sa = best_response_detailed(game, ctx, sb, Player::alice, set, cfg)
                 .strategy;
        sb = best_response_detailed(game, ctx, sa, Player::bob, set, cfg)
                 .strategy;
      }
      if (is_duplicate(sa, sb)) continue;
      cert = verify_nash(game, ctx, sa, sb, set, cfg);
    }
    if (!cert.certified) continue;

    // Strictness: does some non-equivalent grid alternative tie the best
    // response value of either player?
    bool strict = true;
    for (Player responder : {Player::alice, Player::bob}) {
      const Strategy& own = responder == Player::alice ? sa : sb;
      const Strategy& other = responder == Player::alice ? sb : sa;
      const detail::ResponderEvaluator ev(game, ctx, other, responder);
      double vmax = -std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < per_player; ++k) {
        vmax = std::max(vmax, ev.own_payoff(mats[k]));
      }
      for (std::size_t k = 0; k < per_player && strict; ++k) {
        if (ev.own_payoff(mats[k]) < vmax - 1e-9) continue;
        const Strategy alt = space.strategy_at(params_of(k));
        if (!strategies_equivalent(game, ctx, alt, own, light)) {
          strict = false;
        }
      }
      if (!strict) break;
    }
    cert.strict = strict;
    classes.push_back(std::move(cert));
  }
  return classes;
}

}  // namespace qgame
