// Bounded derivative-free simplex maximiser. Candidate points are clamped
// into the box, which acts as reflection at the bounds for the payoff
// surfaces at hand (low-degree trig polynomials). Fully deterministic.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace qgame {

struct NelderMeadOptions {
  int max_iterations = 300;
  double x_tol = 1e-10;  // simplex diameter
  double f_tol = 1e-12;  // spread of values across the simplex
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

inline NelderMeadResult nelder_mead_maximize(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x0, const std::vector<double>& lower,
    const std::vector<double>& upper, double initial_step,
    const NelderMeadOptions& opt = {}) {
  const std::size_t n = x0.size();
  auto clamp = [&](std::vector<double>& x) {
    for (std::size_t i = 0; i < n; ++i)
      x[i] = std::min(upper[i], std::max(lower[i], x[i]));
  };
  clamp(x0);

  struct Vertex {
    std::vector<double> x;
    double fx;
  };
  std::vector<Vertex> simplex;
  simplex.reserve(n + 1);
  simplex.push_back({x0, f(x0)});
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x = x0;
    const double span = upper[i] - lower[i];
    double step = initial_step * (span > 0 ? span : 1.0);
    if (x[i] + step > upper[i]) step = -step;
    x[i] += step;
    clamp(x);
    simplex.push_back({x, f(x)});
  }

  // descending by value; ties keep insertion order (stable)
  auto order = [&] {
    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const Vertex& a, const Vertex& b) {
                       return a.fx > b.fx;
                     });
  };
  order();

  NelderMeadResult result;
  int iter = 0;
  for (; iter < opt.max_iterations; ++iter) {
    const Vertex& best = simplex.front();
    const Vertex& worst = simplex.back();

    double diam = 0.0;
    for (const auto& v : simplex)
      for (std::size_t i = 0; i < n; ++i)
        diam = std::max(diam, std::abs(v.x[i] - best.x[i]));
    if (diam < opt.x_tol && best.fx - worst.fx < opt.f_tol) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t v = 0; v + 1 < simplex.size(); ++v)
      for (std::size_t i = 0; i < n; ++i)
        centroid[i] += simplex[v].x[i] / static_cast<double>(n);

    auto at = [&](double coef) {
      std::vector<double> x(n);
      for (std::size_t i = 0; i < n; ++i)
        x[i] = centroid[i] + coef * (centroid[i] - worst.x[i]);
      clamp(x);
      return x;
    };

    const auto xr = at(1.0);
    const double fr = f(xr);
    if (fr > best.fx) {
      const auto xe = at(2.0);
      const double fe = f(xe);
      simplex.back() = fe > fr ? Vertex{xe, fe} : Vertex{xr, fr};
    } else if (fr > simplex[simplex.size() - 2].fx) {
      simplex.back() = {xr, fr};
    } else {
      const auto xc = at(fr > worst.fx ? 0.5 : -0.5);
      const double fc = f(xc);
      if (fc > std::max(fr, worst.fx)) {
        simplex.back() = {xc, fc};
      } else {
        // shrink towards the best vertex
        for (std::size_t v = 1; v < simplex.size(); ++v) {
          for (std::size_t i = 0; i < n; ++i)
            simplex[v].x[i] =
                best.x[i] + 0.5 * (simplex[v].x[i] - best.x[i]);
          clamp(simplex[v].x);
          simplex[v].fx = f(simplex[v].x);
        }
      }
    }
    order();
  }

  result.x = simplex.front().x;
  result.value = simplex.front().fx;
  result.iterations = iter;
  return result;
}

}  // namespace qgame
