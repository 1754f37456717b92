// Dense complex linear algebra for the two fixed dimensions a two-qubit game
// needs: 2x2 single-qubit operators and 4x4 joint operators. Sizes are locked
// at compile time, which keeps every routine closed-form or nearly so.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace qgame {

using Complex = std::complex<double>;

// Default tolerances: validity checks on possibly user-supplied data vs.
// exact algebraic identities evaluated in double precision.
inline constexpr double kValidityTol = 1e-9;
inline constexpr double kAlgebraTol = 1e-12;

enum class Player { alice, bob };

template <std::size_t N>
class SquareMatrix {
  static_assert(N == 2 || N == 4, "only 2x2 and 4x4 matrices are supported");

 public:
  SquareMatrix() : e_{} {}

  // Row-major entries; throws if the count is not N*N.
  SquareMatrix(std::initializer_list<Complex> entries) {
    if (entries.size() != N * N) {
      throw std::invalid_argument("SquareMatrix: expected " +
                                  std::to_string(N * N) + " entries, got " +
                                  std::to_string(entries.size()));
    }
    std::copy(entries.begin(), entries.end(), e_.begin());
  }

  static SquareMatrix identity() {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }
  static SquareMatrix zero() { return SquareMatrix{}; }

  static constexpr std::size_t dim() { return N; }

  Complex& operator()(std::size_t i, std::size_t j) { return e_[i * N + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return e_[i * N + j];
  }

  const std::array<Complex, N * N>& entries() const { return e_; }

  SquareMatrix& operator+=(const SquareMatrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) e_[k] += o.e_[k];
    return *this;
  }
  SquareMatrix& operator-=(const SquareMatrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) e_[k] -= o.e_[k];
    return *this;
  }
  SquareMatrix& operator*=(Complex s) {
    for (auto& v : e_) v *= s;
    return *this;
  }

  friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) {
    return a += b;
  }
  friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) {
    return a -= b;
  }
  friend SquareMatrix operator*(Complex s, SquareMatrix a) { return a *= s; }
  friend SquareMatrix operator*(SquareMatrix a, Complex s) { return a *= s; }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix r;
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t k = 0; k < N; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < N; ++j) r(i, j) += aik * b(k, j);
      }
    }
    return r;
  }

 private:
  std::array<Complex, N * N> e_;
};

using Mat2 = SquareMatrix<2>;
using Mat4 = SquareMatrix<4>;

template <std::size_t N>
SquareMatrix<N> dagger(const SquareMatrix<N>& a) {
  SquareMatrix<N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj(a(j, i));
  return r;
}

template <std::size_t N>
Complex trace(const SquareMatrix<N>& a) {
  Complex t{};
  for (std::size_t i = 0; i < N; ++i) t += a(i, i);
  return t;
}

// Kronecker product with Alice as the left factor: basis order
// |00>, |01>, |10>, |11>, first index Alice, second index Bob.
inline Mat4 tensor(const Mat2& a, const Mat2& b) {
  Mat4 r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l)
          r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return r;
}

inline Mat2 partial_trace(const Mat4& rho, Player keep) {
  Mat2 r;
  if (keep == Player::alice) {
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t a2 = 0; a2 < 2; ++a2)
        for (std::size_t b = 0; b < 2; ++b)
          r(a, a2) += rho(2 * a + b, 2 * a2 + b);
  } else {
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t b2 = 0; b2 < 2; ++b2)
        for (std::size_t a = 0; a < 2; ++a)
          r(b, b2) += rho(2 * a + b, 2 * a + b2);
  }
  return r;
}

// Normalised four-component ket. Construction enforces unit norm.
class StateVector {
 public:
  StateVector(std::initializer_list<Complex> amps) {
    if (amps.size() != 4) {
      throw std::invalid_argument("StateVector: expected 4 amplitudes");
    }
    std::copy(amps.begin(), amps.end(), a_.begin());
    check_norm();
  }
  explicit StateVector(const std::array<Complex, 4>& amps) : a_(amps) {
    check_norm();
  }

  static constexpr std::size_t dim() { return 4; }
  const Complex& operator[](std::size_t i) const { return a_[i]; }
  const std::array<Complex, 4>& amplitudes() const { return a_; }

 private:
  void check_norm() const {
    double n = 0.0;
    for (const auto& v : a_) n += std::norm(v);
    if (std::abs(n - 1.0) > 1e-12) {
      throw std::invalid_argument("StateVector: not normalised (|v|^2 = " +
                                  std::to_string(n) + ")");
    }
  }
  std::array<Complex, 4> a_;
};

// <a|b>
inline Complex inner(const StateVector& a, const StateVector& b) {
  Complex s{};
  for (std::size_t i = 0; i < 4; ++i) s += std::conj(a[i]) * b[i];
  return s;
}

// |v><v|
inline Mat4 outer(const StateVector& v) {
  Mat4 r;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) r(i, j) = v[i] * std::conj(v[j]);
  return r;
}

template <std::size_t N>
double max_abs_diff(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

template <std::size_t N>
bool approx_equal(const SquareMatrix<N>& a, const SquareMatrix<N>& b,
                  double tol = kAlgebraTol) {
  return max_abs_diff(a, b) <= tol;
}

// Fidelity-style comparison for unitaries: |tr(a^dag b)|/N >= 1 - tol.
// Matrices equal up to a global phase compare equal.
template <std::size_t N>
bool equal_up_to_global_phase(const SquareMatrix<N>& a,
                              const SquareMatrix<N>& b,
                              double tol = kValidityTol) {
  return std::abs(trace(dagger(a) * b)) / static_cast<double>(N) >= 1.0 - tol;
}

template <std::size_t N>
bool is_hermitian(const SquareMatrix<N>& a, double tol = kValidityTol) {
  return max_abs_diff(a, dagger(a)) <= tol;
}

template <std::size_t N>
bool is_unitary(const SquareMatrix<N>& a, double tol = kValidityTol) {
  return max_abs_diff(dagger(a) * a, SquareMatrix<N>::identity()) <= tol;
}

// Eigenvalues of a 2x2 Hermitian matrix in closed form, ascending.
inline std::array<double, 2> hermitian_eigenvalues(const Mat2& a) {
  const double p = a(0, 0).real();
  const double q = a(1, 1).real();
  const double mean = 0.5 * (p + q);
  const double r = std::sqrt(0.25 * (p - q) * (p - q) + std::norm(a(0, 1)));
  return {mean - r, mean + r};
}

namespace detail {

// Cyclic Jacobi on a small real symmetric matrix; returns the diagonal,
// unsorted. Quadratic convergence, a handful of sweeps suffices at n = 8.
template <std::size_t M>
std::array<double, M> jacobi_symmetric_eigenvalues(
    std::array<std::array<double, M>, M> a) {
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < M; ++i)
      for (std::size_t j = i + 1; j < M; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < M; ++p) {
      for (std::size_t q = p + 1; q < M; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t =
            (theta >= 0 ? 1.0 : -1.0) /
            (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < M; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < M; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::array<double, M> d;
  for (std::size_t i = 0; i < M; ++i) d[i] = a[i][i];
  return d;
}

}  // namespace detail

// Eigenvalues of a 4x4 Hermitian matrix, ascending. Uses the real symmetric
// embedding [[X, -Y], [Y, X]] of A = X + iY, whose spectrum is that of A with
// every eigenvalue doubled.
inline std::array<double, 4> hermitian_eigenvalues(const Mat4& a) {
  std::array<std::array<double, 8>, 8> m{};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const double x = a(i, j).real();
      const double y = a(i, j).imag();
      m[i][j] = x;
      m[i + 4][j + 4] = x;
      m[i][j + 4] = -y;
      m[i + 4][j] = y;
    }
  }
  auto d = detail::jacobi_symmetric_eigenvalues(m);
  std::sort(d.begin(), d.end());
  return {d[0], d[2], d[4], d[6]};
}

template <std::size_t N>
bool is_density(const SquareMatrix<N>& a, double tol = kValidityTol) {
  if (!is_hermitian(a, tol)) return false;
  if (std::abs(trace(a).real() - 1.0) > tol ||
      std::abs(trace(a).imag()) > tol) {
    return false;
  }
  const auto eig = hermitian_eigenvalues(a);
  return eig.front() >= -tol;
}

// Majorisation comparator for 2x2 unit-trace Hermitian operators:
// a is at least as mixed as b iff lambda_max(a) <= lambda_max(b).
inline bool is_more_mixed(const Mat2& a, const Mat2& b,
                          double tol = kValidityTol) {
  if (!is_hermitian(a, tol) || !is_hermitian(b, tol)) {
    throw std::invalid_argument("is_more_mixed: inputs must be Hermitian");
  }
  return hermitian_eigenvalues(a)[1] <= hermitian_eigenvalues(b)[1] + tol;
}

}  // namespace qgame
