#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace grf {

inline constexpr double kPi = 3.14159265358979323846;

// Periodic index arithmetic (grids are cyclic in the x coordinate).
inline int wrap(int i, int n) {
  int r = i % n;
  return r < 0 ? r + n : r;
}

// Deterministic RNG used everywhere a seed appears in a config or test.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(eng_);
  }
  double normal(double mean = 0.0, double sigma = 1.0) {
    return std::normal_distribution<double>(mean, sigma)(eng_);
  }
  uint64_t integer() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

// Eigenvalues of a small dense symmetric matrix (n <= 4) by cyclic Jacobi
// rotations. Returns values sorted ascending.
inline std::vector<double> symmetric_eigenvalues(std::vector<double> m, int n) {
  auto at = [&](int i, int j) -> double& { return m[i * n + j]; };
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(at(p, q)) < 1e-300) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double mkp = at(k, p), mkq = at(k, q);
          at(k, p) = c * mkp - s * mkq;
          at(k, q) = s * mkp + c * mkq;
        }
        for (int k = 0; k < n; ++k) {
          const double mpk = at(p, k), mqk = at(q, k);
          at(p, k) = c * mpk - s * mqk;
          at(q, k) = s * mpk + c * mqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = at(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

// Adaptive Simpson quadrature for smooth integrands.
inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double tol = 1e-13, int depth = 40) {
  struct Impl {
    const std::function<double(double)>& f;
    double run(double a, double m, double b, double fa, double fm, double fb,
               double whole, double tol, int depth) {
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = f(lm), frm = f(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
      return run(a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
             run(m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
  };
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  Impl impl{f};
  return impl.run(a, m, b, fa, fm, fb, whole, tol, depth);
}

// Streaming cumulative integral on a uniformly spaced sample sequence.
// Uses quadratic (Adams-Moulton style) increments so that smooth integrands
// accumulate with O(dt^3) global error instead of trapezoid's O(dt^2).
class CumulativeIntegral {
 public:
  explicit CumulativeIntegral(double dt) : dt_(dt) {}

  // Push the next sample; returns the cumulative integral up to it.
  double push(double value) {
    samples_++;
    if (samples_ == 1) {
      last2_ = value;
      return total_;
    }
    if (samples_ == 2) {
      last1_ = value;
      pending_first_ = true;
      total_ += 0.5 * dt_ * (last2_ + last1_);  // provisional, fixed on next push
      return total_;
    }
    if (pending_first_) {
      // retroactively upgrade the first interval to the quadratic rule
      total_ -= 0.5 * dt_ * (last2_ + last1_);
      total_ += dt_ / 12.0 * (5.0 * last2_ + 8.0 * last1_ - value);
      pending_first_ = false;
    }
    total_ += dt_ / 12.0 * (-last2_ + 8.0 * last1_ + 5.0 * value);
    last2_ = last1_;
    last1_ = value;
    return total_;
  }

  double value() const { return total_; }

 private:
  double dt_;
  double total_ = 0.0;
  double last1_ = 0.0, last2_ = 0.0;
  long samples_ = 0;
  bool pending_first_ = false;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace grf
