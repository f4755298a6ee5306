#pragma once

// Pointwise multilinear algebra in orthonormal frames, dims 3 and 4.
//
// Conventions (pinned by the tests):
//   * every tensor norm and contraction is a full index sum with no
//     combinatorial normalization, so H = lambda e1^e2^e3 has |H|^2 = 6 lambda^2;
//   * Ric_{ir} = -sum_s R_{sisr} and K_{ij} = R_{ijji}, so constant curvature
//     R_{ijkl} = kappa (d_{il}d_{jk} - d_{ik}d_{jl}) has Ric = (n-1) kappa g.

#include <array>
#include <cstdint>
#include <utility>

#include "grf/common.hpp"

namespace grf {

class SymmetricBilinear {
 public:
  explicit SymmetricBilinear(int dim) : dim_(dim) {
    require(dim == 3 || dim == 4, "SymmetricBilinear: dim must be 3 or 4");
    c_.fill(0.0);
  }

  int dim() const { return dim_; }
  double operator()(int i, int j) const { return c_[i * 4 + j]; }
  void set(int i, int j, double v) {
    c_[i * 4 + j] = v;
    c_[j * 4 + i] = v;
  }

  double trace() const {
    double t = 0.0;
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }
  double norm2() const {
    double t = 0.0;
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) t += (*this)(i, j) * (*this)(i, j);
    return t;
  }
  std::vector<double> eigenvalues() const {
    std::vector<double> m(dim_ * dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) m[i * dim_ + j] = (*this)(i, j);
    return symmetric_eigenvalues(std::move(m), dim_);
  }

 private:
  int dim_;
  std::array<double, 16> c_;
};

inline double inner(const SymmetricBilinear& a, const SymmetricBilinear& b) {
  double t = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) t += a(i, j) * b(i, j);
  return t;
}

class ThreeForm {
 public:
  explicit ThreeForm(int dim) : dim_(dim) {
    require(dim == 3 || dim == 4, "ThreeForm: dim must be 3 or 4");
    c_.fill(0.0);
  }

  // Full antisymmetrization of an arbitrary rank-3 array. Each independent
  // component is computed once and written to all six index slots with signs,
  // so permutation symmetry holds exactly, not just to roundoff.
  static ThreeForm antisymmetrized(int dim, const std::array<double, 64>& raw) {
    ThreeForm h(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j)
        for (int k = j + 1; k < dim; ++k) {
          const double v = (raw[(i * 4 + j) * 4 + k] + raw[(j * 4 + k) * 4 + i] +
                            raw[(k * 4 + i) * 4 + j] - raw[(j * 4 + i) * 4 + k] -
                            raw[(i * 4 + k) * 4 + j] - raw[(k * 4 + j) * 4 + i]) /
                           6.0;
          h.set_asym(i, j, k, v);
        }
    return h;
  }

  // h * epsilon in dimension 3, i.e. H = h dVol with |H|^2 = 6 h^2.
  static ThreeForm scalar_3d(double h) {
    ThreeForm f(3);
    f.set_asym(0, 1, 2, h);
    return f;
  }

  // lambda e1^e2^e3 inside dimension 4.
  static ThreeForm axis_4d(double lambda) {
    ThreeForm f(4);
    f.set_asym(0, 1, 2, lambda);
    return f;
  }

  static ThreeForm random(int dim, uint64_t seed) {
    Rng rng(seed);
    std::array<double, 64> raw{};
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k) raw[(i * 4 + j) * 4 + k] = rng.normal();
    return antisymmetrized(dim, raw);
  }

  int dim() const { return dim_; }
  double operator()(int i, int j, int k) const { return c_[(i * 4 + j) * 4 + k]; }

  // Single-component write that bypasses the antisymmetry invariant; callers
  // must re-establish or assert it (see weitzenbock_ric).
  void set_raw(int i, int j, int k, double v) { c_[(i * 4 + j) * 4 + k] = v; }

  // Sets the component and all its index permutations with matching signs.
  void set_asym(int i, int j, int k, double v) {
    c_[(i * 4 + j) * 4 + k] = v;
    c_[(j * 4 + k) * 4 + i] = v;
    c_[(k * 4 + i) * 4 + j] = v;
    c_[(j * 4 + i) * 4 + k] = -v;
    c_[(i * 4 + k) * 4 + j] = -v;
    c_[(k * 4 + j) * 4 + i] = -v;
  }

  double norm2() const {
    double t = 0.0;
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        for (int k = 0; k < dim_; ++k) t += (*this)(i, j, k) * (*this)(i, j, k);
    return t;
  }

  // Largest violation of full antisymmetry over all index pairs.
  double antisymmetry_residual() const {
    double r = 0.0;
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        for (int k = 0; k < dim_; ++k) {
          r = std::max(r, std::abs((*this)(i, j, k) + (*this)(j, i, k)));
          r = std::max(r, std::abs((*this)(i, j, k) + (*this)(i, k, j)));
        }
    return r;
  }

 private:
  int dim_;
  std::array<double, 64> c_;
};

inline double inner(const ThreeForm& a, const ThreeForm& b) {
  double t = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      for (int k = 0; k < a.dim(); ++k) t += a(i, j, k) * b(i, j, k);
  return t;
}

class AlgebraicCurvature {
 public:
  explicit AlgebraicCurvature(int dim) : dim_(dim) {
    require(dim == 3 || dim == 4, "AlgebraicCurvature: dim must be 3 or 4");
    c_.fill(0.0);
  }

  static AlgebraicCurvature constant_curvature(int dim, double kappa) {
    AlgebraicCurvature r(dim);
    auto d = [](int a, int b) { return a == b ? 1.0 : 0.0; };
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k)
          for (int l = 0; l < dim; ++l)
            r.c_[idx(i, j, k, l)] = kappa * (d(i, l) * d(j, k) - d(i, k) * d(j, l));
    return r;
  }

  int dim() const { return dim_; }
  double operator()(int i, int j, int k, int l) const { return c_[idx(i, j, k, l)]; }
  void set_raw(int i, int j, int k, int l, double v) { c_[idx(i, j, k, l)] = v; }

  // Sectional component K_{ij} = R_{ijji}.
  double k(int i, int j) const { return (*this)(i, j, j, i); }

  // Ricci with the sign Ric_{ir} = -sum_s R_{sisr}.
  SymmetricBilinear ricci() const {
    SymmetricBilinear ric(dim_);
    for (int i = 0; i < dim_; ++i)
      for (int r = i; r < dim_; ++r) {
        double t = 0.0;
        for (int s = 0; s < dim_; ++s) t -= (*this)(s, i, s, r);
        ric.set(i, r, t);
      }
    return ric;
  }

  double scalar() const { return ricci().trace(); }

  double norm2() const {
    double t = 0.0;
    for (int n = 0; n < dim_ * dim_ * dim_ * dim_; ++n) {
      const int l = n % dim_, k = (n / dim_) % dim_, j = (n / dim_ / dim_) % dim_,
                i = n / dim_ / dim_ / dim_;
      t += (*this)(i, j, k, l) * (*this)(i, j, k, l);
    }
    return t;
  }

  // Max violation over pair antisymmetries, pair symmetry, and first Bianchi.
  double symmetry_residual() const {
    double r = 0.0;
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        for (int k = 0; k < dim_; ++k)
          for (int l = 0; l < dim_; ++l) {
            const double v = (*this)(i, j, k, l);
            r = std::max(r, std::abs(v + (*this)(j, i, k, l)));
            r = std::max(r, std::abs(v + (*this)(i, j, l, k)));
            r = std::max(r, std::abs(v - (*this)(k, l, i, j)));
            r = std::max(r, std::abs(v + (*this)(i, k, l, j) + (*this)(i, l, j, k)));
          }
    return r;
  }

 private:
  static int idx(int i, int j, int k, int l) { return ((i * 4 + j) * 4 + k) * 4 + l; }

  int dim_;
  std::array<double, 256> c_;
};

// Deterministic random curvature tensor: a gaussian rank-4 array projected
// first onto the pair symmetries and then onto the first-Bianchi subspace
// (subtracting the fully antisymmetric part, which is the complement).
inline AlgebraicCurvature random_algebraic_curvature(uint64_t seed, int dim) {
  require(dim == 3 || dim == 4, "random_algebraic_curvature: dim must be 3 or 4");
  Rng rng(seed);
  AlgebraicCurvature raw(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l) raw.set_raw(i, j, k, l, rng.normal());

  AlgebraicCurvature sym(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l) {
          auto block = [&](int a, int b, int c, int d) {
            return raw(a, b, c, d) - raw(b, a, c, d) - raw(a, b, d, c) +
                   raw(b, a, d, c);
          };
          sym.set_raw(i, j, k, l, (block(i, j, k, l) + block(k, l, i, j)) / 8.0);
        }

  AlgebraicCurvature out(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l) {
          const double bianchi =
              (sym(i, j, k, l) + sym(i, k, l, j) + sym(i, l, j, k)) / 3.0;
          out.set_raw(i, j, k, l, sym(i, j, k, l) - bianchi);
        }
  return out;
}

// (H^2)_{ij} = sum_{kl} H_{ikl} H_{jkl}; positive semidefinite, trace |H|^2.
inline SymmetricBilinear h_squared(const ThreeForm& h) {
  SymmetricBilinear out(h.dim());
  for (int i = 0; i < h.dim(); ++i)
    for (int j = i; j < h.dim(); ++j) {
      double t = 0.0;
      for (int k = 0; k < h.dim(); ++k)
        for (int l = 0; l < h.dim(); ++l) t += h(i, k, l) * h(j, k, l);
      out.set(i, j, t);
    }
  return out;
}

// R_H = R_{ijkl} H_{ijr} H_{klr}, contracted through the intermediate
// rank-4 tensor (HH)_{ijkl} = sum_r H_{ijr} H_{klr}.
inline double r_h(const AlgebraicCurvature& rm, const ThreeForm& h) {
  require(rm.dim() == h.dim(), "r_h: dim mismatch");
  const int n = h.dim();
  double total = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double hh = 0.0;
          for (int r = 0; r < n; ++r) hh += h(i, j, r) * h(k, l, r);
          total += rm(i, j, k, l) * hh;
        }
  return total;
}

// Weitzenboeck curvature action on a three-form:
//   (Ric(H))_{ijk} = R_{ir}H_{rjk} + R_{jr}H_{irk} + R_{kr}H_{ijr}
//                  + R_{ijsr}H_{srk} + R_{iksr}H_{sjr} + R_{jksr}H_{isr}.
// The result is antisymmetric by the curvature symmetries; asserted.
inline ThreeForm weitzenbock_ric(const AlgebraicCurvature& rm, const ThreeForm& h) {
  require(rm.dim() == h.dim(), "weitzenbock_ric: dim mismatch");
  const int n = h.dim();
  const SymmetricBilinear ric = rm.ricci();
  ThreeForm out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double t = 0.0;
        for (int r = 0; r < n; ++r) {
          t += ric(i, r) * h(r, j, k) + ric(j, r) * h(i, r, k) +
               ric(k, r) * h(i, j, r);
          for (int s = 0; s < n; ++s)
            t += rm(i, j, s, r) * h(s, r, k) + rm(i, k, s, r) * h(s, j, r) +
                 rm(j, k, s, r) * h(i, s, r);
        }
        out.set_raw(i, j, k, t);
      }
  require(out.antisymmetry_residual() <=
              1e-12 * (1.0 + std::sqrt(rm.norm2() * h.norm2())),
          "weitzenbock_ric: output lost antisymmetry");
  return out;
}

// X_H = (*H)^sharp in dimension 4: (*H)_l = (1/6) sum_{ijk} H_{ijk} eps_{ijkl}.
inline std::array<double, 4> star_dual_4d(const ThreeForm& h) {
  require(h.dim() == 4, "star_dual_4d: dim must be 4");
  auto eps = [](int i, int j, int k, int l) -> double {
    int p[4] = {i, j, k, l};
    int sign = 1;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        if (p[a] == p[b]) return 0.0;
        if (p[a] > p[b]) sign = -sign;
      }
    return sign;
  };
  std::array<double, 4> x{};
  for (int l = 0; l < 4; ++l) {
    double t = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) t += h(i, j, k) * eps(i, j, k, l);
    x[l] = t / 6.0;
  }
  return x;
}

// Residuals of the two 4D contraction identities
//   R_H = (1/3) R |H|^2 - 2 <Ric, H^2>
//   R_H = -(1/3) R |H|^2 + 4 Ric(X_H, X_H)     (X_H unnormalized)
// The second uses Ric(X_H,X_H) = |X_H|^2 Ric(e,e) with |X_H|^2 = |H|^2/6.
inline std::pair<double, double> r_h_identity_residuals_4d(
    const AlgebraicCurvature& rm, const ThreeForm& h) {
  require(rm.dim() == 4 && h.dim() == 4, "r_h_identity_residuals_4d: dim must be 4");
  const double rh = r_h(rm, h);
  const double h2 = h.norm2();
  const SymmetricBilinear ric = rm.ricci();
  const double scal = ric.trace();
  const double first = rh - (scal * h2 / 3.0 - 2.0 * inner(ric, h_squared(h)));
  const auto x = star_dual_4d(h);
  double ric_xx = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) ric_xx += ric(i, j) * x[i] * x[j];
  const double second = rh - (-scal * h2 / 3.0 + 4.0 * ric_xx);
  return {std::abs(first), std::abs(second)};
}

}  // namespace grf
