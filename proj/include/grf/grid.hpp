#pragma once

// Discrete cohomogeneity-one geometry on T^3: g = a(x)^2 dx^2 + b(x)^2 dy^2
// + c(x)^2 dz^2 with a, b, c periodic point values on a uniform x grid.
// Spatial derivatives are second-order central differences; second
// derivatives use the compact three-point flux form, which makes the
// Laplacian exactly self-adjoint in L^2(dVol).
//
// Frame curvature of the reduced metric (Dbar = (1/a) d/dx, arclength):
//   K_xy = -Dbar^2 b / b,  K_xz = -Dbar^2 c / c,  K_yz = -(Dbar b)(Dbar c)/(b c)
//   ric_xx = K_xy + K_xz, ric_yy = K_xy + K_yz, ric_zz = K_xz + K_yz
//   R = 2 (K_xy + K_xz + K_yz),  |Rm|^2 = 4 (K_xy^2 + K_xz^2 + K_yz^2)
// (full-index-sum norm; the curvature operator is diagonal on this class).

#include <queue>
#include <vector>

#include "grf/common.hpp"

namespace grf {

using Field = std::vector<double>;

struct GridGeometry {
  int n = 0;
  double length = 1.0;      // coordinate period of x
  double ly = 1.0, lz = 1.0;  // fiber coordinate periods
  Field a, b, c;

  double dx() const { return length / n; }

  void validate() const {
    require(n >= 8, "GridGeometry: need at least 8 points");
    require(length > 0 && ly > 0 && lz > 0, "GridGeometry: periods must be positive");
    require(a.size() == size_t(n) && b.size() == size_t(n) && c.size() == size_t(n),
            "GridGeometry: field lengths must equal n");
    for (int i = 0; i < n; ++i)
      require(a[i] > 0 && b[i] > 0 && c[i] > 0, "GridGeometry: fields must be positive");
  }

  // measure of cell i: a b c dx dy dz summed over the fiber
  double cell_weight(int i) const { return a[i] * b[i] * c[i] * dx() * ly * lz; }

  double volume() const {
    double v = 0.0;
    for (int i = 0; i < n; ++i) v += cell_weight(i);
    return v;
  }

  static GridGeometry flat(int n, double length = 1.0, double ly = 1.0,
                           double lz = 1.0) {
    GridGeometry g;
    g.n = n;
    g.length = length;
    g.ly = ly;
    g.lz = lz;
    g.a.assign(n, 1.0);
    g.b.assign(n, 1.0);
    g.c.assign(n, 1.0);
    return g;
  }
};

// ---- first and second derivative stencils -------------------------------

// coordinate central difference
inline Field d_central(const GridGeometry& g, const Field& f) {
  require(f.size() == size_t(g.n), "d_central: length mismatch");
  Field out(g.n);
  const double inv = 1.0 / (2.0 * g.dx());
  for (int i = 0; i < g.n; ++i)
    out[i] = (f[wrap(i + 1, g.n)] - f[wrap(i - 1, g.n)]) * inv;
  return out;
}

// arclength gradient (1/a) df/dx
inline Field arclength_gradient(const GridGeometry& g, const Field& f) {
  Field out = d_central(g, f);
  for (int i = 0; i < g.n; ++i) out[i] /= g.a[i];
  return out;
}

// compact arclength second derivative (1/a) d/dx ((1/a) df/dx), staggered
inline Field arclength_second(const GridGeometry& g, const Field& f) {
  require(f.size() == size_t(g.n), "arclength_second: length mismatch");
  Field out(g.n);
  const double dx = g.dx();
  for (int i = 0; i < g.n; ++i) {
    const int ip = wrap(i + 1, g.n), im = wrap(i - 1, g.n);
    const double ap = 0.5 * (g.a[i] + g.a[ip]);
    const double am = 0.5 * (g.a[i] + g.a[im]);
    out[i] = ((f[ip] - f[i]) / ap - (f[i] - f[im]) / am) / (dx * dx * g.a[i]);
  }
  return out;
}

// Laplace-Beltrami (1/(abc)) d/dx ((bc/a) df/dx), flux form; exactly
// self-adjoint in the discrete L^2(dVol) inner product.
inline Field laplacian(const GridGeometry& g, const Field& f) {
  require(f.size() == size_t(g.n), "laplacian: length mismatch");
  Field out(g.n);
  const double dx = g.dx();
  for (int i = 0; i < g.n; ++i) {
    const int ip = wrap(i + 1, g.n), im = wrap(i - 1, g.n);
    auto mu = [&](int u, int v) {
      return 0.5 * (g.b[u] * g.c[u] / g.a[u] + g.b[v] * g.c[v] / g.a[v]);
    };
    out[i] = (mu(i, ip) * (f[ip] - f[i]) - mu(im, i) * (f[i] - f[im])) /
             (dx * dx * g.a[i] * g.b[i] * g.c[i]);
  }
  return out;
}

// ---- curvature -----------------------------------------------------------

struct CurvatureFields {
  Field ric_xx, ric_yy, ric_zz;
  Field scalar;
  Field rm_norm;
  Field k_xy, k_xz, k_yz;  // sectional components, kept for the monitors
};

inline CurvatureFields curvature(const GridGeometry& g) {
  g.validate();
  CurvatureFields out;
  const Field db = arclength_gradient(g, g.b);
  const Field dc = arclength_gradient(g, g.c);
  const Field d2b = arclength_second(g, g.b);
  const Field d2c = arclength_second(g, g.c);
  const int n = g.n;
  out.ric_xx.resize(n);
  out.ric_yy.resize(n);
  out.ric_zz.resize(n);
  out.scalar.resize(n);
  out.rm_norm.resize(n);
  out.k_xy.resize(n);
  out.k_xz.resize(n);
  out.k_yz.resize(n);
  for (int i = 0; i < n; ++i) {
    const double kxy = -d2b[i] / g.b[i];
    const double kxz = -d2c[i] / g.c[i];
    const double kyz = -db[i] * dc[i] / (g.b[i] * g.c[i]);
    out.k_xy[i] = kxy;
    out.k_xz[i] = kxz;
    out.k_yz[i] = kyz;
    out.ric_xx[i] = kxy + kxz;
    out.ric_yy[i] = kxy + kyz;
    out.ric_zz[i] = kxz + kyz;
    out.scalar[i] = 2.0 * (kxy + kxz + kyz);
    out.rm_norm[i] = 2.0 * std::sqrt(kxy * kxy + kxz * kxz + kyz * kyz);
  }
  return out;
}

// ---- reduced Hodge operators ---------------------------------------------

// (d*H)_{23} for H = h dVol, i.e. the frame component of -*d*H = -Dbar h.
// Adjoint of the reduced exterior derivative below in the geometric
// (1/k!-weighted) L^2 pairing, exactly at the discrete level.
inline Field codifferential_h(const GridGeometry& g, const Field& h) {
  Field out = arclength_gradient(g, h);
  for (double& v : out) v = -v;
  return out;
}

// (d omega)_{123} for omega = w(x) e^2^e^3: (1/(abc)) d/dx (w b c).
inline Field exterior_d_reduced(const GridGeometry& g, const Field& w) {
  require(w.size() == size_t(g.n), "exterior_d_reduced: length mismatch");
  Field wbc(g.n);
  for (int i = 0; i < g.n; ++i) wbc[i] = w[i] * g.b[i] * g.c[i];
  Field out = d_central(g, wbc);
  for (int i = 0; i < g.n; ++i) out[i] /= g.a[i] * g.b[i] * g.c[i];
  return out;
}

// ---- distances and volumes ------------------------------------------------

// arc length between consecutive nodes i, i+1 (trapezoid)
inline double arc_step(const GridGeometry& g, int i) {
  return 0.5 * (g.a[i] + g.a[wrap(i + 1, g.n)]) * g.dx();
}

inline double circumference(const GridGeometry& g) {
  double t = 0.0;
  for (int i = 0; i < g.n; ++i) t += arc_step(g, i);
  return t;
}

inline double reduced_distance(const GridGeometry& g, int x1, int x2) {
  x1 = wrap(x1, g.n);
  x2 = wrap(x2, g.n);
  if (x1 == x2) return 0.0;
  double fwd = 0.0;
  for (int i = x1; i != x2; i = wrap(i + 1, g.n)) fwd += arc_step(g, i);
  return std::min(fwd, circumference(g) - fwd);
}

// distances from one node to all nodes (prefix sums, O(n))
inline Field reduced_distances_from(const GridGeometry& g, int x0) {
  x0 = wrap(x0, g.n);
  const double total = circumference(g);
  Field out(g.n);
  double acc = 0.0;
  for (int k = 0; k < g.n; ++k) {
    const int i = wrap(x0 + k, g.n);
    out[i] = std::min(acc, total - acc);
    acc += arc_step(g, i);
  }
  return out;
}

struct BallVolume {
  double value = 0.0;
  double metrication_bound = 0.0;  // max cell diagonal, the O(dx) error scale
};

// phi-weighted volume of the metric ball of radius r around (x0, fiber
// origin). Distances are shortest paths on the N x M x M product graph with
// 26-neighbour edges, improved by direct metric chords from the center
// (minimum over periodic images); chords are exact on flat geometry.
inline BallVolume weighted_ball_volume(const GridGeometry& g, const Field& phi,
                                       int x0, double r, int m = 32) {
  g.validate();
  require(phi.size() == size_t(g.n), "weighted_ball_volume: phi length mismatch");
  require(r > 0, "weighted_ball_volume: r must be positive");
  const int n = g.n;
  x0 = wrap(x0, n);
  const double dx = g.dx(), dy = g.ly / m, dz = g.lz / m;
  const int total = n * m * m;
  auto id = [&](int i, int j, int k) { return (i * m + wrap(j, m)) * m + wrap(k, m); };

  std::vector<double> dist(total, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;

  // chord seeding: straight coordinate segments from the center to every
  // node (nearest periodic image per axis), length by 8-point midpoint
  // integration of the metric along the segment. Chords are upper bounds
  // like every graph path, and exact on flat geometry.
  auto nearest = [](double d, double period) {
    while (d > 0.5 * period) d -= period;
    while (d < -0.5 * period) d += period;
    return d;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        const double ddx = nearest((i - x0) * dx, g.length);
        const double ddy = nearest(j * dy, g.ly);
        const double ddz = nearest(k * dz, g.lz);
        double len = 0.0;
        const int q = 8;
        for (int s = 0; s < q; ++s) {
          const double u = (s + 0.5) / q;
          const double xc = (x0 * dx + u * ddx) / dx;
          const int ic = wrap(int(std::floor(xc)), n);
          const int icp = wrap(ic + 1, n);
          const double fr = xc - std::floor(xc);
          auto lerp = [&](const Field& f) { return (1.0 - fr) * f[ic] + fr * f[icp]; };
          const double av = lerp(g.a), bv = lerp(g.b), cv = lerp(g.c);
          len += std::sqrt(av * av * ddx * ddx + bv * bv * ddy * ddy +
                           cv * cv * ddz * ddz) /
                 q;
        }
        dist[id(i, j, k)] = len;
        pq.emplace(len, id(i, j, k));
      }
  }

  // Dijkstra relaxation with 26-connectivity
  std::vector<bool> done(total, false);
  while (!pq.empty()) {
    const auto [d0, u] = pq.top();
    pq.pop();
    if (done[u]) continue;
    done[u] = true;
    const int k = u % m, j = (u / m) % m, i = u / (m * m);
    for (int di = -1; di <= 1; ++di)
      for (int dj = -1; dj <= 1; ++dj)
        for (int dk = -1; dk <= 1; ++dk) {
          if (di == 0 && dj == 0 && dk == 0) continue;
          const int i2 = wrap(i + di, n);
          const int v = id(i2, j + dj, k + dk);
          if (done[v]) continue;
          const double am = 0.5 * (g.a[i] + g.a[i2]);
          const double bm = 0.5 * (g.b[i] + g.b[i2]);
          const double cm = 0.5 * (g.c[i] + g.c[i2]);
          const double len = std::sqrt(am * am * di * di * dx * dx +
                                       bm * bm * dj * dj * dy * dy +
                                       cm * cm * dk * dk * dz * dz);
          if (d0 + len < dist[v]) {
            dist[v] = d0 + len;
            pq.emplace(dist[v], v);
          }
        }
  }

  BallVolume out;
  const double cell_coord = dx * dy * dz;
  for (int i = 0; i < n; ++i) {
    const double wcell = g.a[i] * g.b[i] * g.c[i] * cell_coord * std::exp(-phi[i]);
    const double diag = std::sqrt(g.a[i] * g.a[i] * dx * dx +
                                  g.b[i] * g.b[i] * dy * dy +
                                  g.c[i] * g.c[i] * dz * dz);
    out.metrication_bound = std::max(out.metrication_bound, diag);
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        if (dist[id(i, j, k)] < r) out.value += wcell;
  }
  return out;
}

}  // namespace grf
