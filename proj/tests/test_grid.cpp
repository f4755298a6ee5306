#include "grf/grid.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace grf;

namespace {

// Independent curvature oracle: numerically differentiated Christoffel
// symbols of the full 3x3 coordinate metric diag(a^2, b^2, c^2).
CurvatureFields christoffel_oracle(const GridGeometry& g) {
  const int n = g.n;
  const double dx = g.dx();
  auto dcen = [&](const Field& f, int i) {
    return (f[wrap(i + 1, n)] - f[wrap(i - 1, n)]) / (2.0 * dx);
  };
  Field gd[3];
  gd[0].resize(n);
  gd[1].resize(n);
  gd[2].resize(n);
  for (int i = 0; i < n; ++i) {
    gd[0][i] = g.a[i] * g.a[i];
    gd[1][i] = g.b[i] * g.b[i];
    gd[2][i] = g.c[i] * g.c[i];
  }
  // Gam[i][k][p][q] = Gamma^k_{pq} at node i
  std::vector<std::array<std::array<std::array<double, 3>, 3>, 3>> gam(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < 3; ++k)
      for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) {
          double t = 0.0;
          if (p == 0 && q == k) t += dcen(gd[k], i);
          if (q == 0 && p == k) t += dcen(gd[k], i);
          if (k == 0 && p == q) t -= dcen(gd[p], i);
          gam[i][k][p][q] = 0.5 / gd[k][i] * t;
        }
  auto dgam = [&](int i, int k, int p, int q) {
    return (gam[wrap(i + 1, n)][k][p][q] - gam[wrap(i - 1, n)][k][p][q]) / (2.0 * dx);
  };
  CurvatureFields out;
  out.ric_xx.resize(n);
  out.ric_yy.resize(n);
  out.ric_zz.resize(n);
  out.scalar.resize(n);
  for (int i = 0; i < n; ++i) {
    double ric[3];
    for (int p = 0; p < 3; ++p) {
      double t = dgam(i, 0, p, p);  // d_l Gam^l_{pq}: only l = 0 differentiates
      if (p == 0) {
        double tr_p = 0.0;
        (void)tr_p;
        // - d_p Gam^l_{lq}: only for p = 0
        double d_trace = 0.0;
        for (int l = 0; l < 3; ++l) d_trace += dgam(i, l, l, p) * 0.0;  // via sum below
        double tr_plus = 0.0, tr_minus = 0.0;
        for (int l = 0; l < 3; ++l) {
          tr_plus += gam[wrap(i + 1, n)][l][l][p];
          tr_minus += gam[wrap(i - 1, n)][l][l][p];
        }
        t -= (tr_plus - tr_minus) / (2.0 * dx);
      }
      for (int l = 0; l < 3; ++l)
        for (int q = 0; q < 3; ++q)
          t += gam[i][l][l][q] * gam[i][q][p][p] - gam[i][l][p][q] * gam[i][q][l][p];
      ric[p] = t;
    }
    out.ric_xx[i] = ric[0] / gd[0][i];
    out.ric_yy[i] = ric[1] / gd[1][i];
    out.ric_zz[i] = ric[2] / gd[2][i];
    out.scalar[i] = out.ric_xx[i] + out.ric_yy[i] + out.ric_zz[i];
  }
  return out;
}

GridGeometry wavy(int n, double eps_b = 1e-3, double eps_c = 1e-3,
                  double amp_a = 0.0, double length = 1.0) {
  GridGeometry g = GridGeometry::flat(n, length);
  for (int i = 0; i < n; ++i) {
    const double x = i * g.dx();
    g.a[i] = 1.0 + amp_a * std::sin(2.0 * kPi * x / length);
    g.b[i] = std::exp(eps_b * std::sin(2.0 * kPi * x / length));
    g.c[i] = std::exp(eps_c * std::cos(4.0 * kPi * x / length));
  }
  return g;
}

double max_abs_diff(const Field& u, const Field& v) {
  double r = 0.0;
  for (size_t i = 0; i < u.size(); ++i) r = std::max(r, std::abs(u[i] - v[i]));
  return r;
}

double oracle_deviation(const GridGeometry& g) {
  const auto got = curvature(g);
  const auto want = christoffel_oracle(g);
  return std::max({max_abs_diff(got.ric_xx, want.ric_xx),
                   max_abs_diff(got.ric_yy, want.ric_yy),
                   max_abs_diff(got.ric_zz, want.ric_zz),
                   max_abs_diff(got.scalar, want.scalar)});
}

Field random_field(int n, uint64_t seed) {
  Rng rng(seed);
  Field f(n);
  for (double& v : f) v = rng.normal();
  return f;
}

double inner_vol(const GridGeometry& g, const Field& u, const Field& v) {
  double t = 0.0;
  for (int i = 0; i < g.n; ++i) t += u[i] * v[i] * g.cell_weight(i);
  return t;
}

}  // namespace

TEST(Curvature, FlatGeometryIsFlat) {
  const auto cf = curvature(GridGeometry::flat(64));
  for (int i = 0; i < 64; ++i) {
    EXPECT_EQ(cf.scalar[i], 0.0);
    EXPECT_EQ(cf.rm_norm[i], 0.0);
  }
}

TEST(Curvature, ScalarIsRicciTrace) {
  const auto g = wavy(128, 0.05, 0.08, 0.2);
  const auto cf = curvature(g);
  for (int i = 0; i < g.n; ++i)
    EXPECT_NEAR(cf.scalar[i], cf.ric_xx[i] + cf.ric_yy[i] + cf.ric_zz[i], 1e-12);
}

TEST(Curvature, MatchesChristoffelOracle) {
  // b = c = exp(1e-3 sin(2 pi x)), a = 1; both routes are second order, the
  // measured gap at N = 256 sits at ~2.4e-5 and shrinks 4x per refinement.
  GridGeometry g = GridGeometry::flat(256);
  for (int i = 0; i < g.n; ++i) {
    const double x = i * g.dx();
    g.b[i] = g.c[i] = std::exp(1e-3 * std::sin(2.0 * kPi * x));
  }
  EXPECT_LE(oracle_deviation(g), 5e-5);
}

TEST(Curvature, SecondOrderConvergenceToOracle) {
  const double e1 = oracle_deviation(wavy(128, 1e-3, 1e-3, 0.3));
  const double e2 = oracle_deviation(wavy(256, 1e-3, 1e-3, 0.3));
  EXPECT_GE(e1 / e2, 3.4);
  EXPECT_LE(e1 / e2, 4.6);
}

TEST(Curvature, RejectsNonPositiveFields) {
  GridGeometry g = GridGeometry::flat(32);
  g.b[5] = -1.0;
  EXPECT_THROW(curvature(g), std::invalid_argument);
}

TEST(Laplacian, ConstantFieldMapsToZero) {
  const auto g = wavy(64, 0.1, 0.2, 0.3);
  const Field f(64, 3.7);
  for (double v : laplacian(g, f)) EXPECT_EQ(v, 0.0);
}

TEST(Laplacian, FlatEigenfunction) {
  const int n = 256;
  const auto g = GridGeometry::flat(n, 2.0);
  const double k = 2.0 * kPi / g.length;
  Field f(n);
  for (int i = 0; i < n; ++i) f[i] = std::sin(k * i * g.dx());
  const auto lf = laplacian(g, f);
  for (int i = 0; i < n; ++i)
    EXPECT_NEAR(lf[i], -k * k * f[i], k * k * k * k * g.dx() * g.dx() / 6.0);
}

TEST(Laplacian, SelfAdjointInVolumeInnerProduct) {
  const auto g = wavy(128, 0.2, 0.15, 0.4);
  for (uint64_t s = 0; s < 20; ++s) {
    const Field f = random_field(g.n, 100 + s), h = random_field(g.n, 200 + s);
    const double lhs = inner_vol(g, laplacian(g, f), h);
    const double rhs = inner_vol(g, f, laplacian(g, h));
    EXPECT_NEAR(lhs, rhs, 1e-10 * (1.0 + std::abs(lhs)));
  }
}

TEST(Laplacian, LengthMismatchRejected) {
  EXPECT_THROW(laplacian(GridGeometry::flat(32), Field(31, 0.0)),
               std::invalid_argument);
}

TEST(Codifferential, ConstantTorsionIsCoclosed) {
  const auto g = wavy(64, 0.1, 0.1, 0.2);
  const Field h(64, 0.8);
  const auto w = codifferential_h(g, h);
  for (double v : w) EXPECT_EQ(v, 0.0);
}

TEST(Codifferential, FlatClosedForm) {
  const int n = 256;
  const auto g = GridGeometry::flat(n);
  const double k = 2.0 * kPi / g.length;
  Field h(n);
  for (int i = 0; i < n; ++i) h[i] = std::sin(k * i * g.dx());
  const auto w = codifferential_h(g, h);
  for (int i = 0; i < n; ++i)
    EXPECT_NEAR(w[i], -k * std::cos(k * i * g.dx()), k * k * k * g.dx() * g.dx());
}

TEST(Codifferential, DiscreteAdjointness) {
  // <d*H, w>_geom = <H, dw>_geom with the 1/k!-weighted pairings; exact for
  // the central-difference pair by summation by parts.
  const auto g = wavy(128, 0.3, 0.2, 0.25);
  for (uint64_t s = 0; s < 100; ++s) {
    const Field h = random_field(g.n, 300 + s), w = random_field(g.n, 400 + s);
    const double lhs = inner_vol(g, codifferential_h(g, h), w);
    const double rhs = inner_vol(g, h, exterior_d_reduced(g, w));
    EXPECT_NEAR(lhs, rhs, 1e-10 * (1.0 + std::abs(lhs)));
  }
}

TEST(ReducedDistance, BasicProperties) {
  const auto g = wavy(128, 0.0, 0.0, 0.35);
  EXPECT_EQ(reduced_distance(g, 17, 17), 0.0);
  for (uint64_t s = 0; s < 30; ++s) {
    Rng rng(s);
    const int i = int(rng.integer() % g.n), j = int(rng.integer() % g.n),
              k = int(rng.integer() % g.n);
    const double dij = reduced_distance(g, i, j);
    EXPECT_NEAR(dij, reduced_distance(g, j, i), 1e-12);
    EXPECT_LE(dij, reduced_distance(g, i, k) + reduced_distance(g, k, j) + 1e-12);
  }
}

TEST(ReducedDistance, FlatAntipodal) {
  const auto g = GridGeometry::flat(128, 3.0);
  EXPECT_NEAR(reduced_distance(g, 0, 64), 1.5, 1e-12);
}

TEST(ReducedDistance, MatchesDenseResamplingOracle) {
  auto dist_at = [&](int n) {
    GridGeometry g = GridGeometry::flat(n);
    for (int i = 0; i < n; ++i)
      g.a[i] = 1.0 + 0.4 * std::sin(2.0 * kPi * i * g.dx()) +
               0.1 * std::cos(4.0 * kPi * i * g.dx());
    return reduced_distance(g, 0, n / 4);
  };
  const double dense = dist_at(1 << 14);
  const double e1 = std::abs(dist_at(128) - dense);
  const double e2 = std::abs(dist_at(256) - dense);
  EXPECT_LE(e2, 1e-4);
  EXPECT_GE(e1 / e2, 3.0);
}

TEST(ReducedDistance, AllNodesMatchesPairwise) {
  const auto g = wavy(96, 0.0, 0.0, 0.3);
  const auto d = reduced_distances_from(g, 10);
  for (int j = 0; j < g.n; j += 7)
    EXPECT_NEAR(d[j], reduced_distance(g, 10, j), 1e-12);
}

TEST(BallVolume, ConstantPhiFactorsOut) {
  const auto g = wavy(64, 0.1, 0.05, 0.2, 1.0);
  const double r = 0.2;
  const auto plain = weighted_ball_volume(g, Field(g.n, 0.0), 5, r, 8);
  const auto weighted = weighted_ball_volume(g, Field(g.n, 0.7), 5, r, 8);
  EXPECT_NEAR(weighted.value, std::exp(-0.7) * plain.value, 1e-12 * plain.value);
}

TEST(BallVolume, HugeRadiusGivesTotalWeightedVolume) {
  const auto g = wavy(64, 0.1, 0.05, 0.2);
  const Field phi(g.n, 0.3);
  const auto bv = weighted_ball_volume(g, phi, 0, 100.0, 8);
  EXPECT_NEAR(bv.value, std::exp(-0.3) * g.volume(), 1e-10 * g.volume());
}

TEST(BallVolume, SmallRadiusEuclideanLimit) {
  // flat metric, cubic cells, r = L/50: within 2% of (4 pi / 3) r^3
  const int n = 640, m = 32;
  const auto g = GridGeometry::flat(n, 1.0, 1.0 / 20, 1.0 / 20);
  const double r = 1.0 / 50;
  const auto bv = weighted_ball_volume(g, Field(n, 0.0), 11, r, m);
  const double want = 4.0 / 3.0 * kPi * r * r * r;
  EXPECT_NEAR(bv.value, want, 0.02 * want);
  EXPECT_GT(bv.metrication_bound, 0.0);
}

TEST(GaugeMeta, FiberSwapInvariance) {
  auto g = wavy(96, 0.08, 0.03, 0.25);
  auto swapped = g;
  std::swap(swapped.b, swapped.c);
  const auto c1 = curvature(g), c2 = curvature(swapped);
  for (int i = 0; i < g.n; ++i) {
    EXPECT_EQ(c1.scalar[i], c2.scalar[i]);
    EXPECT_EQ(c1.rm_norm[i], c2.rm_norm[i]);
    EXPECT_EQ(c1.ric_xx[i], c2.ric_xx[i]);
    EXPECT_EQ(c1.ric_yy[i], c2.ric_zz[i]);
  }
  EXPECT_EQ(g.volume(), swapped.volume());
  EXPECT_EQ(reduced_distance(g, 3, 40), reduced_distance(swapped, 3, 40));
}

TEST(GaugeMeta, TranslationEquivariance) {
  auto g = wavy(96, 0.08, 0.03, 0.25);
  auto shifted = g;
  for (int i = 0; i < g.n; ++i) {
    shifted.a[i] = g.a[wrap(i + 1, g.n)];
    shifted.b[i] = g.b[wrap(i + 1, g.n)];
    shifted.c[i] = g.c[wrap(i + 1, g.n)];
  }
  const auto c1 = curvature(g), c2 = curvature(shifted);
  for (int i = 0; i < g.n; ++i)
    EXPECT_EQ(c1.scalar[wrap(i + 1, g.n)], c2.scalar[i]);
}
