#pragma once

// Spatially homogeneous flat-T^3 reduction of the flow. Everything here has
// a closed form, which the grid solver and the entropy machinery are tested
// against. On this model
//   dA/dt = h^2 A (same for B, C),  dh/dt = -(3/2) h^3,  dphi/dt = h^2,
// with A, B, C the squared coframe coefficients, and the solution through
// (h0, A0, phi0) is
//   h(t) = h0 (1 + 3 h0^2 t)^{-1/2},  A(t) = A0 (1 + 3 h0^2 t)^{1/3},
//   phi(t) = phi0 + (1/3) log(1 + 3 h0^2 t).

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "grf/common.hpp"
#include "grf/records.hpp"

namespace grf {

struct HomState {
  double t = 0.0;
  std::array<double, 3> metric{1.0, 1.0, 1.0};  // squared coframe coefficients
  double h = 0.0;
  double phi = 0.0;

  double volume(double coord_volume = 1.0) const {
    return std::sqrt(metric[0] * metric[1] * metric[2]) * coord_volume;
  }
};

struct HomDeriv {
  std::array<double, 3> metric{};
  double h = 0.0;
  double phi = 0.0;
};

inline HomDeriv flat_t3_rhs(const HomState& s) {
  require(s.metric[0] > 0 && s.metric[1] > 0 && s.metric[2] > 0,
          "flat_t3_rhs: metric must be positive");
  HomDeriv d;
  const double h2 = s.h * s.h;
  for (int i = 0; i < 3; ++i) d.metric[i] = h2 * s.metric[i];
  d.h = -1.5 * s.h * h2;
  d.phi = h2;
  return d;
}

inline HomState flat_t3_exact(double h0, double a0, double phi0, double t) {
  const double q = 1.0 + 3.0 * h0 * h0 * t;
  HomState s;
  s.t = t;
  s.metric = {a0 * std::cbrt(q), a0 * std::cbrt(q), a0 * std::cbrt(q)};
  s.h = h0 / std::sqrt(q);
  s.phi = phi0 + std::log(q) / 3.0;
  return s;
}

enum class OdeScheme { kRk4, kAdaptive };

struct HomTrajectory {
  std::vector<HomState> states;
  bool aborted = false;
  std::string reason;
};

namespace detail {

inline bool hom_state_valid(const HomState& s) {
  for (double m : s.metric)
    if (!std::isfinite(m) || m <= 0.0) return false;
  return std::isfinite(s.h) && std::isfinite(s.phi);
}

inline HomState hom_axpy(const HomState& s, const HomDeriv& d, double f) {
  HomState r = s;
  for (int i = 0; i < 3; ++i) r.metric[i] += f * d.metric[i];
  r.h += f * d.h;
  r.phi += f * d.phi;
  r.t += f;
  return r;
}

}  // namespace detail

using HomRhs = std::function<HomDeriv(const HomState&)>;

inline HomState rk4_step(const HomRhs& rhs, const HomState& s, double dt) {
  using detail::hom_axpy;
  const HomDeriv k1 = rhs(s);
  const HomDeriv k2 = rhs(hom_axpy(s, k1, 0.5 * dt));
  const HomDeriv k3 = rhs(hom_axpy(s, k2, 0.5 * dt));
  const HomDeriv k4 = rhs(hom_axpy(s, k3, dt));
  HomState r = s;
  for (int i = 0; i < 3; ++i)
    r.metric[i] += dt / 6.0 *
                   (k1.metric[i] + 2.0 * k2.metric[i] + 2.0 * k3.metric[i] +
                    k4.metric[i]);
  r.h += dt / 6.0 * (k1.h + 2.0 * k2.h + 2.0 * k3.h + k4.h);
  r.phi += dt / 6.0 * (k1.phi + 2.0 * k2.phi + 2.0 * k3.phi + k4.phi);
  r.t += dt;
  return r;
}

// Integrates to t_end. rk4 uses the fixed dt; adaptive uses RK4 step doubling
// with local error kept below adaptive_tol per step. Blow-up (NaN/inf or
// non-positive metric) aborts, keeping the last valid state.
inline HomTrajectory integrate_homogeneous(const HomRhs& rhs, HomState s0,
                                           double t_end, double dt,
                                           OdeScheme scheme,
                                           double adaptive_tol = 1e-10) {
  require(dt > 0, "integrate_homogeneous: dt must be positive");
  HomTrajectory traj;
  traj.states.push_back(s0);
  HomState s = s0;
  double step = dt;
  while (s.t < t_end - 1e-15) {
    step = std::min(step, t_end - s.t);
    HomState next;
    if (scheme == OdeScheme::kRk4) {
      next = rk4_step(rhs, s, step);
    } else {
      for (;;) {
        const HomState big = rk4_step(rhs, s, step);
        const HomState half = rk4_step(rhs, rk4_step(rhs, s, 0.5 * step), 0.5 * step);
        double err = std::abs(big.h - half.h) + std::abs(big.phi - half.phi);
        for (int i = 0; i < 3; ++i) err = std::max(err, std::abs(big.metric[i] - half.metric[i]));
        if (!detail::hom_state_valid(big) || !detail::hom_state_valid(half)) {
          step *= 0.5;
          if (step < 1e-14) break;
          continue;
        }
        if (err <= adaptive_tol || step < 1e-12) {
          next = half;
          if (err < 0.1 * adaptive_tol) step = std::min(2.0 * step, dt * 64.0);
          break;
        }
        step *= 0.5;
      }
    }
    if (!detail::hom_state_valid(next)) {
      traj.aborted = true;
      traj.reason = "blow-up detected at t=" + std::to_string(s.t);
      return traj;
    }
    s = next;
    traj.states.push_back(s);
  }
  return traj;
}

// Closed-form entropy record for the flat homogeneous model. The conjugate
// solution from fiber-uniform data is v(s) = 1/Vol(g_s), so with s = t - tau
//   f(s)   = log Vol(g_s) - phi(s) - (3/2) log(4 pi tau)
//   N^phi  = f(s) - 3/2
//   W^phi  = tau R^phi(s) + f(s) - 3,     R^phi(s) = -h(s)^2 / 2
//   Psi    = 2 log((1 + 3 h0^2 t) / (1 + 3 h0^2 (t - tau)))
//   P      = int_0^tau Psi(s)/s ds  (integrand extended by 6 h(t)^2 at s = 0)
inline EntropyRecord flat_t3_entropy_exact(double h0, double phi0, double t,
                                           double tau, double a0 = 1.0,
                                           double coord_volume = 1.0) {
  require(tau > 0 && tau <= t, "flat_t3_entropy_exact: need 0 < tau <= t");
  const double s = t - tau;
  const HomState at_s = flat_t3_exact(h0, a0, phi0, s);
  const HomState at_t = flat_t3_exact(h0, a0, phi0, t);
  const double n = 3.0;
  const double f = std::log(at_s.volume(coord_volume)) - at_s.phi -
                   0.5 * n * std::log(4.0 * kPi * tau);
  const double n_phi = f - 0.5 * n;
  const double r_phi = -0.5 * at_s.h * at_s.h;
  const double w_phi = tau * r_phi + f - n;

  const double u = 3.0 * h0 * h0;
  auto psi_of = [&](double sigma) {
    return 2.0 * (std::log1p(u * t) - std::log1p(u * (t - sigma)));
  };
  const double psi = psi_of(tau);
  const double h_t2 = at_t.h * at_t.h;
  auto integrand = [&](double sigma) {
    return sigma < 1e-300 ? 6.0 * h_t2 : psi_of(sigma) / sigma;
  };
  const double p = adaptive_simpson(integrand, 0.0, tau, 1e-14);
  return make_entropy_record(tau, n_phi, w_phi, psi, p);
}

}  // namespace grf
