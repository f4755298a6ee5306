#pragma once

#include <cmath>
#include <limits>
#include <string>

namespace grf {

// Per-tau entropy values. The generalized entropies are derived fields and
// always satisfy n_h = n_phi - p/3 and w_h = w_phi - (psi + p)/3 exactly as
// computed; use make_entropy_record to enforce that.
struct EntropyRecord {
  double tau = 0.0;
  double n_phi = 0.0;
  double w_phi = 0.0;
  double psi = 0.0;
  double p = 0.0;
  double n_h = 0.0;
  double w_h = 0.0;
  // residuals of d/dtau(tau N) = W, filled by derivative checks when available
  double dtn_phi_res = std::numeric_limits<double>::quiet_NaN();
  double dtn_h_res = std::numeric_limits<double>::quiet_NaN();
};

inline EntropyRecord make_entropy_record(double tau, double n_phi, double w_phi,
                                         double psi, double p) {
  EntropyRecord r;
  r.tau = tau;
  r.n_phi = n_phi;
  r.w_phi = w_phi;
  r.psi = psi;
  r.p = p;
  r.n_h = n_phi - p / 3.0;
  r.w_h = w_phi - (psi + p) / 3.0;
  return r;
}

enum class Verdict { kPass, kFail, kNotApplicable };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    default: return "not-applicable";
  }
}

// One named inequality/identity verification result.
struct CheckReport {
  std::string name;             // registry key
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;          // >= -tolerance means pass
  double tolerance = 0.0;
  Verdict verdict = Verdict::kPass;
  std::string context;          // run id, tau/t window, measured hypotheses
};

inline CheckReport make_check(std::string name, double lhs, double rhs,
                              double margin, double tol, std::string context) {
  CheckReport c;
  c.name = std::move(name);
  c.lhs = lhs;
  c.rhs = rhs;
  c.margin = margin;
  c.tolerance = tol;
  c.verdict = std::isfinite(margin) && margin >= -tol ? Verdict::kPass
                                                      : Verdict::kFail;
  c.context = std::move(context);
  return c;
}

inline CheckReport make_not_applicable(std::string name, std::string context) {
  CheckReport c;
  c.name = std::move(name);
  c.verdict = Verdict::kNotApplicable;
  c.context = std::move(context);
  return c;
}

}  // namespace grf
