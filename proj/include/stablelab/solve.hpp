#pragma once

#include <functional>
#include <optional>
#include <string>

#include "stablelab/nonlinearity.hpp"
#include "stablelab/operators.hpp"

namespace stablelab {

/// A C1 scalar function handed to the solvers (value and derivative).
struct C1Function {
  std::function<double(double)> f;
  std::function<double(double)> df;

  static C1Function from(const Nonlinearity& g) {
    return {[g](double t) { return g.value(t); }, [g](double t) { return g.derivative(t); }};
  }
  static C1Function from(const TruncatedNonlinearity& g) {
    return {[g](double t) { return g.value(t); }, [g](double t) { return g.derivative(t); }};
  }
  static C1Function constant(double c) {
    return {[c](double) { return c; }, [](double) { return 0.0; }};
  }
  static C1Function scaled(const C1Function& g, double factor) {
    auto f0 = g.f;
    auto df0 = g.df;
    return {[f0, factor](double t) { return factor * f0(t); },
            [df0, factor](double t) { return factor * df0(t); }};
  }
};

struct SolveReport {
  int iterations = 0;
  double residual_sup = 0.0;
  bool converged = false;
  double wall_time_s = 0.0;
  bool blow_up_suspected = false;
  // diagnostics
  double worst_monotonicity_violation = 0.0;  // monotone iteration trace
  double sub_violation = 0.0;                 // advisory sub/supersolution checks
  double sup_violation = 0.0;
  std::string note;

  nlohmann::ordered_json to_json() const;      // deterministic part
  nlohmann::ordered_json timing_json() const;  // wall time, separate block
};

/// Solve (-Delta) u = rhs with Dirichlet values from `boundary`.
/// Conjugate gradient (relative residual 1e-12) on symmetric operators,
/// sparse LU otherwise. Throws SolverFailure on non-convergence.
Field solve_linear(const DiscreteOperator& op, const Field& rhs, const Field& boundary,
                   SolveReport* report = nullptr);

struct SolverFailure : std::runtime_error {
  double residual;
  explicit SolverFailure(const std::string& what, double res)
      : std::runtime_error(what), residual(res) {}
};

struct MonotoneOptions {
  double increment_tol = 1e-10;   // stop when sup increment <= tol*(1+|v|_sup)
  double monotonicity_tol = 1e-8; // error beyond this (scaled)
  long max_iterations = 500000;
  bool from_supersolution = false;  // start the decreasing iteration at sup
};

/// Monotone sub/supersolution iteration for -Delta v = f(v), Dirichlet data
/// from `boundary`. Iterates (-Delta + M) v_{j+1} = f(v_j) + M v_j with the
/// nodewise shift M_i = max(|f'(sub_i)|, |f'(sup_i)|) (the Lipschitz constant
/// of f on [sub_i, sup_i]; f convex), starting from the subsolution, and
/// returns the minimal solution with sub <= v_j <= v_{j+1} <= sup nodewise.
std::pair<Field, SolveReport> monotone_iteration(const C1Function& f, const DiscreteOperator& op,
                                                 const Field& sub, const Field& sup,
                                                 const Field& boundary,
                                                 const MonotoneOptions& opts = {});

struct NewtonOptions {
  double residual_tol = 1e-10;  // scaled by (1 + |f(u)|_sup)
  int max_iterations = 60;
  double blow_up_cap = 1e6;  // sup-norm cap; beyond it "blow-up suspected"
};

/// Damped Newton on the residual -Delta u - f(u) with Dirichlet data.
std::pair<Field, SolveReport> newton_solve(const C1Function& f, const DiscreteOperator& op,
                                           const Field& boundary, const Field& initial,
                                           const NewtonOptions& opts = {});

/// sup over interior nodes of |(-Delta_h u) - f(u)|.
double residual(const C1Function& f, const DiscreteOperator& op, const Field& u);

}  // namespace stablelab
