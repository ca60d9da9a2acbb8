#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace stablelab {

/// Convex C1 nonlinearity f on [0, inf) given in closed form.
///
/// Supported kinds: c*e^{a t}, c*t^p + b, m*t + q, polynomials, and
/// c*e^{a t} + b. Each kind supplies f, f', and an exact antiderivative F
/// (F(0) = 0) when available. Convexity is validated at construction by
/// sampling f' on a log-spaced grid.
class Nonlinearity {
 public:
  enum class Kind { Exponential, Power, Affine, Polynomial, ShiftedExponential };

  static Nonlinearity exponential(double c, double a);
  static Nonlinearity power(double c, double p, double b);
  static Nonlinearity affine(double m, double q);
  static Nonlinearity polynomial(std::vector<double> coefficients);
  static Nonlinearity shifted_exponential(double c, double a, double b);

  double value(double t) const;
  double derivative(double t) const;
  /// Antiderivative with F(0)=0; nullopt for kinds without a closed form
  /// (never happens for the supported kinds, kept for interface stability).
  std::optional<double> antiderivative(double t) const;

  double operator()(double t) const { return value(t); }

  Kind kind() const { return kind_; }
  std::string describe() const;

  /// True if f(t) >= 0 for sampled t in [lo, hi].
  bool nonnegative_on(double lo, double hi, int samples = 257) const;
  /// True if f' >= -tol for sampled t in [lo, hi].
  bool nondecreasing_on(double lo, double hi, int samples = 257) const;

  nlohmann::ordered_json to_json() const;
  static Nonlinearity from_json(const nlohmann::json& j);

 private:
  Nonlinearity(Kind kind, std::vector<double> params);
  void validate() const;

  Kind kind_;
  // Parameter layout by kind:
  //   Exponential: {c, a}; Power: {c, p, b}; Affine: {m, q};
  //   Polynomial: coefficients (ascending); ShiftedExponential: {c, a, b}.
  std::vector<double> params_;
};

/// Result of the positivity-index search: either the smallest integer m >= 1
/// with f(m) > 0 and f'(m) > 0, or a sentinel.
struct PositivityIndex {
  enum class Status { Found, NoTruncationNeeded, UnboundedSearch };
  Status status = Status::Found;
  int value = 0;  // meaningful only when status == Found

  bool found() const { return status == Status::Found; }
};

PositivityIndex positivity_index(const Nonlinearity& f, int cap = 100000);

/// min of f over [0, k0] by golden-section refinement of a uniform scan.
double floor_constant(const Nonlinearity& f, int k0);

/// Affine truncation of a convex nonlinearity: f on [0,k], its tangent line
/// beyond k. Globally Lipschitz with constant max(|f'(0)|, f'(k)), C1 at k,
/// and bounded below by the floor constant of the base.
class TruncatedNonlinearity {
 public:
  TruncatedNonlinearity(Nonlinearity base, int k);

  double value(double t) const;
  double derivative(double t) const;
  double operator()(double t) const { return value(t); }

  int level() const { return k_; }
  int positivity_level() const { return k0_; }
  double floor() const { return c0_; }
  const Nonlinearity& base() const { return base_; }

  /// Lipschitz constant on [lo, hi] (f convex: max of |f'| at the endpoints).
  double lipschitz_on(double lo, double hi) const;

 private:
  Nonlinearity base_;
  int k_;
  int k0_;
  double c0_;
  double fk_, fpk_;  // cached f(k), f'(k)
};

/// The reparametrization Phi_eps defined by
///   int_0^{Phi_eps(t)} ds/f(s) = (1-eps) int_0^t ds/f(s),
/// for f positive and nondecreasing on [0, inf). Evaluation runs adaptive
/// Simpson quadrature of 1/f over a cached cumulative table and inverts the
/// strictly increasing h by bisection bracketing plus Newton polish.
class ContractionMap {
 public:
  ContractionMap(Nonlinearity base, double eps);

  /// h(t) = int_0^t ds/f(s). Throws std::domain_error if f <= 0 is detected.
  double h(double t) const;
  /// Phi_eps(t) = h^{-1}((1-eps) h(t)), relative accuracy ~1e-10.
  double value(double t) const;
  double operator()(double t) const { return value(t); }
  /// j-fold composition; j = 0 is the identity.
  double iterate(int j, double t) const;

  double epsilon() const { return eps_; }
  const Nonlinearity& base() const { return base_; }

  /// Empirical constant C with f(Phi_eps(t)) <= (C/eps)(1+t) on [0, t_max],
  /// recorded per nonlinearity (the analytic constant is not explicit).
  double empirical_growth_constant(double t_max, int samples = 256) const;

 private:
  double invert(double target, double hint_hi) const;

  Nonlinearity base_;
  double eps_;
  mutable std::vector<double> table_;  // cumulative h at multiples of dt_
  double dt_;
};

}  // namespace stablelab
