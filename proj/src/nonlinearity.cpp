#include "stablelab/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace stablelab {

namespace {

constexpr double kConvexityTol = 1e-12;

double poly_eval(const std::vector<double>& c, double t) {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
  return acc;
}

double poly_eval_deriv(const std::vector<double>& c, double t) {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 1;) acc = acc * t + c[i] * static_cast<double>(i);
  return acc;
}

// Adaptive Simpson on [a,b] with absolute tolerance; g must be smooth.
double adaptive_simpson(const std::function<double(double)>& g, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = g(lm);
  const double frm = g(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson(g, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(g, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& g, double a, double b, double tol) {
  if (a == b) return 0.0;
  const double fa = g(a), fb = g(b), fm = g(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(g, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

Nonlinearity::Nonlinearity(Kind kind, std::vector<double> params)
    : kind_(kind), params_(std::move(params)) {
  validate();
}

Nonlinearity Nonlinearity::exponential(double c, double a) {
  return Nonlinearity(Kind::Exponential, {c, a});
}
Nonlinearity Nonlinearity::power(double c, double p, double b) {
  return Nonlinearity(Kind::Power, {c, p, b});
}
Nonlinearity Nonlinearity::affine(double m, double q) {
  return Nonlinearity(Kind::Affine, {m, q});
}
Nonlinearity Nonlinearity::polynomial(std::vector<double> coefficients) {
  if (coefficients.empty()) coefficients.push_back(0.0);
  return Nonlinearity(Kind::Polynomial, std::move(coefficients));
}
Nonlinearity Nonlinearity::shifted_exponential(double c, double a, double b) {
  return Nonlinearity(Kind::ShiftedExponential, {c, a, b});
}

double Nonlinearity::value(double t) const {
  switch (kind_) {
    case Kind::Exponential:
      return params_[0] * std::exp(params_[1] * t);
    case Kind::Power:
      return params_[0] * std::pow(t, params_[1]) + params_[2];
    case Kind::Affine:
      return params_[0] * t + params_[1];
    case Kind::Polynomial:
      return poly_eval(params_, t);
    case Kind::ShiftedExponential:
      return params_[0] * std::exp(params_[1] * t) + params_[2];
  }
  return 0.0;
}

double Nonlinearity::derivative(double t) const {
  switch (kind_) {
    case Kind::Exponential:
      return params_[0] * params_[1] * std::exp(params_[1] * t);
    case Kind::Power: {
      const double p = params_[1];
      if (p == 0.0) return 0.0;
      return params_[0] * p * std::pow(t, p - 1.0);
    }
    case Kind::Affine:
      return params_[0];
    case Kind::Polynomial:
      return poly_eval_deriv(params_, t);
    case Kind::ShiftedExponential:
      return params_[0] * params_[1] * std::exp(params_[1] * t);
  }
  return 0.0;
}

std::optional<double> Nonlinearity::antiderivative(double t) const {
  switch (kind_) {
    case Kind::Exponential: {
      const double c = params_[0], a = params_[1];
      if (a == 0.0) return c * t;
      return c / a * (std::exp(a * t) - 1.0);
    }
    case Kind::Power: {
      const double c = params_[0], p = params_[1], b = params_[2];
      return c * std::pow(t, p + 1.0) / (p + 1.0) + b * t;
    }
    case Kind::Affine:
      return 0.5 * params_[0] * t * t + params_[1] * t;
    case Kind::Polynomial: {
      double acc = 0.0;
      for (std::size_t i = params_.size(); i-- > 0;)
        acc = acc * t + params_[i] / static_cast<double>(i + 1);
      return acc * t;
    }
    case Kind::ShiftedExponential: {
      const double c = params_[0], a = params_[1], b = params_[2];
      if (a == 0.0) return (c + b) * t;
      return c / a * (std::exp(a * t) - 1.0) + b * t;
    }
  }
  return std::nullopt;
}

void Nonlinearity::validate() const {
  // Sampled convexity check: f'(t1) <= f'(t2) + tol for t1 < t2.
  // Log-spaced grid plus 0 covers both small and moderate scales.
  std::vector<double> ts = {0.0};
  for (int i = 0; i <= 64; ++i) ts.push_back(1e-4 * std::pow(10.0, 6.0 * i / 64.0));
  double prev = -std::numeric_limits<double>::infinity();
  for (double t : ts) {
    const double d = derivative(t);
    if (!std::isfinite(value(t)) || !std::isfinite(d))
      throw std::domain_error("nonlinearity not finite on [0, 1e2]: " + describe());
    if (d + kConvexityTol * (1.0 + std::abs(d)) < prev)
      throw std::domain_error("nonlinearity fails sampled convexity: " + describe());
    prev = std::max(prev, d);
    if (t > 100.0) break;
  }
  if (kind_ == Kind::Power && params_[1] < 1.0 && params_[1] != 0.0)
    throw std::domain_error("power kind requires p >= 1 or p == 0 for convexity on [0,inf)");
}

std::string Nonlinearity::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Exponential:
      os << params_[0] << "*exp(" << params_[1] << " t)";
      break;
    case Kind::Power:
      os << params_[0] << "*t^" << params_[1] << " + " << params_[2];
      break;
    case Kind::Affine:
      os << params_[0] << "*t + " << params_[1];
      break;
    case Kind::Polynomial: {
      os << "poly(";
      for (std::size_t i = 0; i < params_.size(); ++i)
        os << (i ? "," : "") << params_[i];
      os << ")";
      break;
    }
    case Kind::ShiftedExponential:
      os << params_[0] << "*exp(" << params_[1] << " t) + " << params_[2];
      break;
  }
  return os.str();
}

bool Nonlinearity::nonnegative_on(double lo, double hi, int samples) const {
  for (int i = 0; i < samples; ++i) {
    const double t = lo + (hi - lo) * i / (samples - 1);
    if (value(t) < 0.0) return false;
  }
  return true;
}

bool Nonlinearity::nondecreasing_on(double lo, double hi, int samples) const {
  for (int i = 0; i < samples; ++i) {
    const double t = lo + (hi - lo) * i / (samples - 1);
    if (derivative(t) < -1e-14) return false;
  }
  return true;
}

nlohmann::ordered_json Nonlinearity::to_json() const {
  nlohmann::ordered_json j;
  switch (kind_) {
    case Kind::Exponential:
      j["kind"] = "exponential";
      j["c"] = params_[0];
      j["a"] = params_[1];
      break;
    case Kind::Power:
      j["kind"] = "power";
      j["c"] = params_[0];
      j["p"] = params_[1];
      j["b"] = params_[2];
      break;
    case Kind::Affine:
      j["kind"] = "affine";
      j["m"] = params_[0];
      j["q"] = params_[1];
      break;
    case Kind::Polynomial:
      j["kind"] = "polynomial";
      j["coefficients"] = params_;
      break;
    case Kind::ShiftedExponential:
      j["kind"] = "shifted-exponential";
      j["c"] = params_[0];
      j["a"] = params_[1];
      j["b"] = params_[2];
      break;
  }
  return j;
}

Nonlinearity Nonlinearity::from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "exponential")
    return exponential(j.at("c").get<double>(), j.at("a").get<double>());
  if (kind == "power")
    return power(j.at("c").get<double>(), j.at("p").get<double>(),
                 j.value("b", 0.0));
  if (kind == "affine")
    return affine(j.at("m").get<double>(), j.at("q").get<double>());
  if (kind == "polynomial")
    return polynomial(j.at("coefficients").get<std::vector<double>>());
  if (kind == "shifted-exponential")
    return shifted_exponential(j.at("c").get<double>(), j.at("a").get<double>(),
                               j.value("b", 0.0));
  throw std::invalid_argument("unknown nonlinearity kind: " + kind);
}

PositivityIndex positivity_index(const Nonlinearity& f, int cap) {
  for (int m = 1; m <= cap; ++m) {
    if (f.value(m) > 0.0 && f.derivative(m) > 0.0)
      return {PositivityIndex::Status::Found, m};
    // f convex: once f' > 0 the search can only be waiting on f itself,
    // which then grows at least linearly. Bail out of hopeless scans early.
    if (m > 1024 && f.derivative(static_cast<double>(m)) <= 0.0) break;
  }
  // f' nondecreasing, so a nonpositive derivative at the far end means
  // f' <= 0 on the whole scanned range: the globally Lipschitz case.
  const double far = std::max<double>(cap, 1 << 20);
  if (f.derivative(far) <= 0.0)
    return {PositivityIndex::Status::NoTruncationNeeded, 0};
  return {PositivityIndex::Status::UnboundedSearch, 0};
}

double floor_constant(const Nonlinearity& f, int k0) {
  if (k0 < 1) throw std::invalid_argument("floor_constant: k0 must be >= 1");
  const double lo = 0.0, hi = static_cast<double>(k0);
  // Uniform scan to bracket the (unique, by convexity) minimum.
  const int n = 128;
  int best = 0;
  double best_val = f.value(lo);
  for (int i = 1; i <= n; ++i) {
    const double t = lo + (hi - lo) * i / n;
    const double v = f.value(t);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  double a = lo + (hi - lo) * std::max(0, best - 1) / n;
  double b = lo + (hi - lo) * std::min(n, best + 1) / n;
  // Golden-section refinement.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f.value(x1), f2 = f.value(x2);
  while (b - a > 1e-12 * (1.0 + std::abs(a) + std::abs(b))) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f.value(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f.value(x2);
    }
  }
  return std::min({best_val, f.value(0.5 * (a + b)), f.value(lo), f.value(hi)});
}

TruncatedNonlinearity::TruncatedNonlinearity(Nonlinearity base, int k)
    : base_(std::move(base)), k_(k) {
  const PositivityIndex pi = positivity_index(base_);
  if (!pi.found())
    throw std::domain_error(
        "truncate: base nonlinearity has no positivity index (f' <= 0 or search failed)");
  k0_ = pi.value;
  if (k < k0_)
    throw std::domain_error("truncate: level k=" + std::to_string(k) +
                            " below positivity index k0=" + std::to_string(k0_));
  c0_ = floor_constant(base_, k0_);
  fk_ = base_.value(static_cast<double>(k_));
  fpk_ = base_.derivative(static_cast<double>(k_));
}

double TruncatedNonlinearity::value(double t) const {
  if (t <= static_cast<double>(k_)) return base_.value(t);
  return fk_ + fpk_ * (t - static_cast<double>(k_));
}

double TruncatedNonlinearity::derivative(double t) const {
  if (t <= static_cast<double>(k_)) return base_.derivative(t);
  return fpk_;
}

double TruncatedNonlinearity::lipschitz_on(double lo, double hi) const {
  return std::max(std::abs(derivative(lo)), std::abs(derivative(hi)));
}

ContractionMap::ContractionMap(Nonlinearity base, double eps)
    : base_(std::move(base)), eps_(eps), dt_(1.0 / 32.0) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("ContractionMap: eps must lie in (0,1)");
  if (base_.value(0.0) <= 0.0)
    throw std::domain_error("ContractionMap: base must be positive at 0");
  if (!base_.nondecreasing_on(0.0, 64.0))
    throw std::domain_error("ContractionMap: base must be nondecreasing on [0,inf)");
  table_.push_back(0.0);
}

double ContractionMap::h(double t) const {
  if (t < 0.0) throw std::domain_error("ContractionMap::h: t must be >= 0");
  const auto integrand = [this](double s) {
    const double fs = base_.value(s);
    if (fs <= 0.0) throw std::domain_error("ContractionMap: f(s) <= 0 encountered");
    return 1.0 / fs;
  };
  const std::size_t cell = static_cast<std::size_t>(t / dt_);
  while (table_.size() <= cell) {
    const double a = dt_ * static_cast<double>(table_.size() - 1);
    table_.push_back(table_.back() + integrate(integrand, a, a + dt_, 1e-14));
  }
  const double a = dt_ * static_cast<double>(cell);
  return table_[cell] + integrate(integrand, a, t, 1e-13);
}

double ContractionMap::invert(double target, double hint_hi) const {
  if (target <= 0.0) return 0.0;
  double lo = 0.0, hi = std::max(hint_hi, dt_);
  while (h(hi) < target) hi *= 2.0;
  // Bisection bracketing.
  for (int i = 0; i < 60 && (hi - lo) > 1e-13 * (1.0 + hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) < target ? lo : hi) = mid;
  }
  // Newton polish: h'(x) = 1/f(x), monotone smooth.
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 8; ++i) {
    const double hx = h(x);
    const double step = (hx - target) * base_.value(x);
    const double xn = std::clamp(x - step, lo, hi);
    if (std::abs(xn - x) <= 1e-14 * (1.0 + std::abs(x))) return xn;
    x = xn;
  }
  return x;
}

double ContractionMap::value(double t) const {
  if (t < 0.0) throw std::domain_error("ContractionMap: t must be >= 0");
  if (t == 0.0) return 0.0;
  return invert((1.0 - eps_) * h(t), t);
}

double ContractionMap::iterate(int j, double t) const {
  if (j < 0) throw std::invalid_argument("ContractionMap::iterate: j must be >= 0");
  double x = t;
  for (int i = 0; i < j; ++i) x = value(x);
  return x;
}

double ContractionMap::empirical_growth_constant(double t_max, int samples) const {
  double c = 0.0;
  for (int i = 1; i <= samples; ++i) {
    const double t = t_max * i / samples;
    c = std::max(c, eps_ * base_.value(value(t)) / (1.0 + t));
  }
  return c;
}

}  // namespace stablelab
