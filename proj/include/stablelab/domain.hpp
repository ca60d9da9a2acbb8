#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"

namespace stablelab {

/// Affine isometry x -> Q (x - c) + c of the plane (or line, dim = 1).
struct Isometry {
  std::array<std::array<double, 2>, 2> Q{{{1.0, 0.0}, {0.0, 1.0}}};
  std::array<double, 2> center{0.0, 0.0};
  int dim = 2;
  std::string name;

  std::array<double, 2> apply(const std::array<double, 2>& x) const {
    const double u = x[0] - center[0];
    const double v = x[1] - center[1];
    return {Q[0][0] * u + Q[0][1] * v + center[0],
            Q[1][0] * u + Q[1][1] * v + center[1]};
  }

  Isometry inverse() const {
    Isometry inv = *this;
    inv.Q[0][0] = Q[0][0];
    inv.Q[0][1] = Q[1][0];
    inv.Q[1][0] = Q[0][1];
    inv.Q[1][1] = Q[1][1];
    inv.name = name + "^-1";
    return inv;
  }

  static Isometry rotation(double angle, std::array<double, 2> center, std::string name);
  static Isometry reflection(double axis_angle, std::array<double, 2> center, std::string name);
  static Isometry line_flip(double a, double b);  // x -> a + b - x on an interval
};

/// Symbolic domain description. Radial domains carry the ambient dimension N;
/// the dumbbell carries the stretch factor n and cap-layer width rho_n of the
/// stretched family it represents.
class DomainSpec {
 public:
  enum class Variant { Interval, Ball, Annulus, Box2D, Disk2D, Dumbbell };

  static DomainSpec interval(double a, double b);
  static DomainSpec ball(int N, double R);
  static DomainSpec annulus(int N, double a, double b);
  static DomainSpec box2d(double Lx, double Ly);
  static DomainSpec disk2d(double R);
  /// Cylinder B'x(-1,1) in R^N glued to two unit half-balls, stretched by
  /// lambda_n with lambda_n(y) = n y on [0,1] and lambda_n(2) = n + rho_n.
  /// Requires N >= 4 (the cylindrical reduction needs N-1 >= 3) and rho_n > 0.
  static DomainSpec dumbbell(int N, int stretch, double rho_n);

  Variant variant() const { return variant_; }
  int dimension() const { return N_; }
  double param(int i) const { return params_.at(i); }
  int stretch() const { return stretch_; }

  /// Isometries under which the domain is invariant (finite generating list;
  /// for the disk, the 8 rotations by multiples of pi/4 plus axis reflections).
  std::vector<Isometry> symmetries() const;

  /// True if p lies in the closed domain (2D variants; used to validate
  /// isometries and clamp interpolation).
  bool contains(const std::array<double, 2>& p, double tol = 1e-12) const;

  std::string describe() const;
  nlohmann::ordered_json to_json() const;
  static DomainSpec from_json(const nlohmann::json& j);

 private:
  DomainSpec(Variant v, int N, std::vector<double> params, int stretch = 0)
      : variant_(v), N_(N), params_(std::move(params)), stretch_(stretch) {}

  Variant variant_;
  int N_;
  std::vector<double> params_;
  int stretch_;
};

}  // namespace stablelab
