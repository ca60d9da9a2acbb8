#include "stablelab/domain.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace stablelab {

Isometry Isometry::rotation(double angle, std::array<double, 2> center, std::string name) {
  Isometry iso;
  const double c = std::cos(angle), s = std::sin(angle);
  iso.Q = {{{c, -s}, {s, c}}};
  iso.center = center;
  iso.name = std::move(name);
  return iso;
}

Isometry Isometry::reflection(double axis_angle, std::array<double, 2> center, std::string name) {
  Isometry iso;
  const double c = std::cos(2.0 * axis_angle), s = std::sin(2.0 * axis_angle);
  iso.Q = {{{c, s}, {s, -c}}};
  iso.center = center;
  iso.name = std::move(name);
  return iso;
}

Isometry Isometry::line_flip(double a, double b) {
  Isometry iso;
  iso.dim = 1;
  iso.Q = {{{-1.0, 0.0}, {0.0, 1.0}}};
  iso.center = {0.5 * (a + b), 0.0};
  iso.name = "flip";
  return iso;
}

DomainSpec DomainSpec::interval(double a, double b) {
  if (!(a < b)) throw std::invalid_argument("interval: requires a < b");
  return DomainSpec(Variant::Interval, 1, {a, b});
}

DomainSpec DomainSpec::ball(int N, double R) {
  if (N < 1) throw std::invalid_argument("ball: requires N >= 1");
  if (!(R > 0.0)) throw std::invalid_argument("ball: requires R > 0");
  return DomainSpec(Variant::Ball, N, {R});
}

DomainSpec DomainSpec::annulus(int N, double a, double b) {
  if (N < 1) throw std::invalid_argument("annulus: requires N >= 1");
  if (!(0.0 < a && a < b)) throw std::invalid_argument("annulus: requires 0 < a < b");
  return DomainSpec(Variant::Annulus, N, {a, b});
}

DomainSpec DomainSpec::box2d(double Lx, double Ly) {
  if (!(Lx > 0.0 && Ly > 0.0)) throw std::invalid_argument("box2d: requires Lx, Ly > 0");
  return DomainSpec(Variant::Box2D, 2, {Lx, Ly});
}

DomainSpec DomainSpec::disk2d(double R) {
  if (!(R > 0.0)) throw std::invalid_argument("disk2d: requires R > 0");
  return DomainSpec(Variant::Disk2D, 2, {R});
}

DomainSpec DomainSpec::dumbbell(int N, int stretch, double rho_n) {
  if (N < 4)
    throw std::invalid_argument("dumbbell: requires N >= 4 (cylindrical reduction needs N-1 >= 3)");
  if (stretch < 1) throw std::invalid_argument("dumbbell: stretch factor must be >= 1");
  if (!(rho_n > 0.0)) throw std::invalid_argument("dumbbell: rho_n must be positive");
  return DomainSpec(Variant::Dumbbell, N, {rho_n}, stretch);
}

std::vector<Isometry> DomainSpec::symmetries() const {
  std::vector<Isometry> out;
  switch (variant_) {
    case Variant::Interval: {
      out.push_back(Isometry::line_flip(params_[0], params_[1]));
      break;
    }
    case Variant::Ball:
    case Variant::Annulus:
      // Rotations act trivially on the radial reduction; nothing nontrivial
      // is expressible on the 1D mesh.
      break;
    case Variant::Box2D: {
      const double Lx = params_[0], Ly = params_[1];
      const std::array<double, 2> c = {0.5 * Lx, 0.5 * Ly};
      const double pi = std::acos(-1.0);
      if (Lx == Ly) {
        for (int k = 0; k < 4; ++k)
          out.push_back(Isometry::rotation(0.5 * pi * k, c, "rot" + std::to_string(90 * k)));
        out.push_back(Isometry::reflection(0.0, c, "reflect-x"));
        out.push_back(Isometry::reflection(0.5 * pi, c, "reflect-y"));
        out.push_back(Isometry::reflection(0.25 * pi, c, "reflect-diag"));
        out.push_back(Isometry::reflection(-0.25 * pi, c, "reflect-antidiag"));
      } else {
        out.push_back(Isometry::rotation(0.0, c, "id"));
        out.push_back(Isometry::rotation(pi, c, "rot180"));
        out.push_back(Isometry::reflection(0.0, c, "reflect-x"));
        out.push_back(Isometry::reflection(0.5 * pi, c, "reflect-y"));
      }
      break;
    }
    case Variant::Disk2D: {
      const double pi = std::acos(-1.0);
      for (int k = 0; k < 8; ++k)
        out.push_back(Isometry::rotation(0.25 * pi * k, {0.0, 0.0},
                                         "rot" + std::to_string(45 * k)));
      out.push_back(Isometry::reflection(0.0, {0.0, 0.0}, "reflect-x"));
      out.push_back(Isometry::reflection(0.5 * pi, {0.0, 0.0}, "reflect-y"));
      break;
    }
    case Variant::Dumbbell: {
      // (s, y) reduction: the y-flip; rotations in x are already quotiented out.
      Isometry flip;
      flip.Q = {{{1.0, 0.0}, {0.0, -1.0}}};
      flip.center = {0.0, 0.0};
      flip.name = "y-flip";
      out.push_back(flip);
      break;
    }
  }
  return out;
}

bool DomainSpec::contains(const std::array<double, 2>& p, double tol) const {
  switch (variant_) {
    case Variant::Interval:
      return p[0] >= params_[0] - tol && p[0] <= params_[1] + tol;
    case Variant::Ball:
      return p[0] >= -tol && p[0] <= params_[0] + tol;
    case Variant::Annulus:
      return p[0] >= params_[0] - tol && p[0] <= params_[1] + tol;
    case Variant::Box2D:
      return p[0] >= -tol && p[0] <= params_[0] + tol && p[1] >= -tol && p[1] <= params_[1] + tol;
    case Variant::Disk2D:
      return p[0] * p[0] + p[1] * p[1] <= params_[0] * params_[0] + tol;
    case Variant::Dumbbell: {
      const double s = p[0], ay = std::abs(p[1]);
      if (s < -tol) return false;
      if (ay <= 1.0) return s <= 1.0 + tol;
      if (ay <= 2.0 + tol) return s * s + (ay - 1.0) * (ay - 1.0) <= 1.0 + tol;
      return false;
    }
  }
  return false;
}

std::string DomainSpec::describe() const {
  std::ostringstream os;
  switch (variant_) {
    case Variant::Interval:
      os << "interval(" << params_[0] << "," << params_[1] << ")";
      break;
    case Variant::Ball:
      os << "ball(N=" << N_ << ",R=" << params_[0] << ")";
      break;
    case Variant::Annulus:
      os << "annulus(N=" << N_ << "," << params_[0] << "," << params_[1] << ")";
      break;
    case Variant::Box2D:
      os << "box2d(" << params_[0] << "," << params_[1] << ")";
      break;
    case Variant::Disk2D:
      os << "disk2d(R=" << params_[0] << ")";
      break;
    case Variant::Dumbbell:
      os << "dumbbell(N=" << N_ << ",n=" << stretch_ << ",rho=" << params_[0] << ")";
      break;
  }
  return os.str();
}

nlohmann::ordered_json DomainSpec::to_json() const {
  nlohmann::ordered_json j;
  switch (variant_) {
    case Variant::Interval:
      j["variant"] = "interval";
      j["a"] = params_[0];
      j["b"] = params_[1];
      break;
    case Variant::Ball:
      j["variant"] = "ball";
      j["N"] = N_;
      j["R"] = params_[0];
      break;
    case Variant::Annulus:
      j["variant"] = "annulus";
      j["N"] = N_;
      j["a"] = params_[0];
      j["b"] = params_[1];
      break;
    case Variant::Box2D:
      j["variant"] = "box2d";
      j["Lx"] = params_[0];
      j["Ly"] = params_[1];
      break;
    case Variant::Disk2D:
      j["variant"] = "disk2d";
      j["R"] = params_[0];
      break;
    case Variant::Dumbbell:
      j["variant"] = "dumbbell";
      j["N"] = N_;
      j["n"] = stretch_;
      j["rho"] = params_[0];
      break;
  }
  return j;
}

DomainSpec DomainSpec::from_json(const nlohmann::json& j) {
  const std::string v = j.at("variant").get<std::string>();
  if (v == "interval") return interval(j.value("a", 0.0), j.value("b", 1.0));
  if (v == "ball") return ball(j.at("N").get<int>(), j.value("R", 1.0));
  if (v == "annulus")
    return annulus(j.at("N").get<int>(), j.at("a").get<double>(), j.at("b").get<double>());
  if (v == "box2d") return box2d(j.value("Lx", 1.0), j.value("Ly", 1.0));
  if (v == "disk2d") return disk2d(j.value("R", 1.0));
  if (v == "dumbbell")
    return dumbbell(j.at("N").get<int>(), j.at("n").get<int>(), j.at("rho").get<double>());
  throw std::invalid_argument("unknown domain variant: " + v);
}

}  // namespace stablelab
