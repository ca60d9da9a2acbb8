#pragma once

#include <Eigen/Dense>
#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "stablelab/domain.hpp"

namespace stablelab {

enum class MeshKind { Interval1D, Radial1D, Box2D, Disk2D, DumbbellSY };

/// The odd C2 stretching lambda_n: [-2,2] -> R with lambda_n(y) = n y on
/// [0,1], lambda_n(2) = n + rho, increasing and concave on [0,2]. On the cap
/// segment [1,2] it is n + rho*g(y-1) with g'(t) = A/(1+B t^2), A = n/rho and
/// B chosen so that g(1) = 1; this matches value, slope and curvature at the
/// junction (g''(0) = 0).
struct StretchMap {
  int n = 1;
  double rho = 1.0;
  double A = 1.0;
  double B = 0.0;

  static StretchMap make(int n, double rho);
  double g(double t) const;
  double gp(double t) const { return A / (1.0 + B * t * t); }
  double gpp(double t) const {
    const double d = 1.0 + B * t * t;
    return -2.0 * A * B * t / (d * d);
  }
  double lam(double y) const;
  double lamp(double y) const;   // even in y
  double lampp(double y) const;  // odd in y
};

/// Structured mesh with quadrature weights. Node order:
///   Interval1D : x_i = a + i h, i = 0..n (both endpoints are boundary nodes)
///   Radial1D   : ball:   r_i = (i+1/2) h, i = 0..n-1, plus boundary node r = R
///                annulus: r_i = a + i h, i = 0..n (endpoints boundary)
///   Box2D      : (n+1)^2 row-major grid, border nodes are boundary
///   Disk2D     : grid nodes strictly inside the circle (no boundary nodes;
///                Dirichlet data on the curved boundary is implicitly 0,
///                cut distances stored per node for the Shortley-Weller stencil)
///   DumbbellSY : (s, y) nodes of the unstretched gluing region, s offset grid,
///                no boundary nodes (implicit zero boundary)
///
/// Weights include the angular factor for weighted meshes (r^{N-1} dr times
/// the unit-sphere area), so weighted sums approximate integrals over the
/// full N-dimensional domain.
class Mesh {
 public:
  MeshKind kind;
  DomainSpec domain;
  int resolution = 0;

  std::vector<std::array<double, 2>> coords;
  std::vector<bool> boundary;
  std::vector<double> weights;
  std::array<double, 2> h{0.0, 0.0};

  // --- structured 2D layout (Box2D, Disk2D, DumbbellSY) ---
  int nx = 0, ny = 0;                 // grid extents per axis (node counts)
  std::vector<int> grid_to_node;      // nx*ny -> node id or -1
  std::vector<std::array<int, 2>> node_to_grid;

  // --- radial metadata (Radial1D, and the s-axis of DumbbellSY) ---
  int ambient_N = 0;        // dimension of the radial weight r^{N-1}
  double radial_origin = 0. ;  // a for annulus, 0 for ball
  double sphere_area = 0.0;    // |S^{N-1}| factor baked into weights

  // --- Shortley-Weller cut distances (Disk2D): per node, fraction of h to the
  // boundary in -x,+x,-y,+y; 1.0 where the neighbor is a regular node.
  std::vector<std::array<double, 4>> cut;

  // --- dumbbell metadata: per y-column stretching data ---
  std::vector<double> dumbbell_c1;    // (mu_n')^2 at y_j = 1/lambda_n'(y)^2
  std::vector<double> dumbbell_c2;    // mu_n'' at y_j = -lambda''/lambda'^3
  std::vector<double> dumbbell_lamp;  // lambda_n'(y_j) (stretched volume factor)
  std::optional<StretchMap> stretch;

  std::size_t node_count() const { return coords.size(); }
  int dim() const { return (kind == MeshKind::Interval1D || kind == MeshKind::Radial1D) ? 1 : 2; }
  std::size_t interior_count() const { return interior_ids_.size(); }
  const std::vector<std::size_t>& interior_ids() const { return interior_ids_; }
  const std::vector<std::size_t>& boundary_ids() const { return boundary_ids_; }

  /// Grid node id at (i, j), or -1 if absent / outside the domain.
  int at(int i, int j) const {
    if (i < 0 || j < 0 || i >= nx || j >= ny) return -1;
    return grid_to_node[static_cast<std::size_t>(j) * nx + i];
  }

  double total_weight() const;
  /// Stretched y-coordinate lambda_n(y) of a dumbbell node (identity otherwise).
  double stretched_y(std::size_t node) const;

  void finalize();  // fills interior/boundary id lists

 private:
  std::vector<std::size_t> interior_ids_;
  std::vector<std::size_t> boundary_ids_;
};

Mesh build_mesh(const DomainSpec& domain, int resolution);

/// Real values on mesh nodes.
struct Field {
  std::shared_ptr<const Mesh> mesh;
  Eigen::VectorXd values;

  Field() = default;
  Field(std::shared_ptr<const Mesh> m, double fill = 0.0)
      : mesh(std::move(m)),
        values(Eigen::VectorXd::Constant(static_cast<Eigen::Index>(mesh->node_count()), fill)) {}

  double& operator[](std::size_t i) { return values[static_cast<Eigen::Index>(i)]; }
  double operator[](std::size_t i) const { return values[static_cast<Eigen::Index>(i)]; }
  std::size_t size() const { return static_cast<std::size_t>(values.size()); }

  void ensure_finite(const char* what) const;
};

template <typename F>
Field make_field(const std::shared_ptr<const Mesh>& mesh, F&& fn) {
  Field out(mesh);
  for (std::size_t i = 0; i < mesh->node_count(); ++i) {
    const auto& p = mesh->coords[i];
    out[i] = fn(p[0], p[1]);
  }
  return out;
}

struct NormReport {
  double l1 = 0.0;
  double l2 = 0.0;
  double sup = 0.0;
  double h1_semi = 0.0;
  double h1 = 0.0;  // sqrt(l2^2 + h1_semi^2); convention recorded in reports
};

NormReport norms(const Field& u);

/// Interpolate u at point p: linear in 1D, bilinear in 2D. Near curved masked
/// boundaries missing cell corners are reconstructed by linear ghost extension
/// through the boundary crossing, keeping the result second-order accurate.
double interpolate(const Field& u, const std::array<double, 2>& p);

}  // namespace stablelab
