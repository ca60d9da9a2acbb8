#include "stablelab/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace stablelab {

namespace {

using Triplet = Eigen::Triplet<double>;

double poly_cell(int p, double a, double b) {
  return (std::pow(b, p + 1) - std::pow(a, p + 1)) / (p + 1);
}

// integral of (alpha + beta r) r^{N-1} over [a, b]
double linear_moment(double alpha, double beta, int N, double a, double b) {
  return alpha * poly_cell(N - 1, a, b) + beta * poly_cell(N, a, b);
}

void add_entry(std::vector<Triplet>& K, std::vector<Triplet>& K_bd,
               const std::vector<int>& int_idx, const std::vector<int>& bd_idx, int row_node,
               int col_node, double value) {
  const int r = int_idx[row_node];
  if (r < 0) return;
  const int c = int_idx[col_node];
  if (c >= 0)
    K.emplace_back(r, c, value);
  else
    K_bd.emplace_back(r, bd_idx[col_node], value);
}

}  // namespace

Eigen::VectorXd DiscreteOperator::restrict_interior(const Field& u) const {
  Eigen::VectorXd out(n_interior());
  const auto& ids = mesh->interior_ids();
  for (std::size_t k = 0; k < ids.size(); ++k) out[static_cast<Eigen::Index>(k)] = u[ids[k]];
  return out;
}

Eigen::VectorXd DiscreteOperator::restrict_boundary(const Field& u) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(mesh->boundary_ids().size()));
  const auto& ids = mesh->boundary_ids();
  for (std::size_t k = 0; k < ids.size(); ++k) out[static_cast<Eigen::Index>(k)] = u[ids[k]];
  return out;
}

Field DiscreteOperator::expand(const Eigen::VectorXd& interior, const Field& bd) const {
  Field out(mesh);
  const auto& ids = mesh->interior_ids();
  for (std::size_t k = 0; k < ids.size(); ++k) out[ids[k]] = interior[static_cast<Eigen::Index>(k)];
  for (std::size_t id : mesh->boundary_ids()) out[id] = bd[id];
  return out;
}

Field DiscreteOperator::apply(const Field& u) const {
  const Eigen::VectorXd ui = restrict_interior(u);
  const Eigen::VectorXd ub = restrict_boundary(u);
  Eigen::VectorXd w = K * ui;
  if (ub.size() > 0) w += K_bd * ub;
  Field out(mesh);
  const auto& ids = mesh->interior_ids();
  for (std::size_t k = 0; k < ids.size(); ++k)
    out[ids[k]] = w[static_cast<Eigen::Index>(k)] / mass[static_cast<Eigen::Index>(k)];
  return out;
}

double DiscreteOperator::gershgorin_lower(const Eigen::VectorXd& pw) const {
  double lower = std::numeric_limits<double>::infinity();
  for (int r = 0; r < K.outerSize(); ++r) {
    double diag = 0.0, off = 0.0;
    for (Eigen::SparseMatrix<double>::InnerIterator it(K, r); it; ++it) {
      if (it.row() == r)
        diag = it.value();
      else
        off += std::abs(it.value());
    }
    const double m = mass[r];
    lower = std::min(lower, (diag - pw[r] - off) / m);
  }
  return lower;
}

namespace {

// 1D (interval / radial) conforming stiffness with exactly integrated faces.
void assemble_1d(const Mesh& mesh, DiscreteOperator& op, std::vector<Triplet>& K,
                 std::vector<Triplet>& K_bd) {
  const int N = mesh.ambient_N;
  const double area = mesh.sphere_area;
  const std::size_t n = mesh.node_count();
  for (std::size_t e = 0; e + 1 < n; ++e) {
    const double a = mesh.coords[e][0], b = mesh.coords[e + 1][0];
    const double hе = b - a;
    const double k = area * poly_cell(N - 1, a, b) / (hе * hе);
    const int lo = static_cast<int>(e), hi = static_cast<int>(e + 1);
    add_entry(K, K_bd, op.interior_index, op.boundary_index, lo, lo, k);
    add_entry(K, K_bd, op.interior_index, op.boundary_index, lo, hi, -k);
    add_entry(K, K_bd, op.interior_index, op.boundary_index, hi, hi, k);
    add_entry(K, K_bd, op.interior_index, op.boundary_index, hi, lo, -k);
  }
}

void assemble_box(const Mesh& mesh, DiscreteOperator& op, std::vector<Triplet>& K,
                  std::vector<Triplet>& K_bd) {
  const double hx = mesh.h[0], hy = mesh.h[1];
  for (std::size_t id : mesh.interior_ids()) {
    const auto [i, j] = mesh.node_to_grid[id];
    const int node = static_cast<int>(id);
    const double w = mesh.weights[id];  // hx*hy at interior nodes
    const double cx = w / (hx * hx), cy = w / (hy * hy);
    add_entry(K, K_bd, op.interior_index, op.boundary_index, node, node, 2.0 * cx + 2.0 * cy);
    add_entry(K, K_bd, op.interior_index, op.boundary_index, node, mesh.at(i - 1, j), -cx);
    add_entry(K, K_bd, op.interior_index, op.boundary_index, node, mesh.at(i + 1, j), -cx);
    add_entry(K, K_bd, op.interior_index, op.boundary_index, node, mesh.at(i, j - 1), -cy);
    add_entry(K, K_bd, op.interior_index, op.boundary_index, node, mesh.at(i, j + 1), -cy);
  }
}

// Shortley-Weller 5-point stencil on the masked disk; cut neighbors carry the
// implicit zero Dirichlet value, so they only contribute to the diagonal.
void assemble_disk(const Mesh& mesh, DiscreteOperator& op, std::vector<Triplet>& K,
                   std::vector<Triplet>& K_bd) {
  const double h = mesh.h[0];
  for (std::size_t id = 0; id < mesh.node_count(); ++id) {
    const auto [i, j] = mesh.node_to_grid[id];
    const int node = static_cast<int>(id);
    const double w = mesh.weights[id];
    const auto& cut = mesh.cut[id];
    for (int axis = 0; axis < 2; ++axis) {
      const double tm = cut[axis * 2 + 0];
      const double tp = cut[axis * 2 + 1];
      const double cm = 2.0 / (tm * (tm + tp) * h * h);
      const double cp = 2.0 / (tp * (tm + tp) * h * h);
      add_entry(K, K_bd, op.interior_index, op.boundary_index, node, node, w * (cm + cp));
      const int di = (axis == 0) ? 1 : 0;
      const int dj = (axis == 0) ? 0 : 1;
      const int nm = mesh.at(i - di, j - dj);
      const int np = mesh.at(i + di, j + dj);
      if (nm >= 0) add_entry(K, K_bd, op.interior_index, op.boundary_index, node, nm, -w * cm);
      if (np >= 0) add_entry(K, K_bd, op.interior_index, op.boundary_index, node, np, -w * cp);
    }
  }
}

// Stretched-cylinder operator -(Dx + c1 dyy + c2 dy) on the (s,y) mesh.
// The s part is the conforming radial stiffness in R^{N-1}; the y part uses
// standard second and centered first differences with per-column
// coefficients. Masked neighbors are the implicit zero boundary.
void assemble_dumbbell(const Mesh& mesh, DiscreteOperator& op, std::vector<Triplet>& K,
                       std::vector<Triplet>& K_bd) {
  const int M = mesh.ambient_N;
  const double area = mesh.sphere_area;
  const double hs = mesh.h[0], hy = mesh.h[1];
  for (std::size_t id = 0; id < mesh.node_count(); ++id) {
    const auto [i, j] = mesh.node_to_grid[id];
    const int node = static_cast<int>(id);
    const double w = mesh.weights[id];
    const double ms = w / hy;  // radial cell measure (area * poly_cell)
    // s-direction faces at i*hs and (i+1)*hs; outer neighbor may be the
    // lateral boundary s=1 or the cap mask, both implicit zero.
    if (i > 0) {
      const double kf = area * poly_cell(M - 1, (i - 0.5) * hs, (i + 0.5) * hs) / (hs * hs);
      const double c = kf / ms * w;
      add_entry(K, K_bd, op.interior_index, op.boundary_index, node, node, c);
      const int nb = mesh.at(i - 1, j);
      if (nb >= 0) add_entry(K, K_bd, op.interior_index, op.boundary_index, node, nb, -c);
    }
    {
      const double kf = area * poly_cell(M - 1, (i + 0.5) * hs, (i + 1.5) * hs) / (hs * hs);
      const double c = kf / ms * w;
      add_entry(K, K_bd, op.interior_index, op.boundary_index, node, node, c);
      const int nb = mesh.at(i + 1, j);
      if (nb >= 0) add_entry(K, K_bd, op.interior_index, op.boundary_index, node, nb, -c);
    }
    // y-direction
    const double c1 = mesh.dumbbell_c1[j];
    const double c2 = mesh.dumbbell_c2[j];
    add_entry(K, K_bd, op.interior_index, op.boundary_index, node, node, w * 2.0 * c1 / (hy * hy));
    for (int sgn = -1; sgn <= 1; sgn += 2) {
      const double coef = -c1 / (hy * hy) - sgn * c2 / (2.0 * hy);
      const int nb = mesh.at(i, j + sgn);
      if (nb >= 0) add_entry(K, K_bd, op.interior_index, op.boundary_index, node, nb, w * coef);
    }
  }
}

}  // namespace

DiscreteOperator assemble(const std::shared_ptr<const Mesh>& mesh) {
  DiscreteOperator op;
  op.mesh = mesh;
  const std::size_t n = mesh->node_count();
  op.interior_index.assign(n, -1);
  op.boundary_index.assign(n, -1);
  const auto& ints = mesh->interior_ids();
  const auto& bds = mesh->boundary_ids();
  for (std::size_t k = 0; k < ints.size(); ++k) op.interior_index[ints[k]] = static_cast<int>(k);
  for (std::size_t k = 0; k < bds.size(); ++k) op.boundary_index[bds[k]] = static_cast<int>(k);
  op.mass.resize(static_cast<Eigen::Index>(ints.size()));
  for (std::size_t k = 0; k < ints.size(); ++k)
    op.mass[static_cast<Eigen::Index>(k)] = mesh->weights[ints[k]];

  std::vector<Triplet> tk, tb;
  switch (mesh->kind) {
    case MeshKind::Interval1D:
    case MeshKind::Radial1D:
      assemble_1d(*mesh, op, tk, tb);
      op.symmetric = true;
      break;
    case MeshKind::Box2D:
      assemble_box(*mesh, op, tk, tb);
      op.symmetric = true;
      break;
    case MeshKind::Disk2D:
      assemble_disk(*mesh, op, tk, tb);
      op.symmetric = false;
      break;
    case MeshKind::DumbbellSY:
      assemble_dumbbell(*mesh, op, tk, tb);
      op.symmetric = false;
      break;
  }
  op.K.resize(static_cast<Eigen::Index>(ints.size()), static_cast<Eigen::Index>(ints.size()));
  op.K.setFromTriplets(tk.begin(), tk.end());
  op.K_bd.resize(static_cast<Eigen::Index>(ints.size()), static_cast<Eigen::Index>(bds.size()));
  op.K_bd.setFromTriplets(tb.begin(), tb.end());
  op.K.makeCompressed();
  op.K_bd.makeCompressed();
  return op;
}

Eigen::VectorXd potential_diagonal(const DiscreteOperator& op, const Field& V) {
  const Mesh& mesh = *op.mesh;
  V.ensure_finite("potential_diagonal");
  const auto& ints = mesh.interior_ids();
  Eigen::VectorXd p(static_cast<Eigen::Index>(ints.size()));
  if (mesh.dim() == 2) {
    for (std::size_t k = 0; k < ints.size(); ++k)
      p[static_cast<Eigen::Index>(k)] = V[ints[k]] * mesh.weights[ints[k]];
    return p;
  }
  const int N = mesh.ambient_N;
  const double area = mesh.sphere_area;
  const std::size_t n = mesh.node_count();
  const bool ball = (mesh.kind == MeshKind::Radial1D && mesh.radial_origin == 0.0);
  for (std::size_t k = 0; k < ints.size(); ++k) {
    const std::size_t id = ints[k];
    const double xc = mesh.coords[id][0];
    double acc = 0.0;
    // left piece of the dual cell
    if (id == 0) {
      if (ball) {
        // flat extension of the conforming space below the first node
        acc += V[0] * area * poly_cell(N - 1, 0.0, xc);
      }
      // interval/annulus first node is boundary, never interior
    } else {
      const double xm = mesh.coords[id - 1][0];
      const double fa = 0.5 * (xm + xc);
      const double beta = (V[id] - V[id - 1]) / (xc - xm);
      const double alpha = V[id] - beta * xc;
      acc += area * linear_moment(alpha, beta, N, fa, xc);
    }
    // right piece
    if (id + 1 < n) {
      const double xp = mesh.coords[id + 1][0];
      const double fb = 0.5 * (xc + xp);
      const double beta = (V[id + 1] - V[id]) / (xp - xc);
      const double alpha = V[id] - beta * xc;
      acc += area * linear_moment(alpha, beta, N, xc, fb);
    }
    p[static_cast<Eigen::Index>(k)] = acc;
  }
  return p;
}

}  // namespace stablelab
