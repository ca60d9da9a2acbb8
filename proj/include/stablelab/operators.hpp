#pragma once

#include <Eigen/Sparse>
#include <memory>

#include "stablelab/mesh.hpp"

namespace stablelab {

/// Discrete -Delta (or the stretched dumbbell operator) in weighted form.
///
/// K holds the mass-weighted stencil on interior nodes: for meshes with a
/// measure weight (interval, radial, box) K is the exactly integrated
/// conforming P1 stiffness, symmetric positive definite after Dirichlet
/// elimination; for the Shortley-Weller disk and the dumbbell drift operator
/// K = diag(mass) * A_strong and a direct solver is used.
///
/// Strong-form action: (-Delta u)_i = (K u_int + K_bd u_bd)_i / mass_i.
struct DiscreteOperator {
  std::shared_ptr<const Mesh> mesh;
  Eigen::SparseMatrix<double> K;     // interior x interior, weighted
  Eigen::SparseMatrix<double> K_bd;  // interior x boundary, weighted
  Eigen::VectorXd mass;              // quadrature weight per interior node
  bool symmetric = true;

  std::vector<int> interior_index;  // node id -> interior position or -1
  std::vector<int> boundary_index;  // node id -> boundary position or -1

  Eigen::Index n_interior() const { return K.rows(); }

  Eigen::VectorXd restrict_interior(const Field& u) const;
  Eigen::VectorXd restrict_boundary(const Field& u) const;
  /// Scatter interior values into a full field, filling boundary from `bd`.
  Field expand(const Eigen::VectorXd& interior, const Field& bd) const;

  /// Strong-form application (-Delta u) at interior nodes; boundary entries 0.
  Field apply(const Field& u) const;

  /// Gershgorin lower bound of the strong-form matrix minus a nodal potential.
  double gershgorin_lower(const Eigen::VectorXd& potential_diag_weighted) const;
};

DiscreteOperator assemble(const std::shared_ptr<const Mesh>& mesh);

/// Weighted diagonal of the potential term: p_i ~ integral of V over the
/// dual cell of node i (piecewise-linear interpolant of nodal V, integrated
/// exactly against the measure on 1D meshes; nodal value times weight on 2D
/// meshes). Exact for constant V, so mu1(V + c) = mu1(V) - c holds to
/// machine precision; near r = 0 the averaging keeps singular potentials
/// variationally consistent with the conforming stiffness.
Eigen::VectorXd potential_diagonal(const DiscreteOperator& op, const Field& V);

}  // namespace stablelab
