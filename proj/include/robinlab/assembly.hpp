#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "robinlab/coefficients.hpp"
#include "robinlab/geometry.hpp"

namespace robinlab {

enum class BoundaryCondition { Neumann, Robin, Dirichlet };

/// Which mass realization a spectral solve works against. The lumped mass
/// defines the node weights of the discrete measure space; semigroup kernels
/// are synthesized against it so that entrywise kernel statements are the
/// literal discrete analogs of pointwise kernel bounds. The consistent mass
/// is the Galerkin L2 inner product and drives the form-level constants.
enum class MassKind { Lumped, Consistent };

struct MassMatrices {
  Eigen::MatrixXd consistent;
  Eigen::VectorXd lumped;  // row sums, as a diagonal
};

/// Symmetric operator pencil (S + B + M_V, M). For Dirichlet realizations the
/// boundary degrees of freedom are eliminated: all matrices are stored on the
/// reduced index set and free_dofs maps back into the full numbering.
struct OperatorPencil {
  Eigen::MatrixXd S;        // stiffness
  Eigen::MatrixXd M;        // consistent mass
  Eigen::VectorXd M_lumped; // lumped mass diagonal
  Eigen::MatrixXd B;        // boundary operator matrix
  Eigen::MatrixXd MV;       // potential mass
  std::vector<int> dirichlet_dofs;  // eliminated dofs, full numbering
  std::vector<int> free_dofs;       // kept dofs, full numbering
  std::vector<int> boundary_dofs;   // boundary dofs, full numbering
  int m = 1;
  int dim = 1;
  int n_full = 0;  // dof count before elimination
  BoundaryCondition bc = BoundaryCondition::Neumann;
  std::vector<Vec2> nodes;          // all mesh nodes
  Eigen::VectorXd weights_full;     // unit lumped mass over all dofs

  int size() const { return static_cast<int>(S.rows()); }
  Eigen::MatrixXd matrix() const { return S + B + MV; }
};

/// P1 stiffness for the flattened tensor: entry ((i,a),(j,b)) equals
/// sum_{p,q} int a^{ab}_{pq} (d_p phi_i)(d_q phi_j). Dof layout is node-major
/// with m components per node.
Eigen::MatrixXd assemble_stiffness(const Mesh& mesh, const TensorField& a, int m = 1);

/// P1 mass matrices for unit weight (exact) and the lumped row-sum variant.
MassMatrices assemble_mass(const Mesh& mesh, int m = 1);

/// Weighted mass matrices int w phi_i phi_j by cell quadrature. Raises
/// NegativePotential when the weight is negative at a quadrature point and
/// the potential does not opt into the signed perturbative branch.
MassMatrices assemble_mass(const Mesh& mesh, const ScalarPotential& w, int m = 1);

/// Boundary matrix for the four regimes. 1D boundaries carry the counting
/// measure (atoms at the endpoints); 2D facet integrals use 4-point Gauss
/// rules (products of them for nonlocal kernels), with kernel evaluations
/// mirrored so the assembled matrix is exactly symmetric.
Eigen::MatrixXd assemble_boundary(const Mesh& mesh, const BoundaryOperatorSpec& theta, int m = 1);

OperatorPencil make_pencil(const Mesh& mesh, const Eigen::MatrixXd& S, const MassMatrices& mass,
                           const Eigen::MatrixXd& B, const Eigen::MatrixXd& MV,
                           BoundaryCondition bc, int m = 1);

/// Assembles everything from the field specs and builds the pencil.
OperatorPencil make_pencil(const Mesh& mesh, const TensorField& a,
                           const BoundaryOperatorSpec& theta,
                           const ScalarPotential* potential = nullptr, int m = 1);

/// Smallest kappa with  u'(S+B)u + kappa u'Mu >= (1/6)(u'Su + u'Mu)  for all
/// u, i.e. 1/6 minus the smallest eigenvalue of ((5/6)S + B, M).
double coercivity_constant(const OperatorPencil& p);

struct TraceInequalityResult {
  std::vector<std::pair<double, double>> beta;  // (eps, beta(eps))
  double growth_exponent = 0.0;  // least-squares slope of log beta vs log(1/eps)
};

/// beta(eps) = largest eigenvalue of (B_1 - eps*S, M) with unit coefficients:
/// the smallest constant with ||trace u||^2 <= eps ||Du||^2 + beta ||u||^2.
TraceInequalityResult trace_inequality_constants(const Mesh& mesh,
                                                 const std::vector<double>& eps_grid);

struct BoundaryFunctional {
  Eigen::VectorXd values;           // full-length, zero off the boundary
  std::vector<int> boundary_dofs;
};

/// Discrete weak conormal trace of u given volume data f: the residual
/// S u - M f restricted to boundary dofs. The mass defaults to the lumped
/// (measure-space) realization so that pencil eigenpairs satisfy the Robin
/// identity  trace-functional + B u = 0  exactly.
BoundaryFunctional weak_neumann_trace(const OperatorPencil& p, const Eigen::VectorXd& u,
                                      const Eigen::VectorXd& f,
                                      MassKind mass = MassKind::Lumped);

/// Sparse coordinate text dump (i j value per line, zeros skipped).
void write_matrix_coordinate(const Eigen::MatrixXd& a, std::ostream& out);

}  // namespace robinlab
