#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "robinlab/assembly.hpp"

namespace robinlab {

/// Full generalized eigendecomposition of a pencil. Eigenvalues ascend and
/// eigenvector columns are orthonormal against the mass the solve used; each
/// column is sign-normalized so its largest-magnitude entry (lowest index on
/// ties) is positive.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd V;  // reduced index set for Dirichlet pencils
  MassKind mass_kind = MassKind::Lumped;
  Eigen::MatrixXd mass;  // the mass matrix the solve used (dense copy)

  // pencil metadata for kernel synthesis
  std::vector<int> free_dofs;
  int n_full = 0;
  int m = 1;
  int dim = 1;
  BoundaryCondition bc = BoundaryCondition::Neumann;
  std::vector<Vec2> nodes;
  Eigen::VectorXd weights_full;  // measure weights over the full node set

  int size() const { return static_cast<int>(eigenvalues.size()); }
};

/// Dense generalized symmetric solve of (S + B + M_V, mass). The lumped mass
/// (default) realizes the operator on the discrete measure space, which makes
/// kernel synthesis an exact spectral calculus; the consistent mass gives the
/// classical Galerkin eigenproblem.
SpectralDecomposition eigensolve(const OperatorPencil& p, MassKind mass = MassKind::Lumped);

enum class KernelKind { Heat, Green };

/// Kernel matrix over the full node set, weighted against the measure: the
/// associated operator acts as (K f)_i = sum_j K_ij w_j f_j. Dirichlet
/// kernels are zero-embedded on eliminated rows and columns.
struct KernelGrid {
  KernelKind kind = KernelKind::Heat;
  double parameter = 0.0;  // t (heat) or lambda (green)
  Eigen::MatrixXd values;
  std::vector<Vec2> nodes;
  int dim = 1;
  Eigen::VectorXd weights;
  BoundaryCondition bc = BoundaryCondition::Neumann;
};

/// K(t) = V exp(-t Lambda) V'; semigroup action on coefficient vectors is
/// K(t) times the diagonal of measure weights.
KernelGrid heat_kernel(const SpectralDecomposition& d, double t);

/// G(lambda) = V (Lambda + lambda)^{-1} V'; requires lambda > -lambda_0.
KernelGrid green_kernel(const SpectralDecomposition& d, double lambda);

/// E(t) on the pencil's own (possibly reduced) coefficient space.
Eigen::MatrixXd semigroup_action(const SpectralDecomposition& d, double t);

/// sum_k exp(-t lambda_k)
double heat_trace(const SpectralDecomposition& d, double t);

/// Product-formula approximation [E_A(t/m) exp(-(t/m) diag(bv))]^m of the
/// semigroup generated by A + diag(bv); converges at rate O(1/m).
Eigen::MatrixXd trotter_kato(const OperatorPencil& pa, const Eigen::VectorXd& bv, double t,
                             int steps, MassKind mass = MassKind::Lumped);

struct GroundState {
  double lambda0 = 0.0;
  Eigen::VectorXd phi0;  // full-length, zero on eliminated dofs
  double gap = 0.0;      // lambda_1 - lambda_0
  bool simple = false;   // gap > 1e-8 (1 + |lambda0|)
  bool one_signed = false;  // strictly one sign at every free dof
};

GroundState ground_state(const SpectralDecomposition& d);

/// CSV rows "xi[,yi],xj[,yj],value".
void write_kernel_csv(const KernelGrid& grid, std::ostream& out);

/// 16-byte header (uint32 rows, uint32 cols, float64 parameter) followed by
/// row-major float64 entries.
void write_kernel_binary(const KernelGrid& grid, std::ostream& out);

}  // namespace robinlab
