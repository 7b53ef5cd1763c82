#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>
#include <vector>

#include "robinlab/geometry.hpp"

namespace robinlab {

/// Measurable coefficient tensor a^{ab}_{jk} for a system of m equations in
/// n space dimensions, stored flattened as an (m*n) x (m*n) matrix with row
/// index a*n+j and column index b*n+k. The scalar case m=1 reduces to the
/// usual n x n diffusion matrix. Fields are sampled per cell (piecewise
/// constant); analytic fields are evaluated at cell centroids.
struct TensorField {
  int m = 1;
  int n = 1;
  std::function<Eigen::MatrixXd(int cell, const Vec2& point)> eval;

  static TensorField identity(int n, int m = 1);
  static TensorField constant(Eigen::MatrixXd flat, int m, int n);
  static TensorField diagonal(const std::vector<double>& d);  // m = 1
  /// Two-phase layout: value hi where floor(x/pitch)+floor(y/pitch) is even,
  /// lo otherwise; isotropic in each phase.
  static TensorField checkerboard(int n, double lo, double hi, double pitch);
  static TensorField per_cell(int n, std::function<Eigen::MatrixXd(int)> f, int m = 1);
};

/// Scalar potential term. Nonnegative by default; a signed perturbative
/// branch (W <= 0 allowed) must be requested explicitly.
struct ScalarPotential {
  std::function<double(const Vec2&)> eval;
  bool allow_negative = false;

  static ScalarPotential zero();
  static ScalarPotential constant(double v);
  static ScalarPotential quadratic();  // V(x) = |x|^2
};

/// Boundary operator Theta in the Robin-type pairing <trace u, Theta trace v>.
struct BoundaryOperatorSpec {
  enum class Kind { Zero, LocalMultiplication, NonlocalKernel, DirichletLimit };
  Kind kind = Kind::Zero;
  std::function<double(const Vec2&)> theta;                  // LocalMultiplication
  std::function<double(const Vec2&, const Vec2&)> kernel;    // NonlocalKernel, symmetric

  static BoundaryOperatorSpec zero();
  static BoundaryOperatorSpec local(double constant_theta);
  static BoundaryOperatorSpec local(std::function<double(const Vec2&)> theta);
  static BoundaryOperatorSpec nonlocal(std::function<double(const Vec2&, const Vec2&)> k);
  static BoundaryOperatorSpec dirichlet();
};

struct EllipticityReport {
  double a0 = 0.0;  // smallest eigenvalue of the symmetrized form over samples
  double a1 = 0.0;  // largest
  bool legendre_ok = false;  // a0 > 0
};

/// Extreme eigenvalues of the symmetrized coefficient form over the sample
/// points (cell index, point). Raises NonSymmetricTensor when the flattened
/// tensor violates Hermitian symmetry beyond 1e-12.
EllipticityReport check_ellipticity(const TensorField& a,
                                    const std::vector<std::pair<int, Vec2>>& samples);
/// Convenience overload sampling every cell centroid.
EllipticityReport check_ellipticity(const TensorField& a, const Mesh& mesh);

struct ThetaStructureReport {
  bool selfadjoint = false;
  bool nonneg = false;
  double symmetry_defect = 0.0;  // max |B - B^T|
  double min_eigenvalue = 0.0;   // of the symmetrized boundary matrix
};

/// Self-adjointness and form-nonnegativity of the assembled boundary matrix.
ThetaStructureReport theta_structure_check(const BoundaryOperatorSpec& theta, const Mesh& mesh);

/// Nodal (Nystrom) quadrature of the boundary pairing <trace u, Theta trace v>
/// restricted to the boundary nodes, in the order of mesh.boundary_nodes().
/// Each facet spreads its measure evenly over its nodes, giving trapezoid
/// weights w_i; a multiplication operator then stays diagonal -- matching the
/// pointwise identity |u|^2 = u^2 -- while a kernel couples every node pair
/// through w_i w_j k(x_i, x_j), evaluated with mirrored arguments so the
/// result is symmetric whenever k is.
Eigen::MatrixXd boundary_pairing_matrix(const BoundaryOperatorSpec& theta, const Mesh& mesh);

struct ModulusConditionReport {
  bool ok = false;
  double worst = 0.0;            // max of form(|u|) - form(u) over probes
  Eigen::VectorXd witness;       // trace that violated the condition (if any)
};

/// Empirical check of the modulus contraction property
///   <|u|, Theta |u|>  <=  <u, Theta u>
/// with the form evaluated through boundary_pairing_matrix, over random
/// boundary traces; sign patterns are enumerated exhaustively when the mesh
/// has at most 8 boundary nodes. Tolerance 1e-10. For a multiplication
/// operator the two sides agree identically; for a kernel the condition holds
/// exactly when no pair coupling is positive, so it gates which regimes admit
/// positivity-preserving semigroups and kernel comparisons.
ModulusConditionReport theta_modulus_condition_check(const BoundaryOperatorSpec& theta,
                                                     const Mesh& mesh, int trials,
                                                     unsigned seed = 7u);

}  // namespace robinlab
