#pragma once

// Positivity and domination algebra for kernel operators on finite measure
// spaces, plus the verification drivers that exercise it end to end: the
// four-regime domination chain, the semigroup/resolvent/form equivalence
// wiring, positivity improvement vs connectivity, and the large-coupling
// limit toward the hard-constraint (Dirichlet) operator.
//
// Conventions.  A DiscreteMeasureSpace is a finite set of atoms with strictly
// positive weights w_i; the inner product is (f,g) = sum_i w_i f_i g_i.  A
// KernelOperator acts by (Kf)_i = sum_j K_ij w_j f_j, so "entrywise" facts
// about the kernel matrix translate verbatim into order facts about the
// operator.  All verdicts are tolerance-audited: a report always carries the
// worst violation and its location so a pass is checkable after the fact.

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "robinlab/assembly.hpp"
#include "robinlab/coefficients.hpp"
#include "robinlab/geometry.hpp"
#include "robinlab/spectral.hpp"

namespace robinlab {

// Finite measure space with point masses.  Atoms (weights of very different
// magnitude) are first-class; nothing assumes the weights are uniform.
struct DiscreteMeasureSpace {
  Eigen::VectorXd weights;  // strictly positive

  int size() const { return static_cast<int>(weights.size()); }
};

// Integral operator with a matrix kernel over a DiscreteMeasureSpace.
struct KernelOperator {
  DiscreteMeasureSpace space;
  Eigen::MatrixXd kernel;

  // Operator action against the measure: (Kf)_i = sum_j K_ij w_j f_j.
  Eigen::VectorXd apply(const Eigen::VectorXd& f) const;

  // Wraps a synthesized kernel grid (heat or resolvent) together with the
  // lumped node measure it was built against.
  static KernelOperator from_grid(const KernelGrid& grid);
};

// Outcome of a single order relation test.  pass ⇔ worst_violation >= -tolerance
// (or, for strict relations, worst margin > tolerance); witness fields locate
// the worst entry when meaningful.
struct OrderReport {
  std::string relation;
  double tolerance = 0.0;
  double worst_violation = 0.0;  // most negative margin encountered
  int witness_i = -1;
  int witness_j = -1;
  bool pass = false;
  bool strict = false;               // true for the "improving" variants
  std::string note;                  // free-form diagnostics
  std::vector<int> witness_indices;  // e.g. an invariant-subspace indicator
};

// Serializes a report as structured text {relation, tolerance,
// worst_violation, witness_indices, verdict}.
void write_order_report(const OrderReport& report, std::ostream& out);

// Positivity preserving ⇔ every kernel entry >= -tol.
OrderReport is_positivity_preserving(const KernelOperator& op, double tol);

// Strict variant: positivity improving ⇔ every kernel entry > tol.
OrderReport is_positivity_improving(const KernelOperator& op, double tol);

// Operator-interval membership 0 <= B <= A: entrywise K_B >= -tol and
// K_A - K_B >= -tol.  Throws SpaceMismatch when the spaces differ.
OrderReport dominates(const KernelOperator& a, const KernelOperator& b, double tol);

// Pointwise (modulus) domination |Bf| <= A|f|, which for kernels is the
// entrywise statement |K_B| <= K_A + tol.  Requires a positivity preserving
// dominator; throws PreconditionUnmet otherwise, SpaceMismatch on space
// mismatch.
OrderReport pointwise_dominates(const KernelOperator& a, const KernelOperator& b, double tol);

// Schatten-norm ordering for a dominated pair: ||B||_{2n} <= ||A||_{2n} with
// singular values taken of W^{1/2} K W^{1/2} (the unitary picture of the
// operator on the weighted space).  two_n must be a positive even integer.
// When both operators are symmetric positive semidefinite the weighted traces
// are compared as well.  Throws PreconditionUnmet when dominates(a, b) fails.
OrderReport schatten_domination_check(const KernelOperator& a, const KernelOperator& b, int two_n);

// Sub-Markov: kernel nonnegative and row sums against the measure <= 1 + tol.
OrderReport is_sub_markovian(const KernelOperator& op, double tol);

// L^infinity contraction: max_i sum_j |K_ij| w_j <= 1 + tol.
OrderReport is_linf_contractive(const KernelOperator& op, double tol);

// Contraction transfer: if |B| is dominated by A and A is L^infinity
// contractive then B must be as well; the report records whether the
// implication held with the observed norms in the note.
OrderReport linf_contraction_transfer(const KernelOperator& a, const KernelOperator& b, double tol);

// Measure-weighted composition (A.B)f = A(Bf): kernel K_A W K_B.
KernelOperator compose(const KernelOperator& a, const KernelOperator& b);

// Adjoint on the weighted space: kernel transpose (real symmetric weights).
KernelOperator adjoint(const KernelOperator& op);

// Equivalence wiring for semigroup domination between two pencils sharing a
// mesh: (i) entrywise ordering of the heat kernels on t_grid, (ii) entrywise
// ordering of the resolvent kernels on lambda_grid, (iii) the reversed form
// inequality probed on nonnegative vectors.  The check passes when the three
// verdicts agree (all hold or all fail together); a split vote means the
// discrete wiring is broken and is reported as such.
OrderReport semigroup_equivalences_check(const OperatorPencil& h1, const OperatorPencil& h2,
                                         const std::vector<double>& t_grid,
                                         const std::vector<double>& lambda_grid,
                                         double tol = 1e-10, int probes = 64,
                                         unsigned seed = 2026);

// Four-regime chain 0 <= K_D <= K_{theta2} <= K_{theta1} <= K_N entrywise
// within tol.  All grids must share nodes, kind, and parameter (throws
// GridMismatch).  Works for heat and resolvent kernels alike.
OrderReport domination_chain_check(const KernelGrid& k_dirichlet, const KernelGrid& k_theta2,
                                   const KernelGrid& k_theta1, const KernelGrid& k_neumann,
                                   double tol);

// Improvement propagation: strict positivity of the heat kernel at t_probe
// must imply strict positivity at every t in t_others.  On a disconnected
// operator graph the check fails and reports one component's indicator as the
// invariant-subspace witness.
OrderReport improving_equivalence_check(const OperatorPencil& p, double t_probe,
                                        const std::vector<double>& t_others, double tol = 0.0);

// Large-coupling limit: distance from the boundary-penalized resolvent to the
// zero-extended hard-constraint resolvent, delta(vartheta) =
// ||W^{1/2} (G_vartheta - G_D) W^{1/2}||_2, along an increasing coupling grid.
struct DirichletLimitReport {
  std::vector<double> varthetas;
  std::vector<double> deltas;
  bool strictly_decreasing = false;
  double decay_exponent = 0.0;  // delta ~ C * vartheta^{-decay_exponent}
  bool pass = false;
};

DirichletLimitReport dirichlet_limit_driver(const Mesh& mesh, const TensorField& a,
                                            const ScalarPotential* potential,
                                            const std::vector<double>& vartheta_grid,
                                            double lambda);

// Randomized desk-scale property suite over n-by-n kernels on random weighted
// spaces: positivity verdict vs direct indicator actions, closure of
// positivity under composition and adjoints, Schatten ordering (2n in {2,4})
// and operator-norm ordering for dominated pairs, trace ordering for
// dominated positive semidefinite pairs, and sub-Markov / L^infinity
// contraction transfer.  Returns the number of failed trials (expected 0).
struct OrderSuiteResult {
  int trials = 0;
  int failures = 0;
  std::string first_failure;
};

OrderSuiteResult order_property_suite(int n, int trials, unsigned seed, double tol);

}  // namespace robinlab
