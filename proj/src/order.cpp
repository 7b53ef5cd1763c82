#include "robinlab/order.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "robinlab/errors.hpp"

namespace robinlab {

namespace {

struct Margin {
  double value = std::numeric_limits<double>::infinity();
  int i = -1;
  int j = -1;

  void absorb(double v, int ii, int jj) {
    if (v < value) {
      value = v;
      i = ii;
      j = jj;
    }
  }
};

Margin min_entry(const Eigen::MatrixXd& k) {
  Margin m;
  for (int i = 0; i < k.rows(); ++i)
    for (int j = 0; j < k.cols(); ++j) m.absorb(k(i, j), i, j);
  return m;
}

void require_same_space(const KernelOperator& a, const KernelOperator& b) {
  if (a.space.size() != b.space.size())
    throw SpaceMismatch("operators live on measure spaces of different size");
  const double scale = std::max(a.space.weights.maxCoeff(), b.space.weights.maxCoeff());
  if ((a.space.weights - b.space.weights).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw SpaceMismatch("operators live on measure spaces with different weights");
}

// Unitary picture of the operator on the weighted space: W^{1/2} K W^{1/2}.
Eigen::MatrixXd weighted_picture(const KernelOperator& op) {
  const Eigen::VectorXd s = op.space.weights.cwiseSqrt();
  return s.asDiagonal() * op.kernel * s.asDiagonal();
}

std::vector<double> singular_values(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  return std::vector<double>(sv.data(), sv.data() + sv.size());
}

double schatten_norm(const KernelOperator& op, int two_n) {
  double acc = 0;
  for (double s : singular_values(weighted_picture(op))) acc += std::pow(s, two_n);
  return std::pow(acc, 1.0 / two_n);
}

double operator_norm(const KernelOperator& op) {
  const auto sv = singular_values(weighted_picture(op));
  return sv.empty() ? 0.0 : sv.front();
}

double weighted_trace(const KernelOperator& op) {
  return op.kernel.diagonal().dot(op.space.weights);
}

bool is_psd(const KernelOperator& op) {
  Eigen::MatrixXd w = weighted_picture(op);
  const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
  if ((w - w.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (w + w.transpose()));
  return es.eigenvalues().minCoeff() >= -1e-10 * scale;
}

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

Eigen::VectorXd KernelOperator::apply(const Eigen::VectorXd& f) const {
  if (f.size() != kernel.cols()) throw DimensionMismatch("argument length differs from kernel");
  return kernel * space.weights.cwiseProduct(f);
}

KernelOperator KernelOperator::from_grid(const KernelGrid& grid) {
  KernelOperator op;
  op.space.weights = grid.weights;
  op.kernel = grid.values;
  return op;
}

void write_order_report(const OrderReport& report, std::ostream& out) {
  out << "relation: " << report.relation << "\n"
      << "tolerance: " << report.tolerance << "\n"
      << "worst_violation: " << report.worst_violation << "\n"
      << "witness_indices:";
  if (report.witness_i >= 0) out << " " << report.witness_i;
  if (report.witness_j >= 0) out << " " << report.witness_j;
  for (int k : report.witness_indices) out << " " << k;
  out << "\nverdict: " << (report.pass ? "pass" : "fail") << "\n";
  if (!report.note.empty()) out << "note: " << report.note << "\n";
}

OrderReport is_positivity_preserving(const KernelOperator& op, double tol) {
  OrderReport r;
  r.relation = "positivity_preserving";
  r.tolerance = tol;
  const Margin m = min_entry(op.kernel);
  r.worst_violation = m.value;
  r.witness_i = m.i;
  r.witness_j = m.j;
  r.pass = m.value >= -tol;
  return r;
}

OrderReport is_positivity_improving(const KernelOperator& op, double tol) {
  OrderReport r;
  r.relation = "positivity_improving";
  r.tolerance = tol;
  r.strict = true;
  const Margin m = min_entry(op.kernel);
  r.worst_violation = m.value;
  r.witness_i = m.i;
  r.witness_j = m.j;
  r.pass = m.value > tol;
  return r;
}

OrderReport dominates(const KernelOperator& a, const KernelOperator& b, double tol) {
  require_same_space(a, b);
  OrderReport r;
  r.relation = "dominates";
  r.tolerance = tol;
  const Margin lower = min_entry(b.kernel);
  const Margin upper = min_entry(a.kernel - b.kernel);
  if (lower.value <= upper.value) {
    r.worst_violation = lower.value;
    r.witness_i = lower.i;
    r.witness_j = lower.j;
    r.note = "binding side: 0 <= B";
  } else {
    r.worst_violation = upper.value;
    r.witness_i = upper.i;
    r.witness_j = upper.j;
    r.note = "binding side: B <= A";
  }
  r.pass = lower.value >= -tol && upper.value >= -tol;
  return r;
}

OrderReport pointwise_dominates(const KernelOperator& a, const KernelOperator& b, double tol) {
  require_same_space(a, b);
  if (!is_positivity_preserving(a, tol).pass)
    throw PreconditionUnmet("modulus domination needs a positivity preserving dominator");
  OrderReport r;
  r.relation = "pointwise_dominates";
  r.tolerance = tol;
  const Margin m = min_entry(a.kernel - b.kernel.cwiseAbs());
  r.worst_violation = m.value;
  r.witness_i = m.i;
  r.witness_j = m.j;
  r.pass = m.value >= -tol;
  return r;
}

OrderReport schatten_domination_check(const KernelOperator& a, const KernelOperator& b,
                                      int two_n) {
  if (two_n < 2 || two_n % 2 != 0)
    throw PreconditionUnmet("Schatten index must be a positive even integer");
  const double slack = 1e-10;
  if (!dominates(a, b, slack).pass)
    throw PreconditionUnmet("Schatten ordering requires 0 <= B <= A entrywise");
  OrderReport r;
  r.relation = "schatten_domination";
  r.tolerance = slack;
  const double na = schatten_norm(a, two_n);
  const double nb = schatten_norm(b, two_n);
  r.worst_violation = na - nb;
  r.pass = na >= nb - slack;
  std::ostringstream note;
  note << "||A||_" << two_n << " = " << na << ", ||B||_" << two_n << " = " << nb;
  if (is_psd(a) && is_psd(b)) {
    const double ta = weighted_trace(a);
    const double tb = weighted_trace(b);
    note << "; traces " << ta << " >= " << tb;
    r.worst_violation = std::min(r.worst_violation, ta - tb);
    r.pass = r.pass && ta >= tb - slack;
  }
  r.note = note.str();
  return r;
}

OrderReport is_sub_markovian(const KernelOperator& op, double tol) {
  OrderReport r;
  r.relation = "sub_markovian";
  r.tolerance = tol;
  Margin m = min_entry(op.kernel);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(op.space.size());
  const Eigen::VectorXd row_sums = op.apply(ones);
  for (int i = 0; i < row_sums.size(); ++i) m.absorb(1.0 - row_sums[i], i, -1);
  r.worst_violation = m.value;
  r.witness_i = m.i;
  r.witness_j = m.j;
  r.pass = m.value >= -tol;
  std::ostringstream note;
  note << "max row sum against measure = " << row_sums.maxCoeff();
  r.note = note.str();
  return r;
}

OrderReport is_linf_contractive(const KernelOperator& op, double tol) {
  OrderReport r;
  r.relation = "linf_contractive";
  r.tolerance = tol;
  Margin m;
  for (int i = 0; i < op.kernel.rows(); ++i) {
    const double row = op.kernel.row(i).cwiseAbs().dot(op.space.weights.transpose());
    m.absorb(1.0 - row, i, -1);
  }
  r.worst_violation = m.value;
  r.witness_i = m.i;
  r.pass = m.value >= -tol;
  return r;
}

OrderReport linf_contraction_transfer(const KernelOperator& a, const KernelOperator& b,
                                      double tol) {
  OrderReport r;
  r.relation = "linf_contraction_transfer";
  r.tolerance = tol;
  const OrderReport dom = pointwise_dominates(a, b, tol);
  const OrderReport ca = is_linf_contractive(a, tol);
  const OrderReport cb = is_linf_contractive(b, tol);
  std::ostringstream note;
  if (!dom.pass || !ca.pass) {
    note << "premises not established (domination " << (dom.pass ? "holds" : "fails")
         << ", dominator contraction " << (ca.pass ? "holds" : "fails") << ")";
    r.pass = true;  // nothing to transfer
  } else {
    r.worst_violation = cb.worst_violation;
    r.witness_i = cb.witness_i;
    r.pass = cb.pass;
    note << "dominated operator contraction margin " << cb.worst_violation;
  }
  r.note = note.str();
  return r;
}

KernelOperator compose(const KernelOperator& a, const KernelOperator& b) {
  require_same_space(a, b);
  KernelOperator out;
  out.space = a.space;
  out.kernel = a.kernel * a.space.weights.asDiagonal() * b.kernel;
  return out;
}

KernelOperator adjoint(const KernelOperator& op) {
  KernelOperator out;
  out.space = op.space;
  out.kernel = op.kernel.transpose();
  return out;
}

OrderReport semigroup_equivalences_check(const OperatorPencil& h1, const OperatorPencil& h2,
                                         const std::vector<double>& t_grid,
                                         const std::vector<double>& lambda_grid, double tol,
                                         int probes, unsigned seed) {
  if (h1.size() != h2.size() || h1.free_dofs != h2.free_dofs)
    throw DimensionMismatch("equivalence wiring requires pencils on the same dof set");
  OrderReport r;
  r.relation = "semigroup_equivalences";
  r.tolerance = tol;
  Margin worst;

  const SpectralDecomposition d1 = eigensolve(h1);
  const SpectralDecomposition d2 = eigensolve(h2);

  // (i) entrywise ordering of the evolution kernels on the time grid
  double semigroup_margin = std::numeric_limits<double>::infinity();
  for (double t : t_grid) {
    const Margin m = min_entry(heat_kernel(d1, t).values - heat_kernel(d2, t).values);
    semigroup_margin = std::min(semigroup_margin, m.value);
    worst.absorb(m.value, m.i, m.j);
  }
  const bool s_semigroup = semigroup_margin >= -tol;

  // (ii) entrywise ordering of the resolvent kernels on the shift grid
  double resolvent_margin = std::numeric_limits<double>::infinity();
  for (double lambda : lambda_grid) {
    const Margin m =
        min_entry(green_kernel(d1, lambda).values - green_kernel(d2, lambda).values);
    resolvent_margin = std::min(resolvent_margin, m.value);
    worst.absorb(m.value, m.i, m.j);
  }
  const bool s_resolvent = resolvent_margin >= -tol;

  // (iii) reversed form inequality on nonnegative probes: u' H2 u >= u' H1 u
  const Eigen::MatrixXd m1 = h1.matrix();
  const Eigen::MatrixXd m2 = h2.matrix();
  const int n = h1.size();
  double form_margin = std::numeric_limits<double>::infinity();
  auto probe = [&](const Eigen::VectorXd& u) {
    const double q1 = u.dot(m1 * u);
    const double q2 = u.dot(m2 * u);
    form_margin = std::min(form_margin, (q2 - q1) / std::max(1.0, std::abs(q1)));
  };
  for (int i = 0; i < n; ++i) probe(Eigen::VectorXd::Unit(n, i));
  probe(Eigen::VectorXd::Ones(n));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int k = 0; k < probes; ++k) {
    Eigen::VectorXd u(n);
    for (int i = 0; i < n; ++i) u[i] = unif(rng);
    probe(u);
  }
  const bool s_form = form_margin >= -tol;

  r.worst_violation = worst.value;
  r.witness_i = worst.i;
  r.witness_j = worst.j;
  r.pass = (s_semigroup == s_resolvent) && (s_resolvent == s_form);
  std::ostringstream note;
  note << "semigroup " << (s_semigroup ? "holds" : "fails") << " (margin " << semigroup_margin
       << "), resolvent " << (s_resolvent ? "holds" : "fails") << " (margin " << resolvent_margin
       << "), form " << (s_form ? "holds" : "fails") << " (margin " << form_margin << ")";
  r.note = note.str();
  return r;
}

OrderReport domination_chain_check(const KernelGrid& k_dirichlet, const KernelGrid& k_theta2,
                                   const KernelGrid& k_theta1, const KernelGrid& k_neumann,
                                   double tol) {
  const KernelGrid* grids[] = {&k_dirichlet, &k_theta2, &k_theta1, &k_neumann};
  for (int g = 1; g < 4; ++g) {
    if (grids[g]->values.rows() != grids[0]->values.rows() || grids[g]->dim != grids[0]->dim)
      throw GridMismatch("chain kernels live on different node sets");
    if (grids[g]->kind != grids[0]->kind)
      throw GridMismatch("chain kernels mix heat and resolvent kinds");
    if (std::abs(grids[g]->parameter - grids[0]->parameter) >
        1e-12 * (1.0 + std::abs(grids[0]->parameter)))
      throw GridMismatch("chain kernels evaluated at different parameters");
    for (size_t i = 0; i < grids[0]->nodes.size(); ++i) {
      const Vec2 a = grids[0]->nodes[i];
      const Vec2 b = grids[g]->nodes[i];
      if (std::abs(a.x - b.x) > 1e-12 || std::abs(a.y - b.y) > 1e-12)
        throw GridMismatch("chain kernels sample different node coordinates");
    }
  }
  OrderReport r;
  r.relation = "domination_chain";
  r.tolerance = tol;
  const char* links[] = {"0 <= K_D", "K_D <= K_theta2", "K_theta2 <= K_theta1",
                         "K_theta1 <= K_N"};
  Margin worst;
  int worst_link = 0;
  const Margin m0 = min_entry(k_dirichlet.values);
  const Margin m1 = min_entry(k_theta2.values - k_dirichlet.values);
  const Margin m2 = min_entry(k_theta1.values - k_theta2.values);
  const Margin m3 = min_entry(k_neumann.values - k_theta1.values);
  const Margin all[] = {m0, m1, m2, m3};
  for (int g = 0; g < 4; ++g)
    if (all[g].value < worst.value) {
      worst = all[g];
      worst_link = g;
    }
  r.worst_violation = worst.value;
  r.witness_i = worst.i;
  r.witness_j = worst.j;
  r.pass = worst.value >= -tol;
  std::ostringstream note;
  note << "binding link: " << links[worst_link];
  r.note = note.str();
  return r;
}

OrderReport improving_equivalence_check(const OperatorPencil& p, double t_probe,
                                        const std::vector<double>& t_others, double tol) {
  OrderReport r;
  r.relation = "improving_equivalence";
  r.tolerance = tol;
  r.strict = true;

  // Connectivity of the operator graph (off-diagonal sparsity of the
  // second-order part).  A disconnected graph carries a nontrivial invariant
  // subspace: the indicator of one component.
  const int n = p.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (p.S(i, j) != 0.0) parent[find(i)] = find(j);
  std::vector<int> component;
  const int root0 = find(0);
  for (int i = 0; i < n; ++i)
    if (find(i) == root0) component.push_back(i);
  if (static_cast<int>(component.size()) != n) {
    r.pass = false;
    r.witness_indices = component;
    r.note = "operator graph disconnected; witness = indicator of one component";
    return r;
  }

  const SpectralDecomposition d = eigensolve(p);
  auto reduced_kernel = [&](double t) -> Eigen::MatrixXd {
    const Eigen::VectorXd e = (-t * d.eigenvalues.array()).exp();
    return d.V * e.asDiagonal() * d.V.transpose();
  };
  const Margin probe = min_entry(reduced_kernel(t_probe));
  r.worst_violation = probe.value;
  r.witness_i = probe.i;
  r.witness_j = probe.j;
  const bool probe_positive = probe.value > tol;
  bool all_positive = true;
  for (double t : t_others) {
    const Margin m = min_entry(reduced_kernel(t));
    if (m.value < r.worst_violation) {
      r.worst_violation = m.value;
      r.witness_i = m.i;
      r.witness_j = m.j;
    }
    all_positive = all_positive && m.value > tol;
  }
  r.pass = !probe_positive || all_positive;
  std::ostringstream note;
  note << "probe kernel " << (probe_positive ? "strictly positive" : "not strictly positive")
       << " at t = " << t_probe;
  r.note = note.str();
  return r;
}

DirichletLimitReport dirichlet_limit_driver(const Mesh& mesh, const TensorField& a,
                                            const ScalarPotential* potential,
                                            const std::vector<double>& vartheta_grid,
                                            double lambda) {
  if (vartheta_grid.empty()) throw PreconditionUnmet("coupling grid is empty");
  for (size_t k = 0; k < vartheta_grid.size(); ++k) {
    if (vartheta_grid[k] <= 0) throw PreconditionUnmet("couplings must be positive");
    if (k > 0 && vartheta_grid[k] <= vartheta_grid[k - 1])
      throw PreconditionUnmet("coupling grid must be strictly increasing");
  }
  if (lambda <= 0) throw PreconditionUnmet("resolvent shift must be positive");

  DirichletLimitReport report;
  report.varthetas = vartheta_grid;

  const OperatorPencil hard = make_pencil(mesh, a, BoundaryOperatorSpec::dirichlet(), potential);
  const Eigen::MatrixXd g_hard = green_kernel(eigensolve(hard), lambda).values;
  const Eigen::VectorXd sqrt_w = hard.weights_full.cwiseSqrt();

  for (double vartheta : vartheta_grid) {
    const OperatorPencil soft =
        make_pencil(mesh, a, BoundaryOperatorSpec::local(vartheta), potential);
    const Eigen::MatrixXd g_soft = green_kernel(eigensolve(soft), lambda).values;
    const Eigen::MatrixXd diff =
        sqrt_w.asDiagonal() * (g_soft - g_hard) * sqrt_w.asDiagonal();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(diff);
    report.deltas.push_back(svd.singularValues()[0]);
  }

  report.strictly_decreasing = true;
  for (size_t k = 1; k < report.deltas.size(); ++k)
    report.strictly_decreasing =
        report.strictly_decreasing && report.deltas[k] < report.deltas[k - 1];
  report.decay_exponent = -loglog_slope(report.varthetas, report.deltas);
  report.pass = report.strictly_decreasing && report.deltas.back() > 0;
  return report;
}

OrderSuiteResult order_property_suite(int n, int trials, unsigned seed, double tol) {
  OrderSuiteResult result;
  result.trials = trials;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_real_distribution<double> wdist(0.5, 2.0);
  std::uniform_int_distribution<int> idx(0, n - 1);

  auto fail = [&](const std::string& what, int trial) {
    ++result.failures;
    if (result.first_failure.empty()) {
      std::ostringstream os;
      os << "trial " << trial << ": " << what;
      result.first_failure = os.str();
    }
  };

  for (int trial = 0; trial < trials; ++trial) {
    DiscreteMeasureSpace space;
    space.weights = Eigen::VectorXd::NullaryExpr(n, [&](Eigen::Index) { return wdist(rng); });

    auto random_matrix = [&]() {
      return Eigen::MatrixXd::NullaryExpr(n, n, [&](Eigen::Index, Eigen::Index) {
        return unif(rng);
      }).eval();
    };

    KernelOperator a{space, random_matrix()};
    KernelOperator b{space, a.kernel.cwiseProduct(random_matrix())};  // 0 <= B <= A

    // Positivity verdict must coincide with direct indicator actions.
    bool indicator_nonneg = true;
    if (n <= 10) {
      for (unsigned mask = 1; mask < (1u << n); ++mask) {
        Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < n; ++i)
          if (mask & (1u << i)) f[i] = 1.0;
        indicator_nonneg = indicator_nonneg && a.apply(f).minCoeff() >= -tol;
      }
    } else {
      for (int i = 0; i < n; ++i)
        indicator_nonneg =
            indicator_nonneg && a.apply(Eigen::VectorXd::Unit(n, i)).minCoeff() >= -tol;
    }
    if (is_positivity_preserving(a, tol).pass != indicator_nonneg)
      fail("positivity verdict disagrees with indicator actions", trial);

    // A kernel with a forced negative entry must fail, with a singleton
    // indicator exhibiting a negative action.
    KernelOperator c = a;
    const int i0 = idx(rng), j0 = idx(rng);
    c.kernel(i0, j0) = -0.5 - unif(rng);
    const bool neg_detected = !is_positivity_preserving(c, tol).pass;
    const bool neg_witnessed = c.apply(Eigen::VectorXd::Unit(n, j0))[i0] < -tol;
    if (!neg_detected || !neg_witnessed)
      fail("forced negative entry escaped detection", trial);

    // Closure under composition and adjoints.
    if (!is_positivity_preserving(compose(a, b), tol).pass)
      fail("composition of nonnegative kernels lost positivity", trial);
    if (!is_positivity_preserving(adjoint(a), tol).pass)
      fail("adjoint of a nonnegative kernel lost positivity", trial);

    // Domination and its norm consequences.
    if (!dominates(a, b, tol).pass) fail("constructed pair failed domination", trial);
    if (!schatten_domination_check(a, b, 2).pass)
      fail("Hilbert-Schmidt ordering violated for a dominated pair", trial);
    if (!schatten_domination_check(a, b, 4).pass)
      fail("fourth Schatten ordering violated for a dominated pair", trial);

    // Modulus domination |B'| <= A implies operator-norm ordering.
    Eigen::MatrixXd signs = Eigen::MatrixXd::NullaryExpr(
        n, n, [&](Eigen::Index, Eigen::Index) { return unif(rng) < 0.5 ? -1.0 : 1.0; });
    KernelOperator bs{space, b.kernel.cwiseProduct(signs)};
    if (!pointwise_dominates(a, bs, tol).pass)
      fail("constructed pair failed modulus domination", trial);
    if (operator_norm(bs) > operator_norm(a) + 1e-10)
      fail("operator norms not ordered under modulus domination", trial);

    // Dominated positive semidefinite pair: traces ordered as well.
    Eigen::MatrixXd g = random_matrix() / n;
    Eigen::MatrixXd cc = random_matrix() / n;
    KernelOperator bp{space, (g.transpose() * g).eval()};
    KernelOperator ap{space, (bp.kernel + cc.transpose() * cc).eval()};
    if (!schatten_domination_check(ap, bp, 2).pass)
      fail("trace/Schatten ordering violated for a PSD dominated pair", trial);

    // Sub-Markov and contraction transfer down a dominated pair.
    KernelOperator am = a;
    for (int i = 0; i < n; ++i) {
      const double row = am.kernel.row(i).dot(space.weights.transpose());
      am.kernel.row(i) /= std::max(row, 1e-300);
    }
    KernelOperator bm{space, am.kernel.cwiseProduct(random_matrix())};
    if (!is_sub_markovian(am, tol).pass) fail("row-normalized kernel not sub-Markov", trial);
    if (!is_sub_markovian(bm, tol).pass)
      fail("sub-Markov property did not transfer to the dominated kernel", trial);
    KernelOperator bms{space, bm.kernel.cwiseProduct(signs)};
    if (!linf_contraction_transfer(am, bms, tol).pass)
      fail("sup-norm contraction did not transfer under modulus domination", trial);
  }
  return result;
}

}  // namespace robinlab
