#include "robinlab/coefficients.hpp"

#include <cmath>
#include <random>

#include "robinlab/assembly.hpp"
#include "robinlab/errors.hpp"

namespace robinlab {

TensorField TensorField::identity(int n, int m) {
  TensorField f;
  f.m = m;
  f.n = n;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m * n, m * n);
  f.eval = [id](int, const Vec2&) { return id; };
  return f;
}

TensorField TensorField::constant(Eigen::MatrixXd flat, int m, int n) {
  TensorField f;
  f.m = m;
  f.n = n;
  f.eval = [flat = std::move(flat)](int, const Vec2&) { return flat; };
  return f;
}

TensorField TensorField::diagonal(const std::vector<double>& d) {
  TensorField f;
  f.m = 1;
  f.n = static_cast<int>(d.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(f.n, f.n);
  for (int i = 0; i < f.n; ++i) a(i, i) = d[i];
  f.eval = [a](int, const Vec2&) { return a; };
  return f;
}

TensorField TensorField::checkerboard(int n, double lo, double hi, double pitch) {
  TensorField f;
  f.m = 1;
  f.n = n;
  f.eval = [=](int, const Vec2& p) {
    const long ix = static_cast<long>(std::floor(p.x / pitch));
    const long iy = n > 1 ? static_cast<long>(std::floor(p.y / pitch)) : 0;
    const double v = ((ix + iy) % 2 + 2) % 2 == 0 ? hi : lo;
    return (v * Eigen::MatrixXd::Identity(n, n)).eval();
  };
  return f;
}

TensorField TensorField::per_cell(int n, std::function<Eigen::MatrixXd(int)> f, int m) {
  TensorField t;
  t.m = m;
  t.n = n;
  t.eval = [f = std::move(f)](int cell, const Vec2&) { return f(cell); };
  return t;
}

ScalarPotential ScalarPotential::zero() {
  return {[](const Vec2&) { return 0.0; }, false};
}
ScalarPotential ScalarPotential::constant(double v) {
  return {[v](const Vec2&) { return v; }, v < 0};
}
ScalarPotential ScalarPotential::quadratic() {
  return {[](const Vec2& p) { return p.x * p.x + p.y * p.y; }, false};
}

BoundaryOperatorSpec BoundaryOperatorSpec::zero() {
  BoundaryOperatorSpec s;
  s.kind = Kind::Zero;
  return s;
}
BoundaryOperatorSpec BoundaryOperatorSpec::local(double constant_theta) {
  return local([constant_theta](const Vec2&) { return constant_theta; });
}
BoundaryOperatorSpec BoundaryOperatorSpec::local(std::function<double(const Vec2&)> theta) {
  BoundaryOperatorSpec s;
  s.kind = Kind::LocalMultiplication;
  s.theta = std::move(theta);
  return s;
}
BoundaryOperatorSpec BoundaryOperatorSpec::nonlocal(
    std::function<double(const Vec2&, const Vec2&)> k) {
  BoundaryOperatorSpec s;
  s.kind = Kind::NonlocalKernel;
  s.kernel = std::move(k);
  return s;
}
BoundaryOperatorSpec BoundaryOperatorSpec::dirichlet() {
  BoundaryOperatorSpec s;
  s.kind = Kind::DirichletLimit;
  return s;
}

EllipticityReport check_ellipticity(const TensorField& a,
                                    const std::vector<std::pair<int, Vec2>>& samples) {
  EllipticityReport rep;
  rep.a0 = std::numeric_limits<double>::infinity();
  rep.a1 = -std::numeric_limits<double>::infinity();
  for (const auto& [cell, point] : samples) {
    const Eigen::MatrixXd flat = a.eval(cell, point);
    const double scale = std::max(1.0, flat.cwiseAbs().maxCoeff());
    const double defect = (flat - flat.transpose()).cwiseAbs().maxCoeff();
    if (defect > 1e-12 * scale)
      throw NonSymmetricTensor("coefficient tensor violates Hermitian symmetry");
    const Eigen::MatrixXd sym = 0.5 * (flat + flat.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
    rep.a0 = std::min(rep.a0, es.eigenvalues().minCoeff());
    rep.a1 = std::max(rep.a1, es.eigenvalues().maxCoeff());
  }
  rep.legendre_ok = samples.empty() ? false : rep.a0 > 0.0;
  return rep;
}

EllipticityReport check_ellipticity(const TensorField& a, const Mesh& mesh) {
  std::vector<std::pair<int, Vec2>> samples;
  samples.reserve(mesh.cell_count());
  for (int c = 0; c < mesh.cell_count(); ++c) samples.emplace_back(c, mesh.centroid(c));
  return check_ellipticity(a, samples);
}

ThetaStructureReport theta_structure_check(const BoundaryOperatorSpec& theta, const Mesh& mesh) {
  const Eigen::MatrixXd b = assemble_boundary(mesh, theta, 1);
  ThetaStructureReport rep;
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  rep.symmetry_defect = (b - b.transpose()).cwiseAbs().maxCoeff();
  rep.selfadjoint = rep.symmetry_defect <= 1e-12 * scale;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (b + b.transpose()),
                                                    Eigen::EigenvaluesOnly);
  rep.min_eigenvalue = es.eigenvalues().minCoeff();
  rep.nonneg = rep.min_eigenvalue >= -1e-12 * scale;
  return rep;
}

Eigen::MatrixXd boundary_pairing_matrix(const BoundaryOperatorSpec& theta, const Mesh& mesh) {
  const std::vector<int> bnodes = mesh.boundary_nodes();
  const int nb = static_cast<int>(bnodes.size());

  // Trapezoid weights: each facet contributes its measure evenly to its nodes.
  Eigen::VectorXd w = Eigen::VectorXd::Zero(mesh.node_count());
  for (const BoundaryFacet& f : mesh.boundary_facets)
    for (int k = 0; k < f.node_count; ++k) w[f.nodes[k]] += f.measure / f.node_count;

  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(nb, nb);
  switch (theta.kind) {
    case BoundaryOperatorSpec::Kind::Zero:
    case BoundaryOperatorSpec::Kind::DirichletLimit:
      // No finite pairing: zero coupling, or traces pinned to zero.
      break;
    case BoundaryOperatorSpec::Kind::LocalMultiplication:
      for (int k = 0; k < nb; ++k)
        b(k, k) = w[bnodes[k]] * theta.theta(mesh.nodes[bnodes[k]]);
      break;
    case BoundaryOperatorSpec::Kind::NonlocalKernel:
      for (int i = 0; i < nb; ++i) {
        const Vec2& xi = mesh.nodes[bnodes[i]];
        for (int j = 0; j <= i; ++j) {
          const Vec2& xj = mesh.nodes[bnodes[j]];
          const double k_sym = 0.5 * (theta.kernel(xi, xj) + theta.kernel(xj, xi));
          b(i, j) = b(j, i) = w[bnodes[i]] * w[bnodes[j]] * k_sym;
        }
      }
      break;
  }
  return b;
}

ModulusConditionReport theta_modulus_condition_check(const BoundaryOperatorSpec& theta,
                                                     const Mesh& mesh, int trials,
                                                     unsigned seed) {
  const Eigen::MatrixXd b = boundary_pairing_matrix(theta, mesh);
  const std::vector<int> bnodes = mesh.boundary_nodes();
  const int nb = static_cast<int>(bnodes.size());
  const int n = mesh.node_count();

  ModulusConditionReport rep;
  rep.ok = true;
  rep.worst = -std::numeric_limits<double>::infinity();

  auto probe = [&](const Eigen::VectorXd& v) {  // v holds boundary values
    const Eigen::VectorXd av = v.cwiseAbs();
    const double qv = v.dot(b * v);
    const double qav = av.dot(b * av);
    const double gap = qav - qv;  // must stay <= tolerance
    if (gap > rep.worst) {
      rep.worst = gap;
      if (gap > 1e-10 * std::max(1.0, std::abs(qv))) {
        rep.ok = false;
        rep.witness = Eigen::VectorXd::Zero(n);
        for (int k = 0; k < nb; ++k) rep.witness[bnodes[k]] = v[k];
      }
    }
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd v(nb);
    for (int k = 0; k < nb; ++k) v[k] = unif(rng);
    probe(v);
  }

  if (nb <= 8) {
    // exhaustive sign enumeration over a fixed positive profile
    Eigen::VectorXd profile(nb);
    std::mt19937_64 rng2(seed + 1);
    std::uniform_real_distribution<double> pos(0.5, 1.5);
    for (int k = 0; k < nb; ++k) profile[k] = pos(rng2);
    for (unsigned mask = 0; mask < (1u << nb); ++mask) {
      Eigen::VectorXd v = profile;
      for (int k = 0; k < nb; ++k)
        if (mask & (1u << k)) v[k] = -v[k];
      probe(v);
    }
  }
  return rep;
}

}  // namespace robinlab
