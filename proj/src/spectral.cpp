#include "robinlab/spectral.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>

#include "robinlab/errors.hpp"

namespace robinlab {

namespace {

// largest-magnitude entry, lowest index on ties; flip so it is positive
void sign_normalize(Eigen::MatrixXd& v) {
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    Eigen::Index best = 0;
    double mag = std::abs(v(0, k));
    for (Eigen::Index i = 1; i < v.rows(); ++i) {
      if (std::abs(v(i, k)) > mag) {
        mag = std::abs(v(i, k));
        best = i;
      }
    }
    if (v(best, k) < 0) v.col(k) = -v.col(k);
  }
}

KernelGrid embed_kernel(const SpectralDecomposition& d, Eigen::MatrixXd reduced, KernelKind kind,
                        double parameter) {
  if (d.m != 1) throw Error("kernel synthesis is defined for scalar problems (m = 1)");
  KernelGrid grid;
  grid.kind = kind;
  grid.parameter = parameter;
  grid.nodes = d.nodes;
  grid.dim = d.dim;
  grid.weights = d.weights_full;
  grid.bc = d.bc;
  if (static_cast<int>(d.free_dofs.size()) == d.n_full) {
    grid.values = std::move(reduced);
    return grid;
  }
  grid.values = Eigen::MatrixXd::Zero(d.n_full, d.n_full);
  const int nr = static_cast<int>(d.free_dofs.size());
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nr; ++j) grid.values(d.free_dofs[i], d.free_dofs[j]) = reduced(i, j);
  return grid;
}

}  // namespace

SpectralDecomposition eigensolve(const OperatorPencil& p, MassKind mass) {
  SpectralDecomposition d;
  d.mass_kind = mass;
  d.free_dofs = p.free_dofs;
  d.n_full = p.n_full;
  d.m = p.m;
  d.dim = p.dim;
  d.bc = p.bc;
  d.nodes = p.nodes;
  d.weights_full = p.weights_full;

  const Eigen::MatrixXd h = p.matrix();
  if (mass == MassKind::Lumped) {
    if (p.M_lumped.minCoeff() <= 0)
      throw SingularMass("lumped mass has a nonpositive weight");
    const Eigen::VectorXd isqrt = p.M_lumped.cwiseSqrt().cwiseInverse();
    Eigen::MatrixXd ht = isqrt.asDiagonal() * h * isqrt.asDiagonal();
    ht = 0.5 * (ht + ht.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ht);
    if (es.info() != Eigen::Success) throw Error("eigensolver failed to converge");
    d.eigenvalues = es.eigenvalues();
    d.V = isqrt.asDiagonal() * es.eigenvectors();
    d.mass = Eigen::MatrixXd(p.M_lumped.asDiagonal());
  } else {
    Eigen::LLT<Eigen::MatrixXd> llt(p.M);
    if (llt.info() != Eigen::Success)
      throw SingularMass("consistent mass is not positive definite");
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(h, p.M);
    if (es.info() != Eigen::Success) throw Error("eigensolver failed to converge");
    d.eigenvalues = es.eigenvalues();
    d.V = es.eigenvectors();
    d.mass = p.M;
  }
  sign_normalize(d.V);
  return d;
}

KernelGrid heat_kernel(const SpectralDecomposition& d, double t) {
  if (t < 0) throw Error("heat kernel requires t >= 0");
  const Eigen::VectorXd e = (-t * d.eigenvalues.array()).exp();
  Eigen::MatrixXd k = d.V * e.asDiagonal() * d.V.transpose();
  return embed_kernel(d, std::move(k), KernelKind::Heat, t);
}

KernelGrid green_kernel(const SpectralDecomposition& d, double lambda) {
  if (d.eigenvalues[0] + lambda <= 0)
    throw ShiftAtSpectrum("lambda does not lie to the right of the spectrum");
  const Eigen::VectorXd r = (d.eigenvalues.array() + lambda).inverse();
  Eigen::MatrixXd g = d.V * r.asDiagonal() * d.V.transpose();
  return embed_kernel(d, std::move(g), KernelKind::Green, lambda);
}

Eigen::MatrixXd semigroup_action(const SpectralDecomposition& d, double t) {
  if (t < 0) throw Error("semigroup action requires t >= 0");
  const Eigen::VectorXd e = (-t * d.eigenvalues.array()).exp();
  return d.V * e.asDiagonal() * d.V.transpose() * d.mass;
}

double heat_trace(const SpectralDecomposition& d, double t) {
  return (-t * d.eigenvalues.array()).exp().sum();
}

Eigen::MatrixXd trotter_kato(const OperatorPencil& pa, const Eigen::VectorXd& bv, double t,
                             int steps, MassKind mass) {
  if (steps < 1) throw Error("trotter_kato requires at least one step");
  if (bv.size() != pa.size()) throw DimensionMismatch("potential diagonal has the wrong length");
  const SpectralDecomposition d = eigensolve(pa, mass);
  const double s = t / steps;
  const Eigen::MatrixXd e_step = semigroup_action(d, s);
  const Eigen::VectorXd d_step = (-s * bv.array()).exp();
  const Eigen::MatrixXd step = e_step * d_step.asDiagonal();
  Eigen::MatrixXd prod = Eigen::MatrixXd::Identity(pa.size(), pa.size());
  for (int k = 0; k < steps; ++k) prod = (prod * step).eval();
  return prod;
}

GroundState ground_state(const SpectralDecomposition& d) {
  GroundState g;
  g.lambda0 = d.eigenvalues[0];
  g.gap = d.size() > 1 ? d.eigenvalues[1] - d.eigenvalues[0]
                       : std::numeric_limits<double>::infinity();
  g.simple = g.gap > 1e-8 * (1.0 + std::abs(g.lambda0));
  const Eigen::VectorXd phi = d.V.col(0);
  g.one_signed = phi.minCoeff() > 0.0;  // columns are sign-normalized
  g.phi0 = Eigen::VectorXd::Zero(d.n_full);
  for (size_t i = 0; i < d.free_dofs.size(); ++i) g.phi0[d.free_dofs[i]] = phi[i];
  return g;
}

void write_kernel_csv(const KernelGrid& grid, std::ostream& out) {
  const int n = static_cast<int>(grid.values.rows());
  if (grid.dim == 1) {
    out << "xi,xj,value\n";
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out << grid.nodes[i].x << "," << grid.nodes[j].x << "," << grid.values(i, j) << "\n";
  } else {
    out << "xi,yi,xj,yj,value\n";
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out << grid.nodes[i].x << "," << grid.nodes[i].y << "," << grid.nodes[j].x << ","
            << grid.nodes[j].y << "," << grid.values(i, j) << "\n";
  }
}

void write_kernel_binary(const KernelGrid& grid, std::ostream& out) {
  const std::uint32_t rows = static_cast<std::uint32_t>(grid.values.rows());
  const std::uint32_t cols = static_cast<std::uint32_t>(grid.values.cols());
  const double parameter = grid.parameter;
  out.write(reinterpret_cast<const char*>(&rows), 4);
  out.write(reinterpret_cast<const char*>(&cols), 4);
  out.write(reinterpret_cast<const char*>(&parameter), 8);
  for (std::uint32_t i = 0; i < rows; ++i)
    for (std::uint32_t j = 0; j < cols; ++j) {
      const double v = grid.values(i, j);
      out.write(reinterpret_cast<const char*>(&v), 8);
    }
}

}  // namespace robinlab
