#include "robinlab/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "robinlab/errors.hpp"

namespace robinlab {

namespace {

// Gauss-Legendre on [0,1]
struct Rule1D {
  std::vector<double> t, w;
};

const Rule1D& gauss3() {
  static const double s = std::sqrt(3.0 / 5.0);
  static const Rule1D r{{0.5 * (1 - s), 0.5, 0.5 * (1 + s)}, {5.0 / 18, 8.0 / 18, 5.0 / 18}};
  return r;
}

const Rule1D& gauss4() {
  static const double a = 0.3399810435848563;
  static const double b = 0.8611363115940526;
  static const double wa = 0.6521451548625461 / 2.0;
  static const double wb = 0.3478548451374538 / 2.0;
  static const Rule1D r{{0.5 * (1 - b), 0.5 * (1 - a), 0.5 * (1 + a), 0.5 * (1 + b)},
                        {wb, wa, wa, wb}};
  return r;
}

// degree-5 rule on the reference triangle; weights sum to 1 (scale by area)
struct TriRule {
  std::vector<std::array<double, 3>> bary;
  std::vector<double> w;
};

const TriRule& tri7() {
  static const TriRule r = [] {
    TriRule t;
    const double a1 = 0.0597158717897698, b1 = 0.4701420641051151, w1 = 0.1323941527885062;
    const double a2 = 0.7974269853530873, b2 = 0.1012865073234563, w2 = 0.1259391805448271;
    t.bary.push_back({1.0 / 3, 1.0 / 3, 1.0 / 3});
    t.w.push_back(9.0 / 40);
    for (int k = 0; k < 3; ++k) {
      std::array<double, 3> p{b1, b1, b1};
      p[k] = a1;
      t.bary.push_back(p);
      t.w.push_back(w1);
      std::array<double, 3> q{b2, b2, b2};
      q[k] = a2;
      t.bary.push_back(q);
      t.w.push_back(w2);
    }
    return t;
  }();
  return r;
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw QuadratureSingularity(what);
}

}  // namespace

Eigen::MatrixXd assemble_stiffness(const Mesh& mesh, const TensorField& a, int m) {
  if (a.n != mesh.dim) throw DimensionMismatch("tensor dimension does not match mesh");
  if (a.m != m) throw DimensionMismatch("tensor block count does not match m");
  const int n_dof = mesh.node_count() * m;
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n_dof, n_dof);

  for (int c = 0; c < mesh.cell_count(); ++c) {
    const auto& cell = mesh.cells[c];
    const Eigen::MatrixXd flat = a.eval(c, mesh.centroid(c));  // (m*n)x(m*n), index al*n+j
    const double measure = mesh.cell_measure(c);
    const int nv = mesh.dim + 1;

    // constant P1 gradients
    std::vector<std::array<double, 2>> grad(nv);
    if (mesh.dim == 1) {
      const double len = mesh.nodes[cell[1]].x - mesh.nodes[cell[0]].x;
      grad[0] = {-1.0 / len, 0.0};
      grad[1] = {1.0 / len, 0.0};
    } else {
      const Vec2 p0 = mesh.nodes[cell[0]], p1 = mesh.nodes[cell[1]], p2 = mesh.nodes[cell[2]];
      const double twoT = cross(p1 - p0, p2 - p0);  // positive, cells are CCW
      grad[0] = {(p1.y - p2.y) / twoT, (p2.x - p1.x) / twoT};
      grad[1] = {(p2.y - p0.y) / twoT, (p0.x - p2.x) / twoT};
      grad[2] = {(p0.y - p1.y) / twoT, (p1.x - p0.x) / twoT};
    }

    for (int i = 0; i < nv; ++i) {
      for (int j = 0; j < nv; ++j) {
        for (int al = 0; al < m; ++al) {
          for (int be = 0; be < m; ++be) {
            double acc = 0.0;
            for (int p = 0; p < mesh.dim; ++p)
              for (int q = 0; q < mesh.dim; ++q)
                acc += flat(al * mesh.dim + p, be * mesh.dim + q) * grad[i][p] * grad[j][q];
            s(cell[i] * m + al, cell[j] * m + be) += measure * acc;
          }
        }
      }
    }
  }
  return s;
}

MassMatrices assemble_mass(const Mesh& mesh, int m) {
  const int n_dof = mesh.node_count() * m;
  MassMatrices mm;
  mm.consistent = Eigen::MatrixXd::Zero(n_dof, n_dof);
  for (int c = 0; c < mesh.cell_count(); ++c) {
    const auto& cell = mesh.cells[c];
    const double measure = mesh.cell_measure(c);
    const int nv = mesh.dim + 1;
    // exact P1 mass: measure/(nv*(nv+1)) * (1 + delta_ij)
    for (int i = 0; i < nv; ++i)
      for (int j = 0; j < nv; ++j)
        for (int al = 0; al < m; ++al)
          mm.consistent(cell[i] * m + al, cell[j] * m + al) +=
              measure * (i == j ? 2.0 : 1.0) / (nv * (nv + 1));
  }
  mm.lumped = mm.consistent.rowwise().sum();
  return mm;
}

MassMatrices assemble_mass(const Mesh& mesh, const ScalarPotential& w, int m) {
  const int n_dof = mesh.node_count() * m;
  MassMatrices mm;
  mm.consistent = Eigen::MatrixXd::Zero(n_dof, n_dof);
  for (int c = 0; c < mesh.cell_count(); ++c) {
    const auto& cell = mesh.cells[c];
    const double measure = mesh.cell_measure(c);
    if (mesh.dim == 1) {
      const Vec2 p0 = mesh.nodes[cell[0]], p1 = mesh.nodes[cell[1]];
      for (size_t q = 0; q < gauss3().t.size(); ++q) {
        const double t = gauss3().t[q];
        const Vec2 x = p0 + t * (p1 - p0);
        const double v = w.eval(x);
        require_finite(v, "potential is singular at a quadrature point");
        if (v < 0 && !w.allow_negative)
          throw NegativePotential("potential is negative at a quadrature point");
        const double phi[2] = {1 - t, t};
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            for (int al = 0; al < m; ++al)
              mm.consistent(cell[i] * m + al, cell[j] * m + al) +=
                  measure * gauss3().w[q] * v * phi[i] * phi[j];
      }
    } else {
      const Vec2 p0 = mesh.nodes[cell[0]], p1 = mesh.nodes[cell[1]], p2 = mesh.nodes[cell[2]];
      const auto& rule = tri7();
      for (size_t q = 0; q < rule.w.size(); ++q) {
        const auto& bc = rule.bary[q];
        const Vec2 x = bc[0] * p0 + bc[1] * p1 + bc[2] * p2;
        const double v = w.eval(x);
        require_finite(v, "potential is singular at a quadrature point");
        if (v < 0 && !w.allow_negative)
          throw NegativePotential("potential is negative at a quadrature point");
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            for (int al = 0; al < m; ++al)
              mm.consistent(cell[i] * m + al, cell[j] * m + al) +=
                  measure * rule.w[q] * v * bc[i] * bc[j];
      }
    }
  }
  mm.lumped = mm.consistent.rowwise().sum();
  return mm;
}

Eigen::MatrixXd assemble_boundary(const Mesh& mesh, const BoundaryOperatorSpec& theta, int m) {
  const int n_dof = mesh.node_count() * m;
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n_dof, n_dof);
  using Kind = BoundaryOperatorSpec::Kind;
  if (theta.kind == Kind::Zero || theta.kind == Kind::DirichletLimit) return b;

  const auto& facets = mesh.boundary_facets;

  if (theta.kind == Kind::LocalMultiplication) {
    for (const auto& f : facets) {
      if (f.node_count == 1) {
        const double v = theta.theta(mesh.nodes[f.nodes[0]]);
        require_finite(v, "theta is singular at a boundary atom");
        for (int al = 0; al < m; ++al) b(f.nodes[0] * m + al, f.nodes[0] * m + al) += v;
      } else {
        const Vec2 p = mesh.nodes[f.nodes[0]], q = mesh.nodes[f.nodes[1]];
        for (size_t g = 0; g < gauss4().t.size(); ++g) {
          const double t = gauss4().t[g];
          const Vec2 x = p + t * (q - p);
          const double v = theta.theta(x);
          require_finite(v, "theta is singular at a boundary quadrature point");
          const double phi[2] = {1 - t, t};
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
              for (int al = 0; al < m; ++al)
                b(f.nodes[i] * m + al, f.nodes[j] * m + al) +=
                    f.measure * gauss4().w[g] * v * phi[i] * phi[j];
        }
      }
    }
    return b;
  }

  // NonlocalKernel: double facet loop with mirrored kernel evaluations so the
  // assembled matrix is exactly symmetric.
  const int nf = static_cast<int>(facets.size());
  for (int e = 0; e < nf; ++e) {
    for (int f = e; f < nf; ++f) {
      const auto& fe = facets[e];
      const auto& ff = facets[f];
      if (fe.node_count == 1 && ff.node_count == 1) {
        const double v = theta.kernel(mesh.nodes[fe.nodes[0]], mesh.nodes[ff.nodes[0]]);
        require_finite(v, "boundary kernel is singular at an atom pair");
        for (int al = 0; al < m; ++al) {
          b(fe.nodes[0] * m + al, ff.nodes[0] * m + al) += v;
          if (e != f) b(ff.nodes[0] * m + al, fe.nodes[0] * m + al) += v;
        }
        continue;
      }
      const auto& rule = gauss4();
      const int ng = static_cast<int>(rule.t.size());
      const Vec2 pe = mesh.nodes[fe.nodes[0]], qe = mesh.nodes[fe.nodes[1]];
      const Vec2 pf = mesh.nodes[ff.nodes[0]], qf = mesh.nodes[ff.nodes[1]];
      // kernel values on the product grid; mirrored within a facet
      std::vector<std::vector<double>> kv(ng, std::vector<double>(ng));
      for (int gp = 0; gp < ng; ++gp) {
        for (int gq = 0; gq < ng; ++gq) {
          if (e == f && gq < gp) {
            kv[gp][gq] = kv[gq][gp];
            continue;
          }
          const Vec2 xi = pe + rule.t[gp] * (qe - pe);
          const Vec2 eta = pf + rule.t[gq] * (qf - pf);
          kv[gp][gq] = theta.kernel(xi, eta);
          require_finite(kv[gp][gq], "boundary kernel is singular at a quadrature pair");
        }
      }
      Eigen::Matrix2d block = Eigen::Matrix2d::Zero();
      for (int gp = 0; gp < ng; ++gp) {
        for (int gq = 0; gq < ng; ++gq) {
          const double c = fe.measure * ff.measure * rule.w[gp] * rule.w[gq] * kv[gp][gq];
          const double phie[2] = {1 - rule.t[gp], rule.t[gp]};
          const double phif[2] = {1 - rule.t[gq], rule.t[gq]};
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) block(i, j) += c * phie[i] * phif[j];
        }
      }
      // The same-facet block is symmetric up to summation order; make it so
      // exactly, or roundoff leaks into the assembled symmetry.
      if (e == f) block = Eigen::Matrix2d(0.5 * (block + block.transpose()));
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int al = 0; al < m; ++al) {
            b(fe.nodes[i] * m + al, ff.nodes[j] * m + al) += block(i, j);
            if (e != f) b(ff.nodes[j] * m + al, fe.nodes[i] * m + al) += block(i, j);
          }
    }
  }
  return b;
}

OperatorPencil make_pencil(const Mesh& mesh, const Eigen::MatrixXd& S, const MassMatrices& mass,
                           const Eigen::MatrixXd& B, const Eigen::MatrixXd& MV,
                           BoundaryCondition bc, int m) {
  const int n_full = mesh.node_count() * m;
  if (S.rows() != n_full || mass.consistent.rows() != n_full || B.rows() != n_full ||
      MV.rows() != n_full)
    throw DimensionMismatch("pencil inputs disagree with the mesh dof count");

  OperatorPencil p;
  p.m = m;
  p.dim = mesh.dim;
  p.n_full = n_full;
  p.bc = bc;
  p.nodes = mesh.nodes;
  p.weights_full = assemble_mass(mesh, m).lumped;
  for (int node : mesh.boundary_nodes())
    for (int al = 0; al < m; ++al) p.boundary_dofs.push_back(node * m + al);

  if (bc != BoundaryCondition::Dirichlet) {
    p.S = S;
    p.M = mass.consistent;
    p.M_lumped = mass.lumped;
    p.B = B;
    p.MV = MV;
    p.free_dofs.resize(n_full);
    for (int i = 0; i < n_full; ++i) p.free_dofs[i] = i;
    return p;
  }

  std::vector<char> eliminated(n_full, 0);
  for (int d : p.boundary_dofs) eliminated[d] = 1;
  for (int i = 0; i < n_full; ++i)
    (eliminated[i] ? p.dirichlet_dofs : p.free_dofs).push_back(i);
  const int n_red = static_cast<int>(p.free_dofs.size());
  if (n_red == 0) throw Error("Dirichlet elimination leaves no degrees of freedom");

  auto reduce = [&](const Eigen::MatrixXd& a) {
    Eigen::MatrixXd r(n_red, n_red);
    for (int i = 0; i < n_red; ++i)
      for (int j = 0; j < n_red; ++j) r(i, j) = a(p.free_dofs[i], p.free_dofs[j]);
    return r;
  };
  p.S = reduce(S);
  p.M = reduce(mass.consistent);
  p.B = Eigen::MatrixXd::Zero(n_red, n_red);
  p.MV = reduce(MV);
  p.M_lumped.resize(n_red);
  for (int i = 0; i < n_red; ++i) p.M_lumped[i] = mass.lumped[p.free_dofs[i]];
  return p;
}

OperatorPencil make_pencil(const Mesh& mesh, const TensorField& a,
                           const BoundaryOperatorSpec& theta, const ScalarPotential* potential,
                           int m) {
  const Eigen::MatrixXd S = assemble_stiffness(mesh, a, m);
  const MassMatrices mass = assemble_mass(mesh, m);
  const Eigen::MatrixXd B = assemble_boundary(mesh, theta, m);
  const int n_dof = mesh.node_count() * m;
  const Eigen::MatrixXd MV = potential ? assemble_mass(mesh, *potential, m).consistent
                                       : Eigen::MatrixXd::Zero(n_dof, n_dof);
  BoundaryCondition bc = BoundaryCondition::Robin;
  switch (theta.kind) {
    case BoundaryOperatorSpec::Kind::Zero:
      bc = BoundaryCondition::Neumann;
      break;
    case BoundaryOperatorSpec::Kind::DirichletLimit:
      bc = BoundaryCondition::Dirichlet;
      break;
    default:
      bc = BoundaryCondition::Robin;
  }
  return make_pencil(mesh, S, mass, B, MV, bc, m);
}

double coercivity_constant(const OperatorPencil& p) {
  const Eigen::MatrixXd lhs = (5.0 / 6.0) * p.S + p.B;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(lhs, p.M, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw SingularMass("mass matrix is not positive definite");
  return 1.0 / 6.0 - es.eigenvalues().minCoeff();
}

TraceInequalityResult trace_inequality_constants(const Mesh& mesh,
                                                 const std::vector<double>& eps_grid) {
  const Eigen::MatrixXd S = assemble_stiffness(mesh, TensorField::identity(mesh.dim), 1);
  const MassMatrices mass = assemble_mass(mesh, 1);
  const Eigen::MatrixXd B1 = assemble_boundary(mesh, BoundaryOperatorSpec::local(1.0), 1);

  TraceInequalityResult res;
  for (double eps : eps_grid) {
    if (!(eps > 0)) throw Error("trace inequality requires eps > 0");
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(
        B1 - eps * S, mass.consistent, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw SingularMass("mass matrix is not positive definite");
    res.beta.emplace_back(eps, es.eigenvalues().maxCoeff());
  }
  // least-squares slope of log beta against log(1/eps)
  const int k = static_cast<int>(res.beta.size());
  if (k >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [eps, beta] : res.beta) {
      const double x = std::log(1.0 / eps), y = std::log(std::max(beta, 1e-300));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    res.growth_exponent = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  }
  return res;
}

BoundaryFunctional weak_neumann_trace(const OperatorPencil& p, const Eigen::VectorXd& u,
                                      const Eigen::VectorXd& f, MassKind mass) {
  if (u.size() != p.size() || f.size() != p.size() || p.size() != p.n_full)
    throw DimensionMismatch("weak trace requires an uneliminated pencil and matching sizes");
  const Eigen::VectorXd mf =
      mass == MassKind::Lumped ? (p.M_lumped.asDiagonal() * f).eval() : (p.M * f).eval();
  const Eigen::VectorXd r = p.S * u - mf;
  BoundaryFunctional out;
  out.values = Eigen::VectorXd::Zero(p.size());
  out.boundary_dofs = p.boundary_dofs;
  for (int d : p.boundary_dofs) out.values[d] = r[d];
  return out;
}

void write_matrix_coordinate(const Eigen::MatrixXd& a, std::ostream& out) {
  out << "# rows=" << a.rows() << " cols=" << a.cols() << "\n";
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0.0) out << i << " " << j << " " << a(i, j) << "\n";
}

}  // namespace robinlab
