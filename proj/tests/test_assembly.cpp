#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "robinlab/assembly.hpp"
#include "robinlab/errors.hpp"
#include "robinlab/geometry.hpp"
#include "robinlab/spectral.hpp"
#include "test_helpers.hpp"

using namespace robinlab;

namespace {

// Interval [0,1] split into two cells: all closed-form matrices are known.
Mesh two_cell_interval() { return oracle::interval_mesh(0.5); }

double loewner_min_eig(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace

TEST_CASE("closed-form P1 matrices on the two-cell interval") {
  const Mesh mesh = two_cell_interval();

  SUBCASE("stiffness") {
    const Eigen::MatrixXd s = assemble_stiffness(mesh, TensorField::identity(1));
    Eigen::Matrix3d expected;
    expected << 2, -2, 0, -2, 4, -2, 0, -2, 2;
    CHECK((s - expected).cwiseAbs().maxCoeff() <= 1e-13);
  }

  SUBCASE("consistent and lumped mass") {
    const MassMatrices mass = assemble_mass(mesh);
    Eigen::Matrix3d expected;
    expected << 2, 1, 0, 1, 4, 1, 0, 1, 2;
    expected /= 12.0;
    CHECK((mass.consistent - expected).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(mass.lumped(0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(mass.lumped(1) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(mass.lumped(2) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(mass.lumped.sum() == doctest::Approx(1.0).epsilon(1e-14));
  }

  SUBCASE("local boundary matrix is two atoms") {
    const Eigen::MatrixXd b = assemble_boundary(mesh, BoundaryOperatorSpec::local(3.0));
    Eigen::Matrix3d expected = Eigen::Vector3d(3, 0, 3).asDiagonal();
    CHECK((b - expected).cwiseAbs().maxCoeff() <= 1e-14);
  }

  SUBCASE("constant kernel couples the two atoms") {
    const auto op = BoundaryOperatorSpec::nonlocal([](const Vec2&, const Vec2&) { return 1.0; });
    const Eigen::MatrixXd b = assemble_boundary(mesh, op);
    Eigen::Matrix3d expected;
    expected << 1, 0, 1, 0, 0, 0, 1, 0, 1;
    CHECK((b - expected).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("stiffness annihilates constants on every mesh") {
  for (const Mesh& mesh : {oracle::interval_mesh(0.1), oracle::square_mesh(0.25)}) {
    const Eigen::MatrixXd s = assemble_stiffness(mesh, TensorField::identity(mesh.dim));
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(s.rows());
    CHECK((s * ones).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("right-triangle grid stiffness is the five-point stencil") {
  const Mesh mesh = oracle::square_mesh(0.5);
  const Eigen::MatrixXd s = assemble_stiffness(mesh, TensorField::identity(2));
  // Locate the single interior node of the 3x3 grid.
  int center = -1;
  for (int i = 0; i < mesh.node_count(); ++i)
    if (!mesh.on_boundary[i]) center = i;
  REQUIRE(center >= 0);
  CHECK(s(center, center) == doctest::Approx(4.0).epsilon(1e-13));
  for (int j = 0; j < mesh.node_count(); ++j) {
    if (j == center) continue;
    const double dx = mesh.nodes[j].x - mesh.nodes[center].x;
    const double dy = mesh.nodes[j].y - mesh.nodes[center].y;
    if (std::abs(std::abs(dx) + std::abs(dy) - 0.5) < 1e-12) {
      CHECK(s(center, j) == doctest::Approx(-1.0).epsilon(1e-13));  // axis neighbor
    } else {
      CHECK(std::abs(s(center, j)) <= 1e-13);  // diagonal neighbor or farther
    }
  }
}

TEST_CASE("weighted mass") {
  const Mesh mesh = oracle::interval_mesh(0.125);

  SUBCASE("weight x integrates to one half") {
    ScalarPotential w;
    w.eval = [](const Vec2& p) { return p.x; };
    const MassMatrices mass = assemble_mass(mesh, w);
    CHECK(mass.consistent.sum() == doctest::Approx(0.5).epsilon(1e-10));
  }

  SUBCASE("negative weight rejected unless opted in") {
    ScalarPotential w;
    w.eval = [](const Vec2& p) { return p.x - 0.5; };
    CHECK_THROWS_AS(assemble_mass(mesh, w), NegativePotential);
    w.allow_negative = true;
    CHECK_NOTHROW(assemble_mass(mesh, w));
  }
}

TEST_CASE("square boundary matrix integrates theta over the perimeter") {
  const Mesh mesh = oracle::square_mesh(0.25);
  const Eigen::MatrixXd b = assemble_boundary(mesh, BoundaryOperatorSpec::local(1.0));
  CHECK(b.sum() == doctest::Approx(4.0).epsilon(1e-10));
  CHECK((b - b.transpose()).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("singular theta at quadrature nodes is rejected") {
  const Mesh mesh = oracle::square_mesh(0.5);
  const auto op = BoundaryOperatorSpec::local(
      [](const Vec2&) { return std::numeric_limits<double>::infinity(); });
  CHECK_THROWS_AS(assemble_boundary(mesh, op), QuadratureSingularity);
}

TEST_CASE("pencil realizations of the boundary regimes") {
  const Mesh mesh = two_cell_interval();

  SUBCASE("zero coupling pencil is the pure stiffness") {
    const OperatorPencil p = oracle::interval_pencil(mesh, BoundaryOperatorSpec::zero());
    CHECK(p.bc == BoundaryCondition::Neumann);
    CHECK((p.matrix() - p.S).cwiseAbs().maxCoeff() == 0.0);
    CHECK((p.matrix() * Eigen::VectorXd::Ones(3)).cwiseAbs().maxCoeff() <= 1e-13);
  }

  SUBCASE("hard-constraint pencil reduces to one degree of freedom") {
    const OperatorPencil p = oracle::interval_pencil(mesh, BoundaryOperatorSpec::dirichlet());
    REQUIRE(p.size() == 1);
    CHECK(p.matrix()(0, 0) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(p.M(0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(p.free_dofs == std::vector<int>{1});
    CHECK(p.dirichlet_dofs == std::vector<int>{0, 2});
    const SpectralDecomposition d = eigensolve(p, MassKind::Consistent);
    CHECK(d.eigenvalues(0) == doctest::Approx(12.0).epsilon(1e-12));
  }

  SUBCASE("robin pencil adds the boundary atoms") {
    const OperatorPencil p = oracle::interval_pencil(mesh, BoundaryOperatorSpec::local(1.0));
    const Eigen::MatrixXd expected =
        assemble_stiffness(mesh, TensorField::identity(1)) +
        Eigen::MatrixXd(Eigen::Vector3d(1, 0, 1).asDiagonal());
    CHECK((p.matrix() - expected).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("assembled matrices are symmetric") {
  const Mesh mesh = oracle::square_mesh(0.25);
  const Eigen::MatrixXd s = assemble_stiffness(mesh, TensorField::checkerboard(2, 1, 2, 0.5));
  const MassMatrices mass = assemble_mass(mesh);
  const Eigen::MatrixXd b = assemble_boundary(
      mesh, BoundaryOperatorSpec::nonlocal([](const Vec2& x, const Vec2& y) {
        return std::exp(-(x.x - y.x) * (x.x - y.x) - (x.y - y.y) * (x.y - y.y));
      }));
  for (const Eigen::MatrixXd* a : {&s, &mass.consistent, &b})
    CHECK((*a - a->transpose()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("boundary matrices are Loewner-ordered in theta") {
  const Mesh mesh = oracle::square_mesh(0.25);
  const Eigen::MatrixXd b1 = assemble_boundary(mesh, BoundaryOperatorSpec::local(1.0));
  const Eigen::MatrixXd b2 = assemble_boundary(mesh, BoundaryOperatorSpec::local(5.0));
  CHECK(loewner_min_eig(b1) >= -1e-12);
  CHECK(loewner_min_eig(b2 - b1) >= -1e-12);
}

TEST_CASE("hard-constraint eigenvalues converge at second order") {
  // lambda_0 -> pi^2; the consistent-mass Galerkin error contracts by ~4 per
  // mesh halving.
  std::vector<double> errors;
  for (double h : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
    const Mesh mesh = oracle::interval_mesh(h);
    const OperatorPencil p = oracle::interval_pencil(mesh, BoundaryOperatorSpec::dirichlet());
    const SpectralDecomposition d = eigensolve(p, MassKind::Consistent);
    errors.push_back(std::abs(d.eigenvalues(0) - oracle::kPi * oracle::kPi));
  }
  CHECK(errors[0] / errors[1] == doctest::Approx(4.0).epsilon(0.15));
  CHECK(errors[1] / errors[2] == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("coercivity constant") {
  const Mesh mesh = oracle::interval_mesh(0.0625);

  SUBCASE("zero coupling gives exactly one sixth") {
    const OperatorPencil p = oracle::interval_pencil(mesh, BoundaryOperatorSpec::zero());
    CHECK(coercivity_constant(p) == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
  }

  SUBCASE("hard constraint can only lower it") {
    const OperatorPencil p = oracle::interval_pencil(mesh, BoundaryOperatorSpec::dirichlet());
    CHECK(coercivity_constant(p) <= 1.0 / 6.0 + 1e-12);
  }

  SUBCASE("negative coupling needs more than one sixth") {
    const OperatorPencil p = oracle::interval_pencil(mesh, BoundaryOperatorSpec::local(-1.0));
    const double kappa = coercivity_constant(p);
    CHECK(std::isfinite(kappa));
    CHECK(kappa > 1.0 / 6.0);
  }
}

TEST_CASE("trace inequality constants") {
  const Mesh mesh = oracle::interval_mesh(1.0 / 256);

  SUBCASE("the constant witness forces beta >= 2") {
    const TraceInequalityResult r = trace_inequality_constants(mesh, {1.0, 0.1, 0.01});
    for (const auto& [eps, beta] : r.beta) CHECK(beta >= 2.0 - 1e-10);
  }

  SUBCASE("beta grows like 1/eps") {
    // On the wide grid the eps = 1 value saturates near the witness floor,
    // dragging the fitted slope a little under one; a grid away from the
    // floor shows the clean first-order growth.
    const TraceInequalityResult wide = trace_inequality_constants(mesh, {1.0, 0.1, 0.01});
    CHECK(wide.growth_exponent > 0.6);
    CHECK(wide.growth_exponent < 1.1);
    const TraceInequalityResult clean =
        trace_inequality_constants(mesh, {0.3, 0.1, 0.03, 0.01});
    CHECK(clean.growth_exponent == doctest::Approx(1.0).epsilon(0.12));
  }

  SUBCASE("large eps collapses onto the constant-witness ceiling") {
    // Once eps dwarfs the pencil spectrum only the gradient-free direction
    // survives, so beta decreases monotonically toward exactly 2.
    const TraceInequalityResult r = trace_inequality_constants(mesh, {5.0, 10.0, 100.0});
    CHECK(r.beta[0].second >= r.beta[1].second);
    CHECK(r.beta[1].second >= r.beta[2].second);
    CHECK(r.beta[2].second == doctest::Approx(2.0).epsilon(5e-3));
    CHECK(r.beta[2].second >= 2.0 - 1e-10);
  }
}

TEST_CASE("weak conormal trace") {
  const Mesh mesh = oracle::interval_mesh(0.125);
  const OperatorPencil neumann = oracle::interval_pencil(mesh, BoundaryOperatorSpec::zero());
  const int n = mesh.node_count();

  SUBCASE("linear profile reproduces the endpoint slopes") {
    Eigen::VectorXd u(n);
    for (int i = 0; i < n; ++i) u[i] = mesh.nodes[i].x;
    const BoundaryFunctional tr =
        weak_neumann_trace(neumann, u, Eigen::VectorXd::Zero(n));
    CHECK(tr.values(0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(tr.values(n - 1) == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 1; i + 1 < n; ++i) CHECK(tr.values(i) == 0.0);
  }

  SUBCASE("zero-coupling eigenpairs have vanishing conormal trace") {
    const SpectralDecomposition d = eigensolve(neumann);
    for (int k = 0; k < 3; ++k) {
      const Eigen::VectorXd u = d.V.col(k);
      const BoundaryFunctional tr = weak_neumann_trace(neumann, u, d.eigenvalues(k) * u);
      CHECK(tr.values.cwiseAbs().maxCoeff() <= 1e-10 * u.norm());
    }
  }

  SUBCASE("robin eigenpairs satisfy trace + B u = 0") {
    const OperatorPencil robin = oracle::interval_pencil(mesh, BoundaryOperatorSpec::local(2.0));
    const SpectralDecomposition d = eigensolve(robin);
    for (int k = 0; k < 3; ++k) {
      const Eigen::VectorXd u = d.V.col(k);
      const BoundaryFunctional tr = weak_neumann_trace(robin, u, d.eigenvalues(k) * u);
      const Eigen::VectorXd residual = tr.values + robin.B * u;
      CHECK(residual.cwiseAbs().maxCoeff() <= 1e-8 * u.norm());
    }
  }

  SUBCASE("dimension mismatch rejected") {
    CHECK_THROWS_AS(
        weak_neumann_trace(neumann, Eigen::VectorXd::Zero(n - 1), Eigen::VectorXd::Zero(n)),
        DimensionMismatch);
  }
}

TEST_CASE("vector-valued pencil is coercive for Legendre-elliptic coefficients") {
  const Mesh mesh = oracle::interval_mesh(0.125);
  Eigen::Matrix2d flat;  // two equations, one dimension: 2x2 flattened tensor
  flat << 2.0, 0.5, 0.5, 1.0;
  const TensorField a = TensorField::constant(flat, 2, 1);
  const OperatorPencil p = make_pencil(mesh, a, BoundaryOperatorSpec::local(1.0), nullptr, 2);
  REQUIRE(p.size() == 2 * mesh.node_count());
  const double kappa = coercivity_constant(p);
  // The defining inequality makes S + B + kappa* M dominate (1/6)(S + M).
  const Eigen::MatrixXd shifted = p.matrix() + kappa * p.M;
  CHECK(loewner_min_eig(shifted - (p.S + p.M) / 6.0) >= -1e-10);
  CHECK(loewner_min_eig(shifted) > 0.0);
}
