#include "robinlab/pipeline.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "robinlab/assembly.hpp"
#include "robinlab/bounds.hpp"
#include "robinlab/errors.hpp"
#include "robinlab/order.hpp"

namespace robinlab {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

void write_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
    out << content;
  }
  fs::rename(tmp, path);
}

json to_json(const OrderReport& r) {
  json j;
  j["relation"] = r.relation;
  j["tolerance"] = r.tolerance;
  j["worst_violation"] = r.worst_violation;
  json witnesses = json::array();
  if (r.witness_i >= 0) witnesses.push_back(r.witness_i);
  if (r.witness_j >= 0) witnesses.push_back(r.witness_j);
  for (int k : r.witness_indices) witnesses.push_back(k);
  j["witness_indices"] = witnesses;
  j["verdict"] = r.pass ? "pass" : "fail";
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json to_json(const EnvelopeFit& fit) {
  json j;
  j["C"] = fit.constant;
  j["gamma_or_lambda"] = fit.gamma > 0 ? fit.gamma : fit.lambda;
  j["n"] = fit.n;
  j["samples"] = fit.samples_checked;
  j["worst_pair"] = json::array({fit.worst_i, fit.worst_j});
  j["worst_parameter"] = fit.worst_parameter;
  if (!fit.note.empty()) j["note"] = fit.note;
  return j;
}

// One command execution: owns the mesh, the output directory, and the
// accumulating report.
struct Session {
  const ProblemSpec& spec;
  const RunOptions& options;
  unsigned seed;
  double chain_tol;
  double order_tol;
  fs::path dir;
  Mesh mesh;
  MeshQuality quality;
  json report;
  bool all_pass = true;

  Session(const std::string& command, const ProblemSpec& s, const RunOptions& o)
      : spec(s), options(o) {
    seed = o.has_seed ? o.seed : s.seed;
    chain_tol = o.has_tol ? o.tol : s.tolerances.chain;
    order_tol = o.has_tol ? o.tol : s.tolerances.order;
    dir = fs::path(o.out_dir) / spec_hash_hex(s) / command;
    fs::create_directories(dir);
    mesh = build_mesh(s.domain, s.h, /*require_non_obtuse=*/!o.allow_obtuse);
    quality = mesh_quality(mesh);
    report["schema_version"] = 1;
    report["command"] = command;
    report["spec_hash"] = spec_hash_hex(s);
    report["seed"] = seed;
    report["trials"] = s.trials;
    report["tolerances"] = {{"chain", chain_tol}, {"order", order_tol}};
    report["threads"] = o.threads;
    report["mesh"] = {{"nodes", mesh.nodes.size()},
                      {"cells", mesh.cells.size()},
                      {"h_max", quality.h_max},
                      {"max_angle", quality.max_angle},
                      {"non_obtuse", quality.non_obtuse}};
    report["checks"] = json::array();
  }

  void add_check(std::string label, const OrderReport& r) {
    json j = to_json(r);
    j["label"] = std::move(label);
    report["checks"].push_back(std::move(j));
    all_pass = all_pass && r.pass;
  }

  void add_flag(std::string label, bool pass, std::string note) {
    json j;
    j["label"] = std::move(label);
    j["verdict"] = pass ? "pass" : "fail";
    j["note"] = std::move(note);
    report["checks"].push_back(std::move(j));
    all_pass = all_pass && pass;
  }

  const ScalarPotential* potential() const {
    return spec.has_potential ? &spec.potential : nullptr;
  }

  OperatorPencil pencil(const NamedBoundary& nb) const {
    return make_pencil(mesh, spec.coefficient, nb.op, potential());
  }

  void save_text(const std::string& name, const std::string& content) {
    write_atomic(dir / name, content);
  }

  void save_kernel(const std::string& name, const KernelGrid& grid) {
    std::ostringstream os(std::ios::binary);
    write_kernel_binary(grid, os);
    write_atomic(dir / name, os.str());
  }

  const NamedBoundary* find(const std::string& name) const {
    for (const auto& nb : spec.boundary_conditions)
      if (nb.name == name) return &nb;
    return nullptr;
  }

  std::vector<const NamedBoundary*> local_robins() const {
    std::vector<const NamedBoundary*> out;
    for (const auto& nb : spec.boundary_conditions)
      if (nb.name == "robin") out.push_back(&nb);
    std::sort(out.begin(), out.end(),
              [](const NamedBoundary* a, const NamedBoundary* b) { return a->theta < b->theta; });
    return out;
  }

  std::vector<const NamedBoundary*> nonlocals() const {
    std::vector<const NamedBoundary*> out;
    for (const auto& nb : spec.boundary_conditions)
      if (nb.name.rfind("nonlocal", 0) == 0) out.push_back(&nb);
    return out;
  }

  void run_mesh() {
    std::ostringstream os;
    write_mesh_text(mesh, os);
    save_text("mesh.txt", os.str());
    std::ostringstream note;
    note << "h_max " << quality.h_max << ", max angle " << quality.max_angle;
    add_flag("mesh_non_obtuse", quality.non_obtuse || options.allow_obtuse, note.str());
  }

  void run_spectrum() {
    std::vector<SpectralDecomposition> decs;
    for (const auto& nb : spec.boundary_conditions) {
      decs.push_back(eigensolve(pencil(nb)));
      std::ostringstream csv;
      csv << std::setprecision(17) << "k,lambda\n";
      for (int k = 0; k < decs.back().size(); ++k)
        csv << k << "," << decs.back().eigenvalues[k] << "\n";
      save_text(nb.label + "_eigenvalues.csv", csv.str());
    }
    // Min-max bracket along neumann -> ascending robin couplings -> dirichlet.
    std::vector<int> chain;
    for (size_t i = 0; i < spec.boundary_conditions.size(); ++i)
      if (spec.boundary_conditions[i].name == "neumann") chain.push_back(static_cast<int>(i));
    {
      std::vector<std::pair<double, int>> robins;
      for (size_t i = 0; i < spec.boundary_conditions.size(); ++i)
        if (spec.boundary_conditions[i].name == "robin")
          robins.emplace_back(spec.boundary_conditions[i].theta, static_cast<int>(i));
      std::sort(robins.begin(), robins.end());
      for (const auto& [theta, i] : robins) chain.push_back(i);
    }
    for (size_t i = 0; i < spec.boundary_conditions.size(); ++i)
      if (spec.boundary_conditions[i].name == "dirichlet") chain.push_back(static_cast<int>(i));
    if (chain.size() >= 2) {
      OrderReport r;
      r.relation = "eigenvalue_bracket";
      r.tolerance = 1e-12;
      r.worst_violation = std::numeric_limits<double>::infinity();
      r.pass = true;
      for (size_t link = 1; link < chain.size(); ++link) {
        const auto& lo = decs[chain[link - 1]].eigenvalues;
        const auto& hi = decs[chain[link]].eigenvalues;
        const int kmax = static_cast<int>(std::min(lo.size(), hi.size()));
        for (int k = 0; k < kmax; ++k) {
          const double margin = hi[k] - lo[k];
          if (margin < r.worst_violation) {
            r.worst_violation = margin;
            r.witness_i = k;
          }
          r.pass = r.pass && margin >= -1e-12 * (1.0 + std::abs(hi[k]));
        }
      }
      add_check("eigenvalue_bracket", r);
    }
  }

  void run_heat() {
    for (const auto& nb : spec.boundary_conditions) {
      const SpectralDecomposition d = eigensolve(pencil(nb));
      for (size_t ti = 0; ti < spec.t_grid.size(); ++ti) {
        const KernelGrid grid = heat_kernel(d, spec.t_grid[ti]);
        save_kernel(nb.label + "_t" + std::to_string(ti) + ".kern", grid);
        std::ostringstream csv;
        emit_plotdata(grid, PlotAxis::Diagonal, csv);
        save_text(nb.label + "_t" + std::to_string(ti) + "_diagonal.csv", csv.str());
        OrderReport sm = is_sub_markovian(KernelOperator::from_grid(grid), chain_tol);
        std::ostringstream label;
        label << nb.label << "_t" << spec.t_grid[ti] << "_sub_markov";
        add_check(label.str(), sm);
        if (nb.name == "neumann") {
          // Zero boundary coupling conserves mass: rows sum to one exactly.
          const KernelOperator op = KernelOperator::from_grid(grid);
          const Eigen::VectorXd sums = op.apply(Eigen::VectorXd::Ones(op.space.size()));
          const double dev = (sums.array() - 1.0).abs().maxCoeff();
          std::ostringstream note;
          note << "max |row sum - 1| = " << dev;
          add_flag(nb.label + "_t" + std::to_string(ti) + "_conservation", dev <= 1e-10,
                   note.str());
        }
      }
    }
  }

  void run_green() {
    for (const auto& nb : spec.boundary_conditions) {
      const OperatorPencil p = pencil(nb);
      const SpectralDecomposition d = eigensolve(p);
      for (size_t li = 0; li < spec.lambda_grid.size(); ++li) {
        const double lambda = spec.lambda_grid[li];
        const KernelGrid grid = green_kernel(d, lambda);
        save_kernel(nb.label + "_lambda" + std::to_string(li) + ".kern", grid);
        std::ostringstream csv;
        emit_plotdata(grid, PlotAxis::DistanceScatter, csv);
        save_text(nb.label + "_lambda" + std::to_string(li) + "_scatter.csv", csv.str());
        // Wiring check: the synthesized resolvent inverts the shifted pencil.
        const Eigen::VectorXd shifted = (d.eigenvalues.array() + lambda).inverse();
        const Eigen::MatrixXd g = d.V * shifted.asDiagonal() * d.V.transpose();
        const Eigen::MatrixXd residual =
            g * (p.matrix() + lambda * d.mass) -
            Eigen::MatrixXd::Identity(p.size(), p.size());
        const double dev = residual.cwiseAbs().maxCoeff();
        std::ostringstream note;
        note << "max |G (H + lambda M) - I| = " << dev;
        add_flag(nb.label + "_lambda" + std::to_string(li) + "_resolvent_identity", dev <= 1e-8,
                 note.str());
      }
    }
  }

  void run_verify_chain() {
    for (const auto& nb : spec.boundary_conditions) {
      const ThetaStructureReport st = theta_structure_check(nb.op, mesh);
      std::ostringstream note;
      note << "symmetry defect " << st.symmetry_defect << ", min eigenvalue "
           << st.min_eigenvalue;
      add_flag(nb.label + "_structure", st.selfadjoint && st.nonneg, note.str());
    }
    const NamedBoundary* neumann = find("neumann");
    const NamedBoundary* dirichlet = find("dirichlet");
    if (neumann == nullptr || dirichlet == nullptr)
      throw SpecParseError("verify-chain needs both neumann and dirichlet regimes");
    const auto robins = local_robins();
    const NamedBoundary* theta1 = robins.empty() ? neumann : robins.front();
    const NamedBoundary* theta2 = robins.empty() ? neumann : robins.back();

    const SpectralDecomposition d_n = eigensolve(pencil(*neumann));
    const SpectralDecomposition d_d = eigensolve(pencil(*dirichlet));
    const SpectralDecomposition d_1 = eigensolve(pencil(*theta1));
    const SpectralDecomposition d_2 = eigensolve(pencil(*theta2));

    for (double t : spec.t_grid) {
      OrderReport r = domination_chain_check(heat_kernel(d_d, t), heat_kernel(d_2, t),
                                             heat_kernel(d_1, t), heat_kernel(d_n, t), chain_tol);
      std::ostringstream label;
      label << "heat_chain_t" << t;
      add_check(label.str(), r);
    }
    for (double lambda : spec.lambda_grid) {
      OrderReport r =
          domination_chain_check(green_kernel(d_d, lambda), green_kernel(d_2, lambda),
                                 green_kernel(d_1, lambda), green_kernel(d_n, lambda), chain_tol);
      std::ostringstream label;
      label << "green_chain_lambda" << lambda;
      add_check(label.str(), r);
    }
    // Nonlocal regimes join the comparisons only as far as their hypotheses
    // reach. The modulus contraction of the boundary pairing is the gate: it
    // holds exactly when no pair coupling is positive, which makes the
    // semigroup positivity preserving and ordered above the hard-constraint
    // kernel. The Neumann-side comparison additionally needs the pairing to
    // act nonnegatively on nonnegative traces (all couplings >= 0), so both
    // sides together force a diagonal (effectively local) kernel. Regimes
    // failing the contraction fall outside the comparison theory; their
    // kernels are summarized instead of chained.
    for (const NamedBoundary* nl : nonlocals()) {
      const ModulusConditionReport mc =
          theta_modulus_condition_check(nl->op, mesh, spec.trials, static_cast<unsigned>(seed));
      const Eigen::MatrixXd pairing = boundary_pairing_matrix(nl->op, mesh);
      const bool couplings_nonneg = pairing.minCoeff() >= -order_tol;
      const SpectralDecomposition d_k = eigensolve(pencil(*nl));
      if (mc.ok && couplings_nonneg) {
        for (double t : spec.t_grid) {
          OrderReport r = domination_chain_check(heat_kernel(d_d, t), heat_kernel(d_k, t),
                                                 heat_kernel(d_k, t), heat_kernel(d_n, t),
                                                 chain_tol);
          std::ostringstream label;
          label << nl->label << "_heat_chain_t" << t;
          add_check(label.str(), r);
        }
        for (double lambda : spec.lambda_grid) {
          OrderReport r = domination_chain_check(green_kernel(d_d, lambda),
                                                 green_kernel(d_k, lambda),
                                                 green_kernel(d_k, lambda),
                                                 green_kernel(d_n, lambda), chain_tol);
          std::ostringstream label;
          label << nl->label << "_green_chain_lambda" << lambda;
          add_check(label.str(), r);
        }
      } else if (mc.ok) {
        for (double t : spec.t_grid) {
          OrderReport r = dominates(KernelOperator::from_grid(heat_kernel(d_k, t)),
                                    KernelOperator::from_grid(heat_kernel(d_d, t)), chain_tol);
          std::ostringstream label;
          label << nl->label << "_heat_above_dirichlet_t" << t;
          add_check(label.str(), r);
        }
        for (double lambda : spec.lambda_grid) {
          OrderReport r =
              dominates(KernelOperator::from_grid(green_kernel(d_k, lambda)),
                        KernelOperator::from_grid(green_kernel(d_d, lambda)), chain_tol);
          std::ostringstream label;
          label << nl->label << "_green_above_dirichlet_lambda" << lambda;
          add_check(label.str(), r);
        }
        add_flag(nl->label + "_neumann_side", true,
                 "pairing has negative couplings; only the hard-constraint-side "
                 "comparison applies");
      } else {
        double min_entry = std::numeric_limits<double>::infinity();
        double at_t = 0.0;
        for (double t : spec.t_grid) {
          const double m = heat_kernel(d_k, t).values.minCoeff();
          if (m < min_entry) {
            min_entry = m;
            at_t = t;
          }
        }
        std::ostringstream note;
        note << "modulus contraction fails (worst gap " << mc.worst
             << "); excluded from kernel comparisons; min heat-kernel entry " << min_entry
             << " at t = " << at_t
             << (min_entry < -chain_tol ? " (not positivity preserving, as the failed"
                                          " contraction predicts)"
                                        : "");
        add_flag(nl->label + "_outside_comparison_hypotheses", true, note.str());
      }
    }
  }

  void run_order_props() {
    const OrderSuiteResult suite = order_property_suite(8, spec.trials, seed, order_tol);
    std::ostringstream note;
    note << suite.trials << " trials, " << suite.failures << " failures";
    if (!suite.first_failure.empty()) note << "; first: " << suite.first_failure;
    add_flag("order_property_suite", suite.failures == 0, note.str());
    report["order_suite"] = {{"trials", suite.trials}, {"failures", suite.failures}};

    // Rank-one kernel vanishing at one atom: preserving but not improving,
    // yet strictly positive against probes supported off the zero atom.
    DiscreteMeasureSpace space;
    space.weights = Eigen::Vector3d(1, 2, 1);
    const Eigen::Vector3d profile(1, 0, 2);
    KernelOperator rank_one{space, profile * profile.transpose()};
    const bool preserving = is_positivity_preserving(rank_one, order_tol).pass;
    const bool improving = is_positivity_improving(rank_one, order_tol).pass;
    bool off_atom_positive = true;
    for (int mask = 1; mask < 8; ++mask) {
      if (mask & 2) continue;  // supported off the zero atom
      Eigen::VectorXd f = Eigen::VectorXd::Zero(3);
      for (int i = 0; i < 3; ++i)
        if (mask & (1 << i)) f[i] = 1.0;
      for (int mask2 = 1; mask2 < 8; ++mask2) {
        if (mask2 & 2) continue;
        Eigen::VectorXd g = Eigen::VectorXd::Zero(3);
        for (int i = 0; i < 3; ++i)
          if (mask2 & (1 << i)) g[i] = 1.0;
        off_atom_positive =
            off_atom_positive && f.dot(space.weights.cwiseProduct(rank_one.apply(g))) > 0;
      }
    }
    add_flag("rank_one_atom_example", preserving && !improving && off_atom_positive,
             "preserving without improving; positive against off-atom probes");
  }

  void run_verify_bounds() {
    {
      const double triples[][3] = {{0.0, 1.0, 1.0}, {0.5, 2.0, 0.5}, {1.0, 1.0, 3.0}};
      double worst = 0;
      std::ostringstream note;
      for (const auto& t : triples) {
        const double residual = laplace_transform_identity_check(t[0], t[1], t[2]);
        worst = std::max(worst, residual);
        note << "(" << t[0] << "," << t[1] << "," << t[2] << ") -> " << residual << "  ";
      }
      add_flag("laplace_identity", worst <= 1e-8, note.str());
    }
    {
      double worst = 0;
      for (double nu : {0.0, 0.5, 1.0, 2.0})
        for (double x = 4.0; x <= 8.0 + 1e-9; x += 0.25) {
          const double s = bessel_k_series(nu, x);
          const double c = bessel_k_asymptotic(nu, x);
          worst = std::max(worst, std::abs(s - c) / std::abs(c));
        }
      std::ostringstream note;
      note << "max relative branch disagreement on [4, 8]: " << worst;
      add_flag("bessel_branch_overlap", worst <= 1e-10, note.str());
    }
    {
      double worst = 0;
      for (int k = 0; k <= 24; ++k) {
        const double x = 0.1 * std::pow(500.0, k / 24.0);
        const double exact = std::sqrt(M_PI / (2.0 * x)) * std::exp(-x);
        worst = std::max(worst, std::abs(bessel_k(0.5, x).value - exact) / exact);
      }
      std::ostringstream note;
      note << "max relative error vs closed form on [0.1, 50]: " << worst;
      add_flag("bessel_half_order", worst <= 1e-12, note.str());
    }
    {
      std::vector<double> grid;
      for (int k = 0; k <= 80; ++k) grid.push_back(1e-4 * std::pow(1e6, k / 80.0));
      bool finite = true;
      json fits = json::array();
      for (double nu : {0.0, 0.5, 1.0}) {
        const BesselBoundReport r = bessel_bound_check(nu, grid);
        finite = finite && r.finite;
        fits.push_back({{"nu", r.nu}, {"C", r.constant}, {"worst_x", r.worst_x}});
      }
      report["bessel_bounds"] = fits;
      add_flag("bessel_envelope_finite", finite, "closed-form envelope constants recorded");
    }
    {
      const EllipticityReport ell = check_ellipticity(spec.coefficient, mesh);
      const NamedBoundary* neumann = find("neumann");
      const NamedBoundary* primary =
          neumann != nullptr ? neumann : &spec.boundary_conditions.front();
      const SpectralDecomposition d = eigensolve(pencil(*primary));
      std::vector<KernelGrid> grids;
      for (double t : spec.t_grid) grids.push_back(heat_kernel(d, t));
      const EnvelopeFit heat_fit =
          gaussian_envelope_fit(grids, ell.a1, spec.gamma, mesh.dim);
      report["gaussian_envelope"] = to_json(heat_fit);
      add_flag("gaussian_envelope_finite",
               std::isfinite(heat_fit.constant) && heat_fit.constant > 0,
               "fitted constant recorded");
      const EnvelopeFit green_fit =
          green_envelope_fit(green_kernel(d, spec.lambda_grid.front()),
                             spec.lambda_grid.front(), mesh.dim);
      report["green_envelope"] = to_json(green_fit);
      add_flag("green_envelope_finite",
               std::isfinite(green_fit.constant) && green_fit.constant > 0,
               "fitted constant recorded");
      const NamedBoundary* dirichlet = find("dirichlet");
      if (dirichlet != nullptr) {
        const SpectralDecomposition dd = eigensolve(pencil(*dirichlet));
        std::vector<KernelGrid> dgrids;
        for (double t : spec.t_grid) dgrids.push_back(heat_kernel(dd, t));
        const EnvelopeFit dfit = gaussian_envelope_fit(dgrids, ell.a1, spec.gamma, mesh.dim);
        report["gaussian_envelope_dirichlet"] = to_json(dfit);
        std::ostringstream note;
        note << "C_D = " << dfit.constant << " vs C = " << heat_fit.constant;
        add_flag("envelope_ordering", dfit.constant <= heat_fit.constant * (1.0 + 1e-9),
                 note.str());
      }
    }
  }

  void run_dirichlet_limit() {
    if (spec.vartheta_grid.empty())
      throw SpecParseError("dirichlet-limit needs a 'vartheta_grid'");
    const DirichletLimitReport r = dirichlet_limit_driver(
        mesh, spec.coefficient, potential(), spec.vartheta_grid, spec.lambda_grid.front());
    json deltas = json::array();
    for (size_t k = 0; k < r.deltas.size(); ++k)
      deltas.push_back({{"vartheta", r.varthetas[k]}, {"delta", r.deltas[k]}});
    report["dirichlet_limit"] = {{"deltas", deltas},
                                 {"decay_exponent", r.decay_exponent},
                                 {"strictly_decreasing", r.strictly_decreasing}};
    std::ostringstream note;
    note << "decay exponent " << r.decay_exponent;
    add_flag("dirichlet_limit_monotone", r.pass, note.str());
  }

  void run_constants() {
    json constants;
    for (const auto& nb : spec.boundary_conditions)
      constants["coercivity"][nb.label] = coercivity_constant(pencil(nb));
    const TraceInequalityResult tr = trace_inequality_constants(mesh, {1.0, 0.1, 0.01});
    json betas = json::array();
    for (const auto& [eps, beta] : tr.beta)
      betas.push_back({{"eps", eps}, {"beta", beta}});
    constants["trace_inequality"] = {{"beta", betas},
                                     {"growth_exponent", tr.growth_exponent}};
    report["constants"] = constants;
  }

  RunStatus finish() {
    report["overall_pass"] = all_pass;
    write_atomic(dir / "report.json", report.dump(2) + "\n");
    return all_pass ? RunStatus::Pass : RunStatus::CheckFailed;
  }
};

}  // namespace

RunStatus run_command(const std::string& command, const ProblemSpec& spec,
                      const RunOptions& options) {
  if (options.threads > 0) Eigen::setNbThreads(options.threads);
  try {
    Session session(command, spec, options);
    if (command == "mesh") {
      session.run_mesh();
    } else if (command == "spectrum") {
      session.run_spectrum();
    } else if (command == "heat") {
      session.run_heat();
    } else if (command == "green") {
      session.run_green();
    } else if (command == "verify-chain") {
      session.run_verify_chain();
    } else if (command == "verify-order-props") {
      session.run_order_props();
    } else if (command == "verify-bounds") {
      session.run_verify_bounds();
    } else if (command == "dirichlet-limit") {
      session.run_dirichlet_limit();
    } else if (command == "report") {
      session.run_mesh();
      session.run_spectrum();
      session.run_verify_chain();
      session.run_order_props();
      session.run_verify_bounds();
      if (!spec.vartheta_grid.empty()) session.run_dirichlet_limit();
      session.run_constants();
    } else {
      std::cerr << "unknown command '" << command << "'\n";
      return RunStatus::SpecError;
    }
    return session.finish();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return RunStatus::SpecError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return RunStatus::SpecError;
  }
}

void emit_plotdata(const KernelGrid& grid, PlotAxis axis, std::ostream& out, int fixed_node) {
  const int n = static_cast<int>(grid.values.rows());
  out << std::setprecision(12);
  switch (axis) {
    case PlotAxis::Diagonal:
      out << (grid.dim == 1 ? "x,value\n" : "x,y,value\n");
      for (int i = 0; i < n; ++i) {
        out << grid.nodes[i].x;
        if (grid.dim == 2) out << "," << grid.nodes[i].y;
        out << "," << grid.values(i, i) << "\n";
      }
      break;
    case PlotAxis::Slice:
      if (fixed_node < 0 || fixed_node >= n)
        throw DimensionMismatch("slice node outside the grid");
      out << (grid.dim == 1 ? "x,value\n" : "x,y,value\n");
      for (int i = 0; i < n; ++i) {
        out << grid.nodes[i].x;
        if (grid.dim == 2) out << "," << grid.nodes[i].y;
        out << "," << grid.values(i, fixed_node) << "\n";
      }
      break;
    case PlotAxis::DistanceScatter:
      out << "distance,value\n";
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          const double dx = grid.nodes[i].x - grid.nodes[j].x;
          const double dy = grid.nodes[i].y - grid.nodes[j].y;
          out << std::sqrt(dx * dx + dy * dy) << "," << grid.values(i, j) << "\n";
        }
      break;
  }
}

}  // namespace robinlab
