#pragma once

// Batch front door: drives mesh -> assembly -> eigensolve -> kernels ->
// order/bound checks from a ProblemSpec and writes reports plus plot data.
//
// Every command is deterministic given (spec, seed): reports carry no
// timestamps or machine-specific paths, so replaying a spec reproduces them
// byte for byte.  Artifacts land under <out>/<spec-hash>/<command>/ and are
// written atomically (temp file, then rename) so a crashed run never leaves a
// half-written report behind.

#include <iosfwd>
#include <string>

#include "robinlab/problem_spec.hpp"
#include "robinlab/spectral.hpp"

namespace robinlab {

struct RunOptions {
  std::string out_dir = "runs";
  bool has_seed = false;
  unsigned seed = 0;      // overrides the spec seed when has_seed
  bool has_tol = false;
  double tol = 0.0;       // overrides both spec tolerances when has_tol
  bool allow_obtuse = false;
  int threads = 0;        // 0 = library default
};

enum class RunStatus : int {
  Pass = 0,        // all checks passed
  CheckFailed = 1, // a check failed; the report was still written
  SpecError = 2,   // unusable spec, domain, or I/O failure
};

// Executes one command against a parsed spec.  Commands: mesh, spectrum,
// heat, green, verify-chain, verify-order-props, verify-bounds,
// dirichlet-limit, report (= all of the above in one run).
RunStatus run_command(const std::string& command, const ProblemSpec& spec,
                      const RunOptions& options);

// Plot-data extraction from a kernel grid.
enum class PlotAxis {
  Diagonal,         // (x_i[, y_i], K_ii)
  Slice,            // (x_i[, y_i], K_{i, fixed}) through a fixed node
  DistanceScatter,  // (d_ij, K_ij) over ordered off-diagonal pairs
};

void emit_plotdata(const KernelGrid& grid, PlotAxis axis, std::ostream& out, int fixed_node = 0);

}  // namespace robinlab
