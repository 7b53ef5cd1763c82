#pragma once

// Versioned problem description for batch runs: domain, mesh resolution,
// coefficient/potential/boundary-operator catalog entries, parameter grids,
// tolerances, and the seed for randomized checks.  Specs are JSON so that
// benchmark inputs stay diff-able and hand-editable; a canonical hash over
// the parsed content names the output directory, so replaying a spec lands in
// the same place and any semantic edit lands in a new one.

#include <cstdint>
#include <string>
#include <vector>

#include "robinlab/coefficients.hpp"
#include "robinlab/geometry.hpp"

namespace robinlab {

// A boundary operator together with its catalog name and the regime it
// induces on the pencil.
struct NamedBoundary {
  std::string name;          // catalog label, e.g. "robin"
  std::string label;         // unique per spec, e.g. "robin_theta_1"
  BoundaryOperatorSpec op;
  double theta = 0.0;        // constant coupling for the local variant
};

struct Tolerances {
  double chain = 1e-10;   // entrywise slack for kernel order relations
  double order = 1e-10;   // slack in the randomized property suite
};

struct ProblemSpec {
  int schema_version = 1;
  DomainSpec domain;
  double h = 0.1;
  std::string coefficient_name;
  std::string potential_name;
  TensorField coefficient;
  ScalarPotential potential;
  bool has_potential = false;
  std::vector<NamedBoundary> boundary_conditions;
  std::vector<double> t_grid;
  std::vector<double> lambda_grid;
  std::vector<double> vartheta_grid;  // couplings for the hard-constraint limit
  double gamma = 0.5;                 // Gaussian envelope shape parameter
  Tolerances tolerances;
  unsigned seed = 2026;
  int trials = 1000;
  std::string canonical;  // canonical serialization the hash is taken over
};

// Parses and validates a spec from JSON text.  Unknown catalog names, missing
// required fields, nonpositive grids, or a schema version mismatch raise
// SpecParseError.
ProblemSpec parse_problem_spec(const std::string& json_text);

// Reads the file and parses it; file errors also surface as SpecParseError.
ProblemSpec load_problem_spec(const std::string& path);

// FNV-1a 64-bit hash of the canonical serialization.
std::uint64_t spec_hash(const ProblemSpec& spec);

// Hash formatted as 16 lowercase hex digits (used as the output directory).
std::string spec_hash_hex(const ProblemSpec& spec);

}  // namespace robinlab
