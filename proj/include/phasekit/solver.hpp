#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "phasekit/kl.hpp"

namespace phasekit {

// Result of running unit propagation to fixpoint. A constraint whose partial
// residual collapses to two phasor terms with a single variable left pins
// that variable (when the weights match up to a fourth root of unity and the
// resulting multiple of the free angle is an integer). `lattice_independent`
// marks conflicts that hold for arbitrary phase functions, not just integer
// lattice values; it is only ever set when propagation started from an empty
// partial assignment, because in-search conflicts are conditional on the
// decisions made so far.
struct PropagationResult {
  Assignment assignment;  // the input partial extended by every forced value
  int steps = 0;          // number of variables newly forced
  std::map<VarId, std::string> forced_by;  // which constraint pinned each one
  bool conflict = false;
  std::vector<std::string> conflict_ids;  // single id or a contradictory pair
  bool lattice_independent = false;
};

PropagationResult propagate(const std::vector<Constraint>& constraints,
                            const Assignment& partial);

enum class SolveStatus { Sat, UnsatWithinBound };

std::string status_name(SolveStatus status);

struct SolveStats {
  std::uint64_t nodes = 0;         // decision nodes entered
  std::uint64_t propagations = 0;  // variables fixed by unit propagation
  double wall_ms = 0.0;
  int seed = 0;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::UnsatWithinBound;
  Assignment witness;                  // Sat only; unconstrained variables at 0
  std::vector<std::string> conflicts;  // constraints that pruned final branches
  std::vector<VarId> unconstrained;    // variables no residual depends on
  bool lattice_independent = false;    // UNSAT holds beyond the lattice too
  int lattice_bound = 0;
  SolveStats stats;
};

// Searches assignments with every variable an integer multiple of the free
// angle in [-bound, bound]. Unit propagation runs first and at every decision
// node; branches close when a fully substituted residual fails to vanish or
// when the exactly-known per-frequency mass of a residual already exceeds the
// largest value the unknown terms could contribute. A Sat witness is
// re-verified symbolically and numerically before being returned;
// UnsatWithinBound means the lattice restricted to the variables the
// residuals mention was exhausted. `variables` may list the full variable
// universe (e.g. every free template slot) so that variables no constraint
// touches are reported, and assigned zero in the witness. Deterministic;
// `seed` is recorded in the stats but the search itself never randomizes.
SolveOutcome solve(const std::vector<Constraint>& constraints, int bound,
                   int seed = 0, const std::vector<VarId>& variables = {});

struct CheckEntry {
  std::string id;
  bool pass = false;
};

struct CheckReport {
  std::vector<CheckEntry> entries;
  double max_residual = 0.0;  // largest |residual| over the sampled angles
  bool pass = false;
};

// Exact per-constraint verdicts under a full assignment, cross-checked by
// numeric residuals at five sampled angles. Throws std::invalid_argument when
// the assignment misses a variable some constraint mentions.
CheckReport check_assignment(const std::vector<Constraint>& constraints,
                             const Assignment& assignment);

// End-to-end run on the seven-qubit registry code: constrain the diagonal,
// build the sandwich conditions for the given error set, and solve on the
// lattice. Captures the headline numbers plus the key paired-error diagonal
// comparison, and notes when the two diagonal values take opposite signs at
// half turn under the all-zero completion (the natural extension that leaves
// every free slot untouched).
struct SteaneReport {
  std::string errors_spec;
  std::size_t dof = 0;               // free diagonal slots
  std::size_t constraint_count = 0;  // conditions after dedup
  std::size_t nontrivial_count = 0;  // conditions not trivially satisfied
  SolveOutcome outcome;
  std::string key_constraint_id;  // paired-error diagonal comparison, if any
  std::string key_constraint;     // its rendered form
  bool sign_flip = false;
  std::string sign_note;
};

SteaneReport steane_report(const std::string& errors_spec, int bound);

std::string render_report(const SteaneReport& report);

}  // namespace phasekit
