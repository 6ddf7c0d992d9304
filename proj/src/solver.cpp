#include "phasekit/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "phasekit/code.hpp"
#include "phasekit/logical.hpp"

namespace phasekit {

namespace {

// Angles used for every numeric cross-check of a symbolic verdict.
constexpr double kSampleAngles[] = {0.0, 0.31, 1.57, 2.9, 5.8};
constexpr double kNumericTolerance = 1e-9;

enum class ConflictKind {
  None,
  VarFreeNonzero,    // fully-known residual fails to vanish
  SingleTermVar,     // one phasor of fixed nonzero modulus can never vanish
  FactoredNonzero,   // common variable factor divides out, remainder nonzero
  MagnitudeMismatch, // two lone phasors whose moduli can never agree
  OffLattice,        // the forced value is not an integer multiple of the angle
  ForcedClash,       // two constraints pin one variable to different values
};

// Conflicts that rule out arbitrary phase functions, not just lattice points.
bool holds_beyond_lattice(ConflictKind kind) {
  switch (kind) {
    case ConflictKind::VarFreeNonzero:
    case ConflictKind::SingleTermVar:
    case ConflictKind::FactoredNonzero:
    case ConflictKind::MagnitudeMismatch:
    case ConflictKind::ForcedClash:
      return true;
    default:
      return false;
  }
}

struct ForcingOutcome {
  bool forced = false;
  VarId var = -1;
  int value = 0;
  ConflictKind conflict = ConflictKind::None;
};

// Decides what a partially substituted residual says on its own. Forcing only
// fires for the two-term single-variable shape w_v·e^{i(c_v φ + m v)} +
// w_0·e^{i(c_0 φ)} = 0 with |m| = 1: the weights must agree up to a fourth
// root of unity i^t, and the exponent identity then pins v = ((c_0 − c_v)φ +
// Ω π)/m, which lies on the lattice exactly when t and the π offsets cancel
// mod 2π and the φ multiple is an integer.
ForcingOutcome analyze_residual(const PhasorSum& residual) {
  ForcingOutcome out;
  if (residual.empty()) return out;
  std::set<VarId> vars = residual.var_ids();
  if (vars.empty()) {
    if (!residual.is_identically_zero()) out.conflict = ConflictKind::VarFreeNonzero;
    return out;
  }
  if (residual.term_count() == 1) {
    out.conflict = ConflictKind::SingleTermVar;
    return out;
  }
  if (residual.term_count() != 2) return out;

  auto it = residual.terms().begin();
  const PhaseExpr& e1 = it->first;
  const GaussRational& w1 = it->second;
  ++it;
  const PhaseExpr& e2 = it->first;
  const GaussRational& w2 = it->second;

  if (e1.has_vars() && e2.has_vars()) {
    // Identical variable parts factor out as a unit-modulus phasor, leaving a
    // variable-free two-term sum that either always or never vanishes.
    if (e1.var_terms() == e2.var_terms()) {
      PhasorSum inner;
      inner.add(w1, PhaseExpr::phi(e1.phi_coeff()) + PhaseExpr::pi_multiple(e1.pi_coeff()));
      inner.add(w2, PhaseExpr::phi(e2.phi_coeff()) + PhaseExpr::pi_multiple(e2.pi_coeff()));
      if (!inner.is_identically_zero()) out.conflict = ConflictKind::FactoredNonzero;
    }
    return out;
  }

  const PhaseExpr& ev = e1.has_vars() ? e1 : e2;
  const GaussRational& wv = e1.has_vars() ? w1 : w2;
  const PhaseExpr& e0 = e1.has_vars() ? e2 : e1;
  const GaussRational& w0 = e1.has_vars() ? w2 : w1;

  if (ev.var_terms().size() != 1) return out;
  const auto [var, m] = ev.var_terms().front();
  if (m != 1 && m != -1) return out;

  if (wv.norm_sq() != w0.norm_sq()) {
    out.conflict = ConflictKind::MagnitudeMismatch;
    return out;
  }
  int quarter = -1;
  for (int t = 0; t < 4; ++t) {
    if (w0 == -wv.times_i_power(t)) {
      quarter = t;
      break;
    }
  }
  if (quarter < 0) {
    // Equal moduli but the ratio is not a fourth root of unity (e.g. (3+4i)/5),
    // so v would need an irrational angle offset: impossible on the lattice.
    out.conflict = ConflictKind::OffLattice;
    return out;
  }

  // m·v ≡ (c0 − cv)φ + Ωπ (mod 2π) with Ω = ρ0 − ρv + t/2.
  Rational delta = e0.phi_coeff() - ev.phi_coeff();
  Rational omega = e0.pi_coeff() - ev.pi_coeff() + Rational(quarter, 2);
  Rational half_omega = omega / Rational(2);
  Rational k = delta / Rational(m);
  if (half_omega.denominator() != 1 || k.denominator() != 1) {
    out.conflict = ConflictKind::OffLattice;
    return out;
  }
  if (k.numerator() > std::numeric_limits<int>::max() ||
      k.numerator() < std::numeric_limits<int>::min()) {
    out.conflict = ConflictKind::OffLattice;
    return out;
  }
  out.forced = true;
  out.var = var;
  out.value = static_cast<int>(k.numerator());
  return out;
}

struct PropagateInput {
  const std::vector<const Constraint*>& constraints;
  const std::vector<PhasorSum>& residuals;  // aligned with constraints
};

PropagationResult run_propagation(const PropagateInput& in, const Assignment& partial) {
  PropagationResult result;
  result.assignment = partial;
  const bool from_root = partial.values.empty();

  bool changed = true;
  while (changed) {
    changed = false;
    // Forcings are collected per pass and applied together, so two
    // constraints pinning the same variable to different values surface as a
    // contradictory pair instead of a lone residual failure.
    std::map<VarId, std::pair<int, std::string>> pending;
    for (std::size_t i = 0; i < in.constraints.size(); ++i) {
      const Constraint& c = *in.constraints[i];
      PhasorSum reduced = in.residuals[i].substitute_partial(result.assignment);
      ForcingOutcome analysis = analyze_residual(reduced);
      if (analysis.conflict != ConflictKind::None) {
        result.conflict = true;
        result.conflict_ids = {c.id()};
        result.lattice_independent = from_root && holds_beyond_lattice(analysis.conflict);
        return result;
      }
      if (!analysis.forced) continue;
      auto seen = pending.find(analysis.var);
      if (seen != pending.end()) {
        if (seen->second.first != analysis.value) {
          result.conflict = true;
          result.conflict_ids = {seen->second.second, c.id()};
          result.lattice_independent = from_root;  // two exact identities disagree
          return result;
        }
        continue;  // same value re-derived
      }
      pending[analysis.var] = {analysis.value, c.id()};
    }
    for (const auto& [var, value_and_id] : pending) {
      result.assignment.values[var] = value_and_id.first;
      result.forced_by[var] = value_and_id.second;
      ++result.steps;
      changed = true;
    }
  }
  return result;
}

// Sound branch-closing test. Splitting a residual into exactly-known terms
// (variable-free exponents, merged per φ-frequency) and unknown terms, the sum
// can only vanish identically if the known mass can be cancelled; since every
// unknown term keeps a fixed modulus wherever it lands, Σ|K_f| ≤ Σ|w_u| is
// necessary. We test the stronger-to-violate Σ|K_f|² > (Σ bound|w_u|)², which
// implies the necessary condition fails, using only exact rational arithmetic.
bool mass_bound_rules_out(const PhasorSum& residual) {
  std::map<Rational, GaussRational> known;
  Rational unknown_bound(0);
  for (const auto& [expr, weight] : residual.terms()) {
    if (expr.has_vars()) {
      unknown_bound += weight.abs_bound();
    } else if (expr.pi_coeff() != Rational(0)) {
      return false;  // non-quarter offsets never arise here; stay sound
    } else {
      GaussRational& slot = known[expr.phi_coeff()];
      slot = slot + weight;
    }
  }
  Rational mass(0);
  for (const auto& [freq, weight] : known) mass += weight.norm_sq();
  return mass > unknown_bound * unknown_bound;
}

struct SearchContext {
  std::vector<const Constraint*> active;
  std::vector<PhasorSum> residuals;
  std::map<VarId, std::vector<std::size_t>> by_var;
  std::vector<VarId> order;
  int bound = 0;
  SolveStats stats;
  std::vector<std::string> conflicts;
  std::set<std::string> conflict_seen;
  std::uint64_t node_limit = std::numeric_limits<std::uint64_t>::max();
  bool out_of_budget = false;

  void record_conflicts(const std::vector<std::string>& ids) {
    for (const std::string& id : ids) {
      if (conflict_seen.insert(id).second) conflicts.push_back(id);
    }
  }

  // Re-examines only the constraints whose residuals mention a newly assigned
  // variable; everything else kept its status from an ancestor node.
  bool consistent(const Assignment& cur, const std::vector<VarId>& newly) {
    std::set<std::size_t> touched;
    for (VarId v : newly) {
      auto it = by_var.find(v);
      if (it == by_var.end()) continue;
      touched.insert(it->second.begin(), it->second.end());
    }
    for (std::size_t idx : touched) {
      PhasorSum reduced = residuals[idx].substitute_partial(cur);
      if (!reduced.has_vars()) {
        if (!reduced.is_identically_zero()) {
          record_conflicts({active[idx]->id()});
          return false;
        }
      } else if (mass_bound_rules_out(reduced)) {
        record_conflicts({active[idx]->id()});
        return false;
      }
    }
    return true;
  }

  bool dfs(const Assignment& cur, std::size_t next, Assignment& witness) {
    while (next < order.size() && cur.has(order[next])) ++next;
    if (next == order.size()) {
      witness = cur;
      return true;
    }
    VarId var = order[next];
    for (int step = 0; step <= 2 * bound; ++step) {
      int value = (step + 1) / 2 * (step % 2 == 1 ? 1 : -1);  // 0, 1, -1, 2, -2, …
      ++stats.nodes;
      if (stats.nodes > node_limit) {
        out_of_budget = true;
        return false;
      }
      Assignment child = cur;
      child.values[var] = value;
      PropagationResult prop = run_propagation({active, residuals}, child);
      stats.propagations += static_cast<std::uint64_t>(prop.steps);
      if (prop.conflict) {
        record_conflicts(prop.conflict_ids);
        continue;
      }
      bool in_bound = true;
      for (const auto& [forced_var, forced_by_id] : prop.forced_by) {
        if (std::abs(prop.assignment.values.at(forced_var)) > bound) {
          record_conflicts({forced_by_id});
          in_bound = false;
          break;
        }
      }
      if (!in_bound) continue;
      std::vector<VarId> newly = {var};
      for (const auto& [forced_var, by] : prop.forced_by) newly.push_back(forced_var);
      if (!consistent(prop.assignment, newly)) continue;
      if (dfs(prop.assignment, next + 1, witness)) return true;
      if (out_of_budget) return false;
    }
    return false;
  }

  // Backtracking cost is heavy-tailed in the variable order: most orders
  // finish a component in a few hundred nodes while an unlucky one can wander
  // for hours in a subtree the pruning rules barely touch. Restarting under a
  // doubling node budget with a rotated order sidesteps the tail without
  // giving up completeness — once the budget exceeds the full tree size the
  // attempt runs to exhaustion, so an unsat verdict is still a proof.
  bool search(Assignment& witness) {
    const std::vector<VarId> base = order;
    std::uint64_t budget = 256;
    for (std::size_t attempt = 0;; ++attempt) {
      std::size_t shift = base.empty() ? 0 : attempt % base.size();
      order.assign(base.begin() + static_cast<std::ptrdiff_t>(shift), base.end());
      order.insert(order.end(), base.begin(),
                   base.begin() + static_cast<std::ptrdiff_t>(shift));
      out_of_budget = false;
      node_limit = stats.nodes + budget;
      if (dfs(Assignment{}, 0, witness)) return true;
      if (!out_of_budget) return false;
      budget *= 2;
    }
  }
};

const Constraint* pick_key_constraint(const std::vector<Constraint>& constraints) {
  for (const Constraint& c : constraints) {
    if (c.trivially_satisfied) continue;
    if (c.kind == ConstraintKind::DiagonalEqual &&
        c.family == SandwichFamily::BeforeAfter && c.left_label == c.right_label) {
      return &c;
    }
  }
  for (const Constraint& c : constraints) {
    if (!c.trivially_satisfied) return &c;
  }
  return nullptr;
}

std::string format_value(double x) {
  std::ostringstream out;
  double rounded = std::round(x);
  if (std::abs(x - rounded) < 1e-9) {
    out << static_cast<long long>(rounded);
  } else {
    out.precision(6);
    out << x;
  }
  return out.str();
}

}  // namespace

PropagationResult propagate(const std::vector<Constraint>& constraints,
                            const Assignment& partial) {
  std::vector<const Constraint*> active;
  std::vector<PhasorSum> residuals;
  for (const Constraint& c : constraints) {
    if (c.trivially_satisfied) continue;
    active.push_back(&c);
    residuals.push_back(c.residual());
  }
  return run_propagation({active, residuals}, partial);
}

std::string status_name(SolveStatus status) {
  return status == SolveStatus::Sat ? "Sat" : "UnsatWithinBound";
}

SolveOutcome solve(const std::vector<Constraint>& constraints, int bound, int seed,
                   const std::vector<VarId>& variables) {
  if (bound < 1) throw std::invalid_argument("solve: lattice bound must be at least 1");
  auto started = std::chrono::steady_clock::now();

  SolveOutcome out;
  out.lattice_bound = bound;
  out.stats.seed = seed;

  SearchContext ctx;
  ctx.bound = bound;
  std::set<VarId> binding;
  std::set<VarId> universe(variables.begin(), variables.end());
  for (const Constraint& c : constraints) {
    universe.insert(c.vars.begin(), c.vars.end());
    if (c.trivially_satisfied) continue;
    PhasorSum residual = c.residual();
    for (VarId v : residual.var_ids()) {
      binding.insert(v);
      ctx.by_var[v].push_back(ctx.active.size());
    }
    ctx.active.push_back(&c);
    ctx.residuals.push_back(std::move(residual));
  }
  for (VarId v : universe) {
    if (!binding.count(v)) out.unconstrained.push_back(v);
  }

  auto finish = [&](SolveStatus status) {
    out.status = status;
    out.stats.wall_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - started)
                            .count();
    out.stats.nodes = ctx.stats.nodes;
    out.stats.propagations += ctx.stats.propagations;
    out.conflicts = std::move(ctx.conflicts);
    return out;
  };

  PropagationResult root = run_propagation({ctx.active, ctx.residuals}, Assignment{});
  out.stats.propagations = static_cast<std::uint64_t>(root.steps);
  if (root.conflict) {
    ctx.record_conflicts(root.conflict_ids);
    out.lattice_independent = root.lattice_independent;
    return finish(SolveStatus::UnsatWithinBound);
  }
  for (const auto& [var, by] : root.forced_by) {
    if (std::abs(root.assignment.values.at(var)) > bound) {
      ctx.record_conflicts({by});
      return finish(SolveStatus::UnsatWithinBound);
    }
  }
  // One uniform sweep: after a clean propagation fixpoint every residual is
  // either variable-free-and-zero or still open, so this only applies the
  // mass bound to branches that are dead on arrival.
  std::vector<VarId> all_binding(binding.begin(), binding.end());
  if (!all_binding.empty() && !ctx.consistent(root.assignment, all_binding)) {
    return finish(SolveStatus::UnsatWithinBound);
  }

  // Reduce residuals by the root fixpoint once, then split what is left into
  // connected components (variables joined by a shared residual). Components
  // share nothing, so each is searched on its own; a single interleaved
  // search would drag unrelated variables into every backtrack.
  std::vector<const Constraint*> open_constraints;
  std::vector<PhasorSum> open_residuals;
  for (std::size_t i = 0; i < ctx.active.size(); ++i) {
    PhasorSum reduced = ctx.residuals[i].substitute_partial(root.assignment);
    if (reduced.empty() || !reduced.has_vars()) continue;  // settled at the root
    open_constraints.push_back(ctx.active[i]);
    open_residuals.push_back(std::move(reduced));
  }

  std::map<VarId, VarId> parent;
  auto find_root = [&](VarId v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (std::size_t i = 0; i < open_residuals.size(); ++i) {
    for (VarId v : open_residuals[i].var_ids()) {
      if (!parent.count(v)) parent[v] = v;
    }
  }
  for (std::size_t i = 0; i < open_residuals.size(); ++i) {
    std::set<VarId> vars = open_residuals[i].var_ids();
    auto it = vars.begin();
    VarId first = find_root(*it);
    for (++it; it != vars.end(); ++it) parent[find_root(*it)] = first;
  }
  std::map<VarId, std::vector<std::size_t>> components;  // keyed by component root
  for (std::size_t i = 0; i < open_residuals.size(); ++i) {
    components[find_root(*open_residuals[i].var_ids().begin())].push_back(i);
  }

  Assignment witness = root.assignment;
  for (const auto& [component_root, constraint_indices] : components) {
    SearchContext sub;
    sub.bound = bound;
    std::set<VarId> component_vars;
    for (std::size_t i : constraint_indices) {
      for (VarId v : open_residuals[i].var_ids()) {
        component_vars.insert(v);
        sub.by_var[v].push_back(sub.active.size());
      }
      sub.active.push_back(open_constraints[i]);
      sub.residuals.push_back(open_residuals[i]);
    }
    // Most-constrained variables first, higher ids breaking ties.
    std::vector<VarId> order(component_vars.begin(), component_vars.end());
    std::sort(order.begin(), order.end(), [&](VarId a, VarId b) {
      std::size_t da = sub.by_var[a].size(), db = sub.by_var[b].size();
      if (da != db) return da > db;
      return a > b;
    });
    sub.order = std::move(order);

    Assignment component_witness;
    bool found = sub.search(component_witness);
    ctx.stats.nodes += sub.stats.nodes;
    ctx.stats.propagations += sub.stats.propagations;
    if (!found) {
      ctx.conflicts = std::move(sub.conflicts);
      return finish(SolveStatus::UnsatWithinBound);
    }
    for (const auto& [var, value] : component_witness.values) witness.values[var] = value;
  }

  for (VarId v : out.unconstrained) witness.values[v] = 0;
  // Variables whose every residual dissolved under the root fixpoint are free
  // to take any value; hold them at zero so the witness stays total.
  for (VarId v : binding) {
    if (!witness.has(v)) witness.values[v] = 0;
  }
  CheckReport verdict = check_assignment(constraints, witness);
  if (!verdict.pass || verdict.max_residual > kNumericTolerance) {
    throw std::logic_error("solve: witness failed independent re-verification");
  }
  out.witness = std::move(witness);
  ctx.conflicts.clear();  // a witness supersedes the pruning history
  return finish(SolveStatus::Sat);
}

CheckReport check_assignment(const std::vector<Constraint>& constraints,
                             const Assignment& assignment) {
  CheckReport report;
  report.pass = true;
  for (const Constraint& c : constraints) {
    bool ok = c.satisfied_by(assignment);
    PhasorSum residual = c.residual().substitute(assignment);
    for (double phi : kSampleAngles) {
      report.max_residual = std::max(report.max_residual, std::abs(residual.eval(phi)));
    }
    report.entries.push_back({c.id(), ok});
    report.pass = report.pass && ok;
  }
  return report;
}

SteaneReport steane_report(const std::string& errors_spec, int bound) {
  Code code = registry_get("steane");
  DiagonalTemplate tmpl = constrain(code);
  std::vector<PauliOp> errors = error_set(errors_spec, code.n);
  std::vector<Constraint> conditions = build_conditions(code, tmpl, errors);

  SteaneReport report;
  report.errors_spec = errors_spec;
  report.dof = static_cast<std::size_t>(tmpl.var_count);
  report.constraint_count = conditions.size();
  for (const Constraint& c : conditions) {
    if (!c.trivially_satisfied) ++report.nontrivial_count;
  }
  report.outcome = solve(conditions, bound, 0, tmpl.var_ids());

  const Constraint* key = pick_key_constraint(conditions);
  if (key != nullptr) {
    report.key_constraint_id = key->id();
    report.key_constraint = key->render();
    if (key->kind == ConstraintKind::DiagonalEqual) {
      Assignment zeros;
      for (VarId v : key->vars) zeros.values[v] = 0;
      std::complex<double> low = key->lhs.substitute(zeros).eval(std::numbers::pi);
      std::complex<double> high = key->rhs.substitute(zeros).eval(std::numbers::pi);
      if (std::abs(low.imag()) < kNumericTolerance &&
          std::abs(high.imag()) < kNumericTolerance &&
          low.real() * high.real() < 0.0) {
        report.sign_flip = true;
        std::ostringstream note;
        note << "under the all-zero completion at phi = pi the sigma = 0 diagonal value is "
             << format_value(low.real()) << " while the sigma = 1 value is "
             << format_value(high.real())
             << ": the element's value changes sign based on the value of sigma and "
                "sigma', so the two error timings disagree in a syndrome-invisible way";
        report.sign_note = note.str();
      }
    }
  }
  return report;
}

std::string render_report(const SteaneReport& report) {
  std::ostringstream out;
  out << "seven-qubit code, errors {" << report.errors_spec << "}, lattice bound K = "
      << report.outcome.lattice_bound << "\n";
  out << "free diagonal slots: " << report.dof << "\n";
  out << "conditions after dedup: " << report.constraint_count
      << " (non-trivial: " << report.nontrivial_count << ")\n";
  out << "status: " << status_name(report.outcome.status) << "\n";
  if (report.outcome.status == SolveStatus::Sat) {
    std::ostringstream nz;
    int zeros = 0;
    for (const auto& [var, value] : report.outcome.witness.values) {
      if (value == 0) {
        ++zeros;
        continue;
      }
      if (nz.tellp() > 0) nz << ", ";
      nz << "v" << var << " = " << value;
    }
    out << "witness: " << (nz.tellp() > 0 ? nz.str() : std::string("all zero"));
    if (zeros > 0 && nz.tellp() > 0) out << " (all other variables 0)";
    out << "\n";
    if (!report.outcome.unconstrained.empty()) {
      out << "unconstrained variables assigned 0: " << report.outcome.unconstrained.size()
          << "\n";
    }
  } else {
    out << "conflicts:";
    for (const std::string& id : report.outcome.conflicts) out << " " << id;
    out << "\n";
    out << "lattice-independent: "
        << (report.outcome.lattice_independent ? "yes" : "no (verdict is bounded)")
        << "\n";
  }
  if (!report.key_constraint.empty()) {
    out << "key condition: " << report.key_constraint << "\n";
  }
  if (report.sign_flip) {
    out << "note: " << report.sign_note << "\n";
  }
  out << "stats: nodes = " << report.outcome.stats.nodes
      << ", propagations = " << report.outcome.stats.propagations
      << ", wall = " << format_value(report.outcome.stats.wall_ms) << " ms\n";
  return out.str();
}

}  // namespace phasekit
