#pragma once

#include <set>
#include <string>
#include <vector>

#include "phasekit/code.hpp"
#include "phasekit/logical.hpp"
#include "phasekit/pauli.hpp"
#include "phasekit/phase_expr.hpp"

namespace phasekit {

// The four error-timing sandwiches around the candidate phase gate P, named
// by when the (left, right) errors strike relative to P:
//   AfterAfter   = P† K_l† K_k P    (both errors after the gate)
//   BeforeAfter  = K_l† P† K_k P    (left error before, right error after)
//   AfterBefore  = P† K_l† P K_k    (left error after, right error before)
//   BeforeBefore = K_l† P† P K_k    (both before; P cancels to the base check)
enum class SandwichFamily { AfterAfter, BeforeAfter, AfterBefore, BeforeBefore };

std::string family_name(SandwichFamily family);

struct SandwichSpec {
  SandwichFamily family = SandwichFamily::AfterAfter;
  PauliOp left_error;   // K_l
  PauliOp right_error;  // K_k
  int sigma = 0;        // bra codeword
  int sigma_prime = 0;  // ket codeword
};

// Exact ⟨W_σ| sandwich |W_σ'⟩ as a weighted phasor sum over the template's
// entries. The 1/√(|s_σ||s_σ'|) amplitude is folded in as an exact rational
// whenever it is one (always on the diagonal, and off-diagonal for equal
// support sizes); otherwise the raw sum is returned — every use is either a
// zero test or an equality between same-scale elements, so verdicts agree.
PhasorSum sandwich_element(const SandwichSpec& spec, const DiagonalTemplate& tmpl,
                           const Code& code);

// Error-set grammar: comma-separated atoms, each `I`, `<L><q>`, or `<L>*`
// with L ∈ {X,Y,Z}; `all-single` = I plus every single-qubit letter.
// Deduplicated; the identity is always included.
std::vector<PauliOp> error_set(const std::string& spec, int n);

enum class ConstraintKind { OffDiagonalZero, DiagonalEqual };

// OffDiagonalZero: lhs (a σ≠σ' element) must vanish identically in φ.
// DiagonalEqual: lhs (σ=σ'=0) must equal rhs (σ=σ'=1) identically in φ.
struct Constraint {
  ConstraintKind kind = ConstraintKind::OffDiagonalZero;
  SandwichFamily family = SandwichFamily::AfterAfter;
  std::string left_label, right_label;  // error operator labels
  PhasorSum lhs;
  PhasorSum rhs;  // empty for OffDiagonalZero
  std::set<VarId> vars;
  bool reduces_to_base = false;    // BeforeBefore: P†P cancels
  bool trivially_satisfied = false;  // holds with no variables involved
  bool impossible = false;           // fails with no variables involved

  std::string id() const;  // "BeforeAfter/diag/X3,X3"
  PhasorSum residual() const { return lhs - rhs; }
  bool satisfied_by(const Assignment& assignment) const;
  std::string render() const;
};

// All families × ordered error pairs × {both off-diagonal elements, the
// diagonal comparison}, deduplicated by canonical form (conjugation pairs
// and transposed off-diagonals collapse). Deterministic order.
std::vector<Constraint> build_conditions(const Code& code, const DiagonalTemplate& tmpl,
                                         const std::vector<PauliOp>& errors);

}  // namespace phasekit
