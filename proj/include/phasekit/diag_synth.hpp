#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "phasekit/phase_expr.hpp"

namespace phasekit {

// Multiplies the amplitude of basis state b by e^{i·angle} iff b has the
// target bit set and every control bit set. Diagonal, so gates commute.
struct ControlledPhaseGate {
  int n = 0;
  std::uint64_t control_mask = 0;  // target bit excluded
  int target = 0;
  PhaseExpr angle;

  std::uint64_t support_mask() const {
    return control_mask | (std::uint64_t{1} << target);
  }
  bool fires(std::uint64_t b) const {
    return (b & support_mask()) == support_mask();
  }
  bool operator==(const ControlledPhaseGate&) const = default;
};

// Order never affects semantics; at most one gate per support set.
using GateList = std::vector<ControlledPhaseGate>;

// Diagonal of a 2^n × 2^n phase operator. entries[j] indexes by BasisIndex
// value j (bit q = qubit q). Human-facing tuple renderings list entries in
// ket-lexicographic order instead; see to_display/from_display.
struct DiagonalPhases {
  int n = 0;
  std::vector<PhaseExpr> entries;

  bool operator==(const DiagonalPhases&) const = default;
};

// Display position <-> internal index: ket strings sort by reading qubits
// left to right, which reverses the bit order of the internal value.
std::uint64_t display_to_internal(std::uint64_t position, int n);
std::vector<PhaseExpr> to_display(const DiagonalPhases& diag);
DiagonalPhases from_display(const std::vector<PhaseExpr>& display_entries);

// entries[j] = raw[j] − raw[0], so entry 0 becomes exactly zero.
DiagonalPhases global_phase_normalize(int n, const std::vector<PhaseExpr>& raw);

// Exact decomposition into commuting controlled-phase gates, ascending by
// support index, zero angles skipped. Requires a normalized target; the
// reconstruction apply_gates(synthesize(t), n) == t entry-for-entry.
GateList synthesize(const DiagonalPhases& target);

DiagonalPhases apply_gates(const GateList& gates, int n);

// "CP(controls=[0,1], target=2, angle=-2φ)"
std::string render_gate(const ControlledPhaseGate& gate);
// "(0, φ, 2φ, 0)" — display order.
std::string render_diagonal(const DiagonalPhases& diag);

}  // namespace phasekit
