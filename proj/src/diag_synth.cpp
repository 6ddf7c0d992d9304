#include "phasekit/diag_synth.hpp"

#include <bit>
#include <stdexcept>

namespace phasekit {

namespace {

int infer_n(std::size_t entry_count) {
  if (entry_count == 0 || !std::has_single_bit(entry_count))
    throw std::invalid_argument("diagonal length must be a power of two, got " +
                                std::to_string(entry_count));
  return std::countr_zero(entry_count);
}

void require_entry_count(const DiagonalPhases& d) {
  if (d.entries.size() != (std::size_t{1} << d.n))
    throw std::invalid_argument("diagonal holds " + std::to_string(d.entries.size()) +
                                " entries, expected 2^" + std::to_string(d.n));
}

}  // namespace

std::uint64_t display_to_internal(std::uint64_t position, int n) {
  std::uint64_t value = 0;
  for (int q = 0; q < n; ++q)
    if ((position >> (n - 1 - q)) & 1) value |= std::uint64_t{1} << q;
  return value;
}

std::vector<PhaseExpr> to_display(const DiagonalPhases& diag) {
  require_entry_count(diag);
  std::vector<PhaseExpr> out(diag.entries.size());
  for (std::uint64_t pos = 0; pos < out.size(); ++pos)
    out[pos] = diag.entries[display_to_internal(pos, diag.n)];
  return out;
}

DiagonalPhases from_display(const std::vector<PhaseExpr>& display_entries) {
  DiagonalPhases d;
  d.n = infer_n(display_entries.size());
  d.entries.resize(display_entries.size());
  for (std::uint64_t pos = 0; pos < display_entries.size(); ++pos)
    d.entries[display_to_internal(pos, d.n)] = display_entries[pos];
  return d;
}

DiagonalPhases global_phase_normalize(int n, const std::vector<PhaseExpr>& raw) {
  if (raw.size() != (std::size_t{1} << n))
    throw std::invalid_argument("raw diagonal length does not match qubit count");
  DiagonalPhases d;
  d.n = n;
  d.entries.reserve(raw.size());
  for (const PhaseExpr& e : raw) d.entries.push_back(e - raw[0]);
  return d;
}

GateList synthesize(const DiagonalPhases& target) {
  require_entry_count(target);
  if (!target.entries[0].is_zero())
    throw std::invalid_argument("synthesis target must be normalized (entry 0 zero)");
  std::size_t dim = target.entries.size();
  std::vector<PhaseExpr> accumulated(dim);
  GateList gates;
  // Walk indices in ascending order; a gate on the support of index i fires
  // only on i and its bit-supersets, so earlier entries stay settled.
  for (std::uint64_t i = 1; i < dim; ++i) {
    PhaseExpr delta = target.entries[i] - accumulated[i];
    if (delta.is_zero()) continue;
    ControlledPhaseGate gate;
    gate.n = target.n;
    gate.target = std::bit_width(i) - 1;  // highest set bit = rightmost ket char
    gate.control_mask = i & ~(std::uint64_t{1} << gate.target);
    gate.angle = delta;
    for (std::uint64_t j = i; j < dim; ++j)
      if (gate.fires(j)) accumulated[j] = accumulated[j] + delta;
    gates.push_back(std::move(gate));
  }
  return gates;
}

DiagonalPhases apply_gates(const GateList& gates, int n) {
  DiagonalPhases d;
  d.n = n;
  d.entries.resize(std::size_t{1} << n);
  for (const ControlledPhaseGate& gate : gates) {
    if (gate.n != n)
      throw std::invalid_argument("gate qubit count " + std::to_string(gate.n) +
                                  " does not match register of " + std::to_string(n));
    for (std::uint64_t j = gate.support_mask(); j < d.entries.size(); ++j)
      if (gate.fires(j)) d.entries[j] = d.entries[j] + gate.angle;
  }
  return d;  // entry 0 is structurally zero: every gate needs a set bit
}

std::string render_gate(const ControlledPhaseGate& gate) {
  std::string out = "CP(controls=[";
  bool first = true;
  for (int q = 0; q < gate.n; ++q) {
    if ((gate.control_mask >> q) & 1) {
      if (!first) out += ", ";
      out += std::to_string(q);
      first = false;
    }
  }
  out += "], target=" + std::to_string(gate.target);
  out += ", angle=" + gate.angle.render() + ")";
  return out;
}

std::string render_diagonal(const DiagonalPhases& diag) {
  std::string out = "(";
  bool first = true;
  for (const PhaseExpr& e : to_display(diag)) {
    if (!first) out += ", ";
    out += e.render();
    first = false;
  }
  return out + ")";
}

}  // namespace phasekit
