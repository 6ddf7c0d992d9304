#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "phasekit/phase_expr.hpp"

namespace phasekit {

// Computational-basis state of an n-qubit register. Bit q of `value` (q = 0
// is the LEFTMOST character of the ket string) holds the state of qubit q.
struct BasisIndex {
  std::uint64_t value = 0;
  int n = 0;

  bool operator==(const BasisIndex&) const = default;
};

// "|0110⟩" <-> BasisIndex, leftmost character = qubit 0.
BasisIndex parse_ket(std::string_view text);
std::string ket_string(const BasisIndex& b);

// Pauli operator as a signed permutation of basis states:
//   P|b⟩ = i^{i_power} · (−1)^{popcount(z_mask & b)} |b ⊕ x_mask⟩.
// Y = i·X·Z per qubit, so Y|0⟩ = i|1⟩ and Y|1⟩ = −i|0⟩.
struct PauliOp {
  int n = 0;
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;
  int i_power = 0;  // global factor i^k, k mod 4

  static PauliOp identity(int n);
  // letter in {'I','X','Y','Z'} acting on one qubit of an n-qubit register.
  static PauliOp single(int n, char letter, int qubit);

  bool is_identity() const { return x_mask == 0 && z_mask == 0 && i_power == 0; }
  bool operator==(const PauliOp&) const = default;
};

// Compact label: "I", "X3", "Y0", products like "X0Z2" (left factor applied last).
std::string pauli_label(const PauliOp& p);
PauliOp parse_pauli(std::string_view label, int n);

struct PauliAction {
  GaussRational coefficient;  // fourth root of unity
  BasisIndex state;
};

PauliAction pauli_apply(const PauliOp& p, const BasisIndex& b);

// apply(compose(p, q), b) == apply(p, apply(q, b)) — q acts first.
PauliOp pauli_compose(const PauliOp& p, const PauliOp& q);

// compose(adjoint(p), p) acts as +1·Identity on every basis state.
PauliOp pauli_adjoint(const PauliOp& p);

}  // namespace phasekit
