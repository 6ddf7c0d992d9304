#include "phasekit/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace phasekit {

namespace {

void require_qubit(int n, int qubit) {
  if (qubit < 0 || qubit >= n)
    throw std::invalid_argument("qubit index " + std::to_string(qubit) +
                                " out of range for " + std::to_string(n) + " qubits");
}

void require_same_n(int a, int b) {
  if (a != b)
    throw std::invalid_argument("qubit-count mismatch: " + std::to_string(a) +
                                " vs " + std::to_string(b));
}

}  // namespace

BasisIndex parse_ket(std::string_view text) {
  std::string_view body = text;
  if (body.size() >= 1 && body.front() == '|') body.remove_prefix(1);
  // Accept both "⟩" (UTF-8) and ">" as the closing bracket.
  if (body.size() >= 3 && body.substr(body.size() - 3) == "⟩") {
    body.remove_suffix(3);
  } else if (!body.empty() && body.back() == '>') {
    body.remove_suffix(1);
  }
  if (body.empty() || body.size() > 63)
    throw std::invalid_argument("ket string must hold 1..63 qubits: '" +
                                std::string(text) + "'");
  BasisIndex b;
  b.n = static_cast<int>(body.size());
  for (int q = 0; q < b.n; ++q) {
    char c = body[static_cast<std::size_t>(q)];
    if (c == '1') {
      b.value |= (std::uint64_t{1} << q);
    } else if (c != '0') {
      throw std::invalid_argument("ket string may contain only 0/1 digits: '" +
                                  std::string(text) + "'");
    }
  }
  return b;
}

std::string ket_string(const BasisIndex& b) {
  std::string out = "|";
  for (int q = 0; q < b.n; ++q)
    out += (b.value >> q) & 1 ? '1' : '0';
  out += "⟩";
  return out;
}

PauliOp PauliOp::identity(int n) {
  if (n < 1 || n > 63) throw std::invalid_argument("qubit count must be in 1..63");
  return PauliOp{n, 0, 0, 0};
}

PauliOp PauliOp::single(int n, char letter, int qubit) {
  PauliOp p = identity(n);
  if (letter == 'I') return p;
  require_qubit(n, qubit);
  std::uint64_t bit = std::uint64_t{1} << qubit;
  switch (letter) {
    case 'X': p.x_mask = bit; break;
    case 'Z': p.z_mask = bit; break;
    case 'Y': p.x_mask = bit; p.z_mask = bit; p.i_power = 1; break;
    default:
      throw std::invalid_argument(std::string("unknown Pauli letter '") + letter + "'");
  }
  return p;
}

std::string pauli_label(const PauliOp& p) {
  std::string out;
  for (int q = 0; q < p.n; ++q) {
    bool x = (p.x_mask >> q) & 1;
    bool z = (p.z_mask >> q) & 1;
    if (x && z) out += "Y" + std::to_string(q);
    else if (x) out += "X" + std::to_string(q);
    else if (z) out += "Z" + std::to_string(q);
  }
  if (out.empty()) return "I";
  return out;
}

PauliOp parse_pauli(std::string_view label, int n) {
  if (label == "I") return PauliOp::identity(n);
  PauliOp out = PauliOp::identity(n);
  std::size_t pos = 0;
  while (pos < label.size()) {
    char letter = label[pos++];
    if (letter != 'X' && letter != 'Y' && letter != 'Z')
      throw std::invalid_argument("bad Pauli label: '" + std::string(label) + "'");
    std::size_t start = pos;
    while (pos < label.size() && std::isdigit(static_cast<unsigned char>(label[pos]))) ++pos;
    if (pos == start)
      throw std::invalid_argument("Pauli letter needs a qubit index: '" +
                                  std::string(label) + "'");
    int qubit = std::stoi(std::string(label.substr(start, pos - start)));
    out = pauli_compose(out, PauliOp::single(n, letter, qubit));
  }
  return out;
}

PauliAction pauli_apply(const PauliOp& p, const BasisIndex& b) {
  require_same_n(p.n, b.n);
  int sign_flips = std::popcount(p.z_mask & b.value);
  int k = (p.i_power + 2 * (sign_flips & 1)) % 4;
  return PauliAction{GaussRational::unit().times_i_power(k),
                     BasisIndex{b.value ^ p.x_mask, b.n}};
}

PauliOp pauli_compose(const PauliOp& p, const PauliOp& q) {
  require_same_n(p.n, q.n);
  PauliOp out;
  out.n = p.n;
  out.x_mask = p.x_mask ^ q.x_mask;
  out.z_mask = p.z_mask ^ q.z_mask;
  // Moving p's Z past q's X picks up (−1) per overlapping qubit.
  out.i_power = (p.i_power + q.i_power + 2 * std::popcount(p.z_mask & q.x_mask)) % 4;
  return out;
}

PauliOp pauli_adjoint(const PauliOp& p) {
  PauliOp out = p;
  // (i^t X Z)† = i^{−t} Z X = i^{−t} (−1)^{|X∧Z|} X Z.
  out.i_power = ((-p.i_power - 2 * std::popcount(p.x_mask & p.z_mask)) % 4 + 4) % 4;
  return out;
}

}  // namespace phasekit
