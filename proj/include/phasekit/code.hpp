#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "phasekit/pauli.hpp"
#include "phasekit/phase_expr.hpp"

namespace phasekit {

// One signed basis state of an equal-amplitude codeword superposition.
struct SignedState {
  BasisIndex state;
  int sign = 1;  // +1 or -1

  bool operator==(const SignedState&) const = default;
};

// |W⟩ = (1/√|support|) Σ sign·|state⟩. Support is sorted ascending by value
// with distinct states, so the implied norm is exactly 1.
struct CodeWord {
  int n = 0;
  std::vector<SignedState> support;

  bool contains(std::uint64_t value) const;
  // sign of `value` in the support; 0 when absent.
  int sign_of(std::uint64_t value) const;
  bool operator==(const CodeWord&) const = default;
};

struct Code {
  std::string name;
  int n = 0;
  CodeWord zero;  // |0⟩_L
  CodeWord one;   // |1⟩_L

  const CodeWord& word(int sigma) const { return sigma == 0 ? zero : one; }
  bool operator==(const Code&) const = default;
};

// Built-in codes: steane, rep2, example3, shor9.
std::vector<std::string> registry_names();
Code registry_get(const std::string& name);

// Code file format (UTF-8 text): `n=<int>`, then `0: <±bitstring> ...`,
// then `1: ...`; `#` starts a comment. save_code emits it deterministically.
Code load_code(const std::filesystem::path& path);
Code parse_code(std::istream& in, const std::string& name);
std::string serialize_code(const Code& code);
void save_code(const Code& code, const std::filesystem::path& path);

struct ValidationCheck {
  std::string name;
  bool pass = false;
  std::string detail;  // empty when passing
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool all_pass = false;
};

// Structural checks: index range, sorted/distinct supports, exact codeword
// orthogonality (disjoint supports, or signed overlap cancelling to zero).
ValidationReport validate_code(const Code& code);

// One ⟨W_σ| K_l† K_k |W_σ'⟩ block of the error-detection table.
struct KLTableEntry {
  std::size_t l = 0, k = 0;  // indices into KLTable::errors
  std::array<std::array<GaussRational, 2>, 2> value;  // [σ][σ']
  bool off_diagonal_zero = false;
  bool diagonal_equal = false;
};

// pass = every pair has zero off-diagonal blocks and σ-independent diagonal.
struct KLTable {
  std::vector<PauliOp> errors;
  std::vector<KLTableEntry> entries;
  bool pass = false;
};

KLTable base_kl_check(const Code& code, const std::vector<PauliOp>& errors);

}  // namespace phasekit
