#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "phasekit/code.hpp"
#include "phasekit/diag_synth.hpp"
#include "phasekit/kl.hpp"
#include "phasekit/pauli.hpp"

namespace phasekit {

// Row-major dense complex matrix: the numeric ground truth every symbolic
// verdict is cross-checked against. Dimensions stay tiny (≤ 2^7 here), so
// the naive algorithms are exact enough and fast enough.
struct DenseMatrix {
  std::size_t dim = 0;
  std::vector<std::complex<double>> data;  // row-major, dim*dim entries

  static DenseMatrix identity(std::size_t dim);

  std::complex<double>& at(std::size_t row, std::size_t col) {
    return data[row * dim + col];
  }
  const std::complex<double>& at(std::size_t row, std::size_t col) const {
    return data[row * dim + col];
  }

  DenseMatrix adjoint() const;
  DenseMatrix operator*(const DenseMatrix& o) const;

  // ‖M†M − I‖_max; below 1e−9 for anything built from gates or diagonals.
  double unitarity_defect() const;
};

struct StateVector {
  std::vector<std::complex<double>> amplitudes;

  double norm() const;
  // Scales to norm 1 (exact to 1e−12); throws on the zero vector.
  void normalize();
};

StateVector apply(const DenseMatrix& m, const StateVector& v);
std::complex<double> inner(const StateVector& bra, const StateVector& ket);

// (1/√|support|) Σ sign·|state⟩ for one codeword.
StateVector codeword_state(const CodeWord& word);

// Diagonal matrix with entry j = e^{i·entries[j](φ)}. Entries must be
// variable-free; throws std::invalid_argument otherwise.
DenseMatrix dense_diagonal(const DiagonalPhases& diag, double phi);

// Signed-permutation matrix of p: column b holds p|b⟩.
DenseMatrix dense_pauli(const PauliOp& p);

// ⟨W_σ| ordered family product |W_σ'⟩ evaluated by dense multiplication,
// bypassing the symbolic phasor algebra entirely. Throws
// std::invalid_argument on dimension mismatch or variable-bearing entries.
std::complex<double> numeric_sandwich(const SandwichSpec& spec,
                                      const DiagonalPhases& diag,
                                      const Code& code, double phi);

// |(1 − e^{iφ})/2|², the interference probability sin²(φ/2).
double ramsey_probability(double phi);

// Prepares (|0⟩_L + |1⟩_L)/√2, applies the diagonal at φ, and returns the
// overlap probability with (|0⟩_L − |1⟩_L)/√2. The diagonal must implement
// the logical phase gate for the code; throws std::invalid_argument when it
// does not.
double logical_ramsey_demo(const Code& code, const DiagonalPhases& diag,
                           double phi);

}  // namespace phasekit
