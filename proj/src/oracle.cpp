#include "phasekit/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "phasekit/logical.hpp"

namespace phasekit {

DenseMatrix DenseMatrix::identity(std::size_t dim) {
  DenseMatrix m;
  m.dim = dim;
  m.data.assign(dim * dim, std::complex<double>{});
  for (std::size_t j = 0; j < dim; ++j) m.at(j, j) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::adjoint() const {
  DenseMatrix out;
  out.dim = dim;
  out.data.assign(dim * dim, std::complex<double>{});
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) out.at(r, c) = std::conj(at(c, r));
  }
  return out;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& o) const {
  if (dim != o.dim) throw std::invalid_argument("DenseMatrix: dimension mismatch");
  DenseMatrix out;
  out.dim = dim;
  out.data.assign(dim * dim, std::complex<double>{});
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t k = 0; k < dim; ++k) {
      std::complex<double> a = at(r, k);
      if (a == std::complex<double>{}) continue;
      for (std::size_t c = 0; c < dim; ++c) out.at(r, c) += a * o.at(k, c);
    }
  }
  return out;
}

double DenseMatrix::unitarity_defect() const {
  DenseMatrix gram = adjoint() * (*this);
  double worst = 0.0;
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      std::complex<double> want = (r == c) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(gram.at(r, c) - want));
    }
  }
  return worst;
}

double StateVector::norm() const {
  double sq = 0.0;
  for (const std::complex<double>& a : amplitudes) sq += std::norm(a);
  return std::sqrt(sq);
}

void StateVector::normalize() {
  double len = norm();
  if (len == 0.0) throw std::invalid_argument("StateVector: cannot normalize zero vector");
  for (std::complex<double>& a : amplitudes) a /= len;
}

StateVector apply(const DenseMatrix& m, const StateVector& v) {
  if (m.dim != v.amplitudes.size())
    throw std::invalid_argument("apply: dimension mismatch");
  StateVector out;
  out.amplitudes.assign(m.dim, std::complex<double>{});
  for (std::size_t r = 0; r < m.dim; ++r) {
    for (std::size_t c = 0; c < m.dim; ++c) {
      out.amplitudes[r] += m.at(r, c) * v.amplitudes[c];
    }
  }
  return out;
}

std::complex<double> inner(const StateVector& bra, const StateVector& ket) {
  if (bra.amplitudes.size() != ket.amplitudes.size())
    throw std::invalid_argument("inner: dimension mismatch");
  std::complex<double> acc{};
  for (std::size_t j = 0; j < bra.amplitudes.size(); ++j) {
    acc += std::conj(bra.amplitudes[j]) * ket.amplitudes[j];
  }
  return acc;
}

StateVector codeword_state(const CodeWord& word) {
  StateVector out;
  out.amplitudes.assign(std::size_t{1} << word.n, std::complex<double>{});
  double amp = 1.0 / std::sqrt(static_cast<double>(word.support.size()));
  for (const SignedState& s : word.support) {
    out.amplitudes[s.state.value] = s.sign * amp;
  }
  return out;
}

DenseMatrix dense_diagonal(const DiagonalPhases& diag, double phi) {
  std::size_t dim = std::size_t{1} << diag.n;
  DenseMatrix m;
  m.dim = dim;
  m.data.assign(dim * dim, std::complex<double>{});
  for (std::size_t j = 0; j < dim; ++j) {
    const PhaseExpr& entry = diag.entries[j];
    if (entry.has_vars())
      throw std::invalid_argument("dense_diagonal: entry still contains a free variable");
    m.at(j, j) = std::exp(std::complex<double>(0.0, entry.eval(phi)));
  }
  return m;
}

DenseMatrix dense_pauli(const PauliOp& p) {
  std::size_t dim = std::size_t{1} << p.n;
  DenseMatrix m;
  m.dim = dim;
  m.data.assign(dim * dim, std::complex<double>{});
  for (std::size_t b = 0; b < dim; ++b) {
    PauliAction action = pauli_apply(p, BasisIndex{b, p.n});
    m.at(action.state.value, b) = action.coefficient.to_complex();
  }
  return m;
}

std::complex<double> numeric_sandwich(const SandwichSpec& spec,
                                      const DiagonalPhases& diag,
                                      const Code& code, double phi) {
  if (diag.n != code.n || spec.left_error.n != code.n || spec.right_error.n != code.n)
    throw std::invalid_argument("numeric_sandwich: dimension mismatch");
  DenseMatrix phase = dense_diagonal(diag, phi);
  DenseMatrix phase_dag = phase.adjoint();
  DenseMatrix left_dag = dense_pauli(spec.left_error).adjoint();
  DenseMatrix right = dense_pauli(spec.right_error);

  StateVector ket = codeword_state(code.word(spec.sigma_prime));
  switch (spec.family) {
    case SandwichFamily::AfterAfter:  // P† K_l† K_k P
      ket = apply(phase, ket);
      ket = apply(right, ket);
      ket = apply(left_dag, ket);
      ket = apply(phase_dag, ket);
      break;
    case SandwichFamily::BeforeAfter:  // K_l† P† K_k P
      ket = apply(phase, ket);
      ket = apply(right, ket);
      ket = apply(phase_dag, ket);
      ket = apply(left_dag, ket);
      break;
    case SandwichFamily::AfterBefore:  // P† K_l† P K_k
      ket = apply(right, ket);
      ket = apply(phase, ket);
      ket = apply(left_dag, ket);
      ket = apply(phase_dag, ket);
      break;
    case SandwichFamily::BeforeBefore:  // K_l† P† P K_k
      ket = apply(right, ket);
      ket = apply(phase, ket);
      ket = apply(phase_dag, ket);
      ket = apply(left_dag, ket);
      break;
  }
  return inner(codeword_state(code.word(spec.sigma)), ket);
}

double ramsey_probability(double phi) {
  std::complex<double> half_diff =
      (1.0 - std::exp(std::complex<double>(0.0, phi))) / 2.0;
  return std::norm(half_diff);
}

double logical_ramsey_demo(const Code& code, const DiagonalPhases& diag, double phi) {
  if (!verify_logical_action(diag, code))
    throw std::invalid_argument(
        "logical_ramsey_demo: diagonal does not implement the logical phase gate");
  StateVector zero = codeword_state(code.zero);
  StateVector one = codeword_state(code.one);
  std::size_t dim = zero.amplitudes.size();
  StateVector plus, minus;
  plus.amplitudes.assign(dim, std::complex<double>{});
  minus.amplitudes.assign(dim, std::complex<double>{});
  for (std::size_t j = 0; j < dim; ++j) {
    plus.amplitudes[j] = zero.amplitudes[j] + one.amplitudes[j];
    minus.amplitudes[j] = zero.amplitudes[j] - one.amplitudes[j];
  }
  plus.normalize();
  minus.normalize();
  StateVector evolved = apply(dense_diagonal(diag, phi), plus);
  return std::norm(inner(minus, evolved));
}

}  // namespace phasekit
