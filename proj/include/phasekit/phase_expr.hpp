#pragma once

#include <boost/rational.hpp>

#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace phasekit {

using Rational = boost::rational<std::int64_t>;
using VarId = std::int32_t;

std::string rational_to_string(const Rational& r);

// Exact complex scalar re + i*im with rational parts. Weights in phasor sums
// stay in this ring: Pauli coefficients are fourth roots of unity and code
// amplitudes contribute rational factors.
struct GaussRational {
  Rational re{0}, im{0};

  GaussRational() = default;
  GaussRational(Rational r) : re(r) {}
  GaussRational(Rational r, Rational i) : re(r), im(i) {}
  static GaussRational unit() { return GaussRational(Rational(1)); }

  bool is_zero() const { return re == Rational(0) && im == Rational(0); }
  GaussRational conj() const { return {re, -im}; }
  // Multiplies by i^k.
  GaussRational times_i_power(int k) const;
  Rational norm_sq() const { return re * re + im * im; }
  // |re| + |im|, an upper bound on the modulus (exact modulus may be irrational).
  Rational abs_bound() const;
  std::complex<double> to_complex() const;

  GaussRational operator+(const GaussRational& o) const { return {re + o.re, im + o.im}; }
  GaussRational operator-(const GaussRational& o) const { return {re - o.re, im - o.im}; }
  GaussRational operator-() const { return {-re, -im}; }
  GaussRational operator*(const GaussRational& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  bool operator==(const GaussRational& o) const = default;
};

std::string to_string(const GaussRational& w);

// Lattice assignment: each variable is an integer multiple of the free angle.
struct Assignment {
  std::map<VarId, int> values;

  bool has(VarId v) const { return values.count(v) != 0; }
  int at(VarId v) const;
};

// Exact linear angle form: phi_coeff*.phi + sum(coeff_v * v) + pi_coeff*pi.
// Variables stand for unknown diagonal phases, themselves angles.
class PhaseExpr {
 public:
  PhaseExpr() = default;

  static PhaseExpr zero() { return PhaseExpr(); }
  static PhaseExpr phi(Rational coeff = Rational(1));
  static PhaseExpr var(VarId id, int coeff = 1);
  static PhaseExpr pi_multiple(Rational coeff);

  const Rational& phi_coeff() const { return phi_; }
  const Rational& pi_coeff() const { return pi_; }
  const std::vector<std::pair<VarId, int>>& var_terms() const { return vars_; }

  bool is_zero() const;
  bool has_vars() const { return !vars_.empty(); }
  std::set<VarId> var_ids() const;

  PhaseExpr operator+(const PhaseExpr& o) const;
  PhaseExpr operator-(const PhaseExpr& o) const;
  PhaseExpr operator-() const;
  PhaseExpr scaled(const Rational& c) const;
  bool operator==(const PhaseExpr& o) const = default;
  // Total order; used for canonical term maps and deterministic rendering.
  bool operator<(const PhaseExpr& o) const;

  // Replaces every variable v by assignment[v]*phi. Throws std::invalid_argument
  // on a missing variable.
  PhaseExpr substitute(const Assignment& a) const;
  // Same but leaves unassigned variables in place.
  PhaseExpr substitute_partial(const Assignment& a) const;

  // Angle in radians; requires a variable-free expression.
  double eval(double phi_value) const;

  std::string render() const;

 private:
  Rational phi_{0};
  std::vector<std::pair<VarId, int>> vars_;  // sorted by id, coefficients nonzero
  Rational pi_{0};
};

// Parses the textual PhaseExpr form, e.g. "0", "2φ", "-3φ + π/2", "φ - v17".
// ASCII aliases "phi" and "pi" are accepted.
PhaseExpr parse_phase_expr(std::string_view text);

// Finite sum of weighted phasors w * e^{i*expr}. Terms are merged by canonical
// exponent on insertion; pi-multiples that are quarter turns fold into the
// weight, so a variable-free sum is zero iff no terms remain (exponents with
// distinct phi coefficients are linearly independent as functions of phi).
class PhasorSum {
 public:
  PhasorSum() = default;

  void add(const GaussRational& weight, const PhaseExpr& exponent);
  PhasorSum operator+(const PhasorSum& o) const;
  PhasorSum operator-(const PhasorSum& o) const;
  PhasorSum conj() const;
  PhasorSum scaled(const GaussRational& c) const;
  PhasorSum substitute(const Assignment& a) const;
  PhasorSum substitute_partial(const Assignment& a) const;

  bool empty() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<PhaseExpr, GaussRational>& terms() const { return terms_; }
  std::set<VarId> var_ids() const;
  bool has_vars() const;

  // Decides whether the sum vanishes for every phi. Requires variable-free
  // exponents; throws std::invalid_argument otherwise.
  bool is_identically_zero() const;

  // Numeric value at a concrete phi; requires variable-free exponents.
  std::complex<double> eval(double phi_value) const;

  std::string render() const;

 private:
  std::map<PhaseExpr, GaussRational> terms_;
};

// True iff a - b vanishes identically (both substituted/variable-free).
bool phasor_equal(const PhasorSum& a, const PhasorSum& b);

}  // namespace phasekit
