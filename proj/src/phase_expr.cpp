#include "phasekit/phase_expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace phasekit {

namespace {

// Renders a rational coefficient attached to a unit symbol: (1,"φ") -> "φ",
// (-1,"φ") -> "-φ", (3/2,"π") -> "3π/2", (2,"v17") -> "2v17".
std::string coeff_with_unit(const Rational& c, const std::string& unit) {
  std::string out;
  Rational a = c < Rational(0) ? -c : c;
  if (c < Rational(0)) out += "-";
  if (a.numerator() != 1) out += std::to_string(a.numerator());
  out += unit;
  if (a.denominator() != 1) out += "/" + std::to_string(a.denominator());
  return out;
}

// floor(num/den) for the mod-2 reduction of pi coefficients.
std::int64_t floor_div(std::int64_t num, std::int64_t den) {
  std::int64_t q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

}  // namespace

std::string rational_to_string(const Rational& r) {
  std::string s = std::to_string(r.numerator());
  if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
  return s;
}

GaussRational GaussRational::times_i_power(int k) const {
  int m = ((k % 4) + 4) % 4;
  switch (m) {
    case 0: return *this;
    case 1: return {-im, re};
    case 2: return {-re, -im};
    default: return {im, -re};
  }
}

Rational GaussRational::abs_bound() const {
  Rational a = re < Rational(0) ? -re : re;
  Rational b = im < Rational(0) ? -im : im;
  return a + b;
}

std::complex<double> GaussRational::to_complex() const {
  return {boost::rational_cast<double>(re), boost::rational_cast<double>(im)};
}

std::string to_string(const GaussRational& w) {
  if (w.is_zero()) return "0";
  if (w.im == Rational(0)) return rational_to_string(w.re);
  std::string imag = coeff_with_unit(w.im, "i");
  if (w.re == Rational(0)) return imag;
  std::string out = "(" + rational_to_string(w.re);
  out += (w.im < Rational(0)) ? " - " : " + ";
  out += coeff_with_unit(w.im < Rational(0) ? -w.im : w.im, "i");
  out += ")";
  return out;
}

int Assignment::at(VarId v) const {
  auto it = values.find(v);
  if (it == values.end())
    throw std::invalid_argument("assignment is missing variable v" + std::to_string(v));
  return it->second;
}

PhaseExpr PhaseExpr::phi(Rational coeff) {
  PhaseExpr e;
  e.phi_ = coeff;
  return e;
}

PhaseExpr PhaseExpr::var(VarId id, int coeff) {
  PhaseExpr e;
  if (coeff != 0) e.vars_.push_back({id, coeff});
  return e;
}

PhaseExpr PhaseExpr::pi_multiple(Rational coeff) {
  PhaseExpr e;
  e.pi_ = coeff;
  return e;
}

bool PhaseExpr::is_zero() const {
  return phi_ == Rational(0) && pi_ == Rational(0) && vars_.empty();
}

std::set<VarId> PhaseExpr::var_ids() const {
  std::set<VarId> out;
  for (const auto& [id, c] : vars_) out.insert(id);
  return out;
}

PhaseExpr PhaseExpr::operator+(const PhaseExpr& o) const {
  PhaseExpr out;
  out.phi_ = phi_ + o.phi_;
  out.pi_ = pi_ + o.pi_;
  auto a = vars_.begin(), b = o.vars_.begin();
  while (a != vars_.end() || b != o.vars_.end()) {
    if (b == o.vars_.end() || (a != vars_.end() && a->first < b->first)) {
      out.vars_.push_back(*a++);
    } else if (a == vars_.end() || b->first < a->first) {
      out.vars_.push_back(*b++);
    } else {
      int c = a->second + b->second;
      if (c != 0) out.vars_.push_back({a->first, c});
      ++a;
      ++b;
    }
  }
  return out;
}

PhaseExpr PhaseExpr::operator-(const PhaseExpr& o) const { return *this + (-o); }

PhaseExpr PhaseExpr::operator-() const {
  PhaseExpr out = *this;
  out.phi_ = -out.phi_;
  out.pi_ = -out.pi_;
  for (auto& [id, c] : out.vars_) c = -c;
  return out;
}

PhaseExpr PhaseExpr::scaled(const Rational& c) const {
  if (c == Rational(0)) return PhaseExpr();
  PhaseExpr out = *this;
  out.phi_ *= c;
  out.pi_ *= c;
  if (!out.vars_.empty()) {
    if (c.denominator() != 1)
      throw std::invalid_argument("cannot scale variable terms by a non-integer");
    for (auto& [id, k] : out.vars_) k *= static_cast<int>(c.numerator());
  }
  return out;
}

bool PhaseExpr::operator<(const PhaseExpr& o) const {
  if (phi_ != o.phi_) return phi_ < o.phi_;
  if (pi_ != o.pi_) return pi_ < o.pi_;
  return vars_ < o.vars_;
}

PhaseExpr PhaseExpr::substitute(const Assignment& a) const {
  PhaseExpr out;
  out.phi_ = phi_;
  out.pi_ = pi_;
  for (const auto& [id, c] : vars_) out.phi_ += Rational(c) * Rational(a.at(id));
  return out;
}

PhaseExpr PhaseExpr::substitute_partial(const Assignment& a) const {
  PhaseExpr out;
  out.phi_ = phi_;
  out.pi_ = pi_;
  for (const auto& [id, c] : vars_) {
    if (a.has(id)) {
      out.phi_ += Rational(c) * Rational(a.values.at(id));
    } else {
      out.vars_.push_back({id, c});
    }
  }
  return out;
}

double PhaseExpr::eval(double phi_value) const {
  if (has_vars())
    throw std::invalid_argument("cannot evaluate an expression with free variables");
  return boost::rational_cast<double>(phi_) * phi_value +
         boost::rational_cast<double>(pi_) * std::numbers::pi;
}

std::string PhaseExpr::render() const {
  struct Piece {
    bool negative;
    std::string body;
  };
  std::vector<Piece> pieces;
  auto push = [&pieces](const Rational& c, const std::string& unit) {
    if (c == Rational(0)) return;
    Rational a = c < Rational(0) ? -c : c;
    pieces.push_back({c < Rational(0), coeff_with_unit(a, unit)});
  };
  push(phi_, "φ");
  for (const auto& [id, c] : vars_) push(Rational(c), "v" + std::to_string(id));
  push(pi_, "π");
  if (pieces.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (i == 0) {
      if (pieces[i].negative) out += "-";
    } else {
      out += pieces[i].negative ? " - " : " + ";
    }
    out += pieces[i].body;
  }
  return out;
}

namespace {

struct Parser {
  std::string_view s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool eat_word(std::string_view w) {
    skip_ws();
    if (s.substr(pos, w.size()) == w) {
      pos += w.size();
      return true;
    }
    return false;
  }
  std::int64_t integer() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) throw std::invalid_argument("expected integer in phase expression");
    return std::stoll(std::string(s.substr(start, pos - start)));
  }
  bool at_digit() {
    skip_ws();
    return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
  }
  bool done() {
    skip_ws();
    return pos == s.size();
  }

  // One term: [coeff]["*"|"·"] (φ|phi|π|pi|v<id>) ["/" int], or a bare "0".
  PhaseExpr term() {
    Rational coeff(1);
    bool saw_number = false;
    if (at_digit()) {
      std::int64_t num = integer();
      saw_number = true;
      coeff = Rational(num);
      if (eat('/')) {
        // Could be "3/2φ" (rational coefficient) — denominator must be digits.
        coeff = Rational(num, integer());
      }
    }
    eat('*') || eat_word("·");
    skip_ws();
    PhaseExpr base;
    if (eat_word("φ") || eat_word("phi")) {
      base = PhaseExpr::phi();
    } else if (eat_word("π") || eat_word("pi")) {
      base = PhaseExpr::pi_multiple(Rational(1));
    } else if (pos < s.size() && s[pos] == 'v') {
      ++pos;
      base = PhaseExpr::var(static_cast<VarId>(integer()));
    } else if (saw_number && coeff == Rational(0)) {
      return PhaseExpr::zero();
    } else if (saw_number) {
      throw std::invalid_argument("bare numeric constant in phase expression (only 0 allowed)");
    } else {
      throw std::invalid_argument("expected φ, π, or v<id> in phase expression");
    }
    if (eat('/')) coeff /= Rational(integer());
    if (!base.var_terms().empty()) {
      if (coeff.denominator() != 1)
        throw std::invalid_argument("variable terms must have integer coefficients");
      return PhaseExpr::var(base.var_terms()[0].first, static_cast<int>(coeff.numerator()));
    }
    return base.scaled(coeff);
  }
};

}  // namespace

PhaseExpr parse_phase_expr(std::string_view text) {
  Parser p{text};
  p.skip_ws();
  if (p.done()) throw std::invalid_argument("empty phase expression");
  PhaseExpr out;
  bool negative = p.eat('-');
  for (;;) {
    PhaseExpr t = p.term();
    out = negative ? out - t : out + t;
    if (p.done()) break;
    if (p.eat('+')) {
      negative = false;
    } else if (p.eat('-')) {
      negative = true;
    } else {
      throw std::invalid_argument("unexpected trailing text in phase expression: '" +
                                  std::string(text) + "'");
    }
  }
  return out;
}

void PhasorSum::add(const GaussRational& weight, const PhaseExpr& exponent) {
  if (weight.is_zero()) return;
  GaussRational w = weight;
  PhaseExpr e = exponent;
  // Reduce the pi part mod 2 (e^{2πi} = 1) and fold quarter turns into the weight.
  Rational pi_c = e.pi_coeff();
  if (pi_c != Rational(0)) {
    std::int64_t twice_num = 2 * pi_c.numerator();
    std::int64_t whole = floor_div(twice_num, 2 * pi_c.denominator());
    Rational reduced = pi_c - Rational(2) * Rational(whole);
    e = e - PhaseExpr::pi_multiple(pi_c) + PhaseExpr::pi_multiple(reduced);
    pi_c = reduced;  // now in [0, 2)
    Rational quarters = pi_c * Rational(2);
    if (quarters.denominator() == 1) {
      w = w.times_i_power(static_cast<int>(quarters.numerator()));
      e = e - PhaseExpr::pi_multiple(pi_c);
    }
  }
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, w);
  } else {
    it->second = it->second + w;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PhasorSum PhasorSum::operator+(const PhasorSum& o) const {
  PhasorSum out = *this;
  for (const auto& [e, w] : o.terms_) out.add(w, e);
  return out;
}

PhasorSum PhasorSum::operator-(const PhasorSum& o) const {
  PhasorSum out = *this;
  for (const auto& [e, w] : o.terms_) out.add(-w, e);
  return out;
}

PhasorSum PhasorSum::conj() const {
  PhasorSum out;
  for (const auto& [e, w] : terms_) out.add(w.conj(), -e);
  return out;
}

PhasorSum PhasorSum::scaled(const GaussRational& c) const {
  PhasorSum out;
  if (c.is_zero()) return out;
  for (const auto& [e, w] : terms_) out.add(w * c, e);
  return out;
}

PhasorSum PhasorSum::substitute(const Assignment& a) const {
  PhasorSum out;
  for (const auto& [e, w] : terms_) out.add(w, e.substitute(a));
  return out;
}

PhasorSum PhasorSum::substitute_partial(const Assignment& a) const {
  PhasorSum out;
  for (const auto& [e, w] : terms_) out.add(w, e.substitute_partial(a));
  return out;
}

std::set<VarId> PhasorSum::var_ids() const {
  std::set<VarId> out;
  for (const auto& [e, w] : terms_)
    for (const auto& [id, c] : e.var_terms()) out.insert(id);
  return out;
}

bool PhasorSum::has_vars() const {
  for (const auto& [e, w] : terms_)
    if (e.has_vars()) return true;
  return false;
}

bool PhasorSum::is_identically_zero() const {
  if (has_vars())
    throw std::invalid_argument("zero test requires variable-free exponents");
  return terms_.empty();
}

std::complex<double> PhasorSum::eval(double phi_value) const {
  std::complex<double> acc{0.0, 0.0};
  for (const auto& [e, w] : terms_)
    acc += w.to_complex() * std::exp(std::complex<double>(0.0, e.eval(phi_value)));
  return acc;
}

std::string PhasorSum::render() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, w] : terms_) {
    std::string ws = to_string(w);
    bool negative = ws.size() > 0 && ws[0] == '-';
    std::string body = negative ? ws.substr(1) : ws;
    std::string phasor;
    if (e.is_zero()) {
      phasor = body;
    } else {
      std::string es = e.render();
      phasor = (body == "1") ? "" : body + "·";
      phasor += "e^{i(" + es + ")}";
    }
    if (first) {
      out += negative ? "-" : "";
      first = false;
    } else {
      out += negative ? " - " : " + ";
    }
    out += phasor;
  }
  return out;
}

bool phasor_equal(const PhasorSum& a, const PhasorSum& b) {
  return (a - b).is_identically_zero();
}

}  // namespace phasekit
