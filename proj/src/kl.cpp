#include "phasekit/kl.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace phasekit {

std::string family_name(SandwichFamily family) {
  switch (family) {
    case SandwichFamily::AfterAfter: return "AfterAfter";
    case SandwichFamily::BeforeAfter: return "BeforeAfter";
    case SandwichFamily::AfterBefore: return "AfterBefore";
    case SandwichFamily::BeforeBefore: return "BeforeBefore";
  }
  return "?";
}

namespace {

// One step of a sandwich chain: a Pauli factor, or the phase gate / its
// adjoint (diagonal, contributes ±entry(b) to the running exponent).
struct ChainStep {
  enum Kind { Pauli, Phase, PhaseDag } kind;
  PauliOp op;  // Pauli only
};

std::vector<ChainStep> chain_for(const SandwichSpec& spec) {
  PauliOp k = spec.right_error;
  PauliOp l_dag = pauli_adjoint(spec.left_error);
  using enum ChainStep::Kind;
  // Listed in application order (rightmost factor first).
  switch (spec.family) {
    case SandwichFamily::AfterAfter:
      return {{Phase, {}}, {Pauli, k}, {Pauli, l_dag}, {PhaseDag, {}}};
    case SandwichFamily::BeforeAfter:
      return {{Phase, {}}, {Pauli, k}, {PhaseDag, {}}, {Pauli, l_dag}};
    case SandwichFamily::AfterBefore:
      return {{Pauli, k}, {Phase, {}}, {Pauli, l_dag}, {PhaseDag, {}}};
    case SandwichFamily::BeforeBefore:
      return {{Pauli, k}, {Phase, {}}, {PhaseDag, {}}, {Pauli, l_dag}};
  }
  throw std::invalid_argument("unknown sandwich family");
}

}  // namespace

PhasorSum sandwich_element(const SandwichSpec& spec, const DiagonalTemplate& tmpl,
                           const Code& code) {
  if (tmpl.n != code.n || spec.left_error.n != code.n || spec.right_error.n != code.n)
    throw std::invalid_argument("sandwich dimension mismatch");
  const CodeWord& bra = code.word(spec.sigma);
  const CodeWord& ket = code.word(spec.sigma_prime);
  std::vector<ChainStep> chain = chain_for(spec);

  PhasorSum sum;
  for (const SignedState& start : ket.support) {
    std::uint64_t b = start.state.value;
    GaussRational coeff = GaussRational::unit();
    PhaseExpr exponent;
    for (const ChainStep& step : chain) {
      switch (step.kind) {
        case ChainStep::Pauli: {
          PauliAction act = pauli_apply(step.op, BasisIndex{b, code.n});
          coeff = coeff * act.coefficient;
          b = act.state.value;
          break;
        }
        case ChainStep::Phase:
          exponent = exponent + tmpl.entries[b].expr();
          break;
        case ChainStep::PhaseDag:
          exponent = exponent - tmpl.entries[b].expr();
          break;
      }
    }
    int bra_sign = bra.sign_of(b);
    if (bra_sign == 0) continue;
    if (start.sign * bra_sign < 0) coeff = -coeff;
    sum.add(coeff, exponent);
  }

  // Fold the amplitude product when it is rational.
  auto size = [](const CodeWord& w) { return static_cast<std::int64_t>(w.support.size()); };
  if (size(bra) == size(ket))
    return sum.scaled(GaussRational{Rational(1, size(bra)), Rational(0)});
  return sum;
}

std::vector<PauliOp> error_set(const std::string& spec, int n) {
  std::vector<PauliOp> out{PauliOp::identity(n)};
  auto push_unique = [&out](const PauliOp& p) {
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  };
  std::stringstream in(spec);
  std::string atom;
  while (std::getline(in, atom, ',')) {
    // trim whitespace
    while (!atom.empty() && std::isspace(static_cast<unsigned char>(atom.front())))
      atom.erase(atom.begin());
    while (!atom.empty() && std::isspace(static_cast<unsigned char>(atom.back())))
      atom.pop_back();
    if (atom.empty()) throw std::invalid_argument("empty atom in error set");
    if (atom == "I") continue;  // always present
    if (atom == "all-single") {
      for (char letter : {'X', 'Y', 'Z'})
        for (int q = 0; q < n; ++q) push_unique(PauliOp::single(n, letter, q));
      continue;
    }
    char letter = atom[0];
    if (letter != 'X' && letter != 'Y' && letter != 'Z')
      throw std::invalid_argument("bad error atom '" + atom +
                                  "' (expected I, X<q>, Y<q>, Z<q>, <L>*, or all-single)");
    if (atom.substr(1) == "*") {
      for (int q = 0; q < n; ++q) push_unique(PauliOp::single(n, letter, q));
      continue;
    }
    int qubit;
    try {
      std::size_t used = 0;
      qubit = std::stoi(atom.substr(1), &used);
      if (used != atom.size() - 1) throw std::invalid_argument(atom);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad error atom '" + atom + "'");
    }
    push_unique(PauliOp::single(n, letter, qubit));  // range-checked inside
  }
  return out;
}

std::string Constraint::id() const {
  std::string kind_tag = kind == ConstraintKind::OffDiagonalZero ? "offdiag" : "diag";
  return family_name(family) + "/" + kind_tag + "/" + left_label + "," + right_label;
}

bool Constraint::satisfied_by(const Assignment& assignment) const {
  return residual().substitute(assignment).is_identically_zero();
}

std::string Constraint::render() const {
  if (kind == ConstraintKind::OffDiagonalZero)
    return id() + ": " + lhs.render() + " = 0";
  return id() + ": " + lhs.render() + " = " + rhs.render();
}

namespace {

// Canonical text of a sum up to complex conjugation, so that conjugate-
// related sandwich elements collapse to one key.
std::string canonical_text(const PhasorSum& s) {
  return std::min(s.render(), s.conj().render());
}

std::string dedup_key(const Constraint& c) {
  // Conjugation partners: BeforeAfter(l,k) ↔ AfterBefore(k,l) share a class;
  // the other two families pair with themselves.
  std::string family_class;
  switch (c.family) {
    case SandwichFamily::AfterAfter: family_class = "AA"; break;
    case SandwichFamily::BeforeAfter:
    case SandwichFamily::AfterBefore: family_class = "BAAB"; break;
    case SandwichFamily::BeforeBefore: family_class = "BB"; break;
  }
  std::string lo = std::min(c.left_label, c.right_label);
  std::string hi = std::max(c.left_label, c.right_label);
  std::string kind_tag = c.kind == ConstraintKind::OffDiagonalZero ? "z" : "d";
  std::string body;
  if (c.kind == ConstraintKind::OffDiagonalZero) {
    body = canonical_text(c.lhs);
  } else {
    body = canonical_text(c.lhs) + "=" + canonical_text(c.rhs);
  }
  return family_class + "|" + lo + "," + hi + "|" + kind_tag + "|" + body;
}

}  // namespace

std::vector<Constraint> build_conditions(const Code& code, const DiagonalTemplate& tmpl,
                                         const std::vector<PauliOp>& errors) {
  if (errors.empty()) throw std::invalid_argument("error set must be nonempty");
  std::vector<Constraint> out;
  std::set<std::string> seen;

  auto finish = [&](Constraint&& c) {
    for (VarId v : c.lhs.var_ids()) c.vars.insert(v);
    for (VarId v : c.rhs.var_ids()) c.vars.insert(v);
    if (c.vars.empty()) {
      bool holds = (c.lhs - c.rhs).is_identically_zero();
      c.trivially_satisfied = holds;
      c.impossible = !holds;
    }
    std::string key = dedup_key(c);
    if (seen.insert(key).second) out.push_back(std::move(c));
  };

  const SandwichFamily families[] = {
      SandwichFamily::AfterAfter, SandwichFamily::BeforeAfter,
      SandwichFamily::AfterBefore, SandwichFamily::BeforeBefore};
  for (SandwichFamily family : families) {
    for (std::size_t l = 0; l < errors.size(); ++l) {
      for (std::size_t k = 0; k < errors.size(); ++k) {
        SandwichSpec spec{family, errors[l], errors[k], 0, 0};
        std::string l_label = pauli_label(errors[l]);
        std::string k_label = pauli_label(errors[k]);
        bool base = family == SandwichFamily::BeforeBefore;

        for (auto [s, sp] : {std::pair{0, 1}, std::pair{1, 0}}) {
          spec.sigma = s;
          spec.sigma_prime = sp;
          Constraint c;
          c.kind = ConstraintKind::OffDiagonalZero;
          c.family = family;
          c.left_label = l_label;
          c.right_label = k_label;
          c.lhs = sandwich_element(spec, tmpl, code);
          c.reduces_to_base = base;
          finish(std::move(c));
        }

        Constraint diag;
        diag.kind = ConstraintKind::DiagonalEqual;
        diag.family = family;
        diag.left_label = l_label;
        diag.right_label = k_label;
        spec.sigma = spec.sigma_prime = 0;
        diag.lhs = sandwich_element(spec, tmpl, code);
        spec.sigma = spec.sigma_prime = 1;
        diag.rhs = sandwich_element(spec, tmpl, code);
        diag.reduces_to_base = base;
        finish(std::move(diag));
      }
    }
  }
  return out;
}

}  // namespace phasekit
