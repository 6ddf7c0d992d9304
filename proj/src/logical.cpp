#include "phasekit/logical.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace phasekit {

std::vector<VarId> DiagonalTemplate::var_ids() const {
  std::vector<VarId> out;
  for (const TemplateEntry& e : entries)
    if (!e.fixed) out.push_back(e.var);
  return out;
}

DiagonalTemplate constrain(const Code& code) {
  for (const SignedState& s : code.zero.support)
    if (code.one.contains(s.state.value))
      throw std::invalid_argument(
          "code '" + code.name + "' admits no diagonal logical phase operator: " +
          "its codeword supports share basis state " + ket_string(s.state) +
          ", whose diagonal entry would need to be 0 and φ at once");
  DiagonalTemplate tmpl;
  tmpl.n = code.n;
  tmpl.entries.resize(std::size_t{1} << code.n);
  VarId next = 0;
  for (std::uint64_t j = 0; j < tmpl.entries.size(); ++j) {
    TemplateEntry& e = tmpl.entries[j];
    if (code.zero.contains(j)) {
      e = {true, PhaseExpr::zero(), -1};
    } else if (code.one.contains(j)) {
      e = {true, PhaseExpr::phi(), -1};
    } else {
      e = {false, PhaseExpr::zero(), next++};
    }
  }
  tmpl.var_count = next;
  return tmpl;
}

DiagonalPhases instantiate(const DiagonalTemplate& tmpl, const Assignment& assignment) {
  std::vector<PhaseExpr> raw;
  raw.reserve(tmpl.entries.size());
  for (const TemplateEntry& e : tmpl.entries) {
    if (e.fixed) {
      raw.push_back(e.value);
    } else {
      raw.push_back(PhaseExpr::phi(Rational(assignment.at(e.var))));
    }
  }
  return global_phase_normalize(tmpl.n, raw);
}

bool verify_logical_action(const DiagonalPhases& diag, const Code& code) {
  if (diag.n != code.n) return false;
  if (diag.entries.size() != (std::size_t{1} << code.n)) return false;
  for (const SignedState& s : code.zero.support)
    if (!diag.entries[s.state.value].is_zero()) return false;
  for (const SignedState& s : code.one.support)
    if (!(diag.entries[s.state.value] == PhaseExpr::phi())) return false;

  // Numeric cross-check: the diagonal must multiply every |0⟩_L support
  // amplitude by 1 and every |1⟩_L support amplitude by e^{iφ}.
  for (double phi : {0.0, 0.31, 1.57, 2.9, 5.8}) {
    for (const SignedState& s : code.zero.support) {
      std::complex<double> factor =
          std::exp(std::complex<double>(0.0, diag.entries[s.state.value].eval(phi)));
      if (std::abs(factor - 1.0) > 1e-12) return false;
    }
    std::complex<double> expected = std::exp(std::complex<double>(0.0, phi));
    for (const SignedState& s : code.one.support) {
      std::complex<double> factor =
          std::exp(std::complex<double>(0.0, diag.entries[s.state.value].eval(phi)));
      if (std::abs(factor - expected) > 1e-12) return false;
    }
  }
  return true;
}

Assignment parse_assignment(std::istream& in) {
  Assignment out;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream line(raw);
    std::string name, eq;
    long long value;
    if (!(line >> name)) continue;  // blank line
    if (!(line >> eq >> value) || eq != "=" || name.size() < 2 || name[0] != 'v')
      throw std::invalid_argument("assignment line " + std::to_string(line_no) +
                                  ": expected 'v<id> = <int>'");
    VarId id;
    try {
      id = static_cast<VarId>(std::stol(name.substr(1)));
    } catch (const std::exception&) {
      throw std::invalid_argument("assignment line " + std::to_string(line_no) +
                                  ": bad variable name '" + name + "'");
    }
    if (out.values.count(id))
      throw std::invalid_argument("assignment line " + std::to_string(line_no) +
                                  ": duplicate variable v" + std::to_string(id));
    out.values[id] = static_cast<int>(value);
  }
  return out;
}

Assignment load_assignment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open assignment file: " + path);
  return parse_assignment(in);
}

}  // namespace phasekit
