#include "phasekit/code.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace phasekit {

namespace {

CodeWord word_from_kets(int n, const std::vector<std::string>& kets, int sign = 1) {
  CodeWord w;
  w.n = n;
  for (const std::string& ket : kets) {
    BasisIndex b = parse_ket(ket);
    w.support.push_back({b, sign});
  }
  std::sort(w.support.begin(), w.support.end(),
            [](const SignedState& a, const SignedState& b) {
              return a.state.value < b.state.value;
            });
  return w;
}

// Tensor of three (|000⟩ ± |111⟩) blocks; block_sign applies per |111⟩ factor.
CodeWord shor_word(int block_sign) {
  CodeWord w;
  w.n = 9;
  for (int blocks = 0; blocks < 8; ++blocks) {
    std::uint64_t value = 0;
    int ones = 0;
    for (int j = 0; j < 3; ++j) {
      if ((blocks >> j) & 1) {
        value |= std::uint64_t{0b111} << (3 * j);
        ++ones;
      }
    }
    int sign = (block_sign < 0 && (ones & 1)) ? -1 : 1;
    w.support.push_back({BasisIndex{value, 9}, sign});
  }
  std::sort(w.support.begin(), w.support.end(),
            [](const SignedState& a, const SignedState& b) {
              return a.state.value < b.state.value;
            });
  return w;
}

}  // namespace

bool CodeWord::contains(std::uint64_t value) const { return sign_of(value) != 0; }

int CodeWord::sign_of(std::uint64_t value) const {
  auto it = std::lower_bound(support.begin(), support.end(), value,
                             [](const SignedState& s, std::uint64_t v) {
                               return s.state.value < v;
                             });
  if (it == support.end() || it->state.value != value) return 0;
  return it->sign;
}

std::vector<std::string> registry_names() {
  return {"example3", "rep2", "shor9", "steane"};
}

Code registry_get(const std::string& name) {
  if (name == "rep2") {
    return Code{"rep2", 2, word_from_kets(2, {"|00⟩"}), word_from_kets(2, {"|11⟩"})};
  }
  if (name == "example3") {
    return Code{"example3", 3,
                word_from_kets(3, {"|000⟩", "|001⟩", "|010⟩", "|100⟩"}),
                word_from_kets(3, {"|111⟩", "|110⟩", "|101⟩", "|011⟩"})};
  }
  if (name == "steane") {
    return Code{"steane", 7,
                word_from_kets(7, {"|0000000⟩", "|1010101⟩", "|0110011⟩", "|1100110⟩",
                                   "|0001111⟩", "|1011010⟩", "|0111100⟩", "|1101001⟩"}),
                word_from_kets(7, {"|1111111⟩", "|0101010⟩", "|1001100⟩", "|0011001⟩",
                                   "|1110000⟩", "|0100101⟩", "|1000011⟩", "|0010110⟩"})};
  }
  if (name == "shor9") {
    return Code{"shor9", 9, shor_word(+1), shor_word(-1)};
  }
  throw std::invalid_argument("unknown code '" + name + "' (registry: example3, rep2, shor9, steane)");
}

namespace {

[[noreturn]] void parse_fail(int line_no, const std::string& message) {
  throw std::invalid_argument("code file line " + std::to_string(line_no) + ": " + message);
}

std::string strip(const std::string& raw) {
  std::string s = raw;
  if (auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
  auto is_space = [](unsigned char c) { return std::isspace(c); };
  while (!s.empty() && is_space(s.back())) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && is_space(s[start])) ++start;
  return s.substr(start);
}

CodeWord parse_support_line(const std::string& body, int n, int line_no) {
  CodeWord w;
  w.n = n;
  std::istringstream in(body);
  std::string token;
  while (in >> token) {
    int sign = 1;
    std::string bits = token;
    if (bits[0] == '+' || bits[0] == '-') {
      sign = bits[0] == '-' ? -1 : 1;
      bits = bits.substr(1);
    }
    if (static_cast<int>(bits.size()) != n)
      parse_fail(line_no, "state '" + token + "' has " + std::to_string(bits.size()) +
                              " qubits, expected " + std::to_string(n));
    BasisIndex b;
    try {
      b = parse_ket(bits);
    } catch (const std::invalid_argument& e) {
      parse_fail(line_no, e.what());
    }
    w.support.push_back({b, sign});
  }
  if (w.support.empty()) parse_fail(line_no, "empty codeword support");
  std::sort(w.support.begin(), w.support.end(),
            [](const SignedState& a, const SignedState& b) {
              return a.state.value < b.state.value;
            });
  return w;
}

}  // namespace

Code parse_code(std::istream& in, const std::string& name) {
  Code code;
  code.name = name;
  std::string raw;
  int line_no = 0;
  int stage = 0;  // 0: expect n=, 1: expect "0:", 2: expect "1:", 3: done
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip(raw);
    if (line.empty()) continue;
    switch (stage) {
      case 0: {
        if (line.rfind("n=", 0) != 0) parse_fail(line_no, "expected 'n=<int>'");
        try {
          code.n = std::stoi(line.substr(2));
        } catch (const std::exception&) {
          parse_fail(line_no, "bad qubit count '" + line.substr(2) + "'");
        }
        if (code.n < 1 || code.n > 20)
          parse_fail(line_no, "qubit count must be in 1..20");
        stage = 1;
        break;
      }
      case 1: {
        if (line.rfind("0:", 0) != 0) parse_fail(line_no, "expected '0: <±bitstring> ...'");
        code.zero = parse_support_line(line.substr(2), code.n, line_no);
        stage = 2;
        break;
      }
      case 2: {
        if (line.rfind("1:", 0) != 0) parse_fail(line_no, "expected '1: <±bitstring> ...'");
        code.one = parse_support_line(line.substr(2), code.n, line_no);
        stage = 3;
        break;
      }
      default:
        parse_fail(line_no, "unexpected content after both codewords");
    }
  }
  if (stage != 3) throw std::invalid_argument("code file ended before both codewords were read");
  ValidationReport report = validate_code(code);
  if (!report.all_pass) {
    std::string why;
    for (const ValidationCheck& c : report.checks)
      if (!c.pass) why += (why.empty() ? "" : "; ") + c.name + ": " + c.detail;
    throw std::invalid_argument("code validation failed: " + why);
  }
  return code;
}

Code load_code(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open code file: " + path.string());
  return parse_code(in, path.stem().string());
}

std::string serialize_code(const Code& code) {
  std::ostringstream out;
  out << "# code: " << code.name << "\n";
  out << "n=" << code.n << "\n";
  for (int sigma : {0, 1}) {
    out << sigma << ":";
    for (const SignedState& s : code.word(sigma).support) {
      std::string bits = ket_string(s.state);
      // strip the |⟩ wrapper for the file format
      bits = bits.substr(1, bits.size() - 4);
      out << " " << (s.sign < 0 ? '-' : '+') << bits;
    }
    out << "\n";
  }
  return out.str();
}

void save_code(const Code& code, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write code file: " + path.string());
  out << serialize_code(code);
}

ValidationReport validate_code(const Code& code) {
  ValidationReport report;
  auto add = [&report](const std::string& name, bool pass, const std::string& detail) {
    report.checks.push_back({name, pass, pass ? "" : detail});
  };

  bool n_ok = code.n >= 1 && code.n <= 20 && code.zero.n == code.n && code.one.n == code.n;
  add("qubit-count", n_ok, "codewords disagree with declared qubit count");

  std::uint64_t limit = std::uint64_t{1} << code.n;
  for (int sigma : {0, 1}) {
    const CodeWord& w = code.word(sigma);
    std::string label = sigma == 0 ? "zero" : "one";
    bool nonempty = !w.support.empty();
    add(label + "-nonempty", nonempty, "empty support");
    bool in_range = true, sorted_distinct = true, signs_ok = true;
    for (std::size_t i = 0; i < w.support.size(); ++i) {
      if (w.support[i].state.value >= limit) in_range = false;
      if (i > 0 && w.support[i - 1].state.value >= w.support[i].state.value)
        sorted_distinct = false;
      if (w.support[i].sign != 1 && w.support[i].sign != -1) signs_ok = false;
    }
    add(label + "-index-range", in_range, "support index at or above 2^n");
    add(label + "-sorted-distinct", sorted_distinct, "support not sorted or has duplicates");
    add(label + "-signs", signs_ok, "sign outside {+1, -1}");
  }

  // ⟨0_L|1_L⟩ must vanish exactly. Disjoint supports are the common case;
  // shared states are allowed when the signed overlap cancels (e.g. shor9,
  // where the two codewords span the same eight states with ±1 signs).
  std::int64_t overlap = 0;
  for (const SignedState& s : code.zero.support)
    overlap += s.sign * code.one.sign_of(s.state.value);
  add("orthogonal-codewords", overlap == 0,
      "signed overlap of |0⟩_L and |1⟩_L is nonzero");

  report.all_pass = std::all_of(report.checks.begin(), report.checks.end(),
                                [](const ValidationCheck& c) { return c.pass; });
  return report;
}

namespace {

// Exact ⟨W_σ| K |W_σ'⟩ with the 1/√(|s_σ||s_σ'|) amplitude folded in when it
// is rational (equal support sizes, and always on the diagonal). When the
// sizes differ the off-diagonal entries carry the raw sum; the pass/fail
// zero test is scale-invariant either way.
GaussRational word_sandwich(const Code& code, const PauliOp& k_op, int sigma,
                            int sigma_prime) {
  const CodeWord& bra = code.word(sigma);
  const CodeWord& ket = code.word(sigma_prime);
  GaussRational sum;
  for (const SignedState& s : ket.support) {
    PauliAction act = pauli_apply(k_op, s.state);
    int bra_sign = bra.sign_of(act.state.value);
    if (bra_sign == 0) continue;
    GaussRational term = act.coefficient;
    if (s.sign * bra_sign < 0) term = -term;
    sum = sum + term;
  }
  auto size = [](const CodeWord& w) {
    return static_cast<std::int64_t>(w.support.size());
  };
  if (size(bra) == size(ket)) {
    return sum * GaussRational{Rational(1, size(bra)), Rational(0)};
  }
  return sum;
}

}  // namespace

KLTable base_kl_check(const Code& code, const std::vector<PauliOp>& errors) {
  for (const PauliOp& e : errors)
    if (e.n != code.n)
      throw std::invalid_argument("error operator qubit count " + std::to_string(e.n) +
                                  " does not match code '" + code.name + "'");
  KLTable table;
  table.errors = errors;
  table.pass = true;
  for (std::size_t l = 0; l < errors.size(); ++l) {
    for (std::size_t k = 0; k < errors.size(); ++k) {
      KLTableEntry entry;
      entry.l = l;
      entry.k = k;
      PauliOp prod = pauli_compose(pauli_adjoint(errors[l]), errors[k]);
      for (int s = 0; s < 2; ++s)
        for (int sp = 0; sp < 2; ++sp)
          entry.value[static_cast<std::size_t>(s)][static_cast<std::size_t>(sp)] =
              word_sandwich(code, prod, s, sp);
      entry.off_diagonal_zero = entry.value[0][1].is_zero() && entry.value[1][0].is_zero();
      entry.diagonal_equal = entry.value[0][0] == entry.value[1][1];
      if (!entry.off_diagonal_zero || !entry.diagonal_equal) table.pass = false;
      table.entries.push_back(entry);
    }
  }
  return table;
}

}  // namespace phasekit
