#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

#include "oracle_helpers.hpp"
#include "phasekit/code.hpp"

using namespace phasekit;
using testoracle::Vector;
using testoracle::cdouble;

namespace {

// Dense codeword vector, amplitudes sign/√|support|.
Vector word_vector(const CodeWord& w) {
  Vector v(std::size_t{1} << w.n);
  double amp = 1.0 / std::sqrt(static_cast<double>(w.support.size()));
  for (const SignedState& s : w.support) v[s.state.value] = s.sign * amp;
  return v;
}

std::string letter_word(const PauliOp& p) {
  std::string word(static_cast<std::size_t>(p.n), 'I');
  for (int q = 0; q < p.n; ++q) {
    bool x = (p.x_mask >> q) & 1, z = (p.z_mask >> q) & 1;
    word[static_cast<std::size_t>(q)] = x && z ? 'Y' : x ? 'X' : z ? 'Z' : 'I';
  }
  return word;
}

// ⟨W_σ| K_l† K_k |W_σ'⟩ by dense linear algebra, independent of base_kl_check.
cdouble dense_pair_value(const Code& code, const PauliOp& l, const PauliOp& k,
                         int sigma, int sigma_prime) {
  Vector bra = testoracle::mat_vec(testoracle::word_matrix(letter_word(l)),
                                   word_vector(code.word(sigma)));
  Vector ket = testoracle::mat_vec(testoracle::word_matrix(letter_word(k)),
                                   word_vector(code.word(sigma_prime)));
  return testoracle::inner(bra, ket);
}

std::vector<PauliOp> all_single_paulis(int n) {
  std::vector<PauliOp> out{PauliOp::identity(n)};
  for (char letter : {'X', 'Y', 'Z'})
    for (int q = 0; q < n; ++q) out.push_back(PauliOp::single(n, letter, q));
  return out;
}

}  // namespace

TEST_CASE("registry codes have the published codewords") {
  CHECK(registry_names() == std::vector<std::string>{"example3", "rep2", "shor9", "steane"});

  Code rep2 = registry_get("rep2");
  CHECK(rep2.n == 2);
  REQUIRE(rep2.zero.support.size() == 1);
  CHECK(ket_string(rep2.zero.support[0].state) == "|00⟩");
  CHECK(ket_string(rep2.one.support[0].state) == "|11⟩");

  Code steane = registry_get("steane");
  CHECK(steane.n == 7);
  CHECK(steane.zero.support.size() == 8);
  CHECK(steane.one.support.size() == 8);
  CHECK(steane.zero.contains(parse_ket("|0000000⟩").value));
  CHECK(steane.zero.contains(parse_ket("|1010101⟩").value));
  CHECK(steane.one.contains(parse_ket("|1111111⟩").value));
  for (const SignedState& s : steane.zero.support) CHECK(s.sign == 1);

  Code ex3 = registry_get("example3");
  CHECK(ex3.n == 3);
  CHECK(ex3.zero.support.size() == 4);
  CHECK(ex3.zero.contains(0));                          // |000⟩
  CHECK(ex3.zero.contains(parse_ket("|001⟩").value));   // value 4
  CHECK(ex3.one.contains(parse_ket("|110⟩").value));    // value 3

  Code shor = registry_get("shor9");
  CHECK(shor.n == 9);
  CHECK(shor.zero.support.size() == 8);
  CHECK(shor.one.support.size() == 8);
  int negatives = 0;
  for (const SignedState& s : shor.one.support) negatives += s.sign < 0;
  CHECK(negatives == 4);  // odd number of |111⟩ blocks
  for (const SignedState& s : shor.zero.support) CHECK(s.sign == 1);

  CHECK_THROWS_AS(registry_get("nope"), std::invalid_argument);
}

TEST_CASE("every registry code passes validation") {
  for (const std::string& name : registry_names()) {
    ValidationReport report = validate_code(registry_get(name));
    CHECK(report.all_pass);
    for (const ValidationCheck& c : report.checks) CHECK(c.pass);
  }
}

TEST_CASE("validation names specific structural failures") {
  Code bad = registry_get("rep2");

  SUBCASE("duplicate support index") {
    bad.zero.support.push_back(bad.zero.support[0]);
    ValidationReport r = validate_code(bad);
    CHECK(!r.all_pass);
    bool found = false;
    for (const ValidationCheck& c : r.checks)
      if (c.name == "zero-sorted-distinct" && !c.pass) found = true;
    CHECK(found);
  }

  SUBCASE("index out of range") {
    bad.one.support[0].state.value = 4;  // ≥ 2^2
    ValidationReport r = validate_code(bad);
    CHECK(!r.all_pass);
    bool found = false;
    for (const ValidationCheck& c : r.checks)
      if (c.name == "one-index-range" && !c.pass) found = true;
    CHECK(found);
  }

  SUBCASE("nonzero codeword overlap") {
    bad.one.support[0].state.value = 0;
    ValidationReport r = validate_code(bad);
    CHECK(!r.all_pass);
    bool found = false;
    for (const ValidationCheck& c : r.checks)
      if (c.name == "orthogonal-codewords" && !c.pass) found = true;
    CHECK(found);
  }
}

TEST_CASE("code files parse, save, and round-trip") {
  std::istringstream small("n=2\n0: +00\n1: +11\n");
  Code parsed = parse_code(small, "rep2");
  CHECK(parsed.zero == registry_get("rep2").zero);
  CHECK(parsed.one == registry_get("rep2").one);

  SUBCASE("comments, blank lines, and bare bitstrings are accepted") {
    std::istringstream text(
        "# a comment\n\nn=2\n0: 00  # inline comment\n1: -11\n");
    Code c = parse_code(text, "t");
    CHECK(c.zero.support[0].sign == 1);
    CHECK(c.one.support[0].sign == -1);
  }

  SUBCASE("parse errors carry line numbers") {
    std::istringstream bad_n("n=x\n0: +00\n1: +11\n");
    CHECK_THROWS_WITH_AS(parse_code(bad_n, "t"),
                         doctest::Contains("line 1"), std::invalid_argument);
    std::istringstream bad_state("n=2\n0: +00\n1: +1\n");
    CHECK_THROWS_WITH_AS(parse_code(bad_state, "t"),
                         doctest::Contains("line 3"), std::invalid_argument);
    std::istringstream truncated("n=2\n0: +00\n");
    CHECK_THROWS_AS(parse_code(truncated, "t"), std::invalid_argument);
    std::istringstream overlap("n=2\n0: +00\n1: +00\n");
    CHECK_THROWS_WITH_AS(parse_code(overlap, "t"),
                         doctest::Contains("orthogonal"), std::invalid_argument);
  }

  SUBCASE("save/load round-trips every registry code") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "phasekit_code_roundtrip";
    fs::create_directories(dir);
    for (const std::string& name : registry_names()) {
      Code original = registry_get(name);
      fs::path file = dir / (name + ".code");
      save_code(original, file);
      Code loaded = load_code(file);
      CHECK(loaded.n == original.n);
      CHECK(loaded.zero == original.zero);
      CHECK(loaded.one == original.one);
      CHECK(loaded.name == name);
    }
    fs::remove_all(dir);
  }
}

TEST_CASE("error-detection tables match the published verdicts") {
  SUBCASE("rep2 detects a bit flip on qubit 1") {
    Code rep2 = registry_get("rep2");
    KLTable t = base_kl_check(rep2, {PauliOp::identity(2), PauliOp::single(2, 'X', 1)});
    CHECK(t.pass);
  }

  SUBCASE("rep2 does not detect a phase flip") {
    Code rep2 = registry_get("rep2");
    KLTable t = base_kl_check(rep2, {PauliOp::identity(2), PauliOp::single(2, 'Z', 0)});
    CHECK(!t.pass);
    // Find the (I, Z0) block: diagonal is +1 vs −1.
    const KLTableEntry* iz = nullptr;
    for (const KLTableEntry& e : t.entries)
      if (e.l == 0 && e.k == 1) iz = &e;
    REQUIRE(iz != nullptr);
    CHECK(iz->value[0][0] == GaussRational::unit());
    CHECK(iz->value[1][1] == -GaussRational::unit());
    CHECK(iz->off_diagonal_zero);
    CHECK(!iz->diagonal_equal);
  }

  SUBCASE("steane detects every single-qubit error") {
    KLTable t = base_kl_check(registry_get("steane"), all_single_paulis(7));
    CHECK(t.errors.size() == 22);
    CHECK(t.pass);
  }

  SUBCASE("shor9 detects every single-qubit error") {
    KLTable t = base_kl_check(registry_get("shor9"), all_single_paulis(9));
    CHECK(t.errors.size() == 28);
    CHECK(t.pass);
  }

  SUBCASE("qubit-count mismatch is rejected") {
    CHECK_THROWS_AS(base_kl_check(registry_get("rep2"), {PauliOp::identity(3)}),
                    std::invalid_argument);
  }
}

TEST_CASE("exact table entries agree with the dense oracle") {
  std::mt19937 rng(20260817);
  for (const char* name : {"rep2", "example3"}) {
    Code code = registry_get(name);
    std::vector<PauliOp> errors = all_single_paulis(code.n);
    KLTable t = base_kl_check(code, errors);
    for (const KLTableEntry& e : t.entries) {
      for (int s = 0; s < 2; ++s) {
        for (int sp = 0; sp < 2; ++sp) {
          cdouble expect = dense_pair_value(code, errors[e.l], errors[e.k], s, sp);
          cdouble got = e.value[static_cast<std::size_t>(s)][static_cast<std::size_t>(sp)]
                            .to_complex();
          REQUIRE(std::abs(expect - got) < 1e-12);
        }
      }
    }
  }

  // Random signed codes on 3 qubits: entries still agree (pass flag aside).
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<int> perm{0, 1, 2, 3, 4, 5, 6, 7};
    std::shuffle(perm.begin(), perm.end(), rng);
    Code c;
    c.name = "random";
    c.n = 3;
    c.zero.n = c.one.n = 3;
    for (int j = 0; j < 2; ++j)
      c.zero.support.push_back(
          {BasisIndex{static_cast<std::uint64_t>(perm[j]), 3}, rng() % 2 ? 1 : -1});
    for (int j = 2; j < 4; ++j)
      c.one.support.push_back(
          {BasisIndex{static_cast<std::uint64_t>(perm[j]), 3}, rng() % 2 ? 1 : -1});
    auto by_value = [](const SignedState& a, const SignedState& b) {
      return a.state.value < b.state.value;
    };
    std::sort(c.zero.support.begin(), c.zero.support.end(), by_value);
    std::sort(c.one.support.begin(), c.one.support.end(), by_value);
    REQUIRE(validate_code(c).all_pass);

    std::vector<PauliOp> errors = {PauliOp::identity(3),
                                   PauliOp::single(3, 'X', static_cast<int>(rng() % 3)),
                                   PauliOp::single(3, 'Y', static_cast<int>(rng() % 3)),
                                   PauliOp::single(3, 'Z', static_cast<int>(rng() % 3))};
    KLTable t = base_kl_check(c, errors);
    for (const KLTableEntry& e : t.entries)
      for (int s = 0; s < 2; ++s)
        for (int sp = 0; sp < 2; ++sp)
          REQUIRE(std::abs(dense_pair_value(c, errors[e.l], errors[e.k], s, sp) -
                           e.value[static_cast<std::size_t>(s)][static_cast<std::size_t>(sp)]
                               .to_complex()) < 1e-12);
  }
}
