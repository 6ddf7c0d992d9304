#include "doctest.h"

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "phasekit/cli.hpp"

using namespace phasekit;
using nlohmann::json;

namespace {

struct CliResult {
  int rc = -1;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliResult result;
  result.rc = run_cli(args, out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t at = text.find(needle); at != std::string::npos;
       at = text.find(needle, at + needle.size())) {
    ++count;
  }
  return count;
}

std::string fixture(const std::string& file) {
  return std::string(PHASEKIT_FIXTURES_DIR) + "/" + file;
}

}  // namespace

TEST_CASE("codes subcommands") {
  SUBCASE("list names every registered code") {
    CliResult r = run({"codes", "list"});
    CHECK(r.rc == 0);
    for (const char* name : {"example3", "rep2", "shor9", "steane"}) {
      CHECK(r.out.find(name) != std::string::npos);
    }
  }

  SUBCASE("show prints eight-term codewords for the seven-qubit code") {
    CliResult r = run({"codes", "show", "steane"});
    CHECK(r.rc == 0);
    std::string zero_line = r.out.substr(r.out.find("|0⟩_L"));
    zero_line.resize(zero_line.find('\n'));
    CHECK(zero_line.find("(1/√8)(|0000000⟩") != std::string::npos);
    CHECK(count_of(zero_line, "⟩") == 9);  // the label ket plus 8 terms
    CHECK(count_of(zero_line, " + ") == 7);
    CHECK(r.out.find("validation: pass") != std::string::npos);
  }

  SUBCASE("show accepts a code file path") {
    CliResult r = run({"codes", "show", fixture("rep2.code")});
    CHECK(r.rc == 0);
    CHECK(r.out.find("|00⟩") != std::string::npos);
    CHECK(r.out.find("|11⟩") != std::string::npos);
  }

  SUBCASE("unknown names are an input error") {
    CliResult r = run({"codes", "show", "nope"});
    CHECK(r.rc == 3);
    CHECK(!r.err.empty());
  }
}

TEST_CASE("synth subcommand") {
  SUBCASE("decomposes the worked two-qubit target") {
    CliResult r = run({"synth", "--target", fixture("two_qubit_target.txt"),
                       "--verify"});
    CHECK(r.rc == 0);
    CHECK(r.out.find("gates: 3") != std::string::npos);
    CHECK(r.out.find("CP(controls=[], target=0, angle=2φ)") != std::string::npos);
    CHECK(r.out.find("CP(controls=[], target=1, angle=φ)") != std::string::npos);
    CHECK(r.out.find("CP(controls=[0], target=1, angle=-3φ)") != std::string::npos);
    CHECK(r.out.find("exact reconstruction") != std::string::npos);
  }

  SUBCASE("decomposes the fully pinned three-qubit code") {
    CliResult r = run({"synth", "--code", "example3"});
    CHECK(r.rc == 0);
    CHECK(r.out.find("gates: 4") != std::string::npos);
    CHECK(r.out.find("CP(controls=[0, 1], target=2, angle=-2φ)") !=
          std::string::npos);
  }

  SUBCASE("identity target yields no gates") {
    CliResult r = run({"synth", "--target", fixture("identity_target.txt")});
    CHECK(r.rc == 0);
    CHECK(r.out.find("gates: 0") != std::string::npos);
  }

  SUBCASE("assignment files fill the free slots") {
    CliResult r = run({"synth", "--code", "rep2", "--assignment",
                       fixture("rep2_witness.assignment")});
    CHECK(r.rc == 0);
    CHECK(r.out.find("target: (0, 0, φ, φ)") != std::string::npos);
    CHECK(r.out.find("gates: 1") != std::string::npos);
    CHECK(r.out.find("CP(controls=[], target=0, angle=φ)") != std::string::npos);
  }

  SUBCASE("input errors exit 3") {
    CHECK(run({"synth", "--target", "/does/not/exist"}).rc == 3);
    CHECK(run({"synth", "--target", fixture("two_qubit_target.txt"), "--code",
               "rep2"})
              .rc == 3);
    CHECK(run({"synth"}).rc == 3);
    CHECK(run({"synth", "--code", "steane", "--assignment",
               fixture("rep2_witness.assignment")})
              .rc == 3);  // covers 2 of 112 slots
  }
}

TEST_CASE("solve subcommand text reports and exit codes") {
  SUBCASE("satisfiable two-qubit system") {
    CliResult r = run({"solve", "--code", "rep2", "--errors", "X1", "--bound", "1"});
    CHECK(r.rc == 0);
    CHECK(r.out.find("status: Sat") != std::string::npos);
    CHECK(r.out.find("P_L = diag(1, 1, e^{iφ}, e^{iφ})") !=
          std::string::npos);
    CHECK(r.out.find("check: pass") != std::string::npos);
  }

  SUBCASE("identity-only error set is trivially satisfiable") {
    CHECK(run({"solve", "--code", "rep2", "--errors", "I"}).rc == 0);
  }

  SUBCASE("unsatisfiable mixed-letter system exits 2 and names conflicts") {
    CliResult r = run({"solve", "--code", "rep2", "--errors", "X1,Y1"});
    CHECK(r.rc == 2);
    CHECK(r.out.find("status: UnsatWithinBound") != std::string::npos);
    CHECK(r.out.find("(lattice bound K=4)") != std::string::npos);
    CHECK(r.out.find("lattice-independent: yes") != std::string::npos);
    CHECK(r.out.find("X1,Y1") != std::string::npos);
  }

  SUBCASE("input errors exit 3") {
    CHECK(run({"solve", "--code", "nope", "--errors", "X1"}).rc == 3);
    CHECK(run({"solve", "--code", "rep2", "--errors", "A1"}).rc == 3);
    CHECK(run({"solve", "--code", "rep2", "--errors", "X1", "--bound", "0"}).rc == 3);
    CliResult shor = run({"solve", "--code", "shor9", "--errors", "X1"});
    CHECK(shor.rc == 3);
    CHECK(shor.err.find("no diagonal logical phase operator") != std::string::npos);
  }
}

TEST_CASE("solve subcommand json report") {
  SUBCASE("satisfiable report carries the full schema") {
    CliResult r = run({"solve", "--code", "rep2", "--errors", "X1", "--json"});
    CHECK(r.rc == 0);
    json j = json::parse(r.out);
    CHECK(j["status"] == "Sat");
    CHECK(j["witness"].is_object());
    CHECK(j["witness"].size() == 2);
    CHECK(j["witness"].contains("v0"));
    CHECK(j["conflicts"].is_array());
    CHECK(j["conflicts"].empty());
    CHECK(j["dof"] == 2);
    CHECK(j["constraint_count"].get<int>() > 0);
    CHECK(j["lattice_bound"] == 4);
    CHECK(j["lattice_independent"] == false);
    CHECK(j["stats"].contains("nodes"));
    CHECK(j["stats"].contains("propagations"));
    CHECK(j["stats"].contains("wall_ms"));
    CHECK(j["stats"]["seed"] == 0);
  }

  SUBCASE("unsatisfiable report omits the witness and lists conflicts") {
    CliResult r = run({"solve", "--code", "rep2", "--errors", "X1,Y1", "--json"});
    CHECK(r.rc == 2);
    json j = json::parse(r.out);
    CHECK(j["status"] == "UnsatWithinBound");
    CHECK(!j.contains("witness"));
    CHECK(!j["conflicts"].empty());
    CHECK(j["lattice_independent"] == true);
  }

  SUBCASE("text and json agree on the verdict") {
    int text_rc = run({"solve", "--code", "rep2", "--errors", "X1,Y1"}).rc;
    int json_rc = run({"solve", "--code", "rep2", "--errors", "X1,Y1", "--json"}).rc;
    CHECK(text_rc == json_rc);
  }

  SUBCASE("the format environment variable sets the default") {
    setenv("PHASEKIT_FORMAT", "json", 1);
    CliResult r = run({"solve", "--code", "rep2", "--errors", "I"});
    unsetenv("PHASEKIT_FORMAT");
    CHECK(r.rc == 0);
    CHECK(json::parse(r.out)["status"] == "Sat");
  }
}

TEST_CASE("reproduce-paper reruns the published pipelines") {
  SUBCASE("three of four sections reproduce; the flip claim does not") {
    CliResult r = run({"reproduce-paper"});
    CHECK(r.rc == 1);
    CHECK(r.out.find("[1/4] two-qubit synthesis: pass") != std::string::npos);
    CHECK(r.out.find("[2/4] three-qubit synthesis: pass") != std::string::npos);
    CHECK(r.out.find("[3/4] two-qubit error solve: pass") != std::string::npos);
    CHECK(r.out.find("[4/4] seven-qubit flip solve: FAIL") != std::string::npos);
    CHECK(r.out.find("sections passed: 3/4") != std::string::npos);
    // The mismatch is reported with the verified counter-evidence, not hidden.
    CHECK(r.out.find("witness") != std::string::npos);
    CHECK(r.out.find("verification pass") != std::string::npos);
  }

  SUBCASE("json aggregate") {
    CliResult r = run({"reproduce-paper", "--json"});
    CHECK(r.rc == 1);
    json j = json::parse(r.out);
    CHECK(j["total"] == 4);
    CHECK(j["passed"] == 3);
    CHECK(j["pass"] == false);
    CHECK(j["sections"].size() == 4);
    CHECK(j["sections"][0]["pass"] == true);
    CHECK(j["sections"][3]["pass"] == false);
    CHECK(j["sections"][3]["note"].get<std::string>().find("published") !=
          std::string::npos);
  }

  SUBCASE("a tighter lattice bound leaves the verdicts unchanged") {
    CliResult r = run({"reproduce-paper", "--bound", "1", "--json"});
    CHECK(r.rc == 1);
    json j = json::parse(r.out);
    CHECK(j["passed"] == 3);
    CHECK(j["sections"][3]["actual"].get<std::string>().find("Sat at K=1") !=
          std::string::npos);
  }

  SUBCASE("runs are deterministic") {
    CliResult a = run({"reproduce-paper"});
    CliResult b = run({"reproduce-paper"});
    CHECK(a.rc == b.rc);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("help and parse errors") {
  CHECK(run({"--help"}).rc == 0);
  CHECK(run({}).rc == 3);
  CHECK(run({"frobnicate"}).rc == 3);
  CHECK(run({"solve", "--code", "rep2"}).rc == 3);  // --errors is required
}
