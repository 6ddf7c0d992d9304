#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "phasekit/code.hpp"
#include "phasekit/diag_synth.hpp"
#include "phasekit/phase_expr.hpp"

namespace phasekit {

// One diagonal slot of a logical phase-gate template: pinned to an exact
// phase on codeword support, or a fresh free variable elsewhere.
struct TemplateEntry {
  bool fixed = true;
  PhaseExpr value;   // meaningful when fixed
  VarId var = -1;    // meaningful when free

  PhaseExpr expr() const { return fixed ? value : PhaseExpr::var(var); }
};

struct DiagonalTemplate {
  int n = 0;
  std::vector<TemplateEntry> entries;  // indexed by BasisIndex value
  int var_count = 0;

  std::vector<VarId> var_ids() const;
};

// Fixed(0) on support(|0⟩_L), Fixed(φ) on support(|1⟩_L), Free elsewhere
// with var_ids numbered 0,1,... by ascending basis index. Throws for codes
// whose codeword supports overlap: a shared state would need its diagonal
// entry pinned to 0 and φ at once, so no diagonal logical phase gate exists.
DiagonalTemplate constrain(const Code& code);

// Free(v) entries become (assigned integer)·φ; then normalized.
DiagonalPhases instantiate(const DiagonalTemplate& tmpl, const Assignment& assignment);

// True iff the diagonal acts as identity on |0⟩_L and as e^{iφ} on |1⟩_L:
// exact entry check plus a numeric cross-check at sampled φ.
bool verify_logical_action(const DiagonalPhases& diag, const Code& code);

// "v<id> = <int>" per line; '#' comments and blank lines ignored.
Assignment parse_assignment(std::istream& in);
Assignment load_assignment(const std::string& path);

}  // namespace phasekit
