#ifndef HMCGLM_FORMULA_HPP
#define HMCGLM_FORMULA_HPP

#include <string>
#include <vector>

namespace hmcglm {

/// Parsed model formula. Each term is the set of variables it multiplies:
/// one name for a main effect, two for a two-way interaction. Terms are
/// duplicate-free and every interaction's constituents precede it. The
/// intercept is always implied.
struct FormulaAst {
  std::string response;
  std::vector<std::vector<std::string>> terms;
  bool intercept = true;
};

/// Grammar:   formula := ident "~" term ("+" term)*
///            term    := ident | ident ":" ident | ident "*" ident
/// `a*b` expands to `a + b + a:b`; a bare `a:b` likewise pulls in any missing
/// main effects so the term-order invariant above always holds. Throws
/// DataError with the byte offset of the first offending character on
/// malformed input.
FormulaAst parse_formula(const std::string& text);

}  // namespace hmcglm

#endif  // HMCGLM_FORMULA_HPP
