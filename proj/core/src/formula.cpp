#include "hmcglm/formula.hpp"

#include <algorithm>
#include <cctype>

#include "hmcglm/errors.hpp"

namespace hmcglm {

namespace {

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& what) {
    throw DataError("formula syntax error at byte " + std::to_string(pos) + ": " + what);
  }

  std::string ident() {
    skip_ws();
    const std::size_t start = pos;
    auto ident_char = [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
    };
    while (pos < text.size() && ident_char(text[pos])) ++pos;
    if (pos == start) fail("expected identifier");
    if (std::isdigit(static_cast<unsigned char>(text[start]))) {
      pos = start;
      fail("identifier cannot start with a digit");
    }
    return text.substr(start, pos - start);
  }

  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }
};

void add_term(std::vector<std::vector<std::string>>& terms, std::vector<std::string> term) {
  if (term.size() == 2 && term[0] == term[1]) term.pop_back();
  const auto equal = [&](const std::vector<std::string>& t) {
    if (t.size() != term.size()) return false;
    if (t.size() == 1) return t[0] == term[0];
    return (t[0] == term[0] && t[1] == term[1]) || (t[0] == term[1] && t[1] == term[0]);
  };
  if (std::none_of(terms.begin(), terms.end(), equal)) terms.push_back(std::move(term));
}

}  // namespace

FormulaAst parse_formula(const std::string& text) {
  Cursor cur{text};
  FormulaAst ast;
  ast.response = cur.ident();
  cur.expect('~');

  while (true) {
    const std::string a = cur.ident();
    const char op = cur.peek();
    if (op == ':' || op == '*') {
      ++cur.pos;
      const std::string b = cur.ident();
      // constituent main effects always precede their interaction
      add_term(ast.terms, {a});
      add_term(ast.terms, {b});
      add_term(ast.terms, {a, b});
    } else {
      add_term(ast.terms, {a});
    }
    if (cur.at_end()) break;
    cur.expect('+');
    if (cur.at_end()) cur.fail("trailing '+'");
  }
  return ast;
}

}  // namespace hmcglm
