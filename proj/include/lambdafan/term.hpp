#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lambdafan {

// Pure λ-term AST. Nodes are immutable and may be shared between terms,
// so the "tree" is really a DAG; every traversal treats it as a tree.
struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Tag : uint8_t { Var, Lam, App };
  Tag tag;
  std::string name;  // Var: the variable; Lam: the binder
  TermPtr t1;        // Lam: body; App: function
  TermPtr t2;        // App: argument
};

TermPtr var(std::string name);
TermPtr lam(std::string binder, TermPtr body);
TermPtr app(TermPtr fun, TermPtr arg);

// λf.λx.f^n x
TermPtr church(uint64_t n);

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(int line, int col, const std::string& what);
};

// Concrete syntax:
//   term := lam | app
//   lam  := ('\' | 'λ') ident+ '.' term
//   app  := atom+                         (left-associative)
//   atom := ident | integer | '(' term ')'
// Integer literals expand to Church numerals. Identifiers not bound by an
// enclosing λ are resolved against the prelude; anything else is an error.
// '#' starts a comment running to end of line.
TermPtr parse(std::string_view text);

// Built-in combinators available to parse(): I K S omega theta succ add mul
// pow pred sub fact. All closed; fact recurses through Turing's fixed point
// combinator theta.
const std::map<std::string, TermPtr, std::less<>>& prelude();

// Prints with canonical binder names x0, x1, ... in traversal order, so
// parse(print(t)) is always α-equivalent to t.
std::string print(const Term& t, bool ascii = false);
std::string print(const TermPtr& t, bool ascii = false);

bool alpha_eq(const Term& a, const Term& b);
bool alpha_eq(const TermPtr& a, const TermPtr& b);

std::vector<std::string> free_vars(const Term& t);
bool is_closed(const Term& t);

struct NormalizeResult {
  TermPtr nf;           // meaningful only when !exhausted
  uint64_t beta_steps;
  bool exhausted;
};

// Leftmost-outermost (normal-order) β-reduction to full normal form with
// capture-avoiding substitution. fuel bounds the number of β-steps; used as
// the correctness oracle for the net reducer.
NormalizeResult reference_normalize(TermPtr t, uint64_t fuel = 10'000'000);

}  // namespace lambdafan
