#pragma once

#include <stdexcept>

#include "lambdafan/net.hpp"
#include "lambdafan/term.hpp"

namespace lambdafan {

struct OpenTermError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shape of the fan comb built for a binder with k >= 2 occurrences. The comb
// chains k-1 fans; the shape changes total interaction counts but never the
// β count, so the default is fixed for reproducibility.
enum class CombShape : uint8_t { LeftLeaning, RightLeaning };

struct TranslateOptions {
  IdentityMode mode = IdentityMode::Digest;
  CombShape comb = CombShape::LeftLeaning;
};

// Compiles a closed term to its initial net: @ and λ agents mirror the AST,
// a binder's occurrences are fanned out through fresh level-1 fans (ε when
// unused, a plain wire when linear), and the root is wired to the interface.
// Throws OpenTermError on free variables.
Net translate(const Term& t, const TranslateOptions& opts = {});
Net translate(const TermPtr& t, const TranslateOptions& opts = {});

}  // namespace lambdafan
