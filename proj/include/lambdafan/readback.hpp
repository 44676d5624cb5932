#pragma once

#include <string>

#include "lambdafan/net.hpp"
#include "lambdafan/term.hpp"

namespace lambdafan {

struct ReadbackResult {
  enum class Status : uint8_t {
    Ok,
    ResidualFan,   // hit a fan's principal port from the term side
    MalformedNet,  // any other unexpected port, or the visit budget ran out
  };
  Status status;
  TermPtr term;        // set when Ok
  std::string detail;  // set on failure
};

// Decodes a net without active pairs into a λ-term. Fans are read as
// shares: entering through an aux port opens the share and continues at the
// principal; reaching a fan principal closes the innermost open share with
// the same identity and continues out of its recorded branch. A principal
// with no matching open share is a residual fan. Binders get fresh names
// x0, x1, ... in traversal order.
ReadbackResult readback(const Net& net);

}  // namespace lambdafan
