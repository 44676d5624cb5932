#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lambdafan {

// Closed terms used by `check` and the test suites. Every entry normalizes
// under both the net engine and the reference evaluator within default fuel.
const std::vector<std::string>& builtin_corpus();

struct BenchRow {
  std::string term;
  uint64_t expected_total;
  uint64_t expected_beta;
  bool gated;  // informational rows never fail a strict run
};

// The five Church-numeral rows plus the arithmetic expression
// 3^3 - (2+2)! as an informational row.
const std::vector<BenchRow>& bench_rows();

// omega (\x.omega (\y.y x)) — drives a fan to the interface.
const std::string& counterexample_term();

}  // namespace lambdafan
