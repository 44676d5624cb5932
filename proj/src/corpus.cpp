#include "lambdafan/corpus.hpp"

namespace lambdafan {

const std::vector<std::string>& builtin_corpus() {
  // Church arithmetic stays at values <= 64 so the normal-order oracle is
  // cheap; erased arguments are kept redex-free so full net reduction never
  // does work the oracle refuses to count.
  static const std::vector<std::string> corpus = {
      "I",
      "K I omega",
      "K S omega",
      "(\\x.\\y.y) omega",
      "K (K I omega) omega",
      "S I I",
      "S I K",
      "omega I",
      "omega (\\x.x)",
      "\\x.x (\\y.y x)",
      "\\x.\\x.x",
      "(\\f.\\x.f (f x)) I",
      "2 2 I I",
      "2 2 2 I I",
      "0 omega",
      "succ 0",
      "succ 7",
      "add 0 5",
      "add 2 3",
      "add 3 13",
      "mul 3 0",
      "mul 2 3",
      "mul 3 4",
      "mul 7 9",
      "pow 2 2",
      "pow 2 3",
      "pow 2 5",
      "pow 2 6",
      "pow 3 3",
      "pred 0",
      "pred 1",
      "pred 9",
      "sub 9 4",
      "sub 3 5",
      "sub 7 7",
      "pred (pow 2 4)",
      "add (mul 2 3) (pow 2 2)",
      "mul (add 1 2) (add 2 2)",
      "sub (pow 2 5) (mul 3 5)",
  };
  return corpus;
}

const std::vector<BenchRow>& bench_rows() {
  static const std::vector<BenchRow> rows = {
      {"2 2 2 10 I I", 707, 67, true},
      {"3 2 2 2 I I", 1158, 40, true},
      {"10 2 2 I I", 4282, 56, true},
      {"4 2 2 2 I I", 262377, 61, true},
      {"2 2 2 2 10 I I", 2359780, 198, true},
      // 3^3 - (2+2)! — informational: the reference counts were measured
      // under a demand-driven evaluation scheme this engine does not use
      {"sub (pow 3 3) (fact (add 2 2))", 16024, 778, false},
  };
  return rows;
}

const std::string& counterexample_term() {
  static const std::string t = "omega (\\x.omega (\\y.y x))";
  return t;
}

}  // namespace lambdafan
