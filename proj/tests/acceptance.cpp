// Acceptance suite: one criterion per number, one PASS/FAIL line each.
// Run with no arguments for all criteria, or with a single number.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "lambdafan/corpus.hpp"
#include "lambdafan/engine.hpp"
#include "lambdafan/identity.hpp"
#include "lambdafan/readback.hpp"
#include "lambdafan/term.hpp"
#include "lambdafan/translate.hpp"

using namespace lambdafan;

namespace {

struct BenchResult {
  ReduceOutcome out;
  long long ms;
};

BenchResult run_bench_term(const std::string& src, uint64_t fuel = 100'000'000) {
  Net net = translate(parse(src));
  EngineConfig cfg;
  cfg.fuel = fuel;
  auto t0 = std::chrono::steady_clock::now();
  ReduceOutcome out = normalize(net, cfg);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
                .count();
  return {out, ms};
}

// 1. the five table rows reproduce the published β counts exactly, < 60 s
bool criterion1(std::string& detail) {
  bool ok = true;
  long long total_ms = 0;
  std::string per;
  for (const BenchRow& row : bench_rows()) {
    if (!row.gated) continue;
    BenchResult r = run_bench_term(row.term);
    total_ms += r.ms;
    bool good = r.out.status == ReduceStatus::NormalForm && r.out.stats.beta() == row.expected_beta;
    if (!good) ok = false;
    per += row.term + " beta " + std::to_string(r.out.stats.beta()) + "/" +
           std::to_string(row.expected_beta) + (good ? " " : " MISMATCH ");
  }
  if (total_ms >= 60'000) {
    ok = false;
    per += "(too slow)";
  }
  detail = per + "in " + std::to_string(total_ms) + " ms";
  return ok;
}

// 2. totals match the published table exactly (the ±10% tolerance gate was
//    tightened once the fixed left-leaning comb reproduced every row)
bool criterion2(std::string& detail) {
  bool ok = true;
  std::string per;
  for (const BenchRow& row : bench_rows()) {
    if (!row.gated) continue;
    BenchResult r = run_bench_term(row.term);
    uint64_t total = r.out.stats.total();
    bool exact = r.out.status == ReduceStatus::NormalForm && total == row.expected_total;
    if (!exact) ok = false;
    per += row.term + " total " + std::to_string(total) + "/" + std::to_string(row.expected_total) +
           (exact ? " exact " : " MISMATCH ");
  }
  detail = per + (ok ? "(exact gate)" : "");
  return ok;
}

// 3. the counterexample leaves a fan at the interface within 10^6 interactions
bool criterion3(std::string& detail) {
  Net net = translate(parse(counterexample_term()));
  EngineConfig cfg;
  cfg.fuel = 1'000'000;
  ReduceOutcome out = normalize(net, cfg);
  detail = std::string(status_name(out.status)) + " after " + out.stats.brief();
  return out.status == ReduceStatus::ResidualFanAtInterface;
}

// 4. read-back equals the normal-order oracle on the whole corpus
bool criterion4(std::string& detail) {
  const auto& corpus = builtin_corpus();
  if (corpus.size() < 30) {
    detail = "corpus too small";
    return false;
  }
  int pass = 0;
  std::string bad;
  for (const std::string& src : corpus) {
    TermPtr t = parse(src);
    auto oracle = reference_normalize(t);
    Net net = translate(t);
    auto out = normalize(net);
    auto rb = readback(net);
    if (!oracle.exhausted && out.status == ReduceStatus::NormalForm &&
        rb.status == ReadbackResult::Status::Ok && alpha_eq(rb.term, oracle.nf)) {
      ++pass;
    } else {
      bad += " " + src;
    }
  }
  detail = std::to_string(pass) + "/" + std::to_string(corpus.size());
  if (!bad.empty()) detail += " failing:" + bad;
  return pass == int(corpus.size());
}

// 5. ten schedule seeds: identical stats vectors, α-equivalent read-backs
bool criterion5(std::string& detail) {
  int terms = 0;
  for (const std::string& src : builtin_corpus()) {
    TermPtr t = parse(src);
    Net base = translate(t);
    auto out0 = normalize(base);
    auto rb0 = readback(base);
    if (out0.status != ReduceStatus::NormalForm || rb0.status != ReadbackResult::Status::Ok) {
      detail = "baseline failed on " + src;
      return false;
    }
    for (uint64_t seed = 1; seed <= 10; ++seed) {
      Net net = translate(t);
      EngineConfig cfg;
      cfg.seed = seed;
      auto out = normalize(net, cfg);
      auto rb = readback(net);
      if (out.stats != out0.stats || rb.status != ReadbackResult::Status::Ok ||
          !alpha_eq(rb.term, rb0.term)) {
        detail = "seed " + std::to_string(seed) + " diverged on " + src;
        return false;
      }
    }
    ++terms;
  }
  detail = std::to_string(terms) + " terms x 10 seeds";
  return true;
}

// 6. tree and digest identity modes agree; digest values are the published
//    SHA-256 compositions
bool criterion6(std::string& detail) {
  static const char* golden[5] = {
      "865ab0d317f36965e43d20d275b545a6773137adad19db1d61ecb8032f473e0b",
      "3f524cdc07a11d7c6220bdb049fe8dd41b27483c96cc59b581e022d547290d69",
      "12ab3d8b4af6f74dc580ba1be982fe404a72219fa82509d2c2a300427086aec4",
      "5dd78d0ff76d0a9b8726e793ee3a8a77144c06f00db86f5cb13332bad1bd1ebf",
      "805d5cbf492892a3e2a611a1e025f37629ced487e6c8b51745a702f2242a4b45",
  };
  IdentityStore s(IdentityMode::Digest);
  IdentId f0 = s.fresh(), f1 = s.fresh();
  IdentId trees[5] = {f0, f1, s.clone_left(f0, f1), s.clone_right(f0, f1),
                      s.clone_right(s.clone_left(f0, f1), f0)};
  for (int i = 0; i < 5; ++i)
    if (to_hex(std::span<const uint8_t>(s.digest(trees[i]).data(), 32)) != golden[i]) {
      detail = "golden digest " + std::to_string(i) + " mismatch";
      return false;
    }

  for (const std::string& src : builtin_corpus()) {
    TermPtr t = parse(src);
    Net dig = translate(t, {IdentityMode::Digest});
    Net tree = translate(t, {IdentityMode::Tree});
    auto a = normalize(dig);
    auto b = normalize(tree);
    auto ra = readback(dig);
    auto rb = readback(tree);
    if (a.stats != b.stats || a.status != b.status || ra.status != rb.status ||
        ra.status != ReadbackResult::Status::Ok || !alpha_eq(ra.term, rb.term)) {
      detail = "modes disagree on " + src;
      return false;
    }
  }
  detail = "5 golden digests, " + std::to_string(builtin_corpus().size()) + " corpus terms";
  return true;
}

// 7. the 3^3 - (2+2)! expression normalizes to church(3); counts informational
bool criterion7(std::string& detail) {
  TermPtr t = parse("sub (pow 3 3) (fact (add 2 2))");
  Net net = translate(t);
  EngineConfig cfg;
  cfg.fuel = 100'000'000;
  auto t0 = std::chrono::steady_clock::now();
  ReduceOutcome out = normalize(net, cfg);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
                .count();
  detail = std::string(status_name(out.status)) + " " + out.stats.brief() + " in " +
           std::to_string(ms) + " ms (informational count; reference 16024(778))";
  if (out.status != ReduceStatus::NormalForm) {
    if (out.status == ReduceStatus::FuelExhausted)
      detail +=
          "; fact recurses through a fixed-point combinator whose self-application "
          "keeps spawning active pairs, and exhaustive reduction fires them all, so "
          "no interaction budget suffices (the reference evaluator does reach "
          "church(3), see the term tests)";
    return false;
  }
  auto rb = readback(net);
  if (rb.status != ReadbackResult::Status::Ok) {
    detail += " readback: " + rb.detail;
    return false;
  }
  if (!alpha_eq(rb.term, church(3))) {
    detail += " wrong normal form " + print(rb.term);
    return false;
  }
  return true;
}

// 8. validate() after every interaction and zero-interaction round-trips
bool criterion8(std::string& detail) {
  uint64_t interactions = 0;
  for (const std::string& src : builtin_corpus()) {
    TermPtr t = parse(src);
    Net rt = translate(t);
    auto rb = readback(rt);
    if (rb.status != ReadbackResult::Status::Ok || !alpha_eq(rb.term, t)) {
      detail = "round-trip failed on " + src;
      return false;
    }
    Net net = translate(t);
    EngineConfig cfg;
    cfg.validate_every_step = true;
    try {
      auto out = normalize(net, cfg);
      if (out.status != ReduceStatus::NormalForm) {
        detail = std::string(status_name(out.status)) + " on " + src;
        return false;
      }
      interactions += out.stats.total();
    } catch (const StructuralError& e) {
      detail = std::string("invariant broken on ") + src + ": " + e.what();
      return false;
    }
  }
  detail = "validated " + std::to_string(interactions) + " interactions";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  using Criterion = bool (*)(std::string&);
  static const struct {
    Criterion fn;
    const char* name;
  } criteria[8] = {
      {criterion1, "benchmark beta counts"},
      {criterion2, "benchmark totals"},
      {criterion3, "counterexample detection"},
      {criterion4, "oracle equivalence"},
      {criterion5, "determinism across schedules"},
      {criterion6, "identity-mode equivalence"},
      {criterion7, "arithmetic term"},
      {criterion8, "structural invariants"},
  };

  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  int failures = 0;
  for (int i = 1; i <= 8; ++i) {
    if (only && i != only) continue;
    std::string detail;
    bool ok = false;
    try {
      ok = criteria[i - 1].fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %d (%s): %s — %s\n", i, criteria[i - 1].name, ok ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures;
}
