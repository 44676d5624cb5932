#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>

#include "lambdafan/net.hpp"

namespace lambdafan {

enum class RuleKind : uint8_t {
  EpsAny,                  // ε against anything (including ε)
  Beta,                    // @ against λ
  FanLam,                  // fan duplicates λ
  FanApp,                  // fan duplicates @
  AnnihilateSameIdentity,  // fans with equal identity, any levels
  AnnihilateSameLevel,     // fans with different identity, equal level
  Commute,                 // fans with different identity and level
};
constexpr size_t kRuleCount = 7;

const char* rule_name(RuleKind r);

struct Stats {
  std::array<uint64_t, kRuleCount> per_rule{};

  uint64_t& operator[](RuleKind r) { return per_rule[size_t(r)]; }
  uint64_t operator[](RuleKind r) const { return per_rule[size_t(r)]; }
  uint64_t total() const;
  uint64_t beta() const { return (*this)[RuleKind::Beta]; }
  // "707(67)"
  std::string brief() const;
  friend bool operator==(const Stats&, const Stats&) = default;
};

enum class ReduceStatus : uint8_t {
  NormalForm,
  ResidualFanAtInterface,
  FuelExhausted,
  StuckPair,
};

const char* status_name(ReduceStatus s);

struct ReduceOutcome {
  ReduceStatus status;
  Stats stats;
  AgentKind stuck_a = AgentKind::Free, stuck_b = AgentKind::Free;
};

struct Classified {
  RuleKind rule;
  uint32_t active, passive;
};

// Total on every pair drawn from the signature that has a rule; nullopt for
// the ruleless pairs (λ against λ, @ against @).
std::optional<Classified> classify(const Net& net, uint32_t a, uint32_t b);

// One interaction: removes the pair, instantiates the right-hand side and
// bumps the rule's counter. The pair must already be popped from the
// worklist.
void apply_rule(Net& net, const Classified& c, Stats& stats);

struct EngineConfig {
  uint64_t fuel = 100'000'000;
  // Active-pair selection: LIFO when unset, seeded pseudo-random otherwise.
  // Reduction is strongly confluent, so this must not change any counts.
  std::optional<uint64_t> seed;
  bool validate_every_step = false;
  std::ostream* trace = nullptr;  // "<index> <rule> <active> <passive>"
  // Called before the first interaction and after every dot_every-th one.
  uint64_t dot_every = 0;
  std::function<void(const Net&, uint64_t)> dot_sink;
};

ReduceOutcome normalize(Net& net, const EngineConfig& config = {});

}  // namespace lambdafan
