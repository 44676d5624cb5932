#include "lambdafan/engine.hpp"

#include <cassert>
#include <random>

namespace lambdafan {

const char* rule_name(RuleKind r) {
  switch (r) {
    case RuleKind::EpsAny:
      return "eps_any";
    case RuleKind::Beta:
      return "beta";
    case RuleKind::FanLam:
      return "fan_lam";
    case RuleKind::FanApp:
      return "fan_app";
    case RuleKind::AnnihilateSameIdentity:
      return "annihilate_same_identity";
    case RuleKind::AnnihilateSameLevel:
      return "annihilate_same_level";
    case RuleKind::Commute:
      return "commute";
  }
  return "?";
}

const char* status_name(ReduceStatus s) {
  switch (s) {
    case ReduceStatus::NormalForm:
      return "normal_form";
    case ReduceStatus::ResidualFanAtInterface:
      return "residual_fan_at_interface";
    case ReduceStatus::FuelExhausted:
      return "fuel_exhausted";
    case ReduceStatus::StuckPair:
      return "stuck_pair";
  }
  return "?";
}

uint64_t Stats::total() const {
  uint64_t t = 0;
  for (uint64_t c : per_rule) t += c;
  return t;
}

std::string Stats::brief() const {
  return std::to_string(total()) + "(" + std::to_string(beta()) + ")";
}

std::optional<Classified> classify(const Net& net, uint32_t a, uint32_t b) {
  const AgentKind ka = net.agent(a).kind, kb = net.agent(b).kind;
  using K = AgentKind;
  if (ka == K::Eps) return Classified{RuleKind::EpsAny, a, b};
  if (kb == K::Eps) return Classified{RuleKind::EpsAny, b, a};
  if (ka == K::App && kb == K::Lam) return Classified{RuleKind::Beta, a, b};
  if (ka == K::Lam && kb == K::App) return Classified{RuleKind::Beta, b, a};
  if (ka == K::Fan && kb == K::Lam) return Classified{RuleKind::FanLam, a, b};
  if (ka == K::Lam && kb == K::Fan) return Classified{RuleKind::FanLam, b, a};
  if (ka == K::Fan && kb == K::App) return Classified{RuleKind::FanApp, a, b};
  if (ka == K::App && kb == K::Fan) return Classified{RuleKind::FanApp, b, a};
  if (ka == K::Fan && kb == K::Fan) {
    const Agent &fa = net.agent(a), &fb = net.agent(b);
    if (net.idents().equal(fa.ident, fb.ident))
      return Classified{RuleKind::AnnihilateSameIdentity, a, b};
    if (fa.level == fb.level) return Classified{RuleKind::AnnihilateSameLevel, a, b};
    // the fan with the greater instance count duplicates the other
    return fa.level > fb.level ? Classified{RuleKind::Commute, a, b}
                               : Classified{RuleKind::Commute, b, a};
  }
  return std::nullopt;  // λ against λ or @ against @
}

namespace {

// The four former aux targets of a dying pair, indexed
//   0 = active.aux1, 1 = active.aux2, 2 = passive.aux1, 3 = passive.aux2.
// A target wired to one of these aux ports themselves (a self or cross wire
// within the pair) is remembered by slot index instead of by port.
struct RuleEnds {
  PortRef target[4];
  int slot_of[4] = {-1, -1, -1, -1};
  bool exists[4] = {};
};

PortRef aux_port(uint32_t act, uint32_t pas, int i) {
  return PortRef(i < 2 ? act : pas, i % 2 == 0 ? kAux1 : kAux2);
}

RuleEnds collect_ends(const Net& net, uint32_t act, uint32_t pas) {
  RuleEnds e;
  const bool act_bin = Net::is_binary(net.agent(act).kind);
  const bool pas_bin = Net::is_binary(net.agent(pas).kind);
  for (int i = 0; i < 4; ++i) {
    e.exists[i] = i < 2 ? act_bin : pas_bin;
    if (!e.exists[i]) continue;
    PortRef t = net.peer(aux_port(act, pas, i));
    e.target[i] = t;
    if (t.agent() == act || t.agent() == pas) {
      assert(t.slot() != kPrin);  // principals are wired to each other
      e.slot_of[i] = (t.agent() == act ? 0 : 2) + (t.slot() == kAux1 ? 0 : 1);
    }
  }
  return e;
}

void detach_and_remove(Net& net, uint32_t act, uint32_t pas) {
  net.detach(PortRef(act, kPrin));
  for (uint32_t id : {act, pas})
    for (int s = 1; s < 3; ++s) net.detach(PortRef(id, Slot(s)));
  net.remove_agent(act);
  net.remove_agent(pas);
}

// Wires attach[i] to the former target of slot i; wires within the dying
// pair collapse to a direct attach[i]-attach[j] connection.
void attach_ends(Net& net, const RuleEnds& e, const PortRef attach[4]) {
  for (int i = 0; i < 4; ++i) {
    if (!e.exists[i]) continue;
    if (e.slot_of[i] < 0)
      net.connect(attach[i], e.target[i]);
    else if (e.slot_of[i] > i)
      net.connect(attach[i], attach[e.slot_of[i]]);
  }
}

// Splices active.aux1 to passive.aux1 and active.aux2 to passive.aux2,
// collapsing chains that run through the dying pair eagerly. Chains with no
// external endpoint are closed loops and vanish with the pair.
void splice_ends(Net& net, const RuleEnds& e) {
  bool used[4] = {};
  auto join = [](int i) { return (i + 2) % 4; };
  for (int i = 0; i < 4; ++i) {
    if (used[i] || e.slot_of[i] >= 0) continue;
    PortRef start = e.target[i];
    int cur = i;
    used[cur] = true;
    for (;;) {
      int nxt = join(cur);
      used[nxt] = true;
      if (e.slot_of[nxt] < 0) {
        net.connect(start, e.target[nxt]);
        break;
      }
      cur = e.slot_of[nxt];
      used[cur] = true;
    }
  }
}

// Shared shape of the duplication rules: two copies of the passive agent
// face the active agent's former targets, two successors of the active fan
// face the passive agent's former targets, aux ports cross-wired.
void cross_wire(Net& net, uint32_t p1, uint32_t p2, uint32_t f1, uint32_t f2) {
  net.connect(PortRef(p1, kAux1), PortRef(f1, kAux1));
  net.connect(PortRef(p1, kAux2), PortRef(f2, kAux1));
  net.connect(PortRef(p2, kAux1), PortRef(f1, kAux2));
  net.connect(PortRef(p2, kAux2), PortRef(f2, kAux2));
}

uint64_t bump_level(uint64_t level) {
  if (level == UINT64_MAX) throw StructuralError("fan level overflow");
  return level + 1;
}

}  // namespace

void apply_rule(Net& net, const Classified& c, Stats& stats) {
  const uint32_t act = c.active, pas = c.passive;
  const AgentKind pas_kind = net.agent(pas).kind;
  const IdentId act_ident = net.agent(act).ident;
  const IdentId pas_ident = net.agent(pas).ident;
  const uint64_t act_level = net.agent(act).level;
  const uint64_t pas_level = net.agent(pas).level;

  RuleEnds e = collect_ends(net, act, pas);
  detach_and_remove(net, act, pas);

  switch (c.rule) {
    case RuleKind::EpsAny: {
      if (pas_kind == AgentKind::Eps) break;  // ε against ε: both vanish
      PortRef attach[4];
      attach[2] = PortRef(net.add_agent(AgentKind::Eps), kPrin);
      attach[3] = PortRef(net.add_agent(AgentKind::Eps), kPrin);
      attach_ends(net, e, attach);
      break;
    }
    case RuleKind::Beta:
    case RuleKind::AnnihilateSameIdentity:
    case RuleKind::AnnihilateSameLevel:
      splice_ends(net, e);
      break;
    case RuleKind::FanLam:
    case RuleKind::FanApp: {
      const uint64_t up = bump_level(act_level);
      uint32_t p1 = net.add_agent(pas_kind);
      uint32_t p2 = net.add_agent(pas_kind);
      uint32_t f1 = net.add_fan(act_ident, up);
      uint32_t f2 = net.add_fan(act_ident, up);
      cross_wire(net, p1, p2, f1, f2);
      PortRef attach[4] = {PortRef(p1, kPrin), PortRef(p2, kPrin), PortRef(f1, kPrin),
                           PortRef(f2, kPrin)};
      attach_ends(net, e, attach);
      break;
    }
    case RuleKind::Commute: {
      assert(act_level > pas_level);
      const uint64_t up = bump_level(act_level);
      // left/right clones of the passive identity, at the passive level
      uint32_t c1 = net.add_fan(net.idents().clone_left(pas_ident, act_ident), pas_level);
      uint32_t c2 = net.add_fan(net.idents().clone_right(pas_ident, act_ident), pas_level);
      uint32_t f1 = net.add_fan(act_ident, up);
      uint32_t f2 = net.add_fan(act_ident, up);
      cross_wire(net, c1, c2, f1, f2);
      PortRef attach[4] = {PortRef(c1, kPrin), PortRef(c2, kPrin), PortRef(f1, kPrin),
                           PortRef(f2, kPrin)};
      attach_ends(net, e, attach);
      break;
    }
  }
  ++stats[c.rule];
}

namespace {

// A fan whose principal faces the interface can never interact again: the
// interface takes no part in reduction. That is the failure mode of the
// level-tracking heuristic, and it is permanent the moment it appears.
bool fan_at_interface(const Net& net) {
  PortRef at_root = net.peer(net.interface_port());
  return !at_root.is_nil() && at_root.slot() == kPrin &&
         net.agent(at_root.agent()).kind == AgentKind::Fan;
}

}  // namespace

ReduceOutcome normalize(Net& net, const EngineConfig& config) {
  ReduceOutcome out{};
  std::optional<std::mt19937_64> rng;
  if (config.seed) rng.emplace(*config.seed);
  if (config.dot_every && config.dot_sink) config.dot_sink(net, 0);

  uint64_t fired = 0;
  auto& wl = net.worklist();
  while (!wl.empty()) {
    if (fired >= config.fuel) {
      out.status = ReduceStatus::FuelExhausted;
      return out;
    }
    size_t pick = wl.size() - 1;
    if (rng) pick = size_t((*rng)() % wl.size());
    std::swap(wl[pick], wl.back());
    Net::ActivePair pair = wl.back();
    wl.pop_back();

    auto cls = classify(net, pair.a, pair.b);
    if (!cls) {
      out.status = ReduceStatus::StuckPair;
      out.stuck_a = net.agent(pair.a).kind;
      out.stuck_b = net.agent(pair.b).kind;
      return out;
    }
    const AgentKind a_kind = net.agent(cls->active).kind;
    const AgentKind p_kind = net.agent(cls->passive).kind;
    apply_rule(net, *cls, out.stats);
    ++fired;

    if (config.trace)
      *config.trace << fired << ' ' << rule_name(cls->rule) << ' ' << kind_name(a_kind) << ' '
                    << kind_name(p_kind) << '\n';
    if (config.validate_every_step) {
      auto bad = net.validate();
      if (!bad.empty())
        throw StructuralError("after interaction " + std::to_string(fired) + ": " + bad.front());
    }
    if (config.dot_every && config.dot_sink && fired % config.dot_every == 0)
      config.dot_sink(net, fired);
    if (fan_at_interface(net)) {
      out.status = ReduceStatus::ResidualFanAtInterface;
      return out;
    }
  }

  out.status = fan_at_interface(net) ? ReduceStatus::ResidualFanAtInterface
                                     : ReduceStatus::NormalForm;
  return out;
}

}  // namespace lambdafan
