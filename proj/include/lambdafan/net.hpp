#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lambdafan/identity.hpp"

namespace lambdafan {

// Agents have one principal port and either 0 (Eps) or 2 auxiliary ports.
//   Lam: aux1 = bound-variable port, aux2 = body port
//   App: aux1 = argument port,       aux2 = result port (principal faces the
//        function)
//   Fan: aux1/aux2 = the two shares
enum class AgentKind : uint8_t { Interface, App, Lam, Eps, Fan, Free };

const char* kind_name(AgentKind k);  // "app", "lam", "eps", "fan", ...

enum Slot : uint8_t { kPrin = 0, kAux1 = 1, kAux2 = 2 };

struct PortRef {
  uint32_t v = 0xffffffffu;

  constexpr PortRef() = default;
  constexpr PortRef(uint32_t agent, Slot slot) : v(agent << 2 | slot) {}

  uint32_t agent() const { return v >> 2; }
  Slot slot() const { return Slot(v & 3u); }
  bool is_nil() const { return v == 0xffffffffu; }
  friend bool operator==(PortRef a, PortRef b) { return a.v == b.v; }
};

constexpr PortRef kNilPort{};
constexpr uint32_t kInterfaceAgent = 0;

struct Agent {
  AgentKind kind = AgentKind::Free;
  IdentId ident = 0;   // Fan only
  uint64_t level = 0;  // Fan only, >= 1
  PortRef peer[3];     // wiring: peer[slot] is the port wired to this slot
};

// Wiring bugs are not recoverable; they indicate a broken rewrite rule.
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Port graph with involutive wiring, a single free interface port and a
// worklist of active pairs (principal-principal wires). Agent slots are
// recycled through a free list, so agent ids stay dense during reduction.
class Net {
 public:
  struct ActivePair {
    uint32_t a, b;
  };

  explicit Net(IdentityMode mode = IdentityMode::Digest);

  uint32_t add_agent(AgentKind kind);
  uint32_t add_fan(IdentId ident, uint64_t level);

  // p and q must both be unwired. Wiring two principal ports of live agents
  // pushes the pair onto the worklist.
  void connect(PortRef p, PortRef q);
  // Clears the wire at p (both endpoints). No-op on an unwired port.
  void detach(PortRef p);
  // All ports must be detached first.
  void remove_agent(uint32_t id);

  PortRef peer(PortRef p) const;
  const Agent& agent(uint32_t id) const { return agents_[id]; }
  bool live(uint32_t id) const;
  static bool is_binary(AgentKind k);

  PortRef interface_port() const { return PortRef(kInterfaceAgent, kPrin); }

  IdentityStore& idents() { return idents_; }
  const IdentityStore& idents() const { return idents_; }

  std::vector<ActivePair>& worklist() { return worklist_; }
  const std::vector<ActivePair>& worklist() const { return worklist_; }

  size_t live_agents() const { return live_; }
  uint32_t capacity() const { return uint32_t(agents_.size()); }

  template <class F>
  void for_each_agent(F&& f) const {
    for (uint32_t id = 1; id < agents_.size(); ++id)
      if (agents_[id].kind != AgentKind::Free) f(id, agents_[id]);
  }

  // Checks the net invariants: wiring is a perfect matching on the ports of
  // live agents plus the interface, and the worklist holds exactly the
  // principal-principal wires. Returns human-readable violations.
  std::vector<std::string> validate() const;

  // GraphViz dump with stable node numbering (agent ids).
  std::string to_dot() const;

 private:
  std::vector<Agent> agents_;
  std::vector<uint32_t> free_;
  std::vector<ActivePair> worklist_;
  IdentityStore idents_;
  size_t live_ = 0;
};

}  // namespace lambdafan
