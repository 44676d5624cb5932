#include "lambdafan/net.hpp"

#include <cassert>
#include <sstream>

namespace lambdafan {

const char* kind_name(AgentKind k) {
  switch (k) {
    case AgentKind::Interface:
      return "interface";
    case AgentKind::App:
      return "app";
    case AgentKind::Lam:
      return "lam";
    case AgentKind::Eps:
      return "eps";
    case AgentKind::Fan:
      return "fan";
    case AgentKind::Free:
      return "free";
  }
  return "?";
}

Net::Net(IdentityMode mode) : idents_(mode) {
  // agent 0 is the interface pseudo-agent; only its principal slot is used
  agents_.push_back(Agent{AgentKind::Interface, 0, 0, {}});
}

bool Net::is_binary(AgentKind k) {
  return k == AgentKind::App || k == AgentKind::Lam || k == AgentKind::Fan;
}

bool Net::live(uint32_t id) const {
  return id < agents_.size() && agents_[id].kind != AgentKind::Free &&
         agents_[id].kind != AgentKind::Interface;
}

uint32_t Net::add_agent(AgentKind kind) {
  uint32_t id;
  if (!free_.empty()) {
    id = free_.back();
    free_.pop_back();
    agents_[id] = Agent{};
  } else {
    id = uint32_t(agents_.size());
    agents_.emplace_back();
  }
  agents_[id].kind = kind;
  ++live_;
  return id;
}

uint32_t Net::add_fan(IdentId ident, uint64_t level) {
  if (level < 1) throw StructuralError("fan level must be >= 1");
  uint32_t id = add_agent(AgentKind::Fan);
  agents_[id].ident = ident;
  agents_[id].level = level;
  return id;
}

PortRef Net::peer(PortRef p) const { return agents_[p.agent()].peer[p.slot()]; }

void Net::connect(PortRef p, PortRef q) {
  if (p == q) throw StructuralError("cannot wire a port to itself");
  Agent& pa = agents_[p.agent()];
  Agent& qa = agents_[q.agent()];
  if (!pa.peer[p.slot()].is_nil() || !qa.peer[q.slot()].is_nil())
    throw StructuralError("double wiring at " + std::string(kind_name(pa.kind)) + "#" +
                          std::to_string(p.agent()) + "/" + std::to_string(p.slot()));
  pa.peer[p.slot()] = q;
  qa.peer[q.slot()] = p;
  if (p.slot() == kPrin && q.slot() == kPrin && pa.kind != AgentKind::Interface &&
      qa.kind != AgentKind::Interface)
    worklist_.push_back({p.agent(), q.agent()});
}

void Net::detach(PortRef p) {
  PortRef q = agents_[p.agent()].peer[p.slot()];
  if (q.is_nil()) return;
  agents_[p.agent()].peer[p.slot()] = kNilPort;
  agents_[q.agent()].peer[q.slot()] = kNilPort;
}

void Net::remove_agent(uint32_t id) {
  Agent& a = agents_[id];
  assert(a.kind != AgentKind::Free && a.kind != AgentKind::Interface);
  for (int s = 0; s < 3; ++s) assert(a.peer[s].is_nil());
  a.kind = AgentKind::Free;
  free_.push_back(id);
  --live_;
}

std::vector<std::string> Net::validate() const {
  std::vector<std::string> bad;
  auto port_str = [&](PortRef p) {
    return std::string(kind_name(agents_[p.agent()].kind)) + "#" + std::to_string(p.agent()) +
           "/" + std::to_string(p.slot());
  };

  size_t wired_ports = 0, principal_wires = 0;
  size_t binary = 0, eps = 0;
  auto check_port = [&](PortRef p) {
    PortRef q = agents_[p.agent()].peer[p.slot()];
    if (q.is_nil()) {
      bad.push_back("dangling port " + port_str(p));
      return;
    }
    ++wired_ports;
    if (q.agent() >= agents_.size() || agents_[q.agent()].kind == AgentKind::Free) {
      bad.push_back("wire from " + port_str(p) + " into a freed agent");
      return;
    }
    if (peer(q) == p) {
      if (p.slot() == kPrin && q.slot() == kPrin && agents_[p.agent()].kind != AgentKind::Interface &&
          agents_[q.agent()].kind != AgentKind::Interface)
        ++principal_wires;  // counted twice, once per endpoint
    } else {
      bad.push_back("wiring not involutive at " + port_str(p));
    }
  };

  check_port(interface_port());
  for_each_agent([&](uint32_t id, const Agent& a) {
    if (a.kind == AgentKind::Eps) {
      ++eps;
      check_port(PortRef(id, kPrin));
      for (int s = 1; s < 3; ++s)
        if (!a.peer[s].is_nil()) bad.push_back("eps with wired aux port #" + std::to_string(id));
    } else {
      ++binary;
      for (int s = 0; s < 3; ++s) check_port(PortRef(id, Slot(s)));
    }
    if (a.kind == AgentKind::Fan && a.level < 1)
      bad.push_back("fan #" + std::to_string(id) + " with level 0");
  });

  size_t expected_ports = 3 * binary + eps + 1;
  if (wired_ports != expected_ports)
    bad.push_back("port count mismatch: " + std::to_string(wired_ports) + " wired, expected " +
                  std::to_string(expected_ports));

  // worklist must hold exactly the principal-principal wires, once each
  size_t listed = 0;
  for (const ActivePair& p : worklist_) {
    ++listed;
    if (!live(p.a) || !live(p.b) || !(peer(PortRef(p.a, kPrin)) == PortRef(p.b, kPrin)))
      bad.push_back("stale worklist entry #" + std::to_string(p.a) + "," + std::to_string(p.b));
  }
  if (listed != principal_wires / 2)
    bad.push_back("worklist has " + std::to_string(listed) + " entries, net has " +
                  std::to_string(principal_wires / 2) + " active pairs");
  return bad;
}

std::string Net::to_dot() const {
  std::ostringstream os;
  os << "graph net {\n  node [shape=circle fontsize=10];\n";
  os << "  n0 [shape=point label=\"\" xlabel=\"interface\"];\n";
  for_each_agent([&](uint32_t id, const Agent& a) {
    os << "  n" << id << " [label=\"";
    switch (a.kind) {
      case AgentKind::App:
        os << "@";
        break;
      case AgentKind::Lam:
        os << "λ";
        break;
      case AgentKind::Eps:
        os << "ε";
        break;
      case AgentKind::Fan:
        os << "fan " << idents_.render(a.ident) << "^" << a.level;
        break;
      default:
        os << "?";
    }
    os << "\\n#" << id << "\"];\n";
  });
  static const char* slot_name[3] = {"p", "1", "2"};
  auto emit = [&](PortRef p) {
    PortRef q = agents_[p.agent()].peer[p.slot()];
    if (q.is_nil() || q.v < p.v) return;  // one edge per wire
    os << "  n" << p.agent() << " -- n" << q.agent() << " [taillabel=\"" << slot_name[p.slot()]
       << "\" headlabel=\"" << slot_name[q.slot()] << "\"];\n";
  };
  emit(interface_port());
  for_each_agent([&](uint32_t id, const Agent& a) {
    int slots = a.kind == AgentKind::Eps ? 1 : 3;
    for (int s = 0; s < slots; ++s) emit(PortRef(id, Slot(s)));
  });
  os << "}\n";
  return os.str();
}

}  // namespace lambdafan
