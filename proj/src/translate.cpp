#include "lambdafan/translate.hpp"

#include <vector>

namespace lambdafan {

namespace {

struct Scope {
  const std::string* name;
  std::vector<PortRef> occurrences;  // in left-to-right source order
};

struct Translator {
  Net& net;
  CombShape comb;
  std::vector<Scope> scopes;

  // Builds the net for t and wires its root to `up`. Variable occurrences
  // are recorded and wired when the binder closes.
  void walk(const Term& t, PortRef up) {
    switch (t.tag) {
      case Term::Tag::Var: {
        for (auto it = scopes.rbegin(); it != scopes.rend(); ++it)
          if (*it->name == t.name) {
            it->occurrences.push_back(up);
            return;
          }
        throw OpenTermError("free variable '" + t.name + "'");
      }
      case Term::Tag::App: {
        uint32_t a = net.add_agent(AgentKind::App);
        net.connect(PortRef(a, kAux2), up);  // result side is the subterm root
        walk(*t.t1, PortRef(a, kPrin));      // principal faces the function
        walk(*t.t2, PortRef(a, kAux1));
        return;
      }
      case Term::Tag::Lam: {
        uint32_t l = net.add_agent(AgentKind::Lam);
        net.connect(PortRef(l, kPrin), up);
        scopes.push_back(Scope{&t.name, {}});
        walk(*t.t1, PortRef(l, kAux2));
        std::vector<PortRef> occs = std::move(scopes.back().occurrences);
        scopes.pop_back();
        bind(PortRef(l, kAux1), occs);
        return;
      }
    }
  }

  void bind(PortRef var_port, const std::vector<PortRef>& occs) {
    if (occs.empty()) {
      net.connect(PortRef(net.add_agent(AgentKind::Eps), kPrin), var_port);
      return;
    }
    if (occs.size() == 1) {
      net.connect(occs[0], var_port);
      return;
    }
    // k-1 fresh level-1 fans, principal side chained toward the binder,
    // leaves meeting occurrences in source order
    uint32_t cur = net.add_fan(net.idents().fresh(), 1);
    net.connect(PortRef(cur, kPrin), var_port);
    if (comb == CombShape::LeftLeaning) {
      for (size_t i = occs.size(); i-- > 2;) {
        net.connect(PortRef(cur, kAux2), occs[i]);
        uint32_t next = net.add_fan(net.idents().fresh(), 1);
        net.connect(PortRef(cur, kAux1), PortRef(next, kPrin));
        cur = next;
      }
      net.connect(PortRef(cur, kAux1), occs[0]);
      net.connect(PortRef(cur, kAux2), occs[1]);
    } else {
      for (size_t i = 0; i + 2 < occs.size(); ++i) {
        net.connect(PortRef(cur, kAux1), occs[i]);
        uint32_t next = net.add_fan(net.idents().fresh(), 1);
        net.connect(PortRef(cur, kAux2), PortRef(next, kPrin));
        cur = next;
      }
      net.connect(PortRef(cur, kAux1), occs[occs.size() - 2]);
      net.connect(PortRef(cur, kAux2), occs[occs.size() - 1]);
    }
  }
};

}  // namespace

Net translate(const Term& t, const TranslateOptions& opts) {
  Net net(opts.mode);
  Translator tr{net, opts.comb, {}};
  tr.walk(t, net.interface_port());
  return net;
}

Net translate(const TermPtr& t, const TranslateOptions& opts) { return translate(*t, opts); }

}  // namespace lambdafan
