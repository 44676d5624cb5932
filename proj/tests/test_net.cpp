#include <doctest.h>

#include <map>

#include "gen.hpp"
#include "lambdafan/corpus.hpp"
#include "lambdafan/net.hpp"
#include "lambdafan/translate.hpp"

using namespace lambdafan;

namespace {

// occurrence counts per binder, the test-side oracle for the fan-count law
void count_occurrences(const Term& t, std::vector<std::pair<std::string, int>>& scope,
                       std::vector<int>& out) {
  switch (t.tag) {
    case Term::Tag::Var:
      for (auto it = scope.rbegin(); it != scope.rend(); ++it)
        if (it->first == t.name) {
          ++it->second;
          return;
        }
      return;
    case Term::Tag::Lam: {
      scope.emplace_back(t.name, 0);
      count_occurrences(*t.t1, scope, out);
      out.push_back(scope.back().second);
      scope.pop_back();
      return;
    }
    case Term::Tag::App:
      count_occurrences(*t.t1, scope, out);
      count_occurrences(*t.t2, scope, out);
      return;
  }
}

std::map<AgentKind, int> census(const Net& net) {
  std::map<AgentKind, int> n;
  net.for_each_agent([&](uint32_t, const Agent& a) { ++n[a.kind]; });
  return n;
}

}  // namespace

TEST_CASE("connect detects active pairs, interface does not count") {
  Net net;
  uint32_t l = net.add_agent(AgentKind::Lam);
  net.connect(PortRef(l, kPrin), net.interface_port());
  CHECK(net.worklist().empty());

  uint32_t a = net.add_agent(AgentKind::App);
  uint32_t l2 = net.add_agent(AgentKind::Lam);
  net.connect(PortRef(a, kPrin), PortRef(l2, kPrin));
  REQUIRE(net.worklist().size() == 1);
  CHECK(((net.worklist()[0].a == a && net.worklist()[0].b == l2) ||
         (net.worklist()[0].a == l2 && net.worklist()[0].b == a)));
}

TEST_CASE("wiring errors") {
  Net net;
  uint32_t e1 = net.add_agent(AgentKind::Eps);
  uint32_t e2 = net.add_agent(AgentKind::Eps);
  CHECK_THROWS_AS(net.connect(PortRef(e1, kPrin), PortRef(e1, kPrin)), StructuralError);
  net.connect(PortRef(e1, kPrin), PortRef(e2, kPrin));
  uint32_t e3 = net.add_agent(AgentKind::Eps);
  CHECK_THROWS_AS(net.connect(PortRef(e1, kPrin), PortRef(e3, kPrin)), StructuralError);
  CHECK_THROWS_AS(net.add_fan(0, 0), StructuralError);
}

TEST_CASE("validate flags danglers") {
  Net net;
  net.add_agent(AgentKind::Lam);
  auto bad = net.validate();
  REQUIRE_FALSE(bad.empty());  // the three λ ports and the interface dangle
  CHECK(bad.front().find("dangling") != std::string::npos);
}

TEST_CASE("validate catches a worklist that lost an entry") {
  Net net = translate(parse("(\\x.x) (\\y.y)"));
  CHECK(net.validate().empty());
  REQUIRE(net.worklist().size() == 1);
  net.worklist().clear();
  auto bad = net.validate();
  REQUIRE_FALSE(bad.empty());
  CHECK(bad.front().find("worklist") != std::string::npos);
}

TEST_CASE("translate the identity") {
  Net net = translate(parse("\\x.x"));
  CHECK(net.validate().empty());
  CHECK(net.live_agents() == 1);
  auto c = census(net);
  CHECK(c[AgentKind::Lam] == 1);
  // var and body port wired together
  uint32_t l = net.peer(net.interface_port()).agent();
  CHECK(net.peer(PortRef(l, kAux1)) == PortRef(l, kAux2));
}

TEST_CASE("translate a shared variable: one level-1 fan") {
  Net net = translate(parse("\\x.x x"));
  CHECK(net.validate().empty());
  auto c = census(net);
  CHECK(c[AgentKind::Lam] == 1);
  CHECK(c[AgentKind::App] == 1);
  CHECK(c[AgentKind::Fan] == 1);
  net.for_each_agent([&](uint32_t, const Agent& a) {
    if (a.kind == AgentKind::Fan) CHECK(a.level == 1);
  });
}

TEST_CASE("translate an unused binder: eps on the variable port") {
  Net net = translate(parse("\\x.\\y.x"));
  CHECK(net.validate().empty());
  auto c = census(net);
  CHECK(c[AgentKind::Lam] == 2);
  CHECK(c[AgentKind::Eps] == 1);
  CHECK(c[AgentKind::Fan] == 0);
}

TEST_CASE("translate rejects open terms") {
  CHECK_THROWS_AS(translate(var("x")), OpenTermError);
  CHECK_THROWS_AS(translate(lam("x", app(var("x"), var("y")))), OpenTermError);
}

TEST_CASE("fan count equals the sum of extra occurrences") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    TermPtr t = testgen::random_term(rng, 1 + int(rng() % 40));
    std::vector<std::pair<std::string, int>> scope;
    std::vector<int> occs;
    count_occurrences(*t, scope, occs);
    int expect = 0;
    for (int k : occs) expect += std::max(0, k - 1);

    for (CombShape comb : {CombShape::LeftLeaning, CombShape::RightLeaning}) {
      Net net = translate(*t, {IdentityMode::Digest, comb});
      CAPTURE(print(t));
      CHECK(net.validate().empty());
      int fans = 0;
      net.for_each_agent([&](uint32_t, const Agent& a) {
        if (a.kind == AgentKind::Fan) ++fans;
      });
      CHECK(fans == expect);
    }
  }
}

TEST_CASE("initial fans are level 1 with pairwise distinct identities") {
  Net net = translate(parse("2 2 2 10 I I"));
  std::vector<IdentId> ids;
  net.for_each_agent([&](uint32_t, const Agent& a) {
    if (a.kind == AgentKind::Fan) {
      CHECK(a.level == 1);
      ids.push_back(a.ident);
    }
  });
  CHECK(ids.size() == 12);  // three 2s, one 10, the Is are linear
  for (size_t i = 0; i < ids.size(); ++i)
    for (size_t j = i + 1; j < ids.size(); ++j) CHECK_FALSE(net.idents().equal(ids[i], ids[j]));
}

TEST_CASE("translated corpus terms validate") {
  for (const std::string& src : builtin_corpus()) {
    CAPTURE(src);
    Net net = translate(parse(src));
    CHECK(net.validate().empty());
  }
}

TEST_CASE("dot dump is stable") {
  Net net = translate(parse("\\x.x x"), {IdentityMode::Tree, CombShape::LeftLeaning});
  CHECK(net.to_dot() ==
        "graph net {\n"
        "  node [shape=circle fontsize=10];\n"
        "  n0 [shape=point label=\"\" xlabel=\"interface\"];\n"
        "  n1 [label=\"λ\\n#1\"];\n"
        "  n2 [label=\"@\\n#2\"];\n"
        "  n3 [label=\"fan f0^1\\n#3\"];\n"
        "  n0 -- n1 [taillabel=\"p\" headlabel=\"p\"];\n"
        "  n1 -- n3 [taillabel=\"1\" headlabel=\"p\"];\n"
        "  n1 -- n2 [taillabel=\"2\" headlabel=\"2\"];\n"
        "  n2 -- n3 [taillabel=\"p\" headlabel=\"1\"];\n"
        "  n2 -- n3 [taillabel=\"1\" headlabel=\"2\"];\n"
        "}\n");
}
