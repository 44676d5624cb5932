#include "lambdafan/readback.hpp"

#include <unordered_map>
#include <vector>

namespace lambdafan {

namespace {

// An open share: the traversal entered a fan through this aux branch and has
// not yet passed the matching principal.
struct Share {
  IdentId ident;
  uint64_t level;
  Slot branch;
};

constexpr uint32_t kMaxDepth = 10'000;  // recursion guard, well under stack limits

struct Decoder {
  const Net& net;
  uint64_t budget;
  uint32_t depth = 0;
  uint64_t next_name = 0;
  std::unordered_map<uint32_t, std::string> binders;  // λ agents on the decode stack
  std::vector<Share> shares;
  ReadbackResult::Status status = ReadbackResult::Status::Ok;
  std::string detail;

  TermPtr fail(ReadbackResult::Status s, std::string what) {
    if (status == ReadbackResult::Status::Ok) {
      status = s;
      detail = std::move(what);
    }
    return nullptr;
  }

  std::string fresh() { return "x" + std::to_string(next_name++); }

  // `at` is the port the traversal arrives at.
  TermPtr decode(PortRef at, bool root) {
    if (status != ReadbackResult::Status::Ok) return nullptr;
    if (budget == 0)
      return fail(ReadbackResult::Status::MalformedNet, "visit budget exceeded (cyclic net?)");
    --budget;
    if (depth >= kMaxDepth)
      return fail(ReadbackResult::Status::MalformedNet, "decode too deep (cyclic net?)");
    struct DepthGuard {
      uint32_t& d;
      ~DepthGuard() { --d; }
    } guard{++depth};

    const uint32_t id = at.agent();
    const Agent& a = net.agent(id);
    switch (a.kind) {
      case AgentKind::Lam: {
        if (at.slot() == kPrin) {
          std::string name = fresh();
          auto prev = binders.find(id);
          std::string saved;
          bool had = prev != binders.end();
          if (had) saved = prev->second;
          binders[id] = name;
          TermPtr body = decode(net.peer(PortRef(id, kAux2)), false);
          if (had)
            binders[id] = saved;
          else
            binders.erase(id);
          if (!body) return nullptr;
          return lam(std::move(name), std::move(body));
        }
        if (at.slot() == kAux1) {
          auto it = binders.find(id);
          if (it == binders.end())
            return fail(ReadbackResult::Status::MalformedNet,
                        "variable port reached outside its binder");
          return var(it->second);
        }
        return fail(ReadbackResult::Status::MalformedNet, "entered lam at its body port");
      }
      case AgentKind::App: {
        if (at.slot() != kAux2)
          return fail(ReadbackResult::Status::MalformedNet,
                      at.slot() == kPrin ? "entered app at its function port"
                                         : "entered app at its argument port");
        TermPtr fun = decode(net.peer(PortRef(id, kPrin)), false);
        if (!fun) return nullptr;
        TermPtr arg = decode(net.peer(PortRef(id, kAux1)), false);
        if (!arg) return nullptr;
        return app(std::move(fun), std::move(arg));
      }
      case AgentKind::Fan: {
        if (at.slot() != kPrin) {
          // entering a share: remember the branch, leave by the principal
          shares.push_back(Share{a.ident, a.level, at.slot()});
          TermPtr r = decode(net.peer(PortRef(id, kPrin)), false);
          shares.pop_back();
          return r;
        }
        // leaving a share: the innermost entry with the same identity picks
        // the branch, exactly as equal-identity fans annihilate
        for (size_t i = shares.size(); i-- > 0;) {
          if (!net.idents().equal(shares[i].ident, a.ident)) continue;
          Share s = shares[i];
          shares.erase(shares.begin() + ptrdiff_t(i));
          TermPtr r = decode(net.peer(PortRef(id, s.branch)), false);
          shares.insert(shares.begin() + ptrdiff_t(i), s);
          return r;
        }
        return fail(ReadbackResult::Status::ResidualFan,
                    "undischarged fan " + net.idents().render(a.ident) + "^" +
                        std::to_string(a.level) + " (#" + std::to_string(id) + ")");
      }
      case AgentKind::Eps: {
        if (root) return fail(ReadbackResult::Status::MalformedNet, "eps at the interface");
        return var(fresh());  // erased variable
      }
      default:
        return fail(ReadbackResult::Status::MalformedNet, "wire into a dead agent");
    }
  }
};

}  // namespace

ReadbackResult readback(const Net& net) {
  PortRef root = net.peer(net.interface_port());
  if (root.is_nil()) return {ReadbackResult::Status::MalformedNet, nullptr, "interface unwired"};
  // shared subnets are visited once per reference, so compressed normal
  // forms legitimately need far more visits than they have agents
  Decoder d{net, 10 * uint64_t(net.live_agents()) + 1'000'000};
  TermPtr t = d.decode(root, true);
  if (d.status != ReadbackResult::Status::Ok) return {d.status, nullptr, d.detail};
  return {ReadbackResult::Status::Ok, std::move(t), ""};
}

}  // namespace lambdafan
