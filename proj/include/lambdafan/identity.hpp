#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace lambdafan {

using Digest = std::array<uint8_t, 32>;

Digest sha256(std::span<const uint8_t> data);
Digest sha256(std::string_view data);
std::string to_hex(std::span<const uint8_t> bytes);

enum class IdentityMode : uint8_t { Tree, Digest };

// Fan identity labels t: two-colored binary trees <t1+t2> / <t1-t2> over
// fresh leaf names f0, f1, ...  Stored either structurally (tree mode) or as
// the 32-byte SHA-256 value
//
//   S(x)       = H("x")
//   S(<a + b>) = H(S(a) '+' S(b))
//   S(<a - b>) = H(S(a) '-' S(b))
//
// where '+'/'-' are the single bytes 0x2B/0x2D and leaf hashing takes the
// UTF-8 bytes of the rendered name. One store per net; an IdentId is an
// index into the store that issued it. Digest-mode values are interned, so
// equality there is an id comparison.
class IdentityStore {
 public:
  using Id = uint32_t;

  explicit IdentityStore(IdentityMode mode);

  IdentityMode mode() const { return mode_; }

  Id fresh();                      // next leaf: f<seq>
  Id clone_left(Id u, Id t);       // <u+t>
  Id clone_right(Id u, Id t);      // <u-t>
  bool equal(Id a, Id b) const;

  // Tree mode prints f3, <f1+f2>, <f1-f2>; digest mode the first 8 hex chars.
  std::string render(Id id) const;

  const Digest& digest(Id id) const;  // digest mode only
  uint64_t leaves_issued() const { return next_leaf_; }
  size_t size() const;

 private:
  enum class Tag : uint8_t { Leaf, Plus, Minus };
  struct TreeNode {
    Tag tag;
    uint64_t leaf;  // Leaf
    Id left, right;
  };
  struct DigestHash {
    size_t operator()(const Digest& d) const;
  };

  Id clone(Id u, Id t, Tag tag, uint8_t sep);
  Id intern(const Digest& d);
  bool tree_equal(Id a, Id b) const;

  IdentityMode mode_;
  uint64_t next_leaf_ = 0;
  std::vector<TreeNode> nodes_;                       // tree mode
  std::vector<Digest> digests_;                       // digest mode
  std::unordered_map<Digest, Id, DigestHash> known_;  // digest mode
};

using IdentId = IdentityStore::Id;

}  // namespace lambdafan
