#include "lambdafan/identity.hpp"

#include <openssl/evp.h>

#include <cassert>
#include <cstring>
#include <memory>
#include <stdexcept>

namespace lambdafan {

Digest sha256(std::span<const uint8_t> data) {
  // hashing dominates commutation-heavy reductions; reusing the context and
  // pre-fetching the algorithm avoids OpenSSL 3's per-call provider lookup
  thread_local std::unique_ptr<EVP_MD, decltype(&EVP_MD_free)> md(
      EVP_MD_fetch(nullptr, "SHA256", nullptr), &EVP_MD_free);
  thread_local std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                                           &EVP_MD_CTX_free);
  Digest out;
  unsigned int len = 0;
  if (!EVP_DigestInit_ex(ctx.get(), md.get(), nullptr) ||
      !EVP_DigestUpdate(ctx.get(), data.data(), data.size()) ||
      !EVP_DigestFinal_ex(ctx.get(), out.data(), &len) || len != out.size())
    throw std::runtime_error("sha256 failed");
  return out;
}

Digest sha256(std::string_view data) {
  return sha256(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(data.data()), data.size()));
}

std::string to_hex(std::span<const uint8_t> bytes) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (uint8_t b : bytes) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 15]);
  }
  return s;
}

size_t IdentityStore::DigestHash::operator()(const Digest& d) const {
  size_t h;
  std::memcpy(&h, d.data(), sizeof h);  // already uniform bytes
  return h;
}

IdentityStore::IdentityStore(IdentityMode mode) : mode_(mode) {}

static std::string leaf_name(uint64_t seq) { return "f" + std::to_string(seq); }

IdentityStore::Id IdentityStore::intern(const Digest& d) {
  auto [it, inserted] = known_.try_emplace(d, Id(digests_.size()));
  if (inserted) digests_.push_back(d);
  return it->second;
}

IdentityStore::Id IdentityStore::fresh() {
  uint64_t seq = next_leaf_++;
  if (mode_ == IdentityMode::Digest) return intern(sha256(leaf_name(seq)));
  nodes_.push_back(TreeNode{Tag::Leaf, seq, 0, 0});
  return Id(nodes_.size() - 1);
}

IdentityStore::Id IdentityStore::clone(Id u, Id t, Tag tag, uint8_t sep) {
  if (mode_ == IdentityMode::Digest) {
    uint8_t buf[65];
    std::memcpy(buf, digests_[u].data(), 32);
    buf[32] = sep;
    std::memcpy(buf + 33, digests_[t].data(), 32);
    return intern(sha256(std::span<const uint8_t>(buf, sizeof buf)));
  }
  nodes_.push_back(TreeNode{tag, 0, u, t});
  return Id(nodes_.size() - 1);
}

IdentityStore::Id IdentityStore::clone_left(Id u, Id t) { return clone(u, t, Tag::Plus, '+'); }
IdentityStore::Id IdentityStore::clone_right(Id u, Id t) { return clone(u, t, Tag::Minus, '-'); }

bool IdentityStore::tree_equal(Id a, Id b) const {
  if (a == b) return true;  // shared subtree
  const TreeNode &na = nodes_[a], &nb = nodes_[b];
  if (na.tag != nb.tag) return false;
  if (na.tag == Tag::Leaf) return na.leaf == nb.leaf;
  return tree_equal(na.left, nb.left) && tree_equal(na.right, nb.right);
}

bool IdentityStore::equal(Id a, Id b) const {
  if (mode_ == IdentityMode::Digest) return a == b;  // interned
  return tree_equal(a, b);
}

std::string IdentityStore::render(Id id) const {
  if (mode_ == IdentityMode::Digest)
    return to_hex(std::span<const uint8_t>(digests_[id].data(), 4));
  const TreeNode& n = nodes_[id];
  switch (n.tag) {
    case Tag::Leaf:
      return leaf_name(n.leaf);
    case Tag::Plus:
      return "<" + render(n.left) + "+" + render(n.right) + ">";
    case Tag::Minus:
      return "<" + render(n.left) + "-" + render(n.right) + ">";
  }
  return "?";
}

const Digest& IdentityStore::digest(Id id) const {
  if (mode_ != IdentityMode::Digest) throw std::logic_error("digest() in tree mode");
  return digests_[id];
}

size_t IdentityStore::size() const {
  return mode_ == IdentityMode::Digest ? digests_.size() : nodes_.size();
}

}  // namespace lambdafan
