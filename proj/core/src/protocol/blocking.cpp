#include "icx/protocol/blocking.hpp"

#include <algorithm>
#include <stdexcept>

namespace icx::protocol {

BlockedProtocol::BlockedProtocol(ProtocolPtr inner, std::size_t block_size) : inner_(std::move(inner)), B_(block_size) {
  if (!inner_) throw std::invalid_argument("null protocol");
  if (B_ == 0) throw std::invalid_argument("block size must be >= 1");
  rounds_ = compute_rounds(rounds_exact_);
}

BlockedProtocol blocking_transform(ProtocolPtr p, std::size_t block_size) {
  return BlockedProtocol(std::move(p), block_size);
}

BlockedCursor BlockedProtocol::start() const {
  BlockedCursor c;
  c.inner = inner_->start();
  return c;
}

bool BlockedProtocol::is_dummy(const BlockedCursor& c) const {
  if (c.group_count % B_ == 0) return false;
  if (inner_->done(c.inner)) return true;
  return inner_->owner(c.inner) != c.group_owner;
}

bool BlockedProtocol::done(const BlockedCursor& c) const {
  return inner_->done(c.inner) && c.group_count % B_ == 0;
}

Party BlockedProtocol::owner(const BlockedCursor& c) const {
  if (is_dummy(c)) return c.group_owner;
  return inner_->owner(c.inner);
}

bool BlockedProtocol::preferred(const BlockedCursor& c, const PartyInput& in) const {
  if (is_dummy(c)) return false;
  return inner_->preferred(c.inner, in);
}

void BlockedProtocol::advance(BlockedCursor& c, bool bit) const {
  if (done(c)) throw std::logic_error("advance past end of blocked protocol");
  if (is_dummy(c)) {
    ++c.group_count;
  } else {
    Party o = inner_->owner(c.inner);
    if (c.group_count == 0 || o != c.group_owner) {
      c.group_owner = o;
      c.group_count = 0;
    }
    ++c.group_count;
    inner_->advance(c.inner, bit);
  }
  ++c.pos;
}

std::size_t BlockedProtocol::compute_rounds(bool& exact) const {
  const Protocol& p = *inner_;
  auto pad = [&](std::size_t len) { return (len + B_ - 1) / B_ * B_; };
  if (!p.adaptive()) {
    exact = true;
    auto seq = p.owner_sequence();
    std::size_t total = 0, run = 0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (i > 0 && seq[i] != seq[i - 1]) {
        total += pad(run);
        run = 0;
      }
      ++run;
    }
    return total + pad(run);
  }
  if (auto* t = dynamic_cast<const ExplicitTree*>(&p)) {
    // Longest padded path, walking every node with its running group length.
    exact = true;
    std::size_t n = t->depth();
    if (n == 0) return 0;
    std::size_t best = 0;
    struct Item {
      std::uint64_t node;
      std::size_t done_len;
      std::size_t run;
    };
    std::vector<Item> stack{{1, 0, 0}};
    while (!stack.empty()) {
      Item it = stack.back();
      stack.pop_back();
      std::size_t d = 63 - static_cast<std::size_t>(__builtin_clzll(it.node));
      if (d == n) {
        best = std::max(best, it.done_len + pad(it.run));
        continue;
      }
      Party o = t->owner_at(it.node);
      Party prev = it.node == 1 ? o : t->owner_at(it.node / 2);
      Item base = it;
      if (it.node != 1 && o != prev) {
        base.done_len += pad(base.run);
        base.run = 0;
      }
      ++base.run;
      stack.push_back({2 * it.node, base.done_len, base.run});
      stack.push_back({2 * it.node + 1, base.done_len, base.run});
    }
    return best;
  }
  exact = false;
  std::size_t n = p.depth();
  std::size_t min_run = 1;
  if (auto* g = dynamic_cast<const GeneratedProtocol*>(&p)) min_run = g->spec().min_run;
  std::size_t k = (n + min_run - 1) / min_run;
  return n + k * B_;
}

BitVec BlockedProtocol::run_noiseless(const Inputs& in) const {
  BitVec out;
  BlockedCursor c = start();
  while (!done(c)) {
    bool bit = preferred(c, in.of(owner(c)));
    out.push_back(bit);
    advance(c, bit);
  }
  return out;
}

BitVec BlockedProtocol::origin_map(const BitVec& blocked) const {
  BitVec out;
  BlockedCursor c = start();
  for (std::size_t i = 0; i < blocked.size() && !done(c); ++i) {
    if (!is_dummy(c)) out.push_back(blocked[i]);
    advance(c, blocked[i]);
  }
  return out;
}

BlockedCursor BlockedProtocol::replay(const BitVec& prefix) const {
  BlockedCursor c = start();
  for (std::size_t i = 0; i < prefix.size() && !done(c); ++i) advance(c, prefix[i]);
  return c;
}

BitVec BlockedProtocol::block_contents(const BlockedCursor& at, const PartyInput& in) const {
  BitVec out(B_);
  BlockedCursor c = at;
  for (std::size_t i = 0; i < B_ && !done(c); ++i) {
    bool bit = preferred(c, in);
    out.set(i, bit);
    advance(c, bit);
  }
  return out;
}

}  // namespace icx::protocol
