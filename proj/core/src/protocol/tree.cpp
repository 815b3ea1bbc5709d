#include "icx/protocol/tree.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "icx/rng.hpp"

namespace icx::protocol {

const char* party_name(Party p) { return p == Party::Alice ? "alice" : "bob"; }

std::uint64_t prefix_hash_step(std::uint64_t h, std::size_t pos, bool bit) {
  return splitmix64(h ^ (static_cast<std::uint64_t>(pos) << 1 | (bit ? 1u : 0u)));
}

Cursor Protocol::start() const { return Cursor{}; }

void Protocol::advance(Cursor& c, bool bit) const {
  c.hash = prefix_hash_step(c.hash, c.pos, bit);
  c.node = 2 * c.node + (bit ? 1 : 0);
  ++c.pos;
}

std::vector<Party> Protocol::owner_sequence() const {
  if (adaptive()) throw std::logic_error("owner sequence of an adaptive protocol");
  std::vector<Party> seq;
  seq.reserve(depth());
  Cursor c = start();
  while (!done(c)) {
    seq.push_back(owner(c));
    advance(c, false);
  }
  return seq;
}

ExplicitTree::ExplicitTree(std::size_t depth, std::vector<Party> owners) : depth_(depth), owners_(std::move(owners)) {
  if (depth > kMaxDepth) throw std::invalid_argument("explicit tree deeper than 24");
  std::size_t need = std::size_t{1} << depth;
  if (owners_.size() != need) throw std::invalid_argument("owner table must have 2^depth entries");
}

ExplicitTree ExplicitTree::uniform_owner(std::size_t depth, Party p) {
  return ExplicitTree(depth, std::vector<Party>(std::size_t{1} << depth, p));
}

ExplicitTree ExplicitTree::alternating(std::size_t depth) {
  std::vector<Party> seq(depth);
  for (std::size_t i = 0; i < depth; ++i) seq[i] = i % 2 ? Party::Bob : Party::Alice;
  return from_sequence(seq);
}

ExplicitTree ExplicitTree::from_sequence(const std::vector<Party>& seq) {
  std::size_t depth = seq.size();
  std::vector<Party> owners(std::size_t{1} << depth, Party::Alice);
  for (std::size_t d = 0; d < depth; ++d) {
    for (std::size_t v = std::size_t{1} << d; v < (std::size_t{2} << d); ++v) owners[v] = seq[d];
  }
  return ExplicitTree(depth, std::move(owners));
}

ExplicitTree ExplicitTree::random(std::size_t depth, std::uint64_t seed, std::size_t min_run, std::size_t max_run) {
  if (min_run == 0 || max_run < min_run) throw std::invalid_argument("bad run range");
  std::size_t total = std::size_t{1} << depth;
  std::vector<Party> owners(total, Party::Alice);
  std::vector<std::uint32_t> left(total, 0);
  Rng rng(seed);
  auto draw = [&] { return static_cast<std::uint32_t>(min_run + rng.below(max_run - min_run + 1)); };
  if (depth == 0) return ExplicitTree(0, owners);
  owners[1] = rng.bit() ? Party::Bob : Party::Alice;
  left[1] = draw();
  for (std::size_t v = 2; v < total; ++v) {
    std::size_t parent = v / 2;
    if (left[parent] > 1) {
      owners[v] = owners[parent];
      left[v] = left[parent] - 1;
    } else {
      owners[v] = other(owners[parent]);
      left[v] = draw();
    }
  }
  return ExplicitTree(depth, std::move(owners));
}

PartyInput ExplicitTree::random_input(std::size_t depth, std::uint64_t seed) {
  PartyInput in;
  in.seed = seed;
  in.table.resize(std::size_t{1} << depth);
  Rng rng(seed);
  for (auto& t : in.table) t = rng.bit() ? 1 : 0;
  return in;
}

bool ExplicitTree::preferred(const Cursor& c, const PartyInput& in) const {
  if (in.table.empty()) return splitmix64(in.seed ^ c.node) & 1u;
  if (c.node >= in.table.size()) throw std::out_of_range("input table too small for tree");
  return in.table[c.node] != 0;
}

GeneratedProtocol::GeneratedProtocol(Spec spec) : spec_(std::move(spec)) {
  switch (spec_.rule) {
    case OwnerRule::Alternating:
      seq_.resize(spec_.depth);
      for (std::size_t i = 0; i < spec_.depth; ++i) seq_[i] = i % 2 ? Party::Bob : Party::Alice;
      break;
    case OwnerRule::Blocks: {
      std::size_t sum = 0;
      Party p = Party::Alice;
      for (std::size_t len : spec_.blocks) {
        if (len == 0) throw std::invalid_argument("zero-length block");
        seq_.insert(seq_.end(), len, p);
        sum += len;
        p = other(p);
      }
      if (spec_.depth == 0) spec_.depth = sum;
      if (sum != spec_.depth) throw std::invalid_argument("block lengths do not sum to depth");
      break;
    }
    case OwnerRule::Table:
      if (spec_.table.size() != spec_.depth) throw std::invalid_argument("owner table length must equal depth");
      seq_ = spec_.table;
      break;
    case OwnerRule::Adaptive:
      if (spec_.min_run == 0 || spec_.max_run < spec_.min_run) throw std::invalid_argument("bad run range");
      break;
  }
}

GeneratedProtocol GeneratedProtocol::random_segments(std::size_t depth, std::size_t lo, std::size_t hi,
                                                     std::uint64_t seed) {
  if (lo == 0 || hi < lo) throw std::invalid_argument("bad segment range");
  Rng rng(seed);
  Spec spec;
  spec.depth = depth;
  spec.rule = OwnerRule::Blocks;
  std::size_t sum = 0;
  while (sum < depth) {
    std::size_t len = lo + rng.below(hi - lo + 1);
    if (depth - sum < len + lo) len = depth - sum;
    spec.blocks.push_back(len);
    sum += len;
  }
  return GeneratedProtocol(std::move(spec));
}

std::size_t GeneratedProtocol::draw_run(const Cursor& c) const {
  std::uint64_t h = splitmix64(c.hash ^ spec_.owner_seed ^ 0x5bd1e995u);
  return spec_.min_run + h % (spec_.max_run - spec_.min_run + 1);
}

Cursor GeneratedProtocol::start() const {
  Cursor c;
  if (spec_.rule == OwnerRule::Adaptive) {
    c.run_owner = Party::Alice;
    c.run_left = draw_run(c);
  }
  return c;
}

Party GeneratedProtocol::owner(const Cursor& c) const {
  if (spec_.rule == OwnerRule::Adaptive) return c.run_owner;
  return seq_[c.pos];
}

bool GeneratedProtocol::preferred(const Cursor& c, const PartyInput& in) const {
  if (!in.table.empty()) {
    if (c.pos >= in.table.size()) throw std::out_of_range("input table shorter than protocol");
    return in.table[c.pos] != 0;
  }
  return splitmix64(in.seed ^ c.hash) & 1u;
}

void GeneratedProtocol::advance(Cursor& c, bool bit) const {
  Protocol::advance(c, bit);
  if (spec_.rule == OwnerRule::Adaptive) {
    if (--c.run_left == 0) {
      c.run_owner = other(c.run_owner);
      c.run_left = draw_run(c);
    }
  }
}

namespace {

void enumerate_paths(const Protocol& p, Cursor c, Party prev, bool first, std::size_t blocks, std::size_t& best,
                     std::vector<std::size_t>* lens, std::string* path, MessageLengthProfile* prof) {
  if (p.done(c)) {
    best = std::max(best, blocks);
    if (prof && lens && path) prof->per_path_lengths[*path] = *lens;
    return;
  }
  Party o = p.owner(c);
  bool fresh = first || o != prev;
  if (lens) {
    if (fresh) {
      lens->push_back(1);
    } else {
      ++lens->back();
    }
  }
  for (int bit = 0; bit < 2; ++bit) {
    Cursor n = c;
    p.advance(n, bit);
    if (path) path->push_back(bit ? '1' : '0');
    enumerate_paths(p, n, o, false, blocks + (fresh ? 1 : 0), best, lens, path, prof);
    if (path) path->pop_back();
  }
  if (lens) {
    if (fresh) {
      lens->pop_back();
    } else {
      --lens->back();
    }
  }
}

}  // namespace

MessageLengthProfile average_message_length(const Protocol& p) {
  std::size_t n = p.depth();
  if (n == 0) throw std::invalid_argument("empty protocol");
  MessageLengthProfile prof;
  std::size_t k = 0;
  if (auto* t = dynamic_cast<const ExplicitTree*>(&p); t && n > MessageLengthProfile::kPathDetailDepth) {
    // best[v] = max number of blocks in the subtree of v, counting v's block as new.
    std::size_t total = std::size_t{1} << n;
    std::vector<std::uint32_t> best(total, 0);
    for (std::size_t v = total - 1; v >= 1; --v) {
      std::uint32_t sub = 0;
      if (2 * v < total) {
        for (std::size_t ch = 2 * v; ch <= 2 * v + 1; ++ch) {
          std::uint32_t val = best[ch] - (t->owner_at(ch) == t->owner_at(v) ? 1 : 0);
          sub = std::max(sub, val);
        }
      }
      best[v] = 1 + sub;
    }
    k = best[1];
  } else if (!p.adaptive()) {
    auto seq = p.owner_sequence();
    k = 1;
    for (std::size_t i = 1; i < seq.size(); ++i) k += seq[i] != seq[i - 1] ? 1 : 0;
    if (n <= MessageLengthProfile::kPathDetailDepth) {
      std::vector<std::size_t> lens;
      std::string path;
      std::size_t unused = 0;
      enumerate_paths(p, p.start(), Party::Alice, true, 0, unused, &lens, &path, &prof);
    }
  } else if (n <= 20) {
    if (n <= MessageLengthProfile::kPathDetailDepth) {
      std::vector<std::size_t> lens;
      std::string path;
      enumerate_paths(p, p.start(), Party::Alice, true, 0, k, &lens, &path, &prof);
    } else {
      enumerate_paths(p, p.start(), Party::Alice, true, 0, k, nullptr, nullptr, nullptr);
    }
  } else {
    throw std::invalid_argument("average message length of a deep adaptive protocol is not computable");
  }
  prof.alternation_count = k;
  prof.avg_message_length = static_cast<double>(n) / static_cast<double>(k);
  return prof;
}

BitVec run_noiseless(const Protocol& p, const Inputs& in) {
  BitVec out;
  Cursor c = p.start();
  while (!p.done(c)) {
    bool bit = p.preferred(c, in.of(p.owner(c)));
    out.push_back(bit);
    p.advance(c, bit);
  }
  return out;
}

std::vector<std::size_t> path_block_lengths(const Protocol& p, const BitVec& bits) {
  std::vector<std::size_t> lens;
  Cursor c = p.start();
  Party prev = Party::Alice;
  for (std::size_t i = 0; i < bits.size() && !p.done(c); ++i) {
    Party o = p.owner(c);
    if (lens.empty() || o != prev) {
      lens.push_back(1);
    } else {
      ++lens.back();
    }
    prev = o;
    p.advance(c, bits[i]);
  }
  return lens;
}

}  // namespace icx::protocol
