#include "icx/engine/party.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace icx::engine {

using control::ControlInfo;
using rnd::HashField;

namespace {

bool prefix_equal(const BitVec& a, std::size_t la, const BitVec& b, std::size_t lb) {
  if (la != lb || la > a.size() || lb > b.size()) return false;
  return a.common_prefix(b) >= la;
}

std::size_t pow2_floor(std::size_t k) { return std::bit_floor(k); }

}  // namespace

PartyMachine::PartyMachine(Party me, const PartyContext& ctx)
    : me_(me),
      other_(protocol::other(me)),
      ctx_(ctx),
      s_(ctx.rateless->s()),
      b_(ctx.rateless->b()),
      B_(ctx.proto->block_size()),
      cache_(ctx.shared->hasher(), ctx.proto->block_size()) {
  if (B_ != s_ * b_) throw std::invalid_argument("party: block size must equal s*b");
  g_tilde_.resize(2 * s_);
  cursors_.push_back(ctx_.proto->start());
  setup_block(false);
}

PartySnap PartyMachine::snap() const {
  PartySnap p;
  p.c = st_.c;
  p.j = st_.j;
  p.k = st_.k;
  p.E = st_.E;
  p.v1 = st_.v1;
  p.v2 = st_.v2;
  p.T_len = st_.T.size();
  p.sync = st_.sync;
  p.speak = st_.speak;
  return p;
}

std::uint64_t PartyMachine::off(Party owner, HashField f) const { return ctx_.shared->hash_offset(st_.m, owner, f); }

std::uint64_t PartyMachine::h_uint(Party owner, HashField f, std::uint32_t v) const {
  return ctx_.shared->hasher().hash(v, off(owner, f));
}

std::uint64_t PartyMachine::h_bits(Party owner, HashField f, const BitVec& v) const {
  return ctx_.shared->hasher().hash(v, off(owner, f));
}

std::uint64_t PartyMachine::h_prefix(Party owner, HashField f, std::size_t len) {
  return cache_.hash_prefix(st_.T, len, off(owner, f));
}

std::uint64_t PartyMachine::h_T_then_x(Party owner) {
  const auto& h = ctx_.shared->hasher();
  const auto& f = h.generator().field();
  std::uint64_t v = cache_.eval(st_.T, st_.T.size()) ^
                    f.mul(h.generator().alpha_pow(st_.T.size()), h.evaluator().eval(st_.x));
  return h.from_eval(h.input_eval(v, st_.T.size() + st_.x.size()), off(owner, HashField::T));
}

Party PartyMachine::speaker_of(std::size_t block) const {
  const auto& cur = cursors_.at(block - 1);
  if (ctx_.proto->done(cur)) return Party::Alice;
  return ctx_.proto->owner(cur);
}

bool PartyMachine::speaker_is_me(std::size_t block) const { return speaker_of(block) == me_; }

void PartyMachine::setup_block(bool reset_phase) {
  if (speaker_is_me(st_.c)) {
    st_.speak = true;
    st_.has_x = true;
    st_.x = ctx_.proto->block_contents(cursors_.at(st_.c - 1), *ctx_.input);
    st_.y_chunks = ctx_.rateless->encode_chunks(st_.x);
  } else {
    st_.speak = false;
    if (reset_phase) st_.a = (st_.m + 1) % (2 * s_);
    st_.has_x = false;
    st_.x = BitVec();
    st_.y_chunks.clear();
  }
}

const BitVec& PartyMachine::data_chunk() const { return st_.y_chunks.at(st_.m % (2 * s_)); }

ControlInfo PartyMachine::update_control() {
  ControlInfo c;
  c.h_c = h_uint(me_, HashField::C, static_cast<std::uint32_t>(st_.c));
  c.h_x = h_bits(me_, HashField::X, st_.has_x ? st_.x : nil_);
  c.h_k = h_uint(me_, HashField::K, static_cast<std::uint32_t>(st_.k));
  c.h_T = h_prefix(me_, HashField::T, st_.T.size());
  c.h_MP1 = h_prefix(me_, HashField::MP1, st_.MP1);
  c.h_MP2 = h_prefix(me_, HashField::MP2, st_.MP2);
  c.j = static_cast<std::uint32_t>(st_.j);
  c.sync = st_.sync;
  return c;
}

CtrlTruth PartyMachine::truth() const {
  CtrlTruth t;
  t.c = static_cast<std::uint32_t>(st_.c);
  t.k = static_cast<std::uint32_t>(st_.k);
  t.T = st_.T;
  t.MP1 = st_.MP1;
  t.MP2 = st_.MP2;
  t.has_x = st_.has_x;
  t.x = st_.x;
  return t;
}

bool PartyMachine::match(bool hashes_equal, bool inputs_equal, const CtrlTruth* peer) {
  if (hashes_equal && peer && !inputs_equal) collision_ = true;
  return hashes_equal;
}

FlowReport PartyMachine::control_flow(const std::optional<ControlInfo>& d, const BitVec& g, const CtrlTruth* peer) {
  collision_ = false;
  FlowReport rep;
  // Inputs are only compared when a peer truth is supplied.
  const CtrlTruth empty;
  const CtrlTruth& pt = peer ? *peer : empty;

  if (d) {
    if (!st_.sync) {
      bool kmatch = match(h_uint(other_, HashField::K, static_cast<std::uint32_t>(st_.k)) == d->h_k, pt.k == st_.k, peer);
      if (!kmatch || d->sync) {
        ++st_.E;
      } else {
        auto mp_hit = [&](std::size_t len) {
          return match(h_prefix(other_, HashField::MP1, len) == d->h_MP1, prefix_equal(pt.T, pt.MP1, st_.T, len),
                       peer) ||
                 match(h_prefix(other_, HashField::MP2, len) == d->h_MP2, prefix_equal(pt.T, pt.MP2, st_.T, len),
                       peer);
        };
        if (mp_hit(st_.MP1)) {
          ++st_.v1;
        } else if (mp_hit(st_.MP2)) {
          ++st_.v2;
        }
      }
    }
  } else if (!st_.sync) {
    ++st_.E;
  }

  if (!st_.sync) {
    ++st_.k;
    st_.kt = pow2_floor(st_.k);
  }
  update_sync_status(d, g, peer);

  if (st_.k == st_.kt && st_.k >= 2) {
    if (5 * st_.v1 >= st_.k) {
      rollback(st_.MP1);
      rep.transition = Transition::RollbackMP1;
    } else if (5 * st_.v2 >= st_.k) {
      rollback(st_.MP2);
      rep.transition = Transition::RollbackMP2;
    } else if (5 * st_.E >= st_.k) {
      st_.a = (st_.m + 1) % (2 * s_);
      st_.k = st_.kt = 1;
      st_.sync = true;
      st_.E = st_.v1 = st_.v2 = st_.j = 0;
      rep.transition = Transition::ErrorReset;
    } else {
      st_.v1 = st_.v2 = 0;
    }
  }

  std::size_t unit = st_.kt * B_;
  st_.MP1 = unit * (st_.T.size() / unit);
  st_.MP2 = st_.MP1 >= unit ? st_.MP1 - unit : 0;
  ++st_.m;
  rep.collision = collision_;
  return rep;
}

void PartyMachine::update_sync_status(const std::optional<ControlInfo>& d, const BitVec& g, const CtrlTruth* peer) {
  const CtrlTruth empty;
  const CtrlTruth& pt = peer ? *peer : empty;
  const std::size_t two_s = 2 * s_;
  st_.sync = false;
  if (st_.k != 1) return;
  if (d && match(h_uint(other_, HashField::K, 1) == d->h_k, pt.k == 1, peer)) {
    if (!d->sync) {
      st_.sync = true;
      st_.j = 0;
      st_.a = (st_.m + 1) % two_s;
    } else if (match(h_uint(other_, HashField::C, static_cast<std::uint32_t>(st_.c)) == d->h_c, pt.c == st_.c, peer) &&
               match(h_prefix(other_, HashField::T, st_.T.size()) == d->h_T, pt.T == st_.T, peer)) {
      st_.sync = true;
      if (!st_.speak) {
        if (st_.j <= d->j) {
          update_estimate(d, g, peer);
        } else {
          st_.j = 0;
          st_.a = (st_.m + 1) % two_s;
        }
      } else {
        st_.j = std::min(st_.j + 1, two_s);
      }
    } else if (st_.speak &&
               match(h_uint(other_, HashField::C, static_cast<std::uint32_t>(st_.c + 1)) == d->h_c,
                     pt.c == st_.c + 1, peer) &&
               match(h_T_then_x(other_) == d->h_T,
                     pt.T.size() == st_.T.size() + st_.x.size() && prefix_equal(pt.T, st_.T.size(), st_.T, st_.T.size()) &&
                         pt.T.slice(st_.T.size(), st_.x.size()) == st_.x,
                     peer)) {
      st_.sync = true;
      advance_block(nullptr);
    } else if (st_.c >= 2 && speaker_of(st_.c - 1) == other_ &&
               match(h_uint(other_, HashField::C, static_cast<std::uint32_t>(st_.c - 1)) == d->h_c,
                     pt.c == st_.c - 1, peer) &&
               match(h_prefix(other_, HashField::T, (st_.c - 2) * B_) == d->h_T,
                     prefix_equal(pt.T, pt.T.size(), st_.T, (st_.c - 2) * B_), peer) &&
               match(h_bits(other_, HashField::X, st_.T.slice((st_.c - 2) * B_, B_)) == d->h_x,
                     pt.has_x && pt.x == st_.T.slice((st_.c - 2) * B_, B_), peer)) {
      st_.sync = true;
      if (!st_.speak) {
        st_.j = 0;
        st_.a = (st_.m + 1) % two_s;
      } else {
        st_.j = std::min(st_.j + 1, two_s);
      }
    }
  } else if (!d) {
    st_.sync = true;
    if (!st_.speak) {
      if (st_.j != 0) {
        update_estimate(d, g, peer);
      } else {
        st_.a = (st_.m + 1) % two_s;
      }
    } else {
      st_.j = std::min(st_.j + 1, two_s);
    }
  }
}

void PartyMachine::update_estimate(const std::optional<ControlInfo>& d, const BitVec& g, const CtrlTruth* peer) {
  const std::size_t two_s = 2 * s_;
  if (st_.j >= two_s) {
    st_.j = 0;
    st_.a = (st_.m + 1) % two_s;
    return;
  }
  if (g.size() != b_) throw std::logic_error("listener without a received chunk");
  g_tilde_[st_.j] = g;
  ++st_.j;
  if (st_.j <= s_) return;
  BitVec recv;
  for (std::size_t i = 0; i < st_.j; ++i) recv.append(g_tilde_[i]);
  std::optional<BitVec> xt = ctx_.rateless->window_decode(st_.a, st_.j, recv);
  bool ok = false;
  if (d && xt) {
    const CtrlTruth empty;
    const CtrlTruth& pt = peer ? *peer : empty;
    ok = match(h_bits(other_, HashField::X, *xt) == d->h_x, pt.has_x && pt.x == *xt, peer);
  }
  if (ok) {
    advance_block(&*xt);
  } else if (st_.j == two_s) {
    st_.j = 0;
    st_.a = (st_.m + 1) % two_s;
  }
}

void PartyMachine::advance_block(const BitVec* decoded_x) {
  const BitVec& blk = st_.speak ? st_.x : *decoded_x;
  if (blk.size() != B_) throw std::logic_error("advance_block: block of wrong length");
  protocol::BlockedCursor cur = cursors_.back();
  for (std::size_t i = 0; i < B_ && !ctx_.proto->done(cur); ++i) ctx_.proto->advance(cur, blk[i]);
  st_.T.append(blk);
  cursors_.push_back(cur);
  ++st_.c;
  st_.j = 0;
  setup_block(true);
}

void PartyMachine::rollback(std::size_t mp) {
  if (mp % B_ != 0 || mp > st_.T.size()) throw std::logic_error("rollback: bad meeting point");
  st_.T.resize(mp);
  st_.c = mp / B_ + 1;
  cursors_.resize(st_.c);
  st_.k = st_.kt = 1;
  st_.sync = true;
  st_.E = st_.v1 = st_.v2 = st_.j = 0;
  setup_block(true);
}

void PartyMachine::check_invariants() const {
  auto fail = [](const char* what) { throw std::logic_error(std::string("party invariant: ") + what); };
  if (st_.kt != pow2_floor(st_.k)) fail("kt != 2^floor(log2 k)");
  if (st_.sync && st_.k != 1) fail("sync=1 with k>1");
  if (st_.T.size() % B_ != 0) fail("|T| not a multiple of B");
  if (st_.c != st_.T.size() / B_ + 1) fail("c != |T|/B + 1");
  if (cursors_.size() != st_.c) fail("cursor stack out of step");
  std::size_t unit = st_.kt * B_;
  if (st_.MP1 != unit * (st_.T.size() / unit)) fail("MP1");
  if (st_.MP2 != (st_.MP1 >= unit ? st_.MP1 - unit : 0)) fail("MP2");
  if (st_.j > 2 * s_) fail("j > 2s");
  if (st_.speak != st_.has_x) fail("speak without x");
}

}  // namespace icx::engine
