#include "icx/randomness/shared.hpp"

#include <atomic>
#include <numeric>
#include <stdexcept>

#include "icx/rng.hpp"

namespace icx::rnd {

namespace {

enum Purpose : std::size_t { kSlots = 0, kMaskA, kMaskB, kCtrlA, kCtrlB, kHash, kPurposes };
const char* kPurposeNames[kPurposes] = {"slots", "mask_alice", "mask_bob", "ctrl_seed_alice", "ctrl_seed_bob",
                                        "field_hash_seeds"};

}  // namespace

void RandomnessLayout::validate() const {
  if (n_iter == 0) throw std::invalid_argument("layout: n_iter must be positive");
  if (b_prime < b || (b_prime - b) != 2 * o) throw std::invalid_argument("layout: need b' = b + 2o");
  if (b_prime >= (std::size_t{1} << draw_bits)) throw std::invalid_argument("layout: b' too large for slot draws");
  if (p == 0 || p > 64 || t_cap < 32) throw std::invalid_argument("layout: bad hash parameters");
  if (m_loc < 2 || m_loc > 64 || m < 2 || m > 64) throw std::invalid_argument("layout: field degree out of range");
}

SharedRandomness::SharedRandomness(const BitVec& str, const RandomnessLayout& layout)
    : lay_(layout), str_(str), touched_(kPurposes, std::vector<bool>(layout.n_iter, false)) {
  lay_.validate();
  if (str.size() != lay_.seed_bits())
    throw std::invalid_argument("shared string has " + std::to_string(str.size()) + " bits, layout needs " +
                                std::to_string(lay_.seed_bits()));
  loc_ = std::make_unique<SmallBiasGenerator>(SmallBiasGenerator::from_seed(str, 0, lay_.m_loc));
  stretch_ = std::make_unique<SmallBiasGenerator>(SmallBiasGenerator::from_seed(str, 2 * lay_.m_loc, lay_.m));
  hasher_ = std::make_unique<StretchedHasher>(*stretch_, lay_.t_cap, lay_.p);
}

SharedRandomness::SharedRandomness(const SharedRandomness& o) : SharedRandomness(o.str_, o.lay_) {}

SharedRandomness SharedRandomness::from_public_seed(std::uint64_t seed, const RandomnessLayout& layout) {
  Rng rng(derive_seed(seed, 0x7075626c6963ull));
  return SharedRandomness(rng.bits(layout.seed_bits()), layout);
}

namespace {
std::atomic<std::uint64_t> g_draws{0};
}

std::uint64_t material_draws() { return g_draws.load(std::memory_order_relaxed); }

void SharedRandomness::touch(std::size_t purpose, std::size_t iter) const {
  g_draws.fetch_add(1, std::memory_order_relaxed);
  if (iter >= lay_.n_iter)
    throw std::out_of_range("shared-randomness budget exhausted: iteration " + std::to_string(iter) + " of " +
                            std::to_string(lay_.n_iter));
  touched_[purpose][iter] = true;
}

std::uint64_t SharedRandomness::loc_base(std::size_t iter) const {
  return static_cast<std::uint64_t>(iter) * lay_.loc_bits_per_iter();
}

SlotAssignment SharedRandomness::slots(std::size_t iter) const {
  touch(kSlots, iter);
  std::size_t nb = lay_.b_prime;
  std::size_t need = nb - lay_.b;
  BitVec r = loc_->bits(loc_base(iter), lay_.slot_bits());
  std::vector<std::uint32_t> perm(nb);
  std::iota(perm.begin(), perm.end(), 0u);
  for (std::size_t i = 0; i < need; ++i) {
    std::uint64_t u = r.read_uint(i * lay_.draw_bits, lay_.draw_bits);
    std::size_t j = i + static_cast<std::size_t>((u * (nb - i)) >> lay_.draw_bits);
    std::swap(perm[i], perm[j]);
  }
  SlotAssignment out;
  out.owner.assign(nb, 0);
  out.alice.assign(perm.begin(), perm.begin() + static_cast<long>(lay_.o));
  out.bob.assign(perm.begin() + static_cast<long>(lay_.o), perm.begin() + static_cast<long>(need));
  for (auto z : out.alice) out.owner[z] = 1;
  for (auto z : out.bob) out.owner[z] = 2;
  return out;
}

BitVec SharedRandomness::mask(std::size_t iter, Party who) const {
  touch(who == Party::Alice ? kMaskA : kMaskB, iter);
  std::uint64_t off = loc_base(iter) + lay_.slot_bits() + (who == Party::Alice ? 0 : lay_.o);
  return loc_->bits(off, lay_.o);
}

BitVec SharedRandomness::ctrl_seed(std::size_t iter, Party who) const {
  touch(who == Party::Alice ? kCtrlA : kCtrlB, iter);
  std::uint64_t off = loc_base(iter) + lay_.slot_bits() + 2 * lay_.o +
                      (who == Party::Alice ? 0 : lay_.ctrl_seed_bits());
  return loc_->bits(off, lay_.ctrl_seed_bits());
}

std::uint64_t SharedRandomness::hash_offset(std::size_t iter, Party owner, HashField f) const {
  touch(kHash, iter);
  std::uint64_t inst = (owner == Party::Alice ? 0 : kHashFields) + static_cast<std::uint64_t>(f);
  return (static_cast<std::uint64_t>(iter) * 2 * kHashFields + inst) * lay_.p * lay_.t_cap;
}

double SharedRandomness::loc_bias() const {
  return small_bias_bound(static_cast<double>(lay_.n_iter) * static_cast<double>(lay_.loc_bits_per_iter()),
                          lay_.m_loc);
}

double SharedRandomness::stretch_bias() const {
  return small_bias_bound(static_cast<double>(lay_.n_iter) * static_cast<double>(lay_.hash_bits_per_iter()),
                          lay_.m);
}

std::vector<BudgetLine> SharedRandomness::budget() const {
  std::uint64_t per[kPurposes] = {lay_.slot_bits(),        lay_.o, lay_.o, lay_.ctrl_seed_bits(),
                                  lay_.ctrl_seed_bits(), lay_.hash_bits_per_iter()};
  std::vector<BudgetLine> out;
  out.push_back({"exchanged_seed", lay_.seed_bits(), str_.size()});
  for (std::size_t k = 0; k < kPurposes; ++k) {
    std::uint64_t used = 0;
    for (bool t : touched_[k]) used += t ? 1 : 0;
    out.push_back({kPurposeNames[k], per[k] * lay_.n_iter, per[k] * used});
  }
  return out;
}

}  // namespace icx::rnd
