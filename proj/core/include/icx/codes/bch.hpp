#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "icx/codes/gf2m.hpp"
#include "icx/codes/linear_code.hpp"

namespace icx::codes {

// Shortened narrow-sense binary BCH code with designed distance 2t+1,
// bounded-distance decoding (Berlekamp-Massey and Chien search).
// Degree of the generator, from cyclotomic coset sizes alone.
std::size_t bch_generator_degree(unsigned m, std::size_t t);

class BchCode : public BlockCode {
 public:
  // m: field degree (code length 2^m - 1 before shortening), t: designed
  // error radius, k: message bits kept after shortening.
  BchCode(unsigned m, std::size_t t, std::size_t k);

  // Smallest shortened BCH code carrying k message bits whose designed
  // distance is at least rel_distance * length.
  static BchCode choose(std::size_t k, double rel_distance);
  // Dimension of the unshortened narrow-sense code of length 2^m-1, radius t.
  static std::size_t full_dimension(unsigned m, std::size_t t);

  std::size_t k() const override { return k_; }
  std::size_t n() const override { return n_; }
  std::size_t min_distance() const override { return 2 * t_ + 1; }
  std::size_t t() const { return t_; }
  unsigned m() const { return field_->m(); }
  BitVec encode(const BitVec& msg) const override;
  std::optional<BitVec> decode(const BitVec& received) const override;
  std::string name() const override;

 private:
  std::shared_ptr<GF2m> field_;
  std::size_t t_, k_, n_, deg_g_;
  std::vector<BitVec> rows_;  // systematic generator rows
};

// Generator polynomial over GF(2) (bit i = coefficient of x^i).
BitVec bch_generator(const GF2m& f, std::size_t t);

}  // namespace icx::codes
