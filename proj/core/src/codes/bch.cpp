#include "icx/codes/bch.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace icx::codes {

BitVec bch_generator(const GF2m& f, std::size_t t) {
  std::size_t ord = f.order();
  std::set<std::size_t> used;
  GFPoly g{1};
  for (std::size_t i = 1; i <= 2 * t; ++i) {
    std::size_t r = i % ord;
    if (used.count(r)) continue;
    GFPoly minpoly{1};
    std::size_t c = r;
    do {
      used.insert(c);
      minpoly = poly_mul(f, minpoly, {f.alpha_pow(static_cast<long long>(c)), 1});
      c = (2 * c) % ord;
    } while (c != r);
    g = poly_mul(f, g, minpoly);
  }
  BitVec out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] > 1) throw std::logic_error("BCH generator has non-binary coefficient");
    out.set(i, g[i] == 1);
  }
  return out;
}

std::size_t bch_generator_degree(unsigned m, std::size_t t) {
  std::size_t ord = (std::size_t{1} << m) - 1;
  std::vector<bool> used(ord, false);
  std::size_t deg = 0;
  for (std::size_t i = 1; i <= 2 * t; ++i) {
    std::size_t c = i % ord;
    while (!used[c]) {
      used[c] = true;
      ++deg;
      c = (2 * c) % ord;
    }
  }
  return deg;
}

std::size_t BchCode::full_dimension(unsigned m, std::size_t t) {
  std::size_t deg = bch_generator_degree(m, t);
  std::size_t n = (std::size_t{1} << m) - 1;
  return deg >= n ? 0 : n - deg;
}

BchCode::BchCode(unsigned m, std::size_t t, std::size_t k) : field_(std::make_shared<GF2m>(m)), t_(t), k_(k) {
  if (t == 0 || k == 0) throw std::invalid_argument("BCH needs t >= 1 and k >= 1");
  BitVec g = bch_generator(*field_, t);
  deg_g_ = g.size() - 1;
  if (k + deg_g_ > field_->order()) throw std::invalid_argument("BCH dimension too small for requested k");
  n_ = k + deg_g_;
  // Row i encodes e_i: x^(deg+i) + (x^(deg+i) mod g).
  for (std::size_t i = 0; i < k; ++i) {
    BitVec rem(n_);
    rem.set(deg_g_ + i, true);
    for (std::size_t d = n_; d-- > deg_g_;) {
      if (!rem[d]) continue;
      for (std::size_t j = 0; j <= deg_g_; ++j) {
        if (g[j]) rem.flip(d - deg_g_ + j);
      }
    }
    BitVec row(n_);
    row.set(deg_g_ + i, true);
    for (std::size_t j = 0; j < deg_g_; ++j) row.set(j, rem[j]);
    rows_.push_back(std::move(row));
  }
}

BchCode BchCode::choose(std::size_t k, double rel_distance) {
  std::optional<BchCode> best;
  for (unsigned m = 3; m <= 12; ++m) {
    std::size_t ord = (std::size_t{1} << m) - 1;
    for (std::size_t t = 1; 2 * t < ord; ++t) {
      std::size_t deg = bch_generator_degree(m, t);
      if (deg + k > ord) break;
      std::size_t len = deg + k;
      if (static_cast<double>(2 * t + 1) >= rel_distance * static_cast<double>(len)) {
        if (!best || len < best->n()) best.emplace(m, t, k);
        break;
      }
    }
  }
  if (!best) throw std::runtime_error("no BCH code meets the requested distance");
  return *best;
}

BitVec BchCode::encode(const BitVec& msg) const {
  if (msg.size() != k_) throw std::invalid_argument("BCH message length mismatch");
  BitVec out(n_);
  for (std::size_t i = 0; i < k_; ++i) {
    if (msg[i]) out ^= rows_[i];
  }
  return out;
}

std::optional<BitVec> BchCode::decode(const BitVec& received) const {
  if (received.size() != n_) throw std::invalid_argument("BCH received length mismatch");
  const GF2m& f = *field_;
  std::size_t p = 2 * t_;
  std::vector<std::uint16_t> S(p, 0);
  bool clean = true;
  std::vector<std::size_t> ones;
  for (std::size_t i = 0; i < n_; ++i) {
    if (received[i]) ones.push_back(i);
  }
  std::size_t ord = f.order();
  for (std::size_t j = 1; j <= p; ++j) {
    std::uint16_t acc = 0;
    if (j % 2 == 0) {
      acc = f.mul(S[j / 2 - 1], S[j / 2 - 1]);
    } else {
      for (std::size_t i : ones) acc ^= f.alpha_pow(static_cast<long long>((j * i) % ord));
    }
    S[j - 1] = acc;
    clean = clean && acc == 0;
  }
  BitVec cw = received;
  if (!clean) {
    GFPoly lambda{1}, B{1};
    std::size_t L = 0;
    for (std::size_t K = 1; K <= p; ++K) {
      std::uint16_t delta = 0;
      for (std::size_t i = 0; i < lambda.size() && i <= K - 1; ++i) delta ^= f.mul(lambda[i], S[K - 1 - i]);
      GFPoly xB(B.size() + 1, 0);
      for (std::size_t i = 0; i < B.size(); ++i) xB[i + 1] = B[i];
      if (delta == 0) {
        B = xB;
        continue;
      }
      GFPoly T(std::max(lambda.size(), xB.size()), 0);
      for (std::size_t i = 0; i < lambda.size(); ++i) T[i] = lambda[i];
      for (std::size_t i = 0; i < xB.size(); ++i) T[i] ^= f.mul(delta, xB[i]);
      if (2 * L <= K - 1) {
        L = K - L;
        std::uint16_t dinv = f.inv(delta);
        B = lambda;
        for (auto& c : B) c = f.mul(c, dinv);
      } else {
        B = xB;
      }
      lambda = T;
    }
    while (lambda.size() > 1 && lambda.back() == 0) lambda.pop_back();
    std::size_t deg = lambda.size() - 1;
    if (deg != L || L > t_) return std::nullopt;
    std::size_t found = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (poly_eval(f, lambda, f.alpha_pow(-static_cast<long long>(i))) == 0) {
        cw.flip(i);
        ++found;
      }
    }
    if (found != deg) return std::nullopt;
  }
  return cw.slice(deg_g_, k_);
}

std::string BchCode::name() const {
  return "bch[" + std::to_string(n_) + "," + std::to_string(k_) + ",t=" + std::to_string(t_) + ",m=" +
         std::to_string(field_->m()) + "]";
}

}  // namespace icx::codes
