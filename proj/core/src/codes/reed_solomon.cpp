#include "icx/codes/reed_solomon.hpp"

#include <algorithm>
#include <stdexcept>

namespace icx::codes {

ReedSolomon::ReedSolomon(const GF2m& field, std::size_t n, std::size_t k) : f_(&field), n_(n), k_(k) {
  if (k == 0 || k >= n || n > field.order()) throw std::invalid_argument("invalid Reed-Solomon parameters");
  gen_ = {1};
  for (std::size_t i = 1; i <= n - k; ++i) gen_ = poly_mul(field, gen_, {field.alpha_pow(static_cast<long long>(i)), 1});
}

std::vector<std::uint16_t> ReedSolomon::encode(const std::vector<std::uint16_t>& msg) const {
  if (msg.size() != k_) throw std::invalid_argument("Reed-Solomon message length mismatch");
  std::size_t p = n_ - k_;
  std::vector<std::uint16_t> cw(n_, 0);
  for (std::size_t i = 0; i < k_; ++i) cw[p + i] = msg[i];
  // Remainder of x^p m(x) by the monic generator, long division from the top.
  std::vector<std::uint16_t> rem(cw);
  for (std::size_t i = n_; i-- > p;) {
    std::uint16_t coef = rem[i];
    if (!coef) continue;
    for (std::size_t j = 0; j <= p; ++j) rem[i - p + j] ^= f_->mul(coef, gen_[j]);
  }
  for (std::size_t i = 0; i < p; ++i) cw[i] = rem[i];
  return cw;
}

std::vector<std::uint16_t> ReedSolomon::message_of(const std::vector<std::uint16_t>& codeword) const {
  return std::vector<std::uint16_t>(codeword.begin() + static_cast<long>(n_ - k_), codeword.end());
}

std::vector<std::uint16_t> ReedSolomon::syndromes(const std::vector<std::uint16_t>& r) const {
  std::size_t p = n_ - k_;
  std::vector<std::uint16_t> s(p);
  for (std::size_t j = 0; j < p; ++j) {
    std::uint16_t x = f_->alpha_pow(static_cast<long long>(j + 1));
    std::uint16_t acc = 0;
    for (std::size_t i = n_; i-- > 0;) acc = f_->mul(acc, x) ^ r[i];
    s[j] = acc;
  }
  return s;
}

std::optional<std::vector<std::uint16_t>> ReedSolomon::decode(std::vector<std::uint16_t> r,
                                                              const std::vector<std::size_t>& erasures) const {
  if (r.size() != n_) throw std::invalid_argument("Reed-Solomon received length mismatch");
  const GF2m& f = *f_;
  std::size_t p = n_ - k_;
  std::size_t e = erasures.size();
  if (e > p) return std::nullopt;
  for (std::size_t pos : erasures) {
    if (pos >= n_) throw std::out_of_range("erasure position out of range");
    r[pos] = 0;
  }
  auto S = syndromes(r);
  bool clean = true;
  for (auto v : S) clean = clean && v == 0;
  if (clean) return r;

  GFPoly gamma{1};
  for (std::size_t pos : erasures) gamma = poly_mul(f, gamma, {1, f.alpha_pow(static_cast<long long>(pos))});

  GFPoly lambda = gamma, B = gamma;
  std::size_t L = e;
  for (std::size_t K = e + 1; K <= p; ++K) {
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
    if (2 * L <= K + e - 1) {
      L = K + e - L;
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
  if (deg != L || 2 * (L - e) + e > p) return std::nullopt;

  std::vector<std::size_t> locs;
  for (std::size_t i = 0; i < n_; ++i) {
    if (poly_eval(f, lambda, f.alpha_pow(-static_cast<long long>(i))) == 0) locs.push_back(i);
  }
  if (locs.size() != deg) return std::nullopt;

  GFPoly Sx(S.begin(), S.end());
  GFPoly omega = poly_mul(f, Sx, lambda);
  omega.resize(p);
  GFPoly dlambda(lambda.size() > 1 ? lambda.size() - 1 : 1, 0);
  for (std::size_t i = 1; i < lambda.size(); i += 2) dlambda[i - 1] = lambda[i];
  for (std::size_t pos : locs) {
    std::uint16_t xinv = f.alpha_pow(-static_cast<long long>(pos));
    std::uint16_t den = poly_eval(f, dlambda, xinv);
    if (den == 0) return std::nullopt;
    r[pos] ^= f.div(poly_eval(f, omega, xinv), den);
  }
  for (auto v : syndromes(r)) {
    if (v) return std::nullopt;
  }
  return r;
}

}  // namespace icx::codes
