#include "icx/engine/config.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "icx/codes/bch.hpp"
#include "icx/codes/exchange_code.hpp"
#include "icx/randomness/shared.hpp"

namespace icx::engine {

using nlohmann::json;

void EngineConfig::validate() const {
  if (s == 0 || b == 0) throw std::invalid_argument("config: s and b must be positive");
  if (p == 0 || p > 64) throw std::invalid_argument("config: p must be in [1, 64]");
  if (o_prime == 0 || o_prime > 64) throw std::invalid_argument("config: o' must be in [1, 64]");
  if (!(eps >= 0 && eps < 0.5)) throw std::invalid_argument("config: eps must be in [0, 0.5)");
  if (eps_prime >= 0.5) throw std::invalid_argument("config: eps' must be below 0.5");
  if (!(hash_rel_distance > 0 && hash_rel_distance < 0.5))
    throw std::invalid_argument("config: hash_rel_distance must be in (0, 0.5)");
  if (!(iter_base > 0) || iter_kappa < 0) throw std::invalid_argument("config: bad iteration constants");
  if (exchange_factor < 0) throw std::invalid_argument("config: exchange_factor must be >= 0");
  if (exchange_m < 3 || exchange_m > 12) throw std::invalid_argument("config: exchange_m must be in [3, 12]");
  if (rateless != "auto" && rateless != "rs" && rateless != "random")
    throw std::invalid_argument("config: rateless must be auto, rs or random");
  if (rateless == "rs" && b % 8 != 0) throw std::invalid_argument("config: rs rateless code needs b % 8 == 0");
  if (rateless == "random" && 2 * s * b > 64) throw std::invalid_argument("config: random rateless code needs 2sb <= 64");
}

std::string EngineConfig::to_json() const {
  const auto& k = constants;
  json j{{"s", s},
         {"b", b},
         {"p", p},
         {"o_prime", o_prime},
         {"eps", eps},
         {"eps_prime", resolved_eps_prime()},
         {"hash_rel_distance", hash_rel_distance},
         {"iter_base", iter_base},
         {"iter_kappa", iter_kappa},
         {"n_iter", n_iter},
         {"exchange_factor", exchange_factor},
         {"exchange_m", exchange_m},
         {"public_randomness", public_randomness},
         {"rateless", rateless},
         {"code_seed", code_seed},
         {"rl_kappa_h", rl_kappa_h},
         {"rl_kappa_p", rl_kappa_p},
         {"record_trace", record_trace},
         {"constants",
          {{"C0", k.C0}, {"C", k.C}, {"D", k.D}, {"C1", k.C1}, {"C2", k.C2}, {"C3", k.C3}, {"C4", k.C4},
           {"C5", k.C5}, {"C6", k.C6}, {"C7", k.C7}, {"C_inv", k.C_inv}, {"C_mal", k.C_mal}}}};
  return j.dump();
}

EngineConfig EngineConfig::from_json(const std::string& text) {
  json j = json::parse(text);
  EngineConfig c;
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::remove_reference_t<decltype(field)>>();
  };
  get("s", c.s);
  get("b", c.b);
  get("p", c.p);
  get("o_prime", c.o_prime);
  get("eps", c.eps);
  get("eps_prime", c.eps_prime);
  get("hash_rel_distance", c.hash_rel_distance);
  get("iter_base", c.iter_base);
  get("iter_kappa", c.iter_kappa);
  get("n_iter", c.n_iter);
  get("exchange_factor", c.exchange_factor);
  get("exchange_m", c.exchange_m);
  get("public_randomness", c.public_randomness);
  get("rateless", c.rateless);
  get("code_seed", c.code_seed);
  get("rl_kappa_h", c.rl_kappa_h);
  get("rl_kappa_p", c.rl_kappa_p);
  get("record_trace", c.record_trace);
  if (j.contains("constants")) {
    const json& k = j.at("constants");
    auto& d = c.constants;
    for (auto [name, ptr] : {std::pair{"C0", &d.C0}, {"C", &d.C}, {"D", &d.D}, {"C1", &d.C1}, {"C2", &d.C2},
                             {"C3", &d.C3}, {"C4", &d.C4}, {"C5", &d.C5}, {"C6", &d.C6}, {"C7", &d.C7},
                             {"C_inv", &d.C_inv}, {"C_mal", &d.C_mal}}) {
      if (k.contains(name)) *ptr = k.at(name).get<double>();
    }
  }
  c.validate();
  return c;
}

std::size_t iteration_count(const EngineConfig& cfg, std::size_t n_prime) {
  if (cfg.n_iter) return cfg.n_iter;
  double per = cfg.iter_base + cfg.iter_kappa * cfg.eps * analysis::log_inv(cfg.eps);
  double blocks = static_cast<double>(n_prime) / static_cast<double>(cfg.b);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(blocks * per)));
}

std::size_t rateless_iteration_count(const EngineConfig& cfg, std::size_t n_prime, double true_eps) {
  double ep = cfg.resolved_eps_prime();
  double li = analysis::log_inv(ep);
  double per = cfg.iter_base + cfg.rl_kappa_h * analysis::binary_entropy(true_eps) + cfg.rl_kappa_p * ep * li * li;
  double blocks = static_cast<double>(n_prime) / static_cast<double>(cfg.b);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(blocks * per)));
}

CodeBundle build_codes(const EngineConfig& cfg) {
  cfg.validate();
  CodeBundle cb;
  std::size_t l = control::control_width(cfg.p, cfg.s);
  auto bch = std::make_shared<codes::BchCode>(codes::BchCode::choose(l + cfg.o_prime, cfg.hash_rel_distance));
  cb.hash_code = bch;
  cb.codec = std::make_shared<control::ControlCodec>(bch, l, cfg.o_prime);
  if (cfg.rateless == "rs") {
    cb.rateless = std::make_shared<codes::RsRatelessCode>(cfg.s, cfg.b);
  } else if (cfg.rateless == "random") {
    codes::RatelessSearchParams sp;
    sp.search.rng_seed = cfg.code_seed;
    sp.search.max_attempts = 2000;
    cb.rateless = std::make_shared<codes::RandomRatelessCode>(codes::rateless_search(cfg.s, cfg.b, sp));
  } else {
    cb.rateless = std::shared_ptr<codes::RatelessWindowCode>(codes::make_default_rateless(cfg.s, cfg.b, cfg.code_seed));
  }
  return cb;
}

EngineParams derive_params(const EngineConfig& cfg, const CodeBundle& codes, std::size_t n_prime,
                           std::size_t n_iter) {
  EngineParams p;
  p.s = cfg.s;
  p.b = cfg.b;
  p.B = cfg.s * cfg.b;
  p.p = cfg.p;
  p.o_prime = cfg.o_prime;
  p.l_ctrl = codes.codec->l();
  p.o = codes.codec->o();
  p.b_prime = p.b + 2 * p.o;
  p.n_prime = n_prime;
  p.n_iter = n_iter;
  // A transcript gains at most one block per iteration; 32 bits of length prefix.
  p.t_cap = 32 + std::max(n_prime, n_iter * p.B) + p.B;
  if (!cfg.public_randomness) {
    std::size_t seed_bits = rnd::RandomnessLayout{}.seed_bits();
    double want = cfg.exchange_factor * cfg.eps * static_cast<double>(n_iter * p.b_prime);
    std::size_t target = std::max(static_cast<std::size_t>(std::ceil(want)),
                                  codes::ExchangeCode::min_feasible_length(seed_bits, cfg.exchange_m));
    codes::ExchangeCode xc(seed_bits, target, cfg.exchange_m);
    p.n_x = xc.n();
    p.exchange_code = xc.name();
  }
  p.rounds = p.n_x + n_iter * p.b_prime;
  p.budget = static_cast<std::size_t>(std::floor(cfg.eps * static_cast<double>(p.rounds)));
  p.hash_code = codes.hash_code->name();
  p.rateless_code = codes.rateless->name();
  return p;
}

}  // namespace icx::engine
