#include <CLI11.hpp>

#include <algorithm>
#include <cstdarg>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "icx/analysis/audit.hpp"
#include "icx/codes/linear_code.hpp"
#include "icx/codes/rateless.hpp"
#include "icx/control/control.hpp"
#include "icx/engine/parallel.hpp"
#include "icx/engine/simulation.hpp"
#include "icx/randomness/ip_hash.hpp"
#include "icx/randomness/small_bias.hpp"
#include "icx/rng.hpp"
#include "icx/stats.hpp"
#include "icx/version.hpp"
#include "icx/warmup/blocked_random.hpp"
#include "icx/warmup/trivial.hpp"
#include "oracles.hpp"

using namespace icx;

namespace {

// Pinned tolerances and sizes.
constexpr double kSigmas = 3.0;
constexpr double kFullRelDistance = 1.0 / 15;

constexpr std::size_t kC2Pairs = 100;
constexpr std::size_t kC2Sampled = 10000;
constexpr std::size_t kC3Patterns = 20;
constexpr std::size_t kC3Seeds = 10000;
constexpr std::size_t kC4Trials = 100000;
constexpr double kC4StretchDelta = 1.0 / 64;
constexpr std::size_t kC5Protocols = 100;
constexpr std::size_t kC5MinRun = 4;

constexpr std::size_t kGridDepth = 4096;
constexpr std::size_t kGridSegLo = 256, kGridSegHi = 1024;
constexpr double kGridEps[] = {0.005, 0.01, 0.02};
const char* const kGridStrategies[] = {"uniform_random", "burst", "redundancy_window"};
constexpr std::size_t kGridSeeds = 100;
constexpr double kGridMinSuccess = 0.99;
constexpr double kGridMinSpearman = 0.9;

constexpr double kKappaInvalid = 20;
constexpr double kKappaMalicious = 14;

constexpr double kC9EpsPrime = 0.0004;
constexpr double kC9Eps[] = {0, 0.005, 0.01, 0.02};
constexpr std::size_t kC9Seeds = 20;
constexpr std::size_t kC9Depth = 2048;

constexpr double kC10TrivialEps = 0.01;
constexpr std::size_t kC10TrivialRuns = 1000;
constexpr double kC10TrivialMinSuccess = 0.99;
constexpr double kC10BlockedEps = 1.0 / 64;
constexpr std::size_t kC10BlockedRuns = 200;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

oracle::Bits to_bits(const BitVec& v) {
  oracle::Bits b(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) b[i] = v[i];
  return b;
}

// 1: rateless code certificate.

std::size_t window_target(std::size_t s, std::size_t b, std::size_t j) {
  double dj = oracle::inverse_entropy(static_cast<double>(j - s) / static_cast<double>(j) - 1.0 / (4.0 * s));
  auto t = static_cast<std::size_t>(std::ceil(dj * static_cast<double>(j * b) - 1e-9));
  if (j == 2 * s) t = std::max(t, static_cast<std::size_t>(std::ceil(kFullRelDistance * static_cast<double>(2 * s * b))));
  return std::max<std::size_t>(t, 1);
}

bool certify(std::size_t s, std::size_t b, const std::vector<std::size_t>& frozen, std::string& out) {
  codes::RatelessSearchParams sp;
  auto code = codes::rateless_search(s, b, sp);
  std::vector<oracle::Bits> rows;
  for (const auto& r : code.rows()) rows.push_back(to_bits(r));
  const std::size_t k = s * b, n = 2 * s * b;
  std::map<codes::WindowKey, std::size_t> dist;
  for (std::uint64_t v = 1; v < (std::uint64_t{1} << k); ++v) {
    oracle::Bits cw = oracle::encode(rows, oracle::message(v, k));
    for (std::size_t a = 0; a < 2 * s; ++a) {
      for (std::size_t j = s + 1; j <= 2 * s; ++j) {
        std::size_t w = 0;
        for (std::size_t i = 0; i < j * b; ++i) w += static_cast<std::size_t>(cw[(a * b + i) % n]);
        auto key = codes::WindowKey{a, j};
        auto it = dist.find(key);
        if (it == dist.end() || w < it->second) dist[key] = w;
      }
    }
  }
  bool ok = true;
  std::size_t worst_slack = ~std::size_t{0};
  for (const auto& [key, d] : dist) {
    auto [a, j] = key;
    std::size_t t = window_target(s, b, j);
    ok = ok && t == frozen[j - s - 1] && d >= t;
    auto it = code.window_distances().find(key);
    ok = ok && it != code.window_distances().end() && it->second == d;
    worst_slack = std::min(worst_slack, d >= t ? d - t : 0);
  }
  std::size_t full = dist.at({0, 2 * s});
  double rel = static_cast<double>(full) / static_cast<double>(n);
  ok = ok && rel >= kFullRelDistance && code.full_distance() == full;
  out += fmt("(%zu,%zu): %zu windows, full distance %zu/%zu=%.3f, min slack %zu; ", s, b, dist.size(), full, n, rel,
             worst_slack);
  return ok;
}

Verdict criterion1() {
  std::string d;
  bool a = certify(2, 4, {std::begin(oracle::frozen::kTarget24), std::end(oracle::frozen::kTarget24)}, d);
  bool b = certify(4, 4, {std::begin(oracle::frozen::kTarget44), std::end(oracle::frozen::kTarget44)}, d);
  return {a && b, d + "exact enumeration matches search certificate and targets"};
}

// 2 and 3: control codec at o = 16.

std::shared_ptr<control::ControlCodec> small_codec() {
  codes::CodeSearchParams p;
  p.rng_seed = 2;
  auto code = std::make_shared<codes::BinaryLinearCode>(codes::gv_search(8, 16, 4, p));
  return std::make_shared<control::ControlCodec>(code, 4, 4);
}

Verdict criterion2() {
  auto codec = small_codec();
  const std::size_t o = codec->o();
  Rng rng(202);
  std::size_t checks = 0, failures = 0, sampled = 0;
  const std::size_t per_pair = kC2Sampled / kC2Pairs;
  for (std::size_t pair = 0; pair < kC2Pairs; ++pair) {
    BitVec x = rng.bits(codec->l()), r = rng.bits(codec->seed_bits());
    BitVec y = codec->encode(x, r);
    auto check = [&](const control::ErrorPattern& v) {
      ++checks;
      auto d = codec->decode(control::corrupt_apply(y, v), r);
      failures += !(d && *d == x);
    };
    check(control::ErrorPattern(o));
    for (std::size_t i = 0; i < o; ++i) {
      for (auto s : {control::ErrSym::Flip, control::ErrSym::Zero, control::ErrSym::One}) {
        control::ErrorPattern v(o);
        v.symbols[i] = s;
        check(v);
      }
    }
    for (std::size_t t = 0; t < per_pair; ++t) {
      control::ErrorPattern v(o);
      std::size_t w = rng.below((o + 7) / 8);  // weight < o/8
      for (std::size_t e = 0; e < w; ++e) {
        v.symbols[rng.below(o)] = static_cast<control::ErrSym>(1 + rng.below(3));
      }
      check(v);
      ++sampled;
    }
  }
  return {failures == 0 && sampled >= kC2Sampled,
          fmt("o=%zu, %zu (X,R) pairs, %zu decodes (%zu sampled mixed), %zu failures", o, kC2Pairs, checks, sampled,
              failures)};
}

Verdict criterion3() {
  auto codec = small_codec();
  const std::size_t o = codec->o();
  const double bound_p = std::ldexp(1.0, -static_cast<int>(codec->o_prime()));
  Rng prng(303);
  bool ok = true;
  double worst = 0;
  std::size_t worst_w = 0;
  for (std::size_t pi = 0; pi < kC3Patterns; ++pi) {
    std::size_t w = (o + 7) / 8 + pi * (o - (o + 7) / 8) / (kC3Patterns - 1);
    std::vector<std::size_t> pos(o);
    for (std::size_t i = 0; i < o; ++i) pos[i] = i;
    for (std::size_t i = 0; i < w; ++i) std::swap(pos[i], pos[i + prng.below(o - i)]);
    control::ErrorPattern v(o);
    for (std::size_t i = 0; i < w; ++i) v.symbols[pos[i]] = prng.bit() ? control::ErrSym::One : control::ErrSym::Zero;
    Rng rng(derive_seed(3030, pi));
    std::size_t bad = 0;
    for (std::size_t t = 0; t < kC3Seeds; ++t) {
      BitVec x = rng.bits(codec->l()), r = rng.bits(codec->seed_bits());
      auto d = codec->decode(control::corrupt_apply(codec->encode(x, r), v), r);
      bad += d && *d != x;
    }
    double rate = static_cast<double>(bad) / kC3Seeds;
    ok = ok && rate <= stats::upper_limit(bound_p, kC3Seeds, kSigmas);
    if (rate >= worst) {
      worst = rate;
      worst_w = w;
    }
  }
  return {ok, fmt("%zu replace patterns (weight %zu..%zu) x %zu seeds, worst rate %.4f at weight %zu, limit %.4f",
                  kC3Patterns, (o + 7) / 8, o, kC3Seeds, worst, worst_w,
                  stats::upper_limit(bound_p, kC3Seeds, kSigmas))};
}

// 4: hash collision bounds.

Verdict criterion4() {
  bool ok = true;
  std::string d;
  for (auto [l, p] : {std::pair<std::size_t, std::size_t>{8, 4}, {16, 8}}) {
    const double base = std::ldexp(1.0, -static_cast<int>(p));
    Rng rng(derive_seed(404, l * 100 + p));
    BitVec x = rng.bits(l), y = x;
    y.flip(0);
    // Property 1: fixed X != Y, uniform seed.
    std::size_t c1 = 0;
    for (std::size_t t = 0; t < kC4Trials; ++t) {
      BitVec r = rng.bits(l * p);
      c1 += rnd::inner_product_hash(x, r, p) == rnd::inner_product_hash(y, r, p);
    }
    // Property 2: seed stretched from a short seed with bias delta.
    unsigned m = rnd::small_bias_degree(static_cast<double>(l * p), kC4StretchDelta);
    std::size_t c2 = 0;
    for (std::size_t t = 0; t < kC4Trials; ++t) {
      BitVec r = rnd::small_bias_stretch(rng.bits(2 * m), l * p, kC4StretchDelta);
      c2 += rnd::inner_product_hash(x, r, p) == rnd::inner_product_hash(y, r, p);
    }
    // Property 5: additive shift U != 0 lands on a fixed offset W.
    BitVec u(l);
    u.set(l - 1, true);
    u.set(0, true);
    std::uint64_t wshift = rng.below(std::uint64_t{1} << p);
    std::size_t c5 = 0;
    for (std::size_t t = 0; t < kC4Trials; ++t) {
      BitVec r = rng.bits(l * p);
      c5 += control::ip_shift_hash(x ^ u, r, p) == (control::ip_shift_hash(x, r, p) ^ wshift);
    }
    double r1 = static_cast<double>(c1) / kC4Trials, r2 = static_cast<double>(c2) / kC4Trials,
           r5 = static_cast<double>(c5) / kC4Trials;
    double lim = stats::upper_limit(base, kC4Trials, kSigmas);
    double lim2 = stats::upper_limit(base + kC4StretchDelta, kC4Trials, kSigmas);
    ok = ok && r1 <= lim && r2 <= lim2 && r5 <= lim;
    d += fmt("(l=%zu,p=%zu): P1 %.5f, P2 %.5f (m=%u), P5 %.5f, limits %.5f/%.5f; ", l, p, r1, r2, m, r5, lim, lim2);
  }
  return {ok, d + fmt("%zu trials each", kC4Trials)};
}

// 5: zero-noise equivalence.

Verdict criterion5() {
  engine::EngineConfig cfg;
  cfg.eps = 0;
  auto codes = engine::build_codes(cfg);
  engine::RunOptions ro;
  ro.codes = &codes;
  std::size_t ok = 0, explicit_trees = 0;
  for (std::size_t i = 0; i < kC5Protocols; ++i) {
    std::uint64_t seed = derive_seed(505, i);
    protocol::ProtocolPtr p;
    protocol::Inputs in;
    if (i % 2 == 0) {
      std::size_t depth = 8 + i % 13;
      p = std::make_shared<protocol::ExplicitTree>(protocol::ExplicitTree::random(depth, seed, kC5MinRun, 3 * kC5MinRun));
      in.alice = protocol::ExplicitTree::random_input(depth, derive_seed(seed, 1));
      in.bob = protocol::ExplicitTree::random_input(depth, derive_seed(seed, 2));
      ++explicit_trees;
    } else {
      protocol::GeneratedProtocol::Spec spec;
      spec.depth = 64;
      spec.rule = protocol::OwnerRule::Adaptive;
      spec.min_run = kC5MinRun;
      spec.max_run = 4 * kC5MinRun;
      spec.owner_seed = seed;
      p = std::make_shared<protocol::GeneratedProtocol>(spec);
      in.alice.seed = derive_seed(seed, 1);
      in.bob.seed = derive_seed(seed, 2);
    }
    protocol::BlockedProtocol bp(p, cfg.s * cfg.b);
    engine::ChannelSpec ch;
    ch.strategy = "none";
    auto res = engine::run_simulation(bp, in, cfg, ch, seed, ro);
    BitVec want = protocol::run_noiseless(*p, in);
    ok += res.metrics.success && bp.origin_map(res.T_A) == want && bp.origin_map(res.T_B) == want;
  }
  return {ok == kC5Protocols, fmt("%zu/%zu protocols (%zu explicit trees depth 8..20, %zu adaptive depth 64, runs >= %zu)",
                                  ok, kC5Protocols, explicit_trees, kC5Protocols - explicit_trees, kC5MinRun)};
}

// 6, 7, 8: the end-to-end grid.

struct GridRun {
  double eps = 0;
  std::string strategy;
  std::uint64_t seed = 0;
  bool success = false;
  std::size_t n = 0, rounds = 0, n_iter = 0, invalid = 0, malicious = 0;
  std::size_t violations = 0, mismatches = 0;
  bool final_agree = false, derived_ok = false;
};

std::string grid_line(const GridRun& g) {
  return fmt("%.17g,%s,%llu,%d,%zu,%zu,%zu,%zu,%zu,%zu,%zu,%d,%d", g.eps, g.strategy.c_str(),
             static_cast<unsigned long long>(g.seed), g.success, g.n, g.rounds, g.n_iter, g.invalid, g.malicious,
             g.violations, g.mismatches, g.final_agree, g.derived_ok);
}

GridRun parse_grid_line(const std::string& line) {
  GridRun g;
  std::stringstream ss(line);
  std::string f;
  std::vector<std::string> v;
  while (std::getline(ss, f, ',')) v.push_back(f);
  if (v.size() != 13) throw std::runtime_error("bad grid cache line: " + line);
  g.eps = std::stod(v[0]);
  g.strategy = v[1];
  g.seed = std::stoull(v[2]);
  g.success = v[3] == "1";
  g.n = std::stoul(v[4]);
  g.rounds = std::stoul(v[5]);
  g.n_iter = std::stoul(v[6]);
  g.invalid = std::stoul(v[7]);
  g.malicious = std::stoul(v[8]);
  g.violations = std::stoul(v[9]);
  g.mismatches = std::stoul(v[10]);
  g.final_agree = v[11] == "1";
  g.derived_ok = v[12] == "1";
  return g;
}

std::vector<GridRun> compute_grid() {
  engine::EngineConfig base;
  auto codes = engine::build_codes(base);
  std::vector<GridRun> out;
  for (double eps : kGridEps) {
    for (const char* strat : kGridStrategies) {
      for (std::size_t s = 0; s < kGridSeeds; ++s) {
        GridRun g;
        g.eps = eps;
        g.strategy = strat;
        g.seed = s;
        out.push_back(g);
      }
    }
  }
  engine::parallel_for(out.size(), [&](std::size_t i) {
    GridRun& g = out[i];
    std::uint64_t seed = derive_seed(606, g.seed);
    auto p = std::make_shared<protocol::GeneratedProtocol>(
        protocol::GeneratedProtocol::random_segments(kGridDepth, kGridSegLo, kGridSegHi, derive_seed(seed, 101)));
    protocol::BlockedProtocol bp(p, base.s * base.b);
    protocol::Inputs in;
    in.alice.seed = derive_seed(seed, 102);
    in.bob.seed = derive_seed(seed, 103);
    engine::EngineConfig cfg = base;
    cfg.eps = g.eps;
    engine::ChannelSpec ch;
    ch.strategy = g.strategy;
    engine::RunOptions ro;
    ro.codes = &codes;
    auto res = engine::run_simulation(bp, in, cfg, ch, derive_seed(seed, 104), ro);
    auto rep = analysis::audit_trace(res.header, res.trace);
    g.success = res.metrics.success;
    g.n = res.metrics.n;
    g.rounds = res.metrics.rounds;
    g.n_iter = res.metrics.n_iter;
    g.invalid = res.metrics.invalid;
    g.malicious = res.metrics.malicious;
    g.violations = rep.total_violations;
    g.mismatches = rep.phi_mismatches + rep.counter_mismatches;
    g.final_agree = res.metrics.final_check.agree();
    g.derived_ok = res.metrics.final_check.derived_ok;
  });
  return out;
}

std::vector<GridRun> load_grid(const std::string& cache, bool refresh) {
  if (!cache.empty() && !refresh) {
    std::ifstream in(cache);
    std::string line, header;
    if (in && std::getline(in, header) && header == std::string("# ") + version_string()) {
      std::vector<GridRun> out;
      while (std::getline(in, line)) {
        if (!line.empty()) out.push_back(parse_grid_line(line));
      }
      if (out.size() == std::size(kGridEps) * std::size(kGridStrategies) * kGridSeeds) return out;
    }
  }
  auto grid = compute_grid();
  if (!cache.empty()) {
    std::ofstream os(cache);
    os << "# " << version_string() << "\n";
    for (const auto& g : grid) os << grid_line(g) << "\n";
  }
  return grid;
}

Verdict criterion6(const std::vector<GridRun>& grid) {
  bool ok = true;
  std::string d;
  std::vector<double> x, y;
  std::map<std::pair<double, std::string>, std::pair<std::size_t, std::size_t>> cells;
  std::map<std::pair<double, std::string>, double> overhead;
  for (const auto& g : grid) {
    auto& c = cells[{g.eps, g.strategy}];
    ++c.first;
    c.second += g.success;
    overhead[{g.eps, g.strategy}] += static_cast<double>(g.rounds) / static_cast<double>(g.n) - 1;
  }
  double worst = 1;
  for (const auto& [key, c] : cells) {
    double rate = static_cast<double>(c.second) / static_cast<double>(c.first);
    worst = std::min(worst, rate);
    ok = ok && rate >= kGridMinSuccess;
    x.push_back(key.first * std::log2(1 / key.first));
    y.push_back(overhead[key] / static_cast<double>(c.first));
  }
  double rho = stats::spearman(x, y);
  ok = ok && rho >= kGridMinSpearman;
  d = fmt("%zu cells x %zu seeds, worst cell success %.2f (min %.2f), overhead spearman %.3f (min %.2f), mean overhead",
          cells.size(), kGridSeeds, worst, kGridMinSuccess, rho, kGridMinSpearman);
  for (double eps : kGridEps) {
    double s = 0;
    for (const char* st : kGridStrategies) s += overhead[{eps, st}];
    d += fmt(" %.3g:%.1f", eps, s / (std::size(kGridStrategies) * kGridSeeds));
  }
  return {ok, d};
}

Verdict criterion7(const std::vector<GridRun>& grid) {
  std::size_t viol = 0, mism = 0, succ = 0, agree = 0, derived = 0;
  for (const auto& g : grid) {
    viol += g.violations;
    mism += g.mismatches;
    if (g.success) {
      ++succ;
      agree += g.final_agree;
      derived += g.derived_ok;
    }
  }
  return {viol == 0 && mism == 0 && agree == succ,
          fmt("%zu runs: %zu bound violations, %zu bookkeeping mismatches, final check consistent on %zu/%zu "
              "successful runs (derivation alone reached n' on %zu)",
              grid.size(), viol, mism, agree, succ, derived)};
}

Verdict criterion8(const std::vector<GridRun>& grid) {
  std::size_t inv_bad = 0, mal_bad = 0, inv_max = 0, mal_max = 0, mal_total = 0;
  for (const auto& g : grid) {
    double ep = g.eps * g.eps;
    double n_iter = static_cast<double>(g.n_iter);
    inv_bad += static_cast<double>(g.invalid) > kKappaInvalid * g.eps * n_iter;
    mal_bad += static_cast<double>(g.malicious) > kKappaMalicious * ep * ep * n_iter;
    inv_max = std::max(inv_max, g.invalid);
    mal_max = std::max(mal_max, g.malicious);
    mal_total += g.malicious;
  }
  return {inv_bad == 0 && mal_bad == 0,
          fmt("kappa=%g: %zu runs over invalid bound (max %zu); kappa'=%g: %zu runs over malicious bound (max %zu, "
              "total %zu)",
              kKappaInvalid, inv_bad, inv_max, kKappaMalicious, mal_bad, mal_max, mal_total)};
}

// 9: rateless adaptivity.

Verdict criterion9() {
  engine::EngineConfig cfg;
  cfg.eps_prime = kC9EpsPrime;
  auto codes = engine::build_codes(cfg);
  engine::RunOptions ro;
  ro.codes = &codes;
  bool ok = true;
  std::string d;
  std::size_t prev_budget = 0;
  for (double eps : kC9Eps) {
    std::size_t succ = 0, budget = 0;
    double done_rounds = 0;
    for (std::size_t s = 0; s < kC9Seeds; ++s) {
      std::uint64_t seed = derive_seed(909, s);
      auto p = std::make_shared<protocol::GeneratedProtocol>(
          protocol::GeneratedProtocol::random_segments(kC9Depth, kGridSegLo, kGridSegHi, derive_seed(seed, 1)));
      protocol::BlockedProtocol bp(p, cfg.s * cfg.b);
      protocol::Inputs in;
      in.alice.seed = derive_seed(seed, 2);
      in.bob.seed = derive_seed(seed, 3);
      auto res = engine::run_rateless(bp, in, cfg, eps, "uniform_random", derive_seed(seed, 4), ro);
      succ += res.metrics.success && res.metrics.rounds_to_completion <= res.metrics.rounds;
      budget = std::max(budget, res.metrics.n_iter);
      done_rounds += static_cast<double>(res.metrics.rounds_to_completion);
    }
    ok = ok && succ == kC9Seeds && budget > prev_budget;
    d += fmt("eps=%g: %zu/%zu, budget %zu iterations, mean rounds to completion %.0f; ", eps, succ, kC9Seeds, budget,
             done_rounds / kC9Seeds);
    prev_budget = budget;
  }
  return {ok, d + fmt("eps'=%g", kC9EpsPrime)};
}

// 10: warm-up schemes.

Verdict criterion10() {
  warmup::TrivialSchemeConfig tcfg;
  tcfg.eps = kC10TrivialEps;
  std::size_t tsucc = 0;
  double rate = 0;
  for (std::size_t r = 0; r < kC10TrivialRuns; ++r) {
    std::uint64_t seed = derive_seed(1010, r);
    auto p = protocol::GeneratedProtocol::random_segments(1024, tcfg.min_message_length, 64, derive_seed(seed, 1));
    protocol::Inputs in;
    in.alice.seed = derive_seed(seed, 2);
    in.bob.seed = derive_seed(seed, 3);
    auto res = warmup::trivial_simulate(p, in, tcfg, derive_seed(seed, 4));
    tsucc += res.success;
    rate += res.rate;
  }
  double tr = static_cast<double>(tsucc) / kC10TrivialRuns;

  warmup::BlockedRandomConfig bcfg;
  bcfg.eps = kC10BlockedEps;
  auto chunk_code = warmup::choose_chunk_code(bcfg);
  warmup::IdentityAdapter id;
  std::size_t units = 0, fails = 0, bsucc = 0;
  for (std::size_t r = 0; r < kC10BlockedRuns; ++r) {
    std::uint64_t seed = derive_seed(1011, r);
    auto p = protocol::GeneratedProtocol::random_segments(4096, 64, 256, derive_seed(seed, 1));
    protocol::Inputs in;
    in.alice.seed = derive_seed(seed, 2);
    in.bob.seed = derive_seed(seed, 3);
    auto res = warmup::blocked_random_simulate(p, in, bcfg, chunk_code, &id, derive_seed(seed, 4));
    units += res.units;
    fails += res.unit_failures;
    bsucc += res.success;
  }
  double e4 = std::pow(kC10BlockedEps, 4);
  double fr = static_cast<double>(fails) / static_cast<double>(units);
  double lim = stats::upper_limit(e4, units, kSigmas);
  return {tr >= kC10TrivialMinSuccess && fr <= lim,
          fmt("trivial eps=%g: %zu/%zu runs (min %.2f), mean rate %.3f; blocked eps=1/64 with %s: %zu chunk failures in "
              "%zu chunks = %.2e (limit %.2e), %zu/%zu runs exact",
              kC10TrivialEps, tsucc, kC10TrivialRuns, kC10TrivialMinSuccess, rate / kC10TrivialRuns,
              chunk_code.name().c_str(), fails, units, fr, lim, bsucc, kC10BlockedRuns)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  std::vector<int> which;
  std::string cache;
  app.add_option("--criterion", which, "criteria to run (default: all)")->check(CLI::Range(1, 10));
  bool refresh = false;
  app.add_option("--grid-cache", cache, "file holding the shared end-to-end grid");
  app.add_flag("--grid-refresh", refresh, "recompute the grid even when the cache is valid");
  CLI11_PARSE(app, argc, argv);
  if (which.empty()) which = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

  std::vector<GridRun> grid;
  bool grid_loaded = false;
  auto need_grid = [&]() -> const std::vector<GridRun>& {
    if (!grid_loaded) {
      grid = load_grid(cache, refresh);
      grid_loaded = true;
    }
    return grid;
  };

  bool all = true;
  for (int c : which) {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      switch (c) {
        case 1: v = criterion1(); break;
        case 2: v = criterion2(); break;
        case 3: v = criterion3(); break;
        case 4: v = criterion4(); break;
        case 5: v = criterion5(); break;
        case 6: v = criterion6(need_grid()); break;
        case 7: v = criterion7(need_grid()); break;
        case 8: v = criterion8(need_grid()); break;
        case 9: v = criterion9(); break;
        case 10: v = criterion10(); break;
      }
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d: %s %s [%.1fs]\n", c, v.pass ? "PASS" : "FAIL", v.detail.c_str(), secs);
    std::fflush(stdout);
    all = all && v.pass;
  }
  return all ? 0 : 1;
}
