#include "icx/experiment.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "icx/analysis/audit.hpp"
#include "icx/engine/parallel.hpp"
#include "icx/engine/simulation.hpp"
#include "icx/rng.hpp"
#include "icx/version.hpp"
#include "icx/warmup/blocked_random.hpp"
#include "icx/warmup/trivial.hpp"

namespace icx::tools {

using nlohmann::json;

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Oblivious:
      return "oblivious";
    case Scheme::Rateless:
      return "rateless";
    case Scheme::Trivial:
      return "trivial";
    case Scheme::BlockedRandom:
      return "blocked-random";
  }
  return "?";
}

Scheme parse_scheme(const std::string& name) {
  for (Scheme s : {Scheme::Oblivious, Scheme::Rateless, Scheme::Trivial, Scheme::BlockedRandom}) {
    if (name == scheme_name(s)) return s;
  }
  throw std::invalid_argument("unknown scheme: " + name);
}

void ExperimentConfig::validate() const {
  engine.validate();
  if (eps_grid.empty()) throw std::invalid_argument("eps grid is empty");
  for (double e : eps_grid) {
    if (!(e >= 0 && e < 0.5)) throw std::invalid_argument("eps must lie in [0, 0.5)");
  }
  if (strategies.empty()) throw std::invalid_argument("strategy list is empty");
  if (runs == 0) throw std::invalid_argument("runs must be positive");
  if (protocol_json.empty()) {
    if (depth == 0) throw std::invalid_argument("depth must be positive");
    if (segment_lo == 0 || segment_lo > segment_hi) throw std::invalid_argument("bad segment range");
    if (scheme == Scheme::Trivial && segment_lo < trivial.min_message_length)
      throw std::invalid_argument("trivial scheme needs segments of at least min_message_length bits");
  }
  if (scheme == Scheme::Trivial && (trivial.piece_bits == 0 || trivial.piece_bits > 24))
    throw std::invalid_argument("piece_bits must be in [1, 24]");
  if (scheme == Scheme::BlockedRandom && (blocked.b == 0 || blocked.b > 24))
    throw std::invalid_argument("blocked b must be in [1, 24]");
}

std::string ExperimentConfig::to_json() const {
  json j;
  j["scheme"] = scheme_name(scheme);
  if (protocol_json.empty()) {
    j["protocol"] = {{"depth", depth}, {"segments", {segment_lo, segment_hi}}};
  } else {
    j["protocol"] = json::parse(protocol_json);
  }
  j["engine"] = json::parse(engine.to_json());
  j["eps_grid"] = eps_grid;
  j["strategies"] = strategies;
  j["runs"] = runs;
  j["seed"] = seed;
  j["audit"] = audit;
  if (!pattern.empty()) j["pattern"] = pattern;
  j["trivial"] = {{"min_message_length", trivial.min_message_length},
                  {"piece_bits", trivial.piece_bits},
                  {"target_failure", trivial.target_failure}};
  j["blocked"] = {{"b", blocked.b},
                  {"c", blocked.c},
                  {"delta", blocked.delta},
                  {"inner", blocked.inner},
                  {"strict", blocked.strict}};
  return j.dump();
}

void ExperimentConfig::set_protocol(const std::string& text) {
  json p = json::parse(text);
  if (!p.is_object()) throw std::invalid_argument("protocol must be a JSON object");
  if (p.contains("owner_rule")) {
    protocol_json = p.dump();
    return;
  }
  protocol_json.clear();
  depth = p.value("depth", depth);
  if (p.contains("segments")) {
    auto seg = p.at("segments").get<std::vector<std::size_t>>();
    if (seg.size() != 2) throw std::invalid_argument("protocol.segments needs [lo, hi]");
    segment_lo = seg[0];
    segment_hi = seg[1];
  }
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  json j = json::parse(text);
  ExperimentConfig c;
  if (j.contains("scheme")) c.scheme = parse_scheme(j.at("scheme").get<std::string>());
  if (j.contains("protocol")) c.set_protocol(j.at("protocol").dump());
  if (j.contains("engine")) c.engine = engine::EngineConfig::from_json(j.at("engine").dump());
  if (j.contains("eps_grid")) c.eps_grid = j.at("eps_grid").get<std::vector<double>>();
  if (j.contains("strategies")) c.strategies = j.at("strategies").get<std::vector<std::string>>();
  c.runs = j.value("runs", c.runs);
  c.seed = j.value("seed", c.seed);
  c.audit = j.value("audit", c.audit);
  c.pattern = j.value("pattern", c.pattern);
  if (j.contains("trivial")) {
    const json& t = j.at("trivial");
    c.trivial.min_message_length = t.value("min_message_length", c.trivial.min_message_length);
    c.trivial.piece_bits = t.value("piece_bits", c.trivial.piece_bits);
    c.trivial.target_failure = t.value("target_failure", c.trivial.target_failure);
  }
  if (j.contains("blocked")) {
    const json& b = j.at("blocked");
    c.blocked.b = b.value("b", c.blocked.b);
    c.blocked.c = b.value("c", c.blocked.c);
    c.blocked.delta = b.value("delta", c.blocked.delta);
    c.blocked.inner = b.value("inner", c.blocked.inner);
    c.blocked.strict = b.value("strict", c.blocked.strict);
  }
  return c;
}

protocol::ProtocolDescription make_protocol(const ExperimentConfig& cfg, std::uint64_t run_seed) {
  if (!cfg.protocol_json.empty()) return protocol::parse_protocol_json(cfg.protocol_json);
  protocol::ProtocolDescription d;
  d.protocol = std::make_shared<protocol::GeneratedProtocol>(protocol::GeneratedProtocol::random_segments(
      cfg.depth, cfg.segment_lo, cfg.segment_hi, derive_seed(run_seed, 101)));
  d.inputs.alice.seed = derive_seed(run_seed, 102);
  d.inputs.bob.seed = derive_seed(run_seed, 103);
  return d;
}

namespace {

// Codes depend only on the config and eps; build each once per process.
class CodeCache {
 public:
  const engine::CodeBundle& bundle(const engine::EngineConfig& e) {
    std::lock_guard<std::mutex> lock(mu_);
    std::string key = e.to_json();
    auto it = bundles_.find(key);
    if (it == bundles_.end()) it = bundles_.emplace(key, engine::build_codes(e)).first;
    return it->second;
  }
  const codes::BinaryLinearCode& chunk(const warmup::BlockedRandomConfig& b) {
    std::lock_guard<std::mutex> lock(mu_);
    std::ostringstream key;
    key << b.eps << '/' << b.b << '/' << b.c << '/' << b.delta << '/' << b.code_seed;
    auto it = chunks_.find(key.str());
    if (it == chunks_.end()) it = chunks_.emplace(key.str(), warmup::choose_chunk_code(b)).first;
    return it->second;
  }

 private:
  std::mutex mu_;
  std::map<std::string, engine::CodeBundle> bundles_;
  std::map<std::string, codes::BinaryLinearCode> chunks_;
};

CodeCache& cache() {
  static CodeCache c;
  return c;
}

engine::ChannelSpec channel_for(const std::string& strategy) {
  engine::ChannelSpec ch;
  if (strategy == "bsc") {
    ch.kind = engine::ChannelKind::Bsc;
  } else {
    ch.kind = engine::ChannelKind::Adversary;
    ch.strategy = strategy;
  }
  return ch;
}

void fill_engine(RunOutcome& out, const engine::SimulationResult& res, bool audit, bool want_trace) {
  const auto& m = res.metrics;
  out.success = m.success;
  out.rate = m.rate;
  out.overhead = m.overhead;
  out.rounds = m.rounds;
  out.n_iter = m.n_iter;
  out.invalid = m.invalid;
  out.malicious = m.malicious;
  out.metrics_json = m.to_json();
  if (audit) {
    auto rep = analysis::audit_trace(res.header, res.trace);
    out.audit_violations = rep.total_violations + rep.phi_mismatches + rep.counter_mismatches;
    out.audit_json = rep.to_json();
  }
  if (want_trace) {
    std::ostringstream os;
    engine::write_trace(os, res.header, res.trace);
    out.trace = os.str();
  }
}

}  // namespace

RunOutcome run_once(const ExperimentConfig& cfg, double eps, const std::string& strategy, std::uint64_t run_seed,
                    bool want_trace) {
  auto desc = make_protocol(cfg, run_seed);
  RunOutcome out;
  const std::uint64_t sim_seed = derive_seed(run_seed, 104);
  switch (cfg.scheme) {
    case Scheme::Oblivious: {
      engine::EngineConfig e = cfg.engine;
      e.eps = eps;
      e.record_trace = e.record_trace || cfg.audit || want_trace;
      protocol::BlockedProtocol bp(desc.protocol, e.s * e.b);
      engine::RunOptions ro;
      ro.codes = &cache().bundle(e);
      engine::ChannelSpec ch = channel_for(strategy);
      if (!cfg.pattern.empty()) {
        ch.kind = engine::ChannelKind::Adversary;
        ch.pattern = control::ErrorPattern::parse(cfg.pattern);
      }
      fill_engine(out, engine::run_simulation(bp, desc.inputs, e, ch, sim_seed, ro), cfg.audit,
                  want_trace);
      break;
    }
    case Scheme::Rateless: {
      engine::EngineConfig e = cfg.engine;
      e.public_randomness = true;
      e.record_trace = e.record_trace || cfg.audit || want_trace;
      protocol::BlockedProtocol bp(desc.protocol, e.s * e.b);
      engine::EngineConfig keyed = e;
      keyed.eps = eps;
      engine::RunOptions ro;
      ro.codes = &cache().bundle(keyed);
      fill_engine(out, engine::run_rateless(bp, desc.inputs, e, eps, strategy, sim_seed, ro), cfg.audit,
                  want_trace);
      break;
    }
    case Scheme::Trivial: {
      warmup::TrivialSchemeConfig t;
      t.min_message_length = cfg.trivial.min_message_length;
      t.piece_bits = cfg.trivial.piece_bits;
      t.target_failure = cfg.trivial.target_failure;
      t.eps = eps;
      t.code_seed = cfg.engine.code_seed;
      auto r = warmup::trivial_simulate(*desc.protocol, desc.inputs, t, sim_seed);
      out.success = r.success;
      out.rate = r.rate;
      out.overhead = r.n ? static_cast<double>(r.rounds) / static_cast<double>(r.n) - 1 : 0;
      out.rounds = r.rounds;
      out.units = r.units;
      out.unit_failures = r.unit_failures;
      out.metrics_json = r.to_json();
      break;
    }
    case Scheme::BlockedRandom: {
      warmup::BlockedRandomConfig b;
      b.eps = eps;
      b.b = cfg.blocked.b;
      b.c = cfg.blocked.c;
      b.delta = cfg.blocked.delta;
      b.strict = cfg.blocked.strict;
      b.code_seed = cfg.engine.code_seed;
      auto inner = warmup::make_inner_adapter(cfg.blocked.inner);
      auto r = warmup::blocked_random_simulate(*desc.protocol, desc.inputs, b, cache().chunk(b), inner.get(),
                                               sim_seed);
      out.success = r.success;
      out.rate = r.rate;
      out.overhead = r.n ? static_cast<double>(r.rounds) / static_cast<double>(r.n) - 1 : 0;
      out.rounds = r.rounds;
      out.units = r.units;
      out.unit_failures = r.unit_failures;
      out.metrics_json = r.to_json();
      break;
    }
  }
  return out;
}

std::string run_document(const ExperimentConfig& cfg, const RunOutcome& out) {
  json j;
  j["version"] = version_string();
  j["config"] = json::parse(cfg.to_json());
  j["metrics"] = json::parse(out.metrics_json);
  if (!out.audit_json.empty()) j["audit"] = json::parse(out.audit_json);
  return j.dump(2) + "\n";
}

std::vector<SweepRow> sweep(const ExperimentConfig& cfg) {
  struct Cell {
    std::size_t row;
    std::uint64_t seed;
  };
  std::vector<SweepRow> rows;
  std::vector<Cell> cells;
  for (double eps : cfg.eps_grid) {
    for (const auto& st : cfg.strategies) {
      SweepRow r;
      r.eps = eps;
      r.strategy = st;
      r.runs = cfg.runs;
      for (std::size_t i = 0; i < cfg.runs; ++i) cells.push_back({rows.size(), derive_seed(cfg.seed, i)});
      rows.push_back(r);
    }
  }
  std::vector<RunOutcome> outs(cells.size());
  engine::parallel_for(cells.size(), [&](std::size_t i) {
    const auto& row = rows[cells[i].row];
    outs[i] = run_once(cfg, row.eps, row.strategy, cells[i].seed);
    outs[i].metrics_json.clear();
    outs[i].audit_json.clear();
  });
  for (std::size_t i = 0; i < cells.size(); ++i) {
    SweepRow& r = rows[cells[i].row];
    const RunOutcome& o = outs[i];
    const double w = 1.0 / static_cast<double>(r.runs);
    r.successes += o.success;
    r.mean_rate += w * o.rate;
    r.mean_overhead += w * o.overhead;
    r.mean_invalid += w * static_cast<double>(o.invalid);
    r.mean_malicious += w * static_cast<double>(o.malicious);
    r.max_n_iter = std::max(r.max_n_iter, o.n_iter);
    if (o.audit_violations) r.audit_violations += *o.audit_violations;
  }
  return rows;
}

std::string sweep_csv(const ExperimentConfig& cfg, const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os.precision(10);
  os << "# version: " << version_string() << "\n";
  os << "# config: " << cfg.to_json() << "\n";
  os << "eps,eps_log,strategy,runs,successes,success_rate,mean_rate,mean_overhead,mean_invalid,mean_malicious,"
        "max_n_iter,audit_violations\n";
  for (const auto& r : rows) {
    double el = r.eps > 0 ? r.eps * std::log2(1 / r.eps) : 0;
    os << r.eps << ',' << el << ',' << r.strategy << ',' << r.runs << ',' << r.successes << ','
       << static_cast<double>(r.successes) / static_cast<double>(r.runs) << ',' << r.mean_rate << ','
       << r.mean_overhead << ',' << r.mean_invalid << ',' << r.mean_malicious << ',' << r.max_n_iter << ','
       << r.audit_violations << "\n";
  }
  return os.str();
}

}  // namespace icx::tools
