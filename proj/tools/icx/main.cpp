#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "icx/analysis/audit.hpp"
#include "icx/codes/code_file.hpp"
#include "icx/codes/rateless.hpp"
#include "icx/engine/trace.hpp"
#include "icx/experiment.hpp"
#include "icx/version.hpp"

namespace {

using icx::tools::ExperimentConfig;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << text;
}

struct CommonFlags {
  std::string scheme, config, protocol, out;
  std::vector<double> eps;
  double eps_prime = -2;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::size_t runs = 0;
  std::vector<std::string> strategy;
  bool audit = false;
};

void add_common(CLI::App* app, CommonFlags& f) {
  app->add_option("--scheme", f.scheme, "oblivious | rateless | trivial | blocked-random");
  app->add_option("--config", f.config, "experiment config JSON file");
  app->add_option("--protocol", f.protocol, "protocol description JSON file");
  app->add_option("--eps", f.eps, "error fraction (sweep: comma separated grid)")->delimiter(',');
  app->add_option("--eps-prime", f.eps_prime, "control failure parameter (default eps^2)");
  app->add_option("--seed", f.seed, "base seed");
  app->add_option("--runs", f.runs, "seeds per grid cell");
  app->add_option("--strategy", f.strategy, "adversary strategy or bsc (sweep: comma separated)")->delimiter(',');
  app->add_flag("--audit", f.audit, "check every iteration against the potential bounds");
  app->add_option("--out", f.out, "output path (default stdout)");
}

ExperimentConfig resolve(const CommonFlags& f, const CLI::App* app) {
  ExperimentConfig cfg;
  if (!f.config.empty()) cfg = ExperimentConfig::from_json(slurp(f.config));
  if (!f.scheme.empty()) cfg.scheme = icx::tools::parse_scheme(f.scheme);
  if (!f.protocol.empty()) cfg.set_protocol(slurp(f.protocol));
  if (!f.eps.empty()) cfg.eps_grid = f.eps;
  if (f.eps_prime > -2) cfg.engine.eps_prime = f.eps_prime;
  if (app->count("--seed")) cfg.seed = f.seed;
  if (f.runs) cfg.runs = f.runs;
  if (!f.strategy.empty()) cfg.strategies = f.strategy;
  if (f.audit) cfg.audit = true;
  cfg.validate();
  return cfg;
}

int cmd_codesearch(const std::string& kind, std::size_t k, std::size_t n, std::size_t d, std::size_t s,
                   std::size_t b, std::uint64_t seed, std::size_t attempts, const std::string& out) {
  icx::codes::CodeFile file;
  nlohmann::json meta{{"version", icx::version_string()}, {"kind", kind}, {"seed", seed}, {"attempts", attempts}};
  icx::codes::CodeSearchParams sp;
  sp.rng_seed = seed;
  sp.max_attempts = attempts;
  if (kind == "linear") {
    file = icx::codes::code_file_of(icx::codes::gv_search(k, n, d, sp));
    meta["target"] = {{"k", k}, {"n", n}, {"d", d}};
  } else if (kind == "rateless") {
    icx::codes::RatelessSearchParams rp;
    rp.search = sp;
    file = icx::codes::code_file_of(icx::codes::rateless_search(s, b, rp));
    meta["target"] = {{"s", s}, {"b", b}};
  } else {
    throw std::invalid_argument("unknown code kind: " + kind);
  }
  file.meta = meta.dump();
  std::ostringstream os;
  icx::codes::write_code_file(os, file);
  emit(out, os.str());
  auto check = icx::codes::verify_code_file(file);
  if (!check.ok) {
    for (const auto& m : check.mismatches) std::cerr << "verify: " << m << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"icx: interactive coding experiments"};
  app.set_version_flag("--version", std::string(icx::version_string()));
  app.require_subcommand(1);

  auto* cs = app.add_subcommand("codesearch", "search and verify a code, write its generator file");
  std::string kind = "linear", cs_out;
  std::size_t k = 4, n = 8, d = 3, s = 2, b = 4, attempts = 1000;
  std::uint64_t cs_seed = 1;
  cs->add_option("--kind", kind, "linear | rateless");
  cs->add_option("--k", k);
  cs->add_option("--n", n);
  cs->add_option("--d", d, "target minimum distance");
  cs->add_option("--s", s);
  cs->add_option("--b", b);
  cs->add_option("--seed", cs_seed);
  cs->add_option("--attempts", attempts);
  cs->add_option("--out", cs_out, "output path (default stdout)");

  CommonFlags run_flags;
  std::string pattern_file, trace_out;
  auto* run = app.add_subcommand("run", "single simulation, metrics JSON");
  add_common(run, run_flags);
  run->add_option("--pattern", pattern_file, "error pattern file (symbols * ! 0 1), oblivious scheme only");
  run->add_option("--trace", trace_out, "write the iteration trace as JSON lines");

  CommonFlags sweep_flags;
  auto* sw = app.add_subcommand("sweep", "grid Monte Carlo, CSV");
  add_common(sw, sweep_flags);

  std::string audit_in, audit_out;
  auto* au = app.add_subcommand("audit", "audit a recorded trace");
  au->add_option("--trace", audit_in, "trace file")->required();
  au->add_option("--out", audit_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cs) return cmd_codesearch(kind, k, n, d, s, b, cs_seed, attempts, cs_out);
    if (*run) {
      ExperimentConfig cfg = resolve(run_flags, run);
      if (!pattern_file.empty()) {
        std::string text = slurp(pattern_file);
        text.erase(std::remove_if(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); }),
                   text.end());
        cfg.pattern = text;
      }
      auto out = icx::tools::run_once(cfg, cfg.eps_grid.front(), cfg.strategies.front(), cfg.seed,
                                      !trace_out.empty());
      emit(run_flags.out, icx::tools::run_document(cfg, out));
      if (!trace_out.empty()) emit(trace_out, out.trace);
      bool ok = out.success && (!out.audit_violations || *out.audit_violations == 0);
      return ok ? 0 : 1;
    }
    if (*sw) {
      ExperimentConfig cfg = resolve(sweep_flags, sw);
      auto rows = icx::tools::sweep(cfg);
      emit(sweep_flags.out, icx::tools::sweep_csv(cfg, rows));
      return 0;
    }
    if (*au) {
      std::ifstream in(audit_in);
      if (!in) throw std::runtime_error("cannot open " + audit_in);
      icx::engine::TraceHeader h;
      auto recs = icx::engine::read_trace(in, h);
      auto rep = icx::analysis::audit_trace(h, recs);
      nlohmann::json doc{{"version", icx::version_string()},
                         {"trace", audit_in},
                         {"report", nlohmann::json::parse(rep.to_json())}};
      emit(audit_out, doc.dump(2) + "\n");
      return rep.ok() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "icx: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
