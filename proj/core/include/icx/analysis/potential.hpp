#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "icx/analysis/state.hpp"

namespace icx::analysis {

struct PotentialConstants {
  double C0 = 10, C = 10, D = 2;
  double C1 = 16, C2 = 1, C3 = 170, C4 = 6, C5 = 20, C6 = 2, C7 = 100;
  double C_inv = 210, C_mal = 425;
};

struct Inequality {
  std::string name;
  double lhs = 0, rhs = 0;
  bool ok() const { return lhs >= rhs - 1e-9; }
};

// Every inequality the proofs place on the constants, evaluated for noise
// rates up to eps_max and s blocks per chunk.
std::vector<Inequality> constant_constraints(const PotentialConstants& k, double eps_max, std::size_t s);
bool constants_feasible(const PotentialConstants& k, double eps_max, std::size_t s);

double binary_entropy(double eps);
// log2(1/eps), 0 for eps == 0 (only ever multiplied by an error count of 0).
double log_inv(double eps);

struct Counters {
  std::size_t err = 0;  // corrupted data bits over the last j iterations
  std::size_t inv = 0;  // non-sound iterations among the last j
  std::size_t malA = 0, malB = 0;
};

struct PhiParams {
  double eps = 0;
  std::size_t b = 0, B = 0;
};

double compute_phi(const StateClass& st, const Counters& c, const PotentialConstants& k, const PhiParams& p);

// Sliding-window bookkeeping for err / inv and per-party mal counters.
class CounterTracker {
 public:
  // Records the iteration just finished. started_unsynced_* refers to the
  // party's sync flag at the start of the iteration.
  void record(std::size_t t, CtrlOutcome cls, bool started_unsynced_a, bool started_unsynced_b, bool transition_a,
              bool transition_b);
  Counters counters(std::size_t j) const;

 private:
  std::vector<std::size_t> t_;
  std::vector<std::uint8_t> bad_;
  std::size_t malA_ = 0, malB_ = 0;
};

}  // namespace icx::analysis
