#include "icx/analysis/potential.hpp"

#include <algorithm>
#include <cmath>

#include "icx/codes/entropy.hpp"

namespace icx::analysis {

double binary_entropy(double eps) { return codes::binary_entropy(eps); }

double log_inv(double eps) { return eps > 0 ? std::log2(1 / eps) : 0; }

std::vector<Inequality> constant_constraints(const PotentialConstants& k, double eps_max, std::size_t s) {
  const double h = k.C0 * binary_entropy(eps_max);
  const double r = 1.0 / static_cast<double>(s);  // b / B
  const double sd = static_cast<double>(s);
  const double g = 1 + h + k.C1;
  std::vector<Inequality> v;
  auto add = [&](std::string name, double lhs, double rhs) { v.push_back({std::move(name), lhs, rhs}); };

  add("C0 >= 10", k.C0, 10);
  add("C >= 10", k.C, 10);
  add("D >= 2", k.D, 2);
  add("C4 >= 2", k.C4, 2);
  add("C5 >= 10", k.C5, 10);
  add("0.8 C3 - C4 >= 1", 0.8 * k.C3 - k.C4, 1);
  add("0.4 C3 >= 2 C2", 0.4 * k.C3, 2 * k.C2);
  add("C4/2 - 2 C2 >= 1", 0.5 * k.C4 - 2 * k.C2, 1);
  add("2 C2 - C4 + 1.6 C5 >= 1", 2 * k.C2 - k.C4 + 1.6 * k.C5, 1);
  add("0.1 C5 >= 1", 0.1 * k.C5, 1);
  add("0.17 C5 - C6 >= 1", 0.17 * k.C5 - k.C6, 1);
  add("1.6 C5 + C6 - 1 >= 1", 1.6 * k.C5 + k.C6 - 1, 1);
  add("0.2 C3 - 0.8 C5 - 2 C2 >= 0", 0.2 * k.C3 - 0.8 * k.C5 - 2 * k.C2, 0);
  add("0.2 C3 - 1.6 C5 >= 1", 0.2 * k.C3 - 1.6 * k.C5, 1);
  add("C1/4 - C0 H - 2 C2 b/B - 1 >= 0", k.C1 / 4 - h - 2 * k.C2 * r - 1, 0);
  add("C1/4 + (2 C2 - C4) b/B >= b/B", k.C1 / 4 + (2 * k.C2 - k.C4) * r, r);
  add("0.2 C7 >= 1 + C0 H + C1", 0.2 * k.C7, g);
  add("0.8 C7 - C0 H - C1 - 2 C2 b/B - 1 >= 0", 0.8 * k.C7 - h - k.C1 - 2 * k.C2 * r - 1, 0);
  add("0.3 C7 - C1 - C0 H - (2 C2 + 0.8 C5) b/B - 1 >= 0",
      0.3 * k.C7 - k.C1 - h - (2 * k.C2 + 0.8 * k.C5) * r - 1, 0);
  add("0.1 C7 - C0 H - 2 C2 b/B - 1 >= 0", 0.1 * k.C7 - h - 2 * k.C2 * r - 1, 0);

  // Invalid control information.
  add("C_inv >= 1", k.C_inv, 1);
  add("C_inv >= C4/2", k.C_inv, 0.5 * k.C4);
  add("C_inv >= 2 C2 - C4 + 1.6 C5 + C6", k.C_inv, 2 * k.C2 - k.C4 + 1.6 * k.C5 + k.C6);
  add("C_inv >= 2 C2 - C4/2 + 2.4 C5", k.C_inv, 2 * k.C2 - 0.5 * k.C4 + 2.4 * k.C5);
  add("C_inv >= 1.2 C3 + C4", k.C_inv, 1.2 * k.C3 + k.C4);
  add("C_inv >= 0.8 C3 + 1.6 C5", k.C_inv, 0.8 * k.C3 + 1.6 * k.C5);

  // Malicious control information, in units of B.
  const double c5 = k.C5 * r;
  add("C_mal >= 1.6 C5 b/B + 2 C7", k.C_mal, 2 * 0.8 * c5 + 2 * k.C7);
  add("C_mal >= 0.8 C5 b/B + 2 C7 + max(0.8 C5 b/B, C1)", k.C_mal, 0.8 * c5 + 2 * k.C7 + std::max(0.8 * c5, k.C1));
  add("C_mal >= (0.8 C5 + C6) b/B + 2 C7", k.C_mal, (0.8 * k.C5 + k.C6) * r + 2 * k.C7);
  add("C_mal >= C1 + C7", k.C_mal, k.C1 + k.C7);
  add("C_mal >= 1 + C0 H + 3 C1 + (1.6 C5 + C6) b/B", k.C_mal, 1 + h + 3 * k.C1 + (1.6 * k.C5 + k.C6) * r);
  add("C_mal >= 2 C1 + (2s + 1 + C4) b/B", k.C_mal, 2 * k.C1 + (2 * sd + 1 + k.C4) * r);
  add("C_mal >= C1 + (2 C2 - C4 + 1.6 C5 + C6) b/B", k.C_mal, k.C1 + (2 * k.C2 - k.C4 + 1.6 * k.C5 + k.C6) * r);
  add("C_mal >= 4 C7", k.C_mal, 4 * k.C7);
  add("C_mal >= 2 (1 + C0 H + C1) + C4/2 b/B", k.C_mal, 2 * g + 0.5 * k.C4 * r);
  add("C_mal >= (1 + C0 H + C1) + (2 C2 - C4/2 + 2.4 C5) b/B + C7", k.C_mal,
      g + (2 * k.C2 - 0.5 * k.C4 + 2.4 * k.C5) * r + k.C7);
  add("C_mal >= C1 + (1 + C0 H + C1) + (2s + 1) b/B", k.C_mal, k.C1 + g + (2 * sd + 1) * r);
  add("C_mal >= (1 + C0 H + C1) + 0.8 C5 b/B + C7", k.C_mal, g + 0.8 * c5 + k.C7);
  add("C_mal >= 2 C3 b/B + 4 C7", k.C_mal, 2 * k.C3 * r + 4 * k.C7);
  add("C_mal >= 3.2 C7 + (C4 - 2 C2) b/B", k.C_mal, 3.2 * k.C7 + (k.C4 - 2 * k.C2) * r);
  add("C_mal >= C7 + (0.8 C3 + 1.6 C5) b/B", k.C_mal, k.C7 + (0.8 * k.C3 + 1.6 * k.C5) * r);
  add("C_mal >= 2.7 C7 + 1.6 C5 b/B", k.C_mal, 2.7 * k.C7 + 1.6 * c5);

  add("C_inv >= D - 1", k.C_inv, k.D - 1);
  add("C_mal s >= D - 1", k.C_mal * sd, k.D - 1);
  return v;
}

bool constants_feasible(const PotentialConstants& k, double eps_max, std::size_t s) {
  auto v = constant_constraints(k, eps_max, s);
  return std::all_of(v.begin(), v.end(), [](const Inequality& q) { return q.ok(); });
}

double compute_phi(const StateClass& st, const Counters& c, const PotentialConstants& k, const PhiParams& p) {
  const double b = static_cast<double>(p.b);
  const double B = static_cast<double>(p.B);
  const double lead = static_cast<double>(st.l_plus) * (1 + k.C0 * binary_entropy(p.eps));
  switch (st.kind) {
    case StateKind::PerfectlySynced:
      return lead + (static_cast<double>(st.j) * b - k.C * static_cast<double>(c.err) * log_inv(p.eps)) -
             k.D * b * static_cast<double>(c.inv);
    case StateKind::AlmostSynced:
      return static_cast<double>(std::max(st.lA, st.lB)) * (1 + k.C0 * binary_entropy(p.eps)) -
             static_cast<double>(st.j + 1) * b;
    case StateKind::Unsynced:
      break;
  }
  const double kab = static_cast<double>(st.kA + st.kB);
  const double eab = static_cast<double>(st.EA + st.EB);
  const double mal = static_cast<double>(c.malA + c.malB);
  const double lm = k.C1 * static_cast<double>(st.l_minus);
  if (st.kA == st.kB && st.syncA == st.syncB) {
    double z1 = 0;
    if (st.kA == 1) z1 = st.syncA ? b * k.C4 : 0.5 * b * k.C4;
    return lead - lm + b * (k.C2 * kab - k.C3 * eab) - 2 * k.C7 * B * mal - z1;
  }
  double z2 = st.kA == 1 && st.kB == 1 ? b * k.C6 : 0;
  return lead - lm + b * k.C5 * (-0.8 * kab + 0.9 * eab) - k.C7 * B * mal - z2;
}

void CounterTracker::record(std::size_t t, CtrlOutcome cls, bool started_unsynced_a, bool started_unsynced_b,
                            bool transition_a, bool transition_b) {
  t_.push_back(t);
  bad_.push_back(cls != CtrlOutcome::Sound);
  bool mal = cls == CtrlOutcome::Malicious;
  if (started_unsynced_a && mal) ++malA_;
  if (started_unsynced_b && mal) ++malB_;
  if (transition_a) malA_ = 0;
  if (transition_b) malB_ = 0;
}

Counters CounterTracker::counters(std::size_t j) const {
  Counters c;
  std::size_t n = t_.size();
  std::size_t from = j >= n ? 0 : n - j;
  for (std::size_t i = from; i < n; ++i) {
    c.err += t_[i];
    c.inv += bad_[i];
  }
  c.malA = malA_;
  c.malB = malB_;
  return c;
}

}  // namespace icx::analysis
