#pragma once

#include <cstddef>
#include <vector>

namespace icx::stats {

// Standard deviation of a binomial proportion estimate.
double binomial_sigma(double p, std::size_t trials);

// Upper acceptance limit p + k*sigma used by every Monte-Carlo check.
double upper_limit(double p, std::size_t trials, double k = 3.0);

// Spearman rank correlation with average ranks for ties.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

std::vector<double> average_ranks(const std::vector<double>& v);

double mean(const std::vector<double>& v);

}  // namespace icx::stats
