#pragma once

#include <cstddef>

namespace icx::codes {

// Binary entropy in bits; H(0) = H(1) = 0.
double binary_entropy(double x);
// Inverse of H on [0, 1/2]; arguments <= 0 map to 0, >= 1 to 1/2.
double inverse_binary_entropy(double y);

// Relative distance target for a window of j > s chunks, 0 for j <= s.
double window_delta(std::size_t s, std::size_t j);
// Minimum Hamming distance required of window (a, j): ceil(delta_j * j * b),
// and for j = 2s also at least ceil(2sb / 15).
std::size_t window_distance_target(std::size_t s, std::size_t b, std::size_t j);

}  // namespace icx::codes
