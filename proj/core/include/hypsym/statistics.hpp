#pragma once

#include <cstdint>
#include <vector>

namespace hypsym {

struct UniformityStats {
  std::uint64_t total = 0;
  double tv = 0.0;    // 1/2 sum |p_i - u_i|
  double chi2 = 0.0;  // sum (O_i - E_i)^2 / E_i
};

// Compares counts with the model probabilities (uniform when empty). Throws EmptySample.
UniformityStats uniformity(const std::vector<std::uint64_t>& counts, const std::vector<double>& model = {});

// 1-D star discrepancy of samples in [0, 1). Throws EmptySample.
double star_discrepancy(std::vector<double> samples);

}  // namespace hypsym
