#include "hypsym/statistics.hpp"

#include "hypsym/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hypsym {

UniformityStats uniformity(const std::vector<std::uint64_t>& counts, const std::vector<double>& model) {
  if (counts.empty()) throw EmptySample("no cells");
  if (!model.empty() && model.size() != counts.size()) throw DimensionMismatch("model has the wrong number of cells");
  UniformityStats out;
  out.total = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  if (out.total == 0) throw EmptySample("no samples");
  const double total = static_cast<double>(out.total);
  const double uniform = 1.0 / static_cast<double>(counts.size());
  double tv = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double p = model.empty() ? uniform : model[i];
    const double observed = static_cast<double>(counts[i]);
    tv += std::abs(observed / total - p);
    const double expected = p * total;
    if (expected > 0.0) out.chi2 += (observed - expected) * (observed - expected) / expected;
  }
  out.tv = 0.5 * tv;
  return out;
}

double star_discrepancy(std::vector<double> samples) {
  if (samples.empty()) throw EmptySample("no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double x = samples[i];
    d = std::max({d, static_cast<double>(i + 1) / n - x, x - static_cast<double>(i) / n});
  }
  return d;
}

}  // namespace hypsym
