#include <algorithm>
#include <limits>

#include "polyrec/error.hpp"
#include "polyrec/profile.hpp"

namespace polyrec {

KhintchineSummary khintchine_experiment(const KhintchineConfig& config) {
  if (config.trials < 1) throw ContractViolation("experiment needs at least one trial");
  if (config.universe_size < 1) throw ContractViolation("experiment needs N >= 1");
  KhintchineSummary summary;
  summary.range_end = config.range_end >= 0
                          ? config.range_end
                          : integer_root(config.universe_size, config.poly.degree());
  summary.min_density = std::numeric_limits<double>::infinity();
  summary.min_positive_density = std::numeric_limits<double>::infinity();
  double sum = 0.0, sum_pos = 0.0;
  for (int t = 0; t < config.trials; ++t) {
    KhintchineTrial trial;
    trial.seed = config.seed + static_cast<std::uint64_t>(t);
    const auto a = config.generator.generate(config.universe_size, trial.seed);
    trial.cardinality = a.cardinality();
    const auto prof = profile_fft(a, config.poly, summary.range_end);
    trial.stats = gap_stats(optimal_returns(prof, config.epsilon));
    summary.min_density = std::min(summary.min_density, trial.stats.density);
    summary.min_positive_density =
        std::min(summary.min_positive_density, trial.stats.positive_density);
    sum += trial.stats.density;
    sum_pos += trial.stats.positive_density;
    summary.trials.push_back(trial);
  }
  summary.mean_density = sum / config.trials;
  summary.mean_positive_density = sum_pos / config.trials;
  return summary;
}

}  // namespace polyrec
