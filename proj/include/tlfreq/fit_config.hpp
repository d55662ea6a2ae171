#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "tlfreq/generator.hpp"

namespace tlfreq {

/// Settings for every least-squares operator fit.
struct FitConfig {
  std::vector<double> delays;       // explicit delays; empty -> num_delays uniform over [a, b]
  int num_delays = 6;
  int degree = 4;
  int num_signals = 30;
  std::uint64_t seed = 1;
  double amp_bound = 1.0;
  FrequencyRange freq_range{0.5, 9.42477796076938};  // up to 1.5 Hz
  int num_terms = 5;                // sinusoids per training signal
  int times_per_signal = 40;
  double ridge = 1e-4;              // on unit-norm columns; 0 disables
  double dt = 0.002;
  double duration = 10.0;           // seconds of each training signal
  std::size_t max_order = 4;        // highest GFRF order kept when composing

  friend bool operator==(const FitConfig&, const FitConfig&) = default;
};

nlohmann::json fit_config_to_json(const FitConfig& cfg);
/// Missing keys keep their defaults.
FitConfig fit_config_from_json(const nlohmann::json& doc);

}  // namespace tlfreq
