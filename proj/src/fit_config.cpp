#include "tlfreq/fit_config.hpp"

#include "tlfreq/error.hpp"

namespace tlfreq {

nlohmann::json fit_config_to_json(const FitConfig& cfg) {
  nlohmann::json j = {
      {"num_delays", cfg.num_delays},
      {"degree", cfg.degree},
      {"num_signals", cfg.num_signals},
      {"seed", cfg.seed},
      {"amp_bound", cfg.amp_bound},
      {"freq_range", {cfg.freq_range.lo, cfg.freq_range.hi}},
      {"num_terms", cfg.num_terms},
      {"times_per_signal", cfg.times_per_signal},
      {"ridge", cfg.ridge},
      {"dt", cfg.dt},
      {"duration", cfg.duration},
      {"max_order", cfg.max_order},
  };
  if (!cfg.delays.empty()) j["delays"] = cfg.delays;
  return j;
}

FitConfig fit_config_from_json(const nlohmann::json& doc) {
  FitConfig cfg;
  if (!doc.is_object()) throw Error("BadFitConfig", "fit config must be a JSON object");
  try {
    cfg.delays = doc.value("delays", cfg.delays);
    cfg.num_delays = doc.value("num_delays", cfg.num_delays);
    cfg.degree = doc.value("degree", cfg.degree);
    cfg.num_signals = doc.value("num_signals", cfg.num_signals);
    cfg.seed = doc.value("seed", cfg.seed);
    cfg.amp_bound = doc.value("amp_bound", cfg.amp_bound);
    if (doc.contains("freq_range")) {
      const auto r = doc.at("freq_range").get<std::vector<double>>();
      if (r.size() != 2) throw Error("BadFitConfig", "freq_range needs two values");
      cfg.freq_range = {r[0], r[1]};
    }
    cfg.num_terms = doc.value("num_terms", cfg.num_terms);
    cfg.times_per_signal = doc.value("times_per_signal", cfg.times_per_signal);
    cfg.ridge = doc.value("ridge", cfg.ridge);
    cfg.dt = doc.value("dt", cfg.dt);
    cfg.duration = doc.value("duration", cfg.duration);
    cfg.max_order = doc.value("max_order", cfg.max_order);
  } catch (const nlohmann::json::exception& e) {
    throw Error("BadFitConfig", std::string("malformed fit config: ") + e.what());
  }
  if (cfg.degree < 1 || cfg.num_signals < 1 || cfg.times_per_signal < 1 || cfg.num_delays < 1 ||
      !(cfg.dt > 0.0) || !(cfg.duration > 0.0) || cfg.ridge < 0.0 || !(cfg.amp_bound > 0.0)) {
    throw Error("BadFitConfig", "fit config values out of range");
  }
  return cfg;
}

}  // namespace tlfreq
