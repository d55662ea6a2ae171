#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "json.hpp"
#include "tlfreq/kernel.hpp"
#include "tlfreq/signal.hpp"
#include "tlfreq/spectrum.hpp"

namespace tlfreq {

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

/// CSV with header `t,value`; rows must be uniformly spaced (relative tolerance 1e-6).
Signal read_signal_csv(const std::filesystem::path& path);
Signal parse_signal_csv(std::istream& in);
void write_signal_csv(std::ostream& out, const Signal& x, const std::string& value_header = "value");

/// CSV with header `omega,re,im,abs`.
void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum);

/// Kernel description:
///   {"type": "gaussian", "mean": m, "std": s, "truncation_radius": r}   (radius defaults to 5 std)
///   {"type": "table", "file": path}    CSV `t,value`, t relative to the measurement time
/// Relative table paths resolve against base_dir.
Kernel kernel_from_json(const nlohmann::json& spec, double dt,
                        const std::filesystem::path& base_dir = {});
nlohmann::json kernel_to_json(const Kernel& kernel);

}  // namespace tlfreq
