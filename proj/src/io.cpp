#include "tlfreq/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "tlfreq/error.hpp"

namespace tlfreq {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& field, std::size_t line) {
  const std::string f = trim(field);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (ec != std::errc() || ptr != f.data() + f.size() || f.empty()) {
    throw Error("CsvParseError", "line " + std::to_string(line) + ": not a number: '" + f + "'");
  }
  return v;
}

std::vector<std::pair<double, double>> read_pairs(std::istream& in) {
  std::vector<std::pair<double, double>> rows;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw Error("CsvParseError", "line " + std::to_string(lineno) + ": expected two columns");
    }
    if (!header_seen) {
      header_seen = true;
      const std::string first = trim(line.substr(0, comma));
      if (!first.empty() && (std::isalpha(static_cast<unsigned char>(first[0])) != 0)) continue;
    }
    const auto rest = line.substr(comma + 1);
    const auto second_comma = rest.find(',');
    rows.emplace_back(parse_number(line.substr(0, comma), lineno),
                      parse_number(rest.substr(0, second_comma), lineno));
  }
  return rows;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

Signal parse_signal_csv(std::istream& in) {
  const auto rows = read_pairs(in);
  if (rows.size() < 2) {
    throw Error("CsvParseError", "signal CSV needs at least two samples");
  }
  const double t0 = rows.front().first;
  const double dt = (rows.back().first - t0) / static_cast<double>(rows.size() - 1);
  if (!(dt > 0.0)) {
    throw Error("NonUniformSampling", "time column must be strictly increasing");
  }
  std::vector<double> values;
  values.reserve(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const double expected = t0 + static_cast<double>(k) * dt;
    if (std::abs(rows[k].first - expected) > 1e-6 * dt) {
      throw Error("NonUniformSampling", "sample " + std::to_string(k) + " at t=" +
                                            format_double(rows[k].first) + " is off the uniform grid");
    }
    values.push_back(rows[k].second);
  }
  return Signal(t0, dt, std::move(values));
}

Signal read_signal_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("FileNotFound", "cannot open " + path.string());
  }
  return parse_signal_csv(in);
}

void write_signal_csv(std::ostream& out, const Signal& x, const std::string& value_header) {
  out << "t," << value_header << '\n';
  for (std::size_t k = 0; k < x.size(); ++k) {
    out << format_double(x.time(k)) << ',' << format_double(x[k]) << '\n';
  }
}

void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum) {
  out << "omega,re,im,abs\n";
  for (std::size_t m = 0; m < spectrum.size(); ++m) {
    const auto v = spectrum.bins[m];
    out << format_double(spectrum.omega(m)) << ',' << format_double(v.real()) << ','
        << format_double(v.imag()) << ',' << format_double(std::abs(v)) << '\n';
  }
}

Kernel kernel_from_json(const nlohmann::json& spec, double dt, const std::filesystem::path& base_dir) {
  if (!spec.is_object() || !spec.contains("type")) {
    throw Error("BadKernelSpec", "kernel description needs a \"type\" field");
  }
  const std::string type = spec.at("type").get<std::string>();
  try {
    if (type == "gaussian") {
      const double mean = spec.value("mean", 0.0);
      const double std = spec.at("std").get<double>();
      const double radius = spec.value("truncation_radius", Kernel::kDefaultTruncation * std);
      return Kernel::gaussian(mean, std, radius, dt);
    }
    if (type == "table") {
      if (spec.contains("samples")) {
        const double kdt = spec.value("dt", dt);
        if (std::abs(kdt - dt) > 1e-9 * dt) {
          throw Error("DtMismatch", "table kernel step differs from the signal step");
        }
        return Kernel::table(spec.value("t0", 0.0), dt, spec.at("samples").get<std::vector<double>>());
      }
      std::filesystem::path file = spec.at("file").get<std::string>();
      if (file.is_relative()) file = base_dir / file;
      const Signal s = read_signal_csv(file);
      if (std::abs(s.dt() - dt) > 1e-6 * dt) {
        throw Error("DtMismatch", "table kernel " + file.string() + " has step " +
                                      format_double(s.dt()) + ", signal step is " + format_double(dt));
      }
      return Kernel::table(s.t0(), dt, std::vector<double>(s.samples().begin(), s.samples().end()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error("BadKernelSpec", std::string("malformed kernel description: ") + e.what());
  }
  throw Error("BadKernelSpec", "unknown kernel type '" + type + "'");
}

nlohmann::json kernel_to_json(const Kernel& kernel) {
  if (const auto* g = std::get_if<GaussianShape>(&kernel.shape())) {
    return {{"type", "gaussian"}, {"mean", g->mean}, {"std", g->std},
            {"truncation_radius", g->truncation_radius}};
  }
  return {{"type", "table"},
          {"t0", static_cast<double>(kernel.first_offset()) * kernel.dt()},
          {"dt", kernel.dt()},
          {"samples", std::vector<double>(kernel.taps().begin(), kernel.taps().end())}};
}

}  // namespace tlfreq
