#include "tlfreq/kernel_table.hpp"

#include <cmath>
#include <fstream>

#include "json.hpp"
#include "tlfreq/error.hpp"
#include "tlfreq/io.hpp"

namespace tlfreq {

KernelTable::KernelTable(double dt) : dt_(dt) {
  if (!(dt > 0.0)) throw Error("NonPositiveDt", "kernel table step must be positive");
}

void KernelTable::add(const std::string& name, Kernel kernel) {
  if (kernels_.count(name) != 0) {
    throw Error("DuplicateAtom", "atom '" + name + "' is defined twice");
  }
  if (std::abs(kernel.dt() - dt_) > 1e-9 * dt_) {
    throw Error("DtMismatch", "kernel '" + name + "' sampled at " + format_double(kernel.dt()) +
                                  ", table step is " + format_double(dt_));
  }
  kernels_.emplace(name, std::move(kernel));
}

const Kernel& KernelTable::at(const std::string& name) const {
  const auto it = kernels_.find(name);
  if (it == kernels_.end()) throw Error("UnknownAtom", "unknown atom '" + name + "'");
  return it->second;
}

KernelTable KernelTable::load(const std::filesystem::path& path, double dt) {
  std::ifstream in(path);
  if (!in) throw Error("FileNotFound", "cannot open " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error("BadKernelSpec", path.string() + ": " + e.what());
  }
  const auto base = path.parent_path();
  KernelTable table(dt);
  if (doc.is_array()) {
    for (const auto& entry : doc) {
      if (!entry.is_object() || !entry.contains("name") || !entry.at("name").is_string()) {
        throw Error("BadKernelSpec", "kernel entries need a string \"name\"");
      }
      table.add(entry.at("name").get<std::string>(), kernel_from_json(entry, dt, base));
    }
  } else if (doc.is_object()) {
    for (const auto& [name, entry] : doc.items()) table.add(name, kernel_from_json(entry, dt, base));
  } else {
    throw Error("BadKernelSpec", "kernel file must hold a JSON array or object");
  }
  return table;
}

}  // namespace tlfreq
