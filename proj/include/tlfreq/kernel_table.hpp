#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "tlfreq/kernel.hpp"

namespace tlfreq {

/// Atom name -> measurement kernel, all sampled on one step.
class KernelTable {
 public:
  explicit KernelTable(double dt);

  double dt() const noexcept { return dt_; }

  /// Throws DuplicateAtom, or DtMismatch if the kernel was sampled on another step.
  void add(const std::string& name, Kernel kernel);
  bool contains(const std::string& name) const { return kernels_.count(name) != 0; }
  /// Throws UnknownAtom.
  const Kernel& at(const std::string& name) const;
  const std::map<std::string, Kernel>& entries() const noexcept { return kernels_; }

  /// JSON array of {"name": ..., kernel fields} objects, or an object keyed by name.
  static KernelTable load(const std::filesystem::path& path, double dt);

 private:
  double dt_;
  std::map<std::string, Kernel> kernels_;
};

}  // namespace tlfreq
