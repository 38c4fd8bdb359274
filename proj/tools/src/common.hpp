#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "haardist/povm.hpp"
#include "haardist/spectrum.hpp"

namespace haardist::cli {

// Shared spectrum-source flags: exactly one of a spectrum file, a builtin
// projector, or a measurement-set element.
struct SpectrumSource {
  std::string spec_path;
  int projector_rank = 0;
  int dim = 0;
  std::string povm;
  int qubits = 0;
  bool tent = false;

  bool configured() const;
  /// Resolved spectrum plus the Hilbert space dimension it lives in.
  std::pair<Spectrum, int> resolve() const;
};

Spectrum load_spectrum_file(const std::string& path);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Hash of the canonical (key-sorted, round-trip) dump of a config object.
std::string config_hash(const nlohmann::json& config);

/// Stamp common provenance fields onto an output object.
void stamp(nlohmann::json& j, const std::string& hash, std::uint64_t seed);

/// Cell directory name n{n}_k{k}_g{gamma}_m{m}_{povm}.
std::string cell_name(int n, int k, double gamma, int m, const std::string& povm);

std::string format_double(double v);

}  // namespace haardist::cli
