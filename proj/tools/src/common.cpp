#include "common.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "haardist/io.hpp"
#include "haardist/version.hpp"

namespace haardist::cli {

bool SpectrumSource::configured() const {
  int sources = 0;
  if (!spec_path.empty()) ++sources;
  if (projector_rank > 0) ++sources;
  if (!povm.empty()) ++sources;
  if (tent) ++sources;
  return sources == 1;
}

std::pair<Spectrum, int> SpectrumSource::resolve() const {
  if (!configured()) {
    throw DomainError(
        "choose exactly one spectrum source: --spec, --projector with --dim, "
        "--povm with --n, or --tent");
  }
  if (!spec_path.empty()) {
    auto spec = load_spectrum_file(spec_path);
    return {spec, spec.dimension()};
  }
  if (tent) {
    auto spec = Spectrum::from_rationals(
        {{Rational(0), 1}, {Rational(1, 2), 1}, {Rational(1), 1}});
    return {spec, spec.dimension()};
  }
  if (projector_rank > 0) {
    if (dim < 2) throw DomainError("--projector needs --dim of at least 2");
    if (projector_rank >= dim) throw DomainError("projector rank must be below --dim");
    auto spec = Spectrum::from_rationals(
        {{Rational(0), dim - projector_rank}, {Rational(1), projector_rank}});
    return {spec, dim};
  }
  if (qubits < 1) throw DomainError("--povm needs --n of at least 1");
  auto set = MeasurementSet::build(povm_kind_from_string(povm), qubits);
  if (set.kind() == PovmKind::nonsic) {
    throw DomainError(
        "nonsic elements have differing spectra; pass one explicitly via --spec");
  }
  return {set.element_spectrum(0), set.dim()};
}

Spectrum load_spectrum_file(const std::string& path) {
  return spectrum_from_json(read_json_file(path));
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw DomainError("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("invalid JSON in '" + path + "': " + e.what());
  }
  return j;
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error("cannot write '" + path.string() + "'");
  os << text;
  if (!os) throw Error("short write to '" + path.string() + "'");
}

std::string config_hash(const nlohmann::json& config) {
  return content_hash(config.dump());
}

void stamp(nlohmann::json& j, const std::string& hash, std::uint64_t seed) {
  j["config_hash"] = hash;
  j["seed"] = seed;
  j["version"] = kVersion;
}

std::string cell_name(int n, int k, double gamma, int m, const std::string& povm) {
  std::ostringstream os;
  os << "n" << n << "_k" << k << "_g" << format_double(gamma) << "_m" << m << "_" << povm;
  return os.str();
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace haardist::cli
