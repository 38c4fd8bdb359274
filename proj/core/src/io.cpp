#include "haardist/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>

namespace haardist {

namespace {

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

constexpr char kStateMagic[4] = {'H', 'D', 'S', 'T'};
constexpr std::uint32_t kStateVersion = 1;

template <typename T>
void write_raw(std::ostream& os, const T& value) {
  os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_raw(std::istream& is) {
  T value{};
  is.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!is) throw DomainError("truncated state file");
  return value;
}

}  // namespace

nlohmann::json spectrum_to_json(const Spectrum& spec) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : spec.entries()) {
    nlohmann::json entry;
    if (e.exact) {
      entry["eigenvalue"] = rational_to_string(*e.exact);
    } else {
      entry["eigenvalue"] = e.value;
    }
    entry["multiplicity"] = e.multiplicity;
    arr.push_back(std::move(entry));
  }
  return arr;
}

Spectrum spectrum_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw DomainError("spectrum JSON must be a nonempty array");
  std::vector<SpectrumEntry> entries;
  entries.reserve(j.size());
  for (const auto& item : j) {
    if (!item.contains("eigenvalue") || !item.contains("multiplicity")) {
      throw DomainError("spectrum entry needs 'eigenvalue' and 'multiplicity'");
    }
    SpectrumEntry e;
    e.multiplicity = item.at("multiplicity").get<int>();
    const auto& v = item.at("eigenvalue");
    if (v.is_string()) {
      e.exact = rational_from_string(v.get<std::string>());
      e.value = e.exact->get_d();
    } else if (v.is_number()) {
      e.value = v.get<double>();
    } else {
      throw DomainError("eigenvalue must be a number or a 'p/q' string");
    }
    entries.push_back(std::move(e));
  }
  return Spectrum::from_entries(std::move(entries));
}

nlohmann::json distribution_to_json(const AnalyticDistribution& dist) {
  nlohmann::json j;
  j["spectrum"] = spectrum_to_json(dist.spectrum());
  j["s"] = dist.env_dim();
  j["support"] = {dist.min_value(), dist.max_value()};
  switch (dist.kind()) {
    case DistributionKind::point_mass:
      j["kind"] = "point_mass";
      j["location"] = dist.point_mass_location();
      j["mass"] = 1.0;
      break;
    case DistributionKind::beta:
      j["kind"] = "beta";
      j["alpha"] = dist.beta_alpha();
      j["beta"] = dist.beta_beta();
      break;
    case DistributionKind::power_sum: {
      j["kind"] = "power_sum";
      j["precision_bits"] = dist.precision_bits();
      nlohmann::json terms = nlohmann::json::array();
      for (const auto& t : dist.terms()) {
        terms.push_back({{"location", t.location},
                         {"power", t.power},
                         {"coefficient", t.coefficient.to_decimal_string()},
                         {"coefficient_exact", rational_to_string(t.coefficient_exact)}});
      }
      j["coefficients"] = std::move(terms);
      break;
    }
  }
  return j;
}

nlohmann::json histogram_to_json(const BinnedHistogram& hist) {
  nlohmann::json j;
  j["edges"] = hist.edges;
  j["counts"] = hist.counts;
  nlohmann::json mass = nlohmann::json::array();
  for (std::size_t i = 0; i < hist.bins(); ++i) mass.push_back(hist.mass(i));
  j["mass"] = std::move(mass);
  j["underflow"] = hist.underflow;
  j["zeros"] = hist.zeros;
  j["overflow"] = hist.overflow;
  j["total"] = hist.total;
  return j;
}

BinnedHistogram histogram_from_json(const nlohmann::json& j) {
  BinnedHistogram hist;
  hist.edges = j.at("edges").get<std::vector<double>>();
  hist.counts = j.at("counts").get<std::vector<std::uint64_t>>();
  if (hist.edges.size() != hist.counts.size() + 1) {
    throw DomainError("histogram JSON has inconsistent edges/counts");
  }
  hist.underflow = j.at("underflow").get<std::uint64_t>();
  hist.zeros = j.value("zeros", std::uint64_t{0});
  hist.overflow = j.at("overflow").get<std::uint64_t>();
  hist.total = j.at("total").get<std::uint64_t>();
  return hist;
}

nlohmann::json fit_to_json(const EffectiveFit& fit) {
  return {{"gamma_eff", fit.gamma_eff},   {"s_eff", fit.s_eff},
          {"objective", fit.objective},   {"evaluations", fit.evaluations},
          {"converged", fit.converged},   {"start_gamma", fit.start_gamma},
          {"start_s", fit.start_s}};
}

void write_grid_csv(std::ostream& os, const AnalyticDistribution& dist, int points) {
  if (points < 2) throw DomainError("grid needs at least two points");
  if (dist.is_point_mass()) {
    throw DomainError("point-mass distribution has no density grid; export it symbolically");
  }
  os << "x,pdf,cdf\n";
  const double lo = dist.min_value();
  const double hi = dist.max_value();
  for (int i = 0; i < points; ++i) {
    const double x = lo + (hi - lo) * i / (points - 1);
    os << fmt_double(x) << ',' << fmt_double(dist.density(x)) << ',' << fmt_double(dist.cdf(x))
       << '\n';
  }
}

void write_histogram_csv(std::ostream& os, const BinnedHistogram& hist) {
  os << "left_edge,right_edge,count,mass,density,cumulative\n";
  double cum = hist.underflow_frac();
  for (std::size_t i = 0; i < hist.bins(); ++i) {
    cum += hist.mass(i);
    os << fmt_double(hist.edges[i]) << ',' << fmt_double(hist.edges[i + 1]) << ','
       << hist.counts[i] << ',' << fmt_double(hist.mass(i)) << ',' << fmt_double(hist.density(i))
       << ',' << fmt_double(cum) << '\n';
  }
}

void write_state(std::ostream& os, const DensityState& state) {
  os.write(kStateMagic, sizeof(kStateMagic));
  write_raw(os, kStateVersion);
  write_raw(os, static_cast<std::uint32_t>(state.dim()));
  for (int i = 0; i < state.dim(); ++i) {
    for (int j = 0; j < state.dim(); ++j) {
      write_raw(os, state.rho(i, j).real());
      write_raw(os, state.rho(i, j).imag());
    }
  }
}

DensityState read_state(std::istream& is) {
  char magic[4];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kStateMagic, sizeof(magic)) != 0) {
    throw DomainError("not a state file (bad magic)");
  }
  const auto version = read_raw<std::uint32_t>(is);
  if (version != kStateVersion) {
    throw DomainError("unsupported state file version " + std::to_string(version));
  }
  const auto dim = read_raw<std::uint32_t>(is);
  if (dim == 0 || dim > 4096) throw DomainError("state dimension out of range");
  DensityState state;
  state.rho.resize(dim, dim);
  for (std::uint32_t i = 0; i < dim; ++i) {
    for (std::uint32_t j = 0; j < dim; ++j) {
      const double re = read_raw<double>(is);
      const double im = read_raw<double>(is);
      state.rho(i, j) = std::complex<double>(re, im);
    }
  }
  return state;
}

std::string content_hash(const std::string& text) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace haardist
