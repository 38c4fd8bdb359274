#include "haardist/spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace haardist {

namespace {

constexpr double kMergeTol = 1e-12;

bool mergeable(double a, double b) {
  return std::abs(a - b) <= kMergeTol * std::max(1.0, std::abs(a));
}

}  // namespace

Spectrum Spectrum::from_entries(std::vector<SpectrumEntry> entries) {
  if (entries.empty()) throw DomainError("spectrum must have at least one eigenvalue");
  for (const auto& e : entries) {
    if (e.multiplicity <= 0) throw DomainError("eigenvalue multiplicity must be positive");
    if (!std::isfinite(e.value)) throw DomainError("eigenvalue must be finite");
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.value < b.value; });

  std::vector<SpectrumEntry> merged;
  for (auto& e : entries) {
    if (!merged.empty() && mergeable(merged.back().value, e.value)) {
      SpectrumEntry& m = merged.back();
      int total = m.multiplicity + e.multiplicity;
      if (m.exact && e.exact) {
        Rational mean = (*m.exact * m.multiplicity + *e.exact * e.multiplicity) / total;
        m.exact = mean;
        m.value = mean.get_d();
      } else {
        m.exact.reset();
        m.value = (m.value * m.multiplicity + e.value * e.multiplicity) / total;
      }
      m.multiplicity = total;
    } else {
      merged.push_back(std::move(e));
    }
  }

  Spectrum s;
  s.entries_ = std::move(merged);
  return s;
}

Spectrum Spectrum::from_values(const std::vector<std::pair<double, int>>& eigs) {
  std::vector<SpectrumEntry> entries;
  entries.reserve(eigs.size());
  for (const auto& [v, m] : eigs) entries.push_back({v, m, std::nullopt});
  return from_entries(std::move(entries));
}

Spectrum Spectrum::from_rationals(const std::vector<std::pair<Rational, int>>& eigs) {
  std::vector<SpectrumEntry> entries;
  entries.reserve(eigs.size());
  for (const auto& [q, m] : eigs) entries.push_back({q.get_d(), m, q});
  return from_entries(std::move(entries));
}

int Spectrum::dimension() const {
  int d = 0;
  for (const auto& e : entries_) d += e.multiplicity;
  return d;
}

int Spectrum::distinct_count() const { return static_cast<int>(entries_.size()); }

int Spectrum::rank() const {
  int l = 0;
  for (const auto& e : entries_) {
    bool zero = e.exact ? (*e.exact == 0) : (std::abs(e.value) <= kMergeTol);
    if (!zero) l += e.multiplicity;
  }
  return l;
}

double Spectrum::trace() const {
  if (auto t = trace_exact()) return t->get_d();
  double t = 0;
  for (const auto& e : entries_) t += e.value * e.multiplicity;
  return t;
}

std::optional<Rational> Spectrum::trace_exact() const {
  if (!all_exact()) return std::nullopt;
  Rational t = 0;
  for (const auto& e : entries_) t += *e.exact * e.multiplicity;
  return t;
}

double Spectrum::min_value() const {
  if (entries_.empty()) throw DomainError("empty spectrum");
  return entries_.front().value;
}

double Spectrum::max_value() const {
  if (entries_.empty()) throw DomainError("empty spectrum");
  return entries_.back().value;
}

bool Spectrum::all_exact() const {
  if (entries_.empty()) return false;
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const SpectrumEntry& e) { return e.exact.has_value(); });
}

bool Spectrum::operator==(const Spectrum& other) const {
  if (entries_.size() != other.entries_.size()) return false;
  for (size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].value != other.entries_[i].value) return false;
    if (entries_[i].multiplicity != other.entries_[i].multiplicity) return false;
  }
  return true;
}

EnvDim::EnvDim(int s) : s_(s) {
  if (s < 1) throw DomainError("environment dimension must be >= 1");
}

EnvDim::EnvDim(double s) : s_(s) {
  if (!std::isfinite(s) || s < 1.0) throw DomainError("environment dimension must be >= 1");
}

bool EnvDim::is_integer() const { return s_ == std::floor(s_); }

int EnvDim::as_integer() const {
  if (!is_integer()) throw DomainError("environment dimension is not integral");
  return static_cast<int>(s_);
}

NormalizedSpectrum normalize(const Spectrum& spec) {
  if (spec.distinct_count() < 2) {
    throw DegenerateSpectrum("normalization needs at least two distinct eigenvalues");
  }
  const auto& in = spec.entries();
  double sigma = spec.min_value();
  double scale = spec.max_value() - sigma;

  std::vector<SpectrumEntry> out;
  out.reserve(in.size());
  if (spec.all_exact()) {
    Rational qs = *in.front().exact;
    Rational qw = *in.back().exact - qs;
    for (const auto& e : in) {
      Rational v = (*e.exact - qs) / qw;
      out.push_back({v.get_d(), e.multiplicity, v});
    }
  } else {
    for (const auto& e : in) {
      out.push_back({(e.value - sigma) / scale, e.multiplicity, std::nullopt});
    }
  }
  return {Spectrum::from_entries(std::move(out)), sigma, scale};
}

Spectrum depolarize_spectrum(const Spectrum& spec, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw DomainError("depolarization strength must lie in [0, 1]");
  }
  if (gamma == 0.0) return spec;
  const int d = spec.dimension();

  std::vector<SpectrumEntry> out;
  out.reserve(spec.entries().size());
  if (spec.all_exact()) {
    Rational g = rational_from_double(gamma);
    Rational mix = g * *spec.trace_exact() / d;
    for (const auto& e : spec.entries()) {
      Rational v = (1 - g) * *e.exact + mix;
      out.push_back({v.get_d(), e.multiplicity, v});
    }
  } else {
    double mix = gamma * spec.trace() / d;
    for (const auto& e : spec.entries()) {
      out.push_back({(1.0 - gamma) * e.value + mix, e.multiplicity, std::nullopt});
    }
  }
  return Spectrum::from_entries(std::move(out));
}

CircuitNoiseParams fig1_parameterization(double gamma, int k) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw DomainError("depolarization strength must lie in [0, 1]");
  }
  if (k < 0) throw DomainError("circuit depth must be nonnegative");
  return {1.0 - std::pow(1.0 - gamma, k), k + 1};
}

}  // namespace haardist
