#pragma once

#include <iosfwd>

#include <json.hpp>

#include "haardist/analytic.hpp"
#include "haardist/empirics.hpp"
#include "haardist/fit.hpp"
#include "haardist/qsim.hpp"
#include "haardist/spectrum.hpp"

namespace haardist {

/// Array of {eigenvalue, multiplicity}. Exact values serialize as "p/q"
/// strings, inexact ones as numbers; both parse back.
nlohmann::json spectrum_to_json(const Spectrum& spec);
Spectrum spectrum_from_json(const nlohmann::json& j);

/// Kind, support, parameters and (for the general form) the full
/// coefficient table with decimal strings at working precision.
nlohmann::json distribution_to_json(const AnalyticDistribution& dist);

nlohmann::json histogram_to_json(const BinnedHistogram& hist);
BinnedHistogram histogram_from_json(const nlohmann::json& j);

nlohmann::json fit_to_json(const EffectiveFit& fit);

/// "x,pdf,cdf" rows on a uniform grid over the support.
void write_grid_csv(std::ostream& os, const AnalyticDistribution& dist, int points);

/// "left_edge,right_edge,count,mass,density,cumulative" rows.
void write_histogram_csv(std::ostream& os, const BinnedHistogram& hist);

/// Binary density-matrix snapshot: "HDST" magic, format version, dimension,
/// then row-major complex128 entries, all little-endian.
void write_state(std::ostream& os, const DensityState& state);
DensityState read_state(std::istream& is);

/// 64-bit FNV-1a, used to stamp outputs with their generating config.
std::string content_hash(const std::string& text);

}  // namespace haardist
