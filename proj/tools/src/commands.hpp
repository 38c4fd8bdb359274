#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "common.hpp"

namespace haardist::cli {

struct AnalyticArgs {
  SpectrumSource source;
  double s = 1.0;
  double gamma = 0.0;
  int k = 0;
  bool fig1 = false;
  int grid = 512;
  int moments = 0;
  bool force_general = false;
  int precision_bits = 256;
  int max_precision_bits = 16384;
  std::string out = ".";
};
int run_analytic(const AnalyticArgs& args);

struct SimulateArgs {
  std::string config_path;
  std::vector<int> n;
  std::vector<int> k;
  std::vector<double> gamma;
  int m = 0;
  std::string povm;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int bins = 0;
  double bin_lo = 0.0;
  double bin_hi = 0.0;
  int fit = -1;  // -1 = not set on the command line
  std::string out;
  int threads = 0;
};
int run_simulate(const SimulateArgs& args);

struct FitArgs {
  std::string hist_path;
  std::string grid_dir;
  SpectrumSource source;
  int d = 0;
  double gamma_hi = 0.99999999;
  double s_hi = 0.0;
  int max_evaluations = 2000;
  std::string out;
  int threads = 0;
};
int run_fit(const FitArgs& args);

struct OracleArgs {
  SpectrumSource source;
  int s = 1;
  int m = 100000;
  std::uint64_t seed = 1;
  int bins = 10000;
  double bin_lo = 1e-20;
  double bin_hi = 1.0;
  std::string out = ".";
  int threads = 0;
};
int run_oracle(const OracleArgs& args);

struct MetricArgs {
  std::string hist_path;
  SpectrumSource source;
  double s = 1.0;
  double gamma_eff = 0.0;
  double s_eff = 0.0;  // 0 = use --s
  std::string out;
};
int run_metric(const MetricArgs& args);

}  // namespace haardist::cli
