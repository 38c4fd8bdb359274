#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

#include "haardist/errors.hpp"

namespace haardist {

using Rng = std::mt19937_64;

/// Density operator. For multi-qubit registers, qubit 0 occupies the most
/// significant bit of the matrix index.
struct DensityState {
  Eigen::MatrixXcd rho;

  int dim() const { return static_cast<int>(rho.rows()); }
  int qubits() const;  // log2(dim); throws unless dim is a power of two

  static DensityState basis_state(int dim, int index);
  static DensityState maximally_mixed(int dim);

  double trace_error() const;        // |tr(rho) - 1|
  double hermiticity_error() const;  // largest |rho - rho^dagger| entry
  double purity() const;             // tr(rho^2)
  double min_eigenvalue() const;
};

/// Deterministic sub-seed for a (sample, layer, gate) coordinate.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                          std::uint64_t c = 0);

/// Haar-distributed unitary: QR of a complex Ginibre matrix, phases fixed
/// from the R diagonal. Bit-reproducible for a given generator state.
Eigen::MatrixXcd haar_unitary(int dim, Rng& rng);

/// Haar-random mixed state: reduction of a Haar pure state on dim * s
/// to its dim-dimensional factor.
DensityState haar_mixed_state(int dim, int s, Rng& rng);

/// Single-qubit depolarizing noise applied to every qubit.
/// Strengths in (1, 4/3] make the per-qubit map non-CP on its own and are
/// allowed; anything outside [0, 4/3] is rejected.
void local_depolarize(DensityState& state, double gamma);

/// Global depolarizing channel rho -> (1 - gamma) rho + gamma I / dim.
DensityState global_depolarize(const DensityState& state, double gamma);

struct CircuitConfig {
  int n = 1;           // qubits
  int layers = 0;      // brickwork depth k
  double gamma = 0.0;  // local depolarization after every layer
  std::uint64_t seed = 0;
  std::uint64_t sample_index = 0;  // folded into every gate's sub-seed
};

struct RunDiagnostics {
  bool non_cp_gamma = false;
  double min_eigenvalue = 0.0;  // tracked per layer only when gamma > 1
};

/// k layers of fresh two-qubit Haar unitaries in a brickwork pattern
/// (even layers pair qubits (0,1),(2,3),..., odd layers (1,2),(3,4),...),
/// each layer followed by local depolarizing noise on every qubit.
DensityState run_brickwork(const CircuitConfig& cfg, const DensityState& initial,
                           RunDiagnostics* diag = nullptr);

/// Same, starting from |0...0>.
DensityState run_brickwork(const CircuitConfig& cfg, RunDiagnostics* diag = nullptr);

/// m independent circuit realizations. Realization j is seeded from
/// (cfg.seed, j), so the result is independent of execution order.
std::vector<DensityState> sample_states(const CircuitConfig& cfg, int m, int threads = 1);

}  // namespace haardist
