#include "haardist/qsim.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <string>

#include "haardist/parallel.hpp"

namespace haardist {

namespace {

using Complex = std::complex<double>;

constexpr double kMaxLocalGamma = 4.0 / 3.0;  // q^2 / (q^2 - 1) for qubits

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Entry order is fixed (row major, real then imaginary) so a given generator
// state always produces the same matrix.
Eigen::MatrixXcd ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd a(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      double re = gauss(rng);
      double im = gauss(rng);
      a(i, j) = Complex(re * inv_sqrt2, im * inv_sqrt2);
    }
  }
  return a;
}

// In-place rho -> (U (x) I) rho (U (x) I)^dagger with the 4x4 gate acting on
// the adjacent qubit pair (a, a+1).
void apply_two_qubit(Eigen::MatrixXcd& rho, const Eigen::Matrix4cd& u, int a, int n) {
  const int d = static_cast<int>(rho.rows());
  const int mask_hi = 1 << (n - 1 - a);
  const int mask_lo = 1 << (n - 2 - a);
  const int pair_mask = mask_hi | mask_lo;

  std::array<int, 4> idx{};
  Complex v[4];
  for (int rest = 0; rest < d; ++rest) {
    if (rest & pair_mask) continue;
    idx = {rest, rest | mask_lo, rest | mask_hi, rest | pair_mask};
    for (int c = 0; c < d; ++c) {
      for (int g = 0; g < 4; ++g) v[g] = rho(idx[static_cast<size_t>(g)], c);
      for (int g = 0; g < 4; ++g) {
        rho(idx[static_cast<size_t>(g)], c) =
            u(g, 0) * v[0] + u(g, 1) * v[1] + u(g, 2) * v[2] + u(g, 3) * v[3];
      }
    }
    for (int r = 0; r < d; ++r) {
      for (int g = 0; g < 4; ++g) v[g] = rho(r, idx[static_cast<size_t>(g)]);
      for (int g = 0; g < 4; ++g) {
        rho(r, idx[static_cast<size_t>(g)]) = std::conj(u(g, 0)) * v[0] +
                                              std::conj(u(g, 1)) * v[1] +
                                              std::conj(u(g, 2)) * v[2] + std::conj(u(g, 3)) * v[3];
      }
    }
  }
}

}  // namespace

int DensityState::qubits() const {
  const int d = dim();
  int n = 0;
  while ((1 << n) < d) ++n;
  if ((1 << n) != d) throw DimensionMismatch("state dimension is not a power of two");
  return n;
}

DensityState DensityState::basis_state(int dim, int index) {
  if (dim < 1) throw DomainError("state dimension must be positive");
  if (index < 0 || index >= dim) throw DomainError("basis index out of range");
  DensityState st;
  st.rho = Eigen::MatrixXcd::Zero(dim, dim);
  st.rho(index, index) = 1.0;
  return st;
}

DensityState DensityState::maximally_mixed(int dim) {
  if (dim < 1) throw DomainError("state dimension must be positive");
  DensityState st;
  st.rho = Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim);
  return st;
}

double DensityState::trace_error() const { return std::abs(rho.trace() - Complex(1.0)); }

double DensityState::hermiticity_error() const {
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double DensityState::purity() const { return (rho * rho).trace().real(); }

double DensityState::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver((rho + rho.adjoint()) / 2.0);
  return solver.eigenvalues().minCoeff();
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = splitmix(seed);
  h = splitmix(h ^ a);
  h = splitmix(h ^ b);
  h = splitmix(h ^ c);
  return h;
}

Eigen::MatrixXcd haar_unitary(int dim, Rng& rng) {
  if (dim < 1) throw DomainError("unitary dimension must be positive");
  Eigen::MatrixXcd a = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    Complex diag = r(j, j);
    double mag = std::abs(diag);
    q.col(j) *= mag > 0.0 ? diag / mag : Complex(1.0);
  }
  return q;
}

DensityState haar_mixed_state(int dim, int s, Rng& rng) {
  if (dim < 1) throw DomainError("state dimension must be positive");
  if (s < 1) throw DomainError("environment dimension must be >= 1");
  Eigen::MatrixXcd phi = ginibre(dim, s, rng);
  phi /= phi.norm();
  DensityState st;
  st.rho = phi * phi.adjoint();
  return st;
}

void local_depolarize(DensityState& state, double gamma) {
  if (!(gamma >= 0.0 && gamma <= kMaxLocalGamma)) {
    throw DomainError("local depolarization strength must lie in [0, 4/3]");
  }
  if (gamma == 0.0) return;
  const int n = state.qubits();
  const int d = state.dim();
  Eigen::MatrixXcd next(d, d);
  for (int q = 0; q < n; ++q) {
    const int mask = 1 << (n - 1 - q);
    for (int x = 0; x < d; ++x) {
      for (int y = 0; y < d; ++y) {
        Complex val = (1.0 - gamma) * state.rho(x, y);
        if ((x & mask) == (y & mask)) {
          val += 0.5 * gamma *
                 (state.rho(x & ~mask, y & ~mask) + state.rho(x | mask, y | mask));
        }
        next(x, y) = val;
      }
    }
    state.rho.swap(next);
  }
}

DensityState global_depolarize(const DensityState& state, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw DomainError("global depolarization strength must lie in [0, 1]");
  }
  DensityState out;
  const int d = state.dim();
  out.rho = (1.0 - gamma) * state.rho +
            gamma * Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d);
  return out;
}

DensityState run_brickwork(const CircuitConfig& cfg, const DensityState& initial,
                           RunDiagnostics* diag) {
  if (cfg.n < 1) throw DomainError("circuit needs at least one qubit");
  if (cfg.layers < 0) throw DomainError("circuit depth must be nonnegative");
  if (!(cfg.gamma >= 0.0 && cfg.gamma <= kMaxLocalGamma)) {
    throw DomainError("local depolarization strength must lie in [0, 4/3]");
  }
  if (initial.dim() != (1 << cfg.n)) {
    throw DimensionMismatch("initial state dimension does not match qubit count");
  }
  const bool track = cfg.gamma > 1.0;
  if (diag) {
    diag->non_cp_gamma = track;
    diag->min_eigenvalue = 0.0;
  }

  DensityState state = initial;
  for (int layer = 0; layer < cfg.layers; ++layer) {
    int gate = 0;
    for (int a = layer % 2; a + 1 < cfg.n; a += 2, ++gate) {
      Rng rng(derive_seed(cfg.seed, cfg.sample_index, static_cast<std::uint64_t>(layer),
                          static_cast<std::uint64_t>(gate)));
      Eigen::Matrix4cd u = haar_unitary(4, rng);
      apply_two_qubit(state.rho, u, a, cfg.n);
    }
    local_depolarize(state, cfg.gamma);
    if (diag && track) {
      diag->min_eigenvalue = std::min(diag->min_eigenvalue, state.min_eigenvalue());
    }
  }
  return state;
}

DensityState run_brickwork(const CircuitConfig& cfg, RunDiagnostics* diag) {
  return run_brickwork(cfg, DensityState::basis_state(1 << cfg.n, 0), diag);
}

std::vector<DensityState> sample_states(const CircuitConfig& cfg, int m, int threads) {
  if (m < 0) throw DomainError("sample count must be nonnegative");
  std::vector<DensityState> out(static_cast<size_t>(m));
  parallel_for(static_cast<size_t>(m), threads, [&](size_t j) {
    CircuitConfig local = cfg;
    local.sample_index = j;
    out[j] = run_brickwork(local);
  });
  return out;
}

}  // namespace haardist
