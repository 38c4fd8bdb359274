#include "haardist/povm.hpp"

#include <cmath>
#include <complex>
#include <functional>

#include "haardist/parallel.hpp"

namespace haardist {

namespace {

using Complex = std::complex<double>;

SpectrumEntry exact_entry(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return {q.get_d(), 1, q};
}

SpectrumEntry real_entry(double v) { return {v, 1, std::nullopt}; }

Eigen::Matrix2cd ket_bra(const Eigen::Vector2cd& v) { return v * v.adjoint(); }

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::Matrix2cd& b) {
  Eigen::MatrixXcd out(a.rows() * 2, a.cols() * 2);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    }
  }
  return out;
}

// Absorb `local` acting on the most significant qubit of `m`:
// result(y, x) = sum_{a,b} local(a, b) m(b h + y, a h + x).
Eigen::MatrixXcd contract_first_qubit(const Eigen::MatrixXcd& m, const Eigen::Matrix2cd& local) {
  const Eigen::Index h = m.rows() / 2;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(h, h);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      if (local(a, b) == Complex(0.0)) continue;
      out += local(a, b) * m.block(b * h, a * h, h, h);
    }
  }
  return out;
}

}  // namespace

PovmKind povm_kind_from_string(const std::string& name) {
  if (name == "pvm") return PovmKind::pvm;
  if (name == "sic") return PovmKind::sic;
  if (name == "nonsic") return PovmKind::nonsic;
  throw DomainError("unknown measurement set '" + name + "' (expected pvm, sic or nonsic)");
}

std::string to_string(PovmKind kind) {
  switch (kind) {
    case PovmKind::pvm:
      return "pvm";
    case PovmKind::sic:
      return "sic";
    case PovmKind::nonsic:
      return "nonsic";
  }
  return "unknown";
}

MeasurementSet MeasurementSet::build(PovmKind kind, int n) {
  if (n < 1 || n > 16) throw DomainError("measurement sets support 1 to 16 qubits");
  MeasurementSet set;
  set.kind_ = kind;
  set.n_ = n;

  const Eigen::Vector2cd ket0(1.0, 0.0);
  const Eigen::Vector2cd ket1(0.0, 1.0);

  switch (kind) {
    case PovmKind::pvm: {
      set.locals_ = {ket_bra(ket0), ket_bra(ket1)};
      set.local_eigensystems_ = {
          {exact_entry(0, 1), exact_entry(1, 1)},
          {exact_entry(0, 1), exact_entry(1, 1)},
      };
      set.weight_exact_ = 1;
      break;
    }
    case PovmKind::sic: {
      // Tetrahedron of pure states: cos(theta/2) = sqrt(1/3), step 2 pi / 3.
      const double c = std::sqrt(1.0 / 3.0);
      const double s = std::sqrt(2.0 / 3.0);
      set.locals_.push_back(ket_bra(ket0));
      for (int mu = 1; mu <= 3; ++mu) {
        const double phase = 2.0 * M_PI * mu / 3.0;
        Eigen::Vector2cd v(c, std::polar(s, phase));
        set.locals_.push_back(ket_bra(v));
      }
      set.local_eigensystems_.assign(4, {exact_entry(0, 1), exact_entry(1, 1)});
      set.weight_exact_ = Rational(1, Integer(1) << n);
      break;
    }
    case PovmKind::nonsic: {
      const Eigen::Vector2cd plus = (ket0 + ket1) / std::sqrt(2.0);
      const Eigen::Vector2cd plus_i = (ket0 + Complex(0.0, 1.0) * ket1) / std::sqrt(2.0);
      set.locals_ = {ket_bra(ket0), ket_bra(plus), ket_bra(plus_i)};
      // Complement summing the set to 3I: (3I - X - Y - Z) / 2.
      Eigen::Matrix2cd last;
      last << Complex(1.0, 0.0), Complex(-0.5, 0.5), Complex(-0.5, -0.5), Complex(2.0, 0.0);
      set.locals_.push_back(last);
      const double r = std::sqrt(3.0);
      set.local_eigensystems_.assign(3, {exact_entry(0, 1), exact_entry(1, 1)});
      set.local_eigensystems_.push_back({real_entry((3.0 - r) / 2.0), real_entry((3.0 + r) / 2.0)});
      Integer p;
      mpz_ui_pow_ui(p.get_mpz_t(), 3, static_cast<unsigned long>(n));
      set.weight_exact_ = Rational(1, p);
      break;
    }
  }
  set.weight_ = set.weight_exact_.get_d();
  return set;
}

long MeasurementSet::size() const {
  long count = 1;
  for (int i = 0; i < n_; ++i) count *= static_cast<long>(locals_.size());
  return count;
}

Eigen::MatrixXcd MeasurementSet::element(long mu) const {
  if (mu < 0 || mu >= size()) throw DomainError("element index out of range");
  if (n_ > 8) throw DomainError("dense elements are limited to 8 qubits");
  const long base = static_cast<long>(locals_.size());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Constant(1, 1, weight_);
  long divisor = size() / base;
  for (int i = 0; i < n_; ++i) {
    const long digit = (mu / divisor) % base;
    out = kron(out, locals_[static_cast<size_t>(digit)]);
    divisor /= base;
  }
  return out;
}

Spectrum MeasurementSet::element_spectrum(long mu) const {
  if (mu < 0 || mu >= size()) throw DomainError("element index out of range");
  const long base = static_cast<long>(locals_.size());

  std::vector<SpectrumEntry> combos{{1.0, 1, Rational(1)}};
  long divisor = size() / base;
  for (int i = 0; i < n_; ++i) {
    const long digit = (mu / divisor) % base;
    divisor /= base;
    const auto& pair = local_eigensystems_[static_cast<size_t>(digit)];
    std::vector<SpectrumEntry> next;
    next.reserve(combos.size() * 2);
    for (const auto& c : combos) {
      for (const auto& e : pair) {
        SpectrumEntry prod;
        prod.value = c.value * e.value;
        prod.multiplicity = 1;
        if (c.exact && e.exact) prod.exact = *c.exact * *e.exact;
        next.push_back(std::move(prod));
      }
    }
    combos = std::move(next);
  }
  for (auto& c : combos) {
    if (c.exact) {
      c.exact = *c.exact * weight_exact_;
      c.value = c.exact->get_d();
    } else {
      c.value *= weight_;
    }
  }
  return Spectrum::from_entries(std::move(combos));
}

std::vector<double> MeasurementSet::probabilities(const DensityState& state) const {
  if (state.dim() != dim()) {
    throw DimensionMismatch("state dimension does not match the measurement set");
  }
  std::vector<double> out(static_cast<size_t>(size()), 0.0);
  const long base = static_cast<long>(locals_.size());

  // Depth-first over element digits so shared prefixes are contracted once.
  std::function<void(const Eigen::MatrixXcd&, int, long)> walk =
      [&](const Eigen::MatrixXcd& m, int depth, long prefix) {
        if (depth == n_) {
          out[static_cast<size_t>(prefix)] = weight_ * m(0, 0).real();
          return;
        }
        for (long c = 0; c < base; ++c) {
          walk(contract_first_qubit(m, locals_[static_cast<size_t>(c)]), depth + 1,
               prefix * base + c);
        }
      };
  walk(state.rho, 0, 0);
  return out;
}

std::vector<double> total_distribution_samples(const std::vector<DensityState>& states,
                                               const MeasurementSet& set, int threads) {
  const size_t stride = static_cast<size_t>(set.size());
  std::vector<double> out(states.size() * stride);
  parallel_for(states.size(), threads, [&](size_t j) {
    std::vector<double> p = set.probabilities(states[j]);
    std::copy(p.begin(), p.end(), out.begin() + static_cast<std::ptrdiff_t>(j * stride));
  });
  return out;
}

}  // namespace haardist
