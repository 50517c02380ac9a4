//! @file hilbert.hpp
//! @brief Complex state-vector/operator kernel on an N-state space: storage
//!        conventions, exact root-of-unity phases, the discrete Fourier
//!        overlap, and structured operator application.

#ifndef QKIN_HILBERT_HPP
#define QKIN_HILBERT_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qkin {

using complexd = std::complex<double>;

inline void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument("qkin: " + what);
}

//! Floor-modulus: result always in [0, n).
inline std::int64_t mod_floor(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

//! Storage slot of the symmetric integer label j in [-(N-1)/2, (N-1)/2].
inline std::size_t slot_of_index(std::int64_t j, std::size_t n) {
  return static_cast<std::size_t>(mod_floor(j, static_cast<std::int64_t>(n)));
}

//! Symmetric integer label of a storage slot (odd N).
inline std::int64_t index_of_slot(std::size_t slot, std::size_t n) {
  const auto sn = static_cast<std::int64_t>(n);
  const auto s = static_cast<std::int64_t>(slot);
  return s <= (sn - 1) / 2 ? s : s - sn;
}

//! a*b mod n without overflow for factors up to ~2^31 after reduction.
inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t n) {
  return mod_floor(mod_floor(a, n) * mod_floor(b, n), n);
}

//! exp(2*pi*i*m/n), the exponent reduced mod n in exact integer arithmetic
//! before the single sin/cos evaluation. All phases in the library funnel
//! through here so that equal reduced exponents give bit-identical values.
inline complexd root_of_unity(std::int64_t m, std::size_t n) {
  require(n >= 1, "invalid dimension (must be >= 1)");
  const std::int64_t r = mod_floor(m, static_cast<std::int64_t>(n));
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

//! Precomputed table of the n-th roots of unity, w[m] = root_of_unity(m, n).
struct PhaseTable {
  std::size_t dim;
  std::vector<complexd> w;

  explicit PhaseTable(std::size_t n) : dim(n), w(n) {
    require(n >= 1, "invalid dimension (must be >= 1)");
    for (std::size_t m = 0; m < n; ++m) w[m] = root_of_unity(static_cast<std::int64_t>(m), n);
  }

  //! Phase exp(2*pi*i*m/n) for any integer exponent m (reduced mod n).
  const complexd& at(std::int64_t m) const { return w[static_cast<std::size_t>(mod_floor(m, static_cast<std::int64_t>(dim)))]; }
};

// --- compensated (Neumaier) accumulation, used by all inner-product style sums

struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

struct ComplexSum {
  CompensatedSum re, im;
  void add(complexd z) { re.add(z.real()); im.add(z.imag()); }
  complexd value() const { return {re.value(), im.value()}; }
};

inline bool is_finite(complexd z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

//! A ket on the N-state space, amplitudes in the |u> (computational) basis.
struct StateVector {
  std::vector<complexd> amps;

  StateVector() = default;
  explicit StateVector(std::vector<complexd> a) : amps(std::move(a)) {
    require(!amps.empty(), "state must have dimension >= 1");
    for (const auto& z : amps) require(is_finite(z), "state amplitude must be finite");
  }

  std::size_t dim() const { return amps.size(); }

  double norm_squared() const {
    CompensatedSum s;
    for (const auto& z : amps) s.add(std::norm(z));
    return s.value();
  }
  double norm() const { return std::sqrt(norm_squared()); }

  //! Explicitly normalized copy; throws on (numerically) null states.
  StateVector normalized() const {
    const double n = norm();
    require(n > 0.0 && std::isfinite(n), "cannot normalize a null state");
    StateVector out = *this;
    for (auto& z : out.amps) z /= n;
    return out;
  }

  static StateVector basis(std::size_t n, std::size_t slot) {
    require(n >= 1, "invalid dimension (must be >= 1)");
    require(slot < n, "basis slot out of range");
    std::vector<complexd> a(n, complexd{0.0, 0.0});
    a[slot] = complexd{1.0, 0.0};
    return StateVector(std::move(a));
  }

  //! Basis state addressed by symmetric integer label.
  static StateVector basis_index(std::size_t n, std::int64_t j) { return basis(n, slot_of_index(j, n)); }
};

//! <a|b> with compensated accumulation.
inline complexd inner(const StateVector& a, const StateVector& b) {
  require(a.dim() == b.dim(), "dimension mismatch in inner product");
  ComplexSum s;
  for (std::size_t i = 0; i < a.dim(); ++i) s.add(std::conj(a.amps[i]) * b.amps[i]);
  return s.value();
}

// --- operator representations ---------------------------------------------

struct DenseMatrix {
  std::size_t dim = 0;
  std::vector<complexd> a;  // row-major, a[r*dim + c]

  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t n) : dim(n), a(n * n, complexd{0.0, 0.0}) {}

  complexd& at(std::size_t r, std::size_t c) { return a[r * dim + c]; }
  const complexd& at(std::size_t r, std::size_t c) const { return a[r * dim + c]; }
};

//! Diagonal in the computational (u) basis.
struct UDiagonal {
  std::vector<complexd> values;  // by storage slot
};

//! Diagonal in the Fourier-conjugate (v) basis; dense form is F^dag diag F.
struct VDiagonal {
  std::vector<complexd> values;  // by v-basis slot
};

//! e_n -> phases[n] * e_{(n-step) mod N}; step stored reduced into [0, N).
struct PhasedCyclicShift {
  std::int64_t step = 0;
  std::vector<complexd> phases;
};

//! An N x N operator stored dense or in one of the structured forms.
//! Structured forms agree with their dense expansion entrywise.
class LinearOperator {
 public:
  using Repr = std::variant<DenseMatrix, UDiagonal, VDiagonal, PhasedCyclicShift>;

  static LinearOperator dense(DenseMatrix m) {
    require(m.dim >= 1 && m.a.size() == m.dim * m.dim, "malformed dense matrix");
    for (const auto& z : m.a) require(is_finite(z), "operator entry must be finite");
    return LinearOperator(m.dim, Repr(std::move(m)));
  }
  static LinearOperator u_diagonal(std::vector<complexd> values) {
    require(!values.empty(), "invalid dimension (must be >= 1)");
    for (const auto& z : values) require(is_finite(z), "operator entry must be finite");
    const std::size_t n = values.size();
    return LinearOperator(n, Repr(UDiagonal{std::move(values)}));
  }
  static LinearOperator v_diagonal(std::vector<complexd> values) {
    require(!values.empty(), "invalid dimension (must be >= 1)");
    for (const auto& z : values) require(is_finite(z), "operator entry must be finite");
    const std::size_t n = values.size();
    return LinearOperator(n, Repr(VDiagonal{std::move(values)}));
  }
  static LinearOperator phased_cyclic_shift(std::int64_t step, std::vector<complexd> phases) {
    require(!phases.empty(), "invalid dimension (must be >= 1)");
    for (const auto& z : phases) require(is_finite(z), "operator entry must be finite");
    const std::size_t n = phases.size();
    return LinearOperator(n, Repr(PhasedCyclicShift{mod_floor(step, static_cast<std::int64_t>(n)), std::move(phases)}));
  }
  static LinearOperator identity(std::size_t n) {
    require(n >= 1, "invalid dimension (must be >= 1)");
    return u_diagonal(std::vector<complexd>(n, complexd{1.0, 0.0}));
  }

  std::size_t dim() const { return dim_; }
  const Repr& repr() const { return repr_; }

  //! Dense expansion of whatever representation is stored.
  DenseMatrix to_dense() const {
    DenseMatrix out(dim_);
    const auto n = dim_;
    if (const auto* d = std::get_if<DenseMatrix>(&repr_)) {
      out = *d;
    } else if (const auto* u = std::get_if<UDiagonal>(&repr_)) {
      for (std::size_t k = 0; k < n; ++k) out.at(k, k) = u->values[k];
    } else if (const auto* v = std::get_if<VDiagonal>(&repr_)) {
      // F^dag diag(d) F is a cyclic (circulant) matrix: entry (r,c) depends
      // only on (r-c) mod N, so expand through N kernel values.
      PhaseTable tab(n);
      std::vector<complexd> kernel(n);
      for (std::size_t r = 0; r < n; ++r) {
        ComplexSum s;
        for (std::size_t k = 0; k < n; ++k)
          s.add(v->values[k] * tab.at(static_cast<std::int64_t>(k) * static_cast<std::int64_t>(r)));
        kernel[r] = s.value() / static_cast<double>(n);
      }
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          out.at(r, c) = kernel[static_cast<std::size_t>(mod_floor(static_cast<std::int64_t>(r) - static_cast<std::int64_t>(c),
                                                                   static_cast<std::int64_t>(n)))];
    } else {
      const auto& sh = std::get<PhasedCyclicShift>(repr_);
      for (std::size_t c = 0; c < n; ++c) {
        const auto r = static_cast<std::size_t>(mod_floor(static_cast<std::int64_t>(c) - sh.step, static_cast<std::int64_t>(n)));
        out.at(r, c) = sh.phases[c];
      }
    }
    return out;
  }

  //! Exact (bitwise) identity test at the representation level.
  bool is_identity() const {
    const complexd one{1.0, 0.0};
    if (const auto* u = std::get_if<UDiagonal>(&repr_)) {
      for (const auto& z : u->values)
        if (z != one) return false;
      return true;
    }
    if (const auto* v = std::get_if<VDiagonal>(&repr_)) {
      for (const auto& z : v->values)
        if (z != one) return false;
      return true;
    }
    if (const auto* sh = std::get_if<PhasedCyclicShift>(&repr_)) {
      if (mod_floor(sh->step, static_cast<std::int64_t>(dim_)) != 0) return false;
      for (const auto& z : sh->phases)
        if (z != one) return false;
      return true;
    }
    const auto& d = std::get<DenseMatrix>(repr_);
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c)
        if (d.at(r, c) != (r == c ? one : complexd{0.0, 0.0})) return false;
    return true;
  }

  //! Structural equality: same representation kind, bitwise-equal entries.
  friend bool operator==(const LinearOperator& a, const LinearOperator& b) {
    if (a.dim_ != b.dim_ || a.repr_.index() != b.repr_.index()) return false;
    if (const auto* u = std::get_if<UDiagonal>(&a.repr_)) return u->values == std::get<UDiagonal>(b.repr_).values;
    if (const auto* v = std::get_if<VDiagonal>(&a.repr_)) return v->values == std::get<VDiagonal>(b.repr_).values;
    if (const auto* s = std::get_if<PhasedCyclicShift>(&a.repr_)) {
      const auto& t = std::get<PhasedCyclicShift>(b.repr_);
      return s->step == t.step && s->phases == t.phases;
    }
    return std::get<DenseMatrix>(a.repr_).a == std::get<DenseMatrix>(b.repr_).a;
  }

 private:
  LinearOperator(std::size_t n, Repr r) : dim_(n), repr_(std::move(r)) {}
  std::size_t dim_;
  Repr repr_;
};

// --- discrete Fourier overlap ----------------------------------------------

//! <v_k|u_n> = (1/sqrt(N)) exp(-2*pi*i*k*n/N), the product k*n reduced mod N
//! in integers before phase evaluation.
inline complexd dft_overlap(std::int64_t k, std::int64_t n_idx, std::size_t n) {
  require(n >= 1, "invalid dimension (must be >= 1)");
  const auto sn = static_cast<std::int64_t>(n);
  const std::int64_t m = mod_floor(-mul_mod(k, n_idx, sn), sn);
  return root_of_unity(m, n) / std::sqrt(static_cast<double>(n));
}

//! Dense unitary with entry (k,n) = dft_overlap(k,n,N); row k is |v_k>
//! expressed in the u-basis, conjugated per the overlap convention.
inline LinearOperator dft_matrix(std::size_t n) {
  require(n >= 1, "invalid dimension (must be >= 1)");
  PhaseTable tab(n);
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(n));
  DenseMatrix f(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t m = 0;  // (k*c) mod n, updated incrementally
    for (std::size_t c = 0; c < n; ++c) {
      f.at(k, c) = std::conj(tab.w[m]) * inv_sqrt;
      m += k;
      if (m >= n) m -= n;
    }
  }
  return LinearOperator::dense(std::move(f));
}

//! Coordinates of psi in the v-basis: out_k = <v_k|psi>. O(N^2), O(N) memory.
inline StateVector to_v_basis(const StateVector& psi) {
  const std::size_t n = psi.dim();
  PhaseTable tab(n);
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<complexd> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    ComplexSum s;
    std::size_t m = 0;
    for (std::size_t c = 0; c < n; ++c) {
      s.add(std::conj(tab.w[m]) * psi.amps[c]);
      m += k;
      if (m >= n) m -= n;
    }
    out[k] = s.value() * inv_sqrt;
  }
  return StateVector(std::move(out));
}

//! Inverse of to_v_basis: psi_n = sum_k exp(+2*pi*i*k*n/N)/sqrt(N) coeff_k.
inline StateVector from_v_basis(const StateVector& coeffs) {
  const std::size_t n = coeffs.dim();
  PhaseTable tab(n);
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<complexd> out(n);
  for (std::size_t r = 0; r < n; ++r) {
    ComplexSum s;
    std::size_t m = 0;
    for (std::size_t k = 0; k < n; ++k) {
      s.add(tab.w[m] * coeffs.amps[k]);
      m += r;
      if (m >= n) m -= n;
    }
    out[r] = s.value() * inv_sqrt;
  }
  return StateVector(std::move(out));
}

//! op * psi. Diagonal and shift forms run in O(N); the v-diagonal form is
//! DFT-mediated in O(N^2) time without ever forming a dense matrix.
inline StateVector apply(const LinearOperator& op, const StateVector& psi) {
  require(op.dim() == psi.dim(), "dimension mismatch between operator and state");
  const std::size_t n = op.dim();
  if (const auto* u = std::get_if<UDiagonal>(&op.repr())) {
    std::vector<complexd> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = u->values[i] * psi.amps[i];
    return StateVector(std::move(out));
  }
  if (const auto* sh = std::get_if<PhasedCyclicShift>(&op.repr())) {
    std::vector<complexd> out(n);
    for (std::size_t c = 0; c < n; ++c) {
      const auto r = static_cast<std::size_t>(mod_floor(static_cast<std::int64_t>(c) - sh->step, static_cast<std::int64_t>(n)));
      out[r] = sh->phases[c] * psi.amps[c];
    }
    return StateVector(std::move(out));
  }
  if (const auto* v = std::get_if<VDiagonal>(&op.repr())) {
    StateVector hat = to_v_basis(psi);
    for (std::size_t k = 0; k < n; ++k) hat.amps[k] *= v->values[k];
    return from_v_basis(hat);
  }
  const auto& d = std::get<DenseMatrix>(op.repr());
  std::vector<complexd> out(n);
  for (std::size_t r = 0; r < n; ++r) {
    ComplexSum s;
    for (std::size_t c = 0; c < n; ++c) s.add(d.at(r, c) * psi.amps[c]);
    out[r] = s.value();
  }
  return StateVector(std::move(out));
}

//! <psi|op|psi>. The caller is responsible for normalization.
inline complexd expectation(const LinearOperator& op, const StateVector& psi) {
  require(op.dim() == psi.dim(), "dimension mismatch between operator and state");
  return inner(psi, apply(op, psi));
}

}  // namespace qkin

#endif  // QKIN_HILBERT_HPP
