//! @file schwinger.hpp
//! @brief The unitary clock/shift pair {U, V} on N states, integer powers by
//!        exact exponent reduction, and the Weyl-relation verifier.

#ifndef QKIN_SCHWINGER_HPP
#define QKIN_SCHWINGER_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "qkin/hilbert.hpp"

namespace qkin {

inline void require_odd_dimension(std::size_t n) {
  require(n >= 1, "unsupported dimension (must be >= 1)");
  require(n % 2 == 1, "unsupported dimension (must be odd)");
}

//! U^s as a u-basis diagonal: eigenvalue exp(2*pi*i*k*s/N) at slot k.
//! The exponent k*s is reduced mod N in integers, so s == 0 (mod N) yields
//! the exact identity representation.
inline LinearOperator u_power(std::size_t n, std::int64_t s) {
  require(n >= 1, "invalid dimension (must be >= 1)");
  PhaseTable tab(n);
  const std::int64_t sr = mod_floor(s, static_cast<std::int64_t>(n));
  std::vector<complexd> values(n);
  std::size_t m = 0;  // (k*sr) mod n
  for (std::size_t k = 0; k < n; ++k) {
    values[k] = tab.w[m];
    m += static_cast<std::size_t>(sr);
    if (m >= n) m -= n;
  }
  return LinearOperator::u_diagonal(std::move(values));
}

//! V^s as the pure cyclic permutation |u_n> -> |u_{n-s}>.
inline LinearOperator v_power(std::size_t n, std::int64_t s) {
  require(n >= 1, "invalid dimension (must be >= 1)");
  return LinearOperator::phased_cyclic_shift(mod_floor(s, static_cast<std::int64_t>(n)),
                                             std::vector<complexd>(n, complexd{1.0, 0.0}));
}

//! The conjugate pair: U diagonal with the N-th roots of unity, V the cyclic
//! down-shift in the u-basis. Both are exactly unitary by construction.
struct SchwingerPair {
  std::size_t dim = 0;
  LinearOperator u;
  LinearOperator v;
};

enum class PairOperator { u, v };

//! Only odd N is supported.
inline SchwingerPair build_pair(std::size_t n) {
  require_odd_dimension(n);
  return SchwingerPair{n, u_power(n, 1), v_power(n, 1)};
}

//! Integer power of U or V, never by repeated multiplication.
inline LinearOperator pair_power(const SchwingerPair& pair, PairOperator which, std::int64_t s) {
  return which == PairOperator::u ? u_power(pair.dim, s) : v_power(pair.dim, s);
}

//! The Weyl commutation phase exp(2*pi*i*j*l/N).
inline complexd weyl_phase(std::int64_t j, std::int64_t l, std::size_t n) {
  require(n >= 1, "invalid dimension (must be >= 1)");
  return root_of_unity(mul_mod(j, l, static_cast<std::int64_t>(n)), n);
}

struct WeylReport {
  double max_residual = 0.0;
  std::size_t samples = 0;
};

//! Checks V^l U^j = weyl_phase(j,l,N) U^j V^l by structured application to
//! every basis vector, and reports the worst residual over the sample.
//!
//! Note the orientation: with U|u_k> = exp(2*pi*i*k/N)|u_k> and
//! V|u_n> = |u_{n-1}>, the phase sits on the V^l U^j side.
inline WeylReport verify_weyl(const SchwingerPair& pair, const std::vector<std::pair<std::int64_t, std::int64_t>>& sample) {
  const std::size_t n = pair.dim;
  WeylReport report;
  report.samples = sample.size();
  for (const auto& [j, l] : sample) {
    const LinearOperator uj = u_power(n, j);
    const LinearOperator vl = v_power(n, l);
    const complexd phase = weyl_phase(j, l, n);
    for (std::size_t b = 0; b < n; ++b) {
      const StateVector e = StateVector::basis(n, b);
      const StateVector lhs = apply(vl, apply(uj, e));
      const StateVector rhs = apply(uj, apply(vl, e));
      for (std::size_t i = 0; i < n; ++i) {
        const double r = std::abs(lhs.amps[i] - phase * rhs.amps[i]);
        if (r > report.max_residual) report.max_residual = r;
      }
    }
  }
  return report;
}

//! |v_k> in the u-basis: amplitudes (1/sqrt(N)) exp(+2*pi*i*k*n/N).
inline StateVector v_eigenvector(std::size_t n, std::int64_t k) {
  require(n >= 1, "invalid dimension (must be >= 1)");
  PhaseTable tab(n);
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(n));
  const std::int64_t kr = mod_floor(k, static_cast<std::int64_t>(n));
  std::vector<complexd> amps(n);
  std::size_t m = 0;
  for (std::size_t i = 0; i < n; ++i) {
    amps[i] = tab.w[m] * inv_sqrt;
    m += static_cast<std::size_t>(kr);
    if (m >= n) m -= n;
  }
  return StateVector(std::move(amps));
}

}  // namespace qkin

#endif  // QKIN_SCHWINGER_HPP
