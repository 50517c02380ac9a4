//! @file kinematics.hpp
//! @brief The delta-scaled Hermitian pair {P, Q}: physical grids, exact
//!        shift actions realized as integer powers of U and V, shift
//!        composition, and the commutator-expectation diagnostic.

#ifndef QKIN_KINEMATICS_HPP
#define QKIN_KINEMATICS_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "qkin/hilbert.hpp"
#include "qkin/schwinger.hpp"

namespace qkin {

//! Grid geometry input: odd N, scaling exponent delta in [0,2), positive
//! momentum/position units. hbar_eff = p0*q0 is the one unit product used
//! everywhere.
struct KinematicsConfig {
  std::size_t dim = 0;
  double delta = 1.0;
  double p0 = 1.0;
  double q0 = 1.0;

  double hbar_eff() const { return p0 * q0; }

  void validate() const {
    require_odd_dimension(dim);
    require(std::isfinite(delta) && delta >= 0.0 && delta < 2.0, "delta out of range [0, 2)");
    require(std::isfinite(p0) && p0 > 0.0, "p0 must be positive and finite");
    require(std::isfinite(q0) && q0 > 0.0, "q0 must be positive and finite");
  }
};

//! The scaling factor sqrt(2*pi/N).
inline double epsilon(std::size_t n) {
  require(n >= 1, "invalid dimension (must be >= 1)");
  return std::sqrt(2.0 * std::numbers::pi / static_cast<double>(n));
}

struct GridSpacing {
  double dp = 0.0;
  double dq = 0.0;
};

//! Eigenvalue spacings dp = eps^delta * p0 and dq = eps^(2-delta) * q0.
//! dq is evaluated as (2*pi*p0*q0/N)/dp -- algebraically identical, and it
//! keeps the floating product dp*dq within 1 ulp of 2*pi*p0*q0/N for any
//! delta, which the independent power route does not.
inline GridSpacing grid_spacings(std::size_t n, double delta, double p0, double q0) {
  require(n >= 1, "invalid dimension (must be >= 1)");
  require(std::isfinite(delta) && delta >= 0.0 && delta < 2.0, "delta out of range [0, 2)");
  const double dp = std::pow(epsilon(n), delta) * p0;
  const double dq = (2.0 * std::numbers::pi * p0 * q0 / static_cast<double>(n)) / dp;
  return {dp, dq};
}

//! A physical eigenvalue paired with its symmetric integer index.
struct GridLabel {
  std::int64_t index = 0;
  double value = 0.0;
};

//! {P, Q} at fixed (N, delta): Q diagonal in the u-basis with spectrum
//! j'*dq, P diagonal in the v-basis with spectrum j*dp. Grids are stored in
//! ascending index order.
struct CanonicalPair {
  KinematicsConfig config;
  GridSpacing spacing;
  LinearOperator p;
  LinearOperator q;
  std::vector<GridLabel> p_grid;
  std::vector<GridLabel> q_grid;
};

inline CanonicalPair build_canonical_pair(const KinematicsConfig& config) {
  config.validate();
  const std::size_t n = config.dim;
  const GridSpacing spacing = grid_spacings(n, config.delta, config.p0, config.q0);
  const auto h = static_cast<std::int64_t>((n - 1) / 2);

  std::vector<complexd> pvals(n), qvals(n);
  std::vector<GridLabel> p_grid, q_grid;
  p_grid.reserve(n);
  q_grid.reserve(n);
  for (std::int64_t j = -h; j <= h; ++j) {
    const double p = static_cast<double>(j) * spacing.dp;
    const double q = static_cast<double>(j) * spacing.dq;
    pvals[slot_of_index(j, n)] = complexd{p, 0.0};
    qvals[slot_of_index(j, n)] = complexd{q, 0.0};
    p_grid.push_back({j, p});
    q_grid.push_back({j, q});
  }
  return CanonicalPair{config, spacing, LinearOperator::v_diagonal(std::move(pvals)),
                       LinearOperator::u_diagonal(std::move(qvals)), std::move(p_grid), std::move(q_grid)};
}

//! exp(i q' P / (p0 q0)) with q' = q_steps * dq, realized as the exact
//! permutation V^q_steps: |q index j'> -> |q index j' - q_steps> (cyclic).
inline StateVector shift_in_q(const CanonicalPair& pair, const StateVector& psi, std::int64_t q_steps) {
  require(pair.config.dim == psi.dim(), "dimension mismatch between pair and state");
  return apply(v_power(pair.config.dim, q_steps), psi);
}

//! exp(i p' Q / (p0 q0)) with p' = p_steps * dp, realized as U^p_steps:
//! |p index j> -> |p index j + p_steps> (cyclic).
inline StateVector shift_in_p(const CanonicalPair& pair, const StateVector& psi, std::int64_t p_steps) {
  require(pair.config.dim == psi.dim(), "dimension mismatch between pair and state");
  return apply(u_power(pair.config.dim, p_steps), psi);
}

namespace detail {
//! Nearest integer step count for a physical displacement; displacements
//! that are not integer multiples of the spacing are rejected, never
//! interpolated.
inline std::int64_t steps_for_displacement(double displacement, double spacing) {
  require(std::isfinite(displacement), "displacement must be finite");
  const double ratio = displacement / spacing;
  const double rounded = std::nearbyint(ratio);
  require(std::abs(ratio - rounded) <= 1e-9 * std::max(1.0, std::abs(ratio)),
          "displacement is not an integer multiple of the grid spacing");
  return static_cast<std::int64_t>(rounded);
}
}  // namespace detail

//! Displacement overloads of the shift actions, on-grid only.
inline StateVector shift_in_q_by(const CanonicalPair& pair, const StateVector& psi, double q_prime) {
  return shift_in_q(pair, psi, detail::steps_for_displacement(q_prime, pair.spacing.dq));
}
inline StateVector shift_in_p_by(const CanonicalPair& pair, const StateVector& psi, double p_prime) {
  return shift_in_p(pair, psi, detail::steps_for_displacement(p_prime, pair.spacing.dp));
}

enum class ShiftDirection { p, q };

//! Product of the individual shifts, composed exactly at the index level:
//! the steps are summed mod N in integers and a single shift is built.
inline LinearOperator compose_shifts(const CanonicalPair& pair, std::span<const std::int64_t> steps, ShiftDirection direction) {
  const std::size_t n = pair.config.dim;
  const auto sn = static_cast<std::int64_t>(n);
  std::int64_t total = 0;
  for (const std::int64_t s : steps) total = mod_floor(total + mod_floor(s, sn), sn);
  return direction == ShiftDirection::q ? v_power(n, total) : u_power(n, total);
}

namespace detail {

using complexl = std::complex<long double>;

//! Long-double n-th roots of unity (exact integer exponent reduction).
inline std::vector<complexl> phase_table_l(std::size_t n) {
  std::vector<complexl> w(n);
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  for (std::size_t m = 0; m < n; ++m) {
    const long double angle = two_pi * static_cast<long double>(m) / static_cast<long double>(n);
    w[m] = complexl{std::cos(angle), std::sin(angle)};
  }
  return w;
}

//! P * psi in extended precision: forward DFT, multiply by the v-spectrum,
//! inverse DFT. O(N^2) time, O(N) memory.
inline std::vector<complexl> apply_p_l(const std::vector<complexl>& psi, const std::vector<complexl>& w, double dp) {
  const std::size_t n = psi.size();
  const long double inv_n = 1.0L / static_cast<long double>(n);
  std::vector<complexl> hat(n);
  for (std::size_t k = 0; k < n; ++k) {
    complexl s{0.0L, 0.0L};
    std::size_t m = 0;
    for (std::size_t c = 0; c < n; ++c) {
      s += std::conj(w[m]) * psi[c];
      m += k;
      if (m >= n) m -= n;
    }
    hat[k] = s * (static_cast<long double>(index_of_slot(k, n)) * static_cast<long double>(dp));
  }
  std::vector<complexl> out(n);
  for (std::size_t r = 0; r < n; ++r) {
    complexl s{0.0L, 0.0L};
    std::size_t m = 0;
    for (std::size_t k = 0; k < n; ++k) {
      s += w[m] * hat[k];
      m += r;
      if (m >= n) m -= n;
    }
    out[r] = s * inv_n;  // the two 1/sqrt(N) factors combined
  }
  return out;
}

}  // namespace detail

//! <psi|[Q,P]|psi>, computed as <psi|Q P psi> - <psi|P Q psi> with P applied
//! through DFT conjugation. The interior runs in extended precision so the
//! reported gap from i*p0*q0 is measurement, not accumulation noise, down to
//! ~1e-18; no dense matrix is ever formed.
inline complexd commutator_expectation(const CanonicalPair& pair, const StateVector& psi) {
  require(pair.config.dim == psi.dim(), "dimension mismatch between pair and state");
  const std::size_t n = pair.config.dim;
  const auto w = detail::phase_table_l(n);

  std::vector<detail::complexl> psil(n), qpsil(n);
  std::vector<long double> qval(n);
  for (std::size_t i = 0; i < n; ++i) {
    psil[i] = detail::complexl{psi.amps[i].real(), psi.amps[i].imag()};
    qval[i] = static_cast<long double>(index_of_slot(i, n)) * static_cast<long double>(pair.spacing.dq);
    qpsil[i] = psil[i] * qval[i];
  }

  const auto p_psi = detail::apply_p_l(psil, w, pair.spacing.dp);    // P psi
  const auto p_qpsi = detail::apply_p_l(qpsil, w, pair.spacing.dp);  // P Q psi

  detail::complexl acc{0.0L, 0.0L};
  for (std::size_t i = 0; i < n; ++i)
    acc += std::conj(psil[i]) * (qval[i] * p_psi[i] - p_qpsi[i]);  // Q P psi - P Q psi
  return complexd{static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

//! The pair at a different delta (same N, p0, q0). Rebuilt from the config,
//! so rescaling out and back reproduces the original entries bitwise.
inline CanonicalPair rescale_delta(const CanonicalPair& pair, double delta_new) {
  require(std::isfinite(delta_new) && delta_new > 0.0 && delta_new < 2.0, "delta out of range (0, 2)");
  KinematicsConfig config = pair.config;
  config.delta = delta_new;
  return build_canonical_pair(config);
}

}  // namespace qkin

#endif  // QKIN_KINEMATICS_HPP
