//! @file angular.hpp
//! @brief The delta = 0 extreme: angular momentum M (unscaled integer
//!        spectrum) and angle Theta (fixed 2*pi interval), angle wrapping,
//!        the exponential-of-angle unitary, and the <theta|m> overlap.

#ifndef QKIN_ANGULAR_HPP
#define QKIN_ANGULAR_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "qkin/hilbert.hpp"
#include "qkin/kinematics.hpp"

namespace qkin {

//! Units for the angular pair; hbar_eff = m0*theta0. The reference angle is
//! fixed at zero.
struct AngularConfig {
  std::size_t dim = 0;
  double m0 = 1.0;
  double theta0 = 1.0;

  double hbar_eff() const { return m0 * theta0; }

  void validate() const {
    require_odd_dimension(dim);
    require(std::isfinite(m0) && m0 > 0.0, "m0 must be positive and finite");
    require(std::isfinite(theta0) && theta0 > 0.0, "theta0 must be positive and finite");
  }
};

//! {M, Theta}: M is v-diagonal with spectrum j*m0 (spacing independent of N),
//! Theta is u-diagonal with spectrum j'*(2*pi/N)*theta0, confined to the
//! fixed interval [-pi*theta0, pi*theta0) for every N.
struct AngularPair {
  AngularConfig config;
  GridSpacing spacing;  // dp = m0 (the M spacing), dq = the Theta spacing
  LinearOperator m;
  LinearOperator theta;
  std::vector<GridLabel> m_grid;
  std::vector<GridLabel> theta_grid;
};

//! Same grid builder as the Cartesian pair, evaluated at delta = 0 with
//! (p0, q0) -> (m0, theta0), so the two constructions agree entrywise.
inline AngularPair build_angular_pair(const AngularConfig& config) {
  config.validate();
  const CanonicalPair base = build_canonical_pair(KinematicsConfig{config.dim, 0.0, config.m0, config.theta0});
  return AngularPair{config, base.spacing, base.p, base.q, base.p_grid, base.q_grid};
}

//! Representative of theta in [-pi*theta0, pi*theta0), congruent mod
//! 2*pi*theta0.
inline double theta_wrap(double theta, double theta0) {
  require(std::isfinite(theta), "theta must be finite");
  require(std::isfinite(theta0) && theta0 > 0.0, "theta0 must be positive and finite");
  const double half = std::numbers::pi * theta0;
  const double period = 2.0 * half;
  double w = std::fmod(theta, period);
  if (w < -half) w += period;
  if (w >= half) w -= period;
  return w;
}

//! Shift of the theta label by an integer number of grid units, wrapping
//! across the interval boundary: |theta index j'> -> |theta index j'+steps>.
inline StateVector angle_shift(const AngularPair& pair, const StateVector& psi, std::int64_t steps) {
  require(pair.config.dim == psi.dim(), "dimension mismatch between pair and state");
  return apply(v_power(pair.config.dim, -steps), psi);
}

//! The unitary exp(i Theta / theta0): u-diagonal phases built from the
//! physical theta labels (an evaluation route independent of the integer
//! root-of-unity path, against which tests compare it).
inline LinearOperator exp_theta_operator(const AngularPair& pair) {
  const std::size_t n = pair.config.dim;
  std::vector<complexd> values(n);
  for (const auto& label : pair.theta_grid) {
    const double arg = label.value / pair.config.theta0;
    values[slot_of_index(label.index, n)] = complexd{std::cos(arg), std::sin(arg)};
  }
  return LinearOperator::u_diagonal(std::move(values));
}

//! <theta_{j_theta}|m_{j_m}> = (1/sqrt(N)) exp(+2*pi*i*j_theta*j_m/N).
inline complexd theta_m_overlap(const AngularPair& pair, std::int64_t j_theta, std::int64_t j_m) {
  const std::size_t n = pair.config.dim;
  const auto h = static_cast<std::int64_t>((n - 1) / 2);
  require(j_theta >= -h && j_theta <= h, "theta index out of range");
  require(j_m >= -h && j_m <= h, "m index out of range");
  const auto sn = static_cast<std::int64_t>(n);
  return root_of_unity(mul_mod(j_theta, j_m, sn), n) / std::sqrt(static_cast<double>(n));
}

}  // namespace qkin

#endif  // QKIN_ANGULAR_HPP
