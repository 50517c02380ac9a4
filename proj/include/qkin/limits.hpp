//! @file limits.hpp
//! @brief Convergence diagnostics for the N -> infinity claims: the
//!        commutator-gap sweep, measure-normalized kernel comparisons,
//!        spacing scaling reports, and the test-state factory.

#ifndef QKIN_LIMITS_HPP
#define QKIN_LIMITS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "qkin/angular.hpp"
#include "qkin/hilbert.hpp"
#include "qkin/kinematics.hpp"
#include "qkin/schwinger.hpp"

namespace qkin {

enum class TestStateKind { gaussian, basis, plane_wave, uniform };

struct TestStateSpec {
  TestStateKind kind = TestStateKind::gaussian;
  std::int64_t center_index = 0;  // gaussian center, in grid units
  double sigma = 1.0;             // gaussian width, in q0 units
  std::int64_t label_index = 0;   // basis / plane-wave label

  static TestStateSpec gaussian(double sigma = 1.0, std::int64_t center_index = 0) {
    return {TestStateKind::gaussian, center_index, sigma, 0};
  }
  static TestStateSpec basis(std::int64_t label) { return {TestStateKind::basis, 0, 1.0, label}; }
  static TestStateSpec plane_wave(std::int64_t label) { return {TestStateKind::plane_wave, 0, 1.0, label}; }
  static TestStateSpec uniform() { return {TestStateKind::uniform, 0, 1.0, 0}; }
};

//! Builds the requested state on the q-grid of `config`, normalized.
inline StateVector make_state(const TestStateSpec& spec, const KinematicsConfig& config) {
  config.validate();
  const std::size_t n = config.dim;
  const auto h = static_cast<std::int64_t>((n - 1) / 2);
  switch (spec.kind) {
    case TestStateKind::uniform: {
      const double a = 1.0 / std::sqrt(static_cast<double>(n));
      return StateVector(std::vector<complexd>(n, complexd{a, 0.0}));
    }
    case TestStateKind::basis:
      require(spec.label_index >= -h && spec.label_index <= h, "basis index out of range");
      return StateVector::basis_index(n, spec.label_index);
    case TestStateKind::plane_wave:
      require(spec.label_index >= -h && spec.label_index <= h, "plane-wave index out of range");
      return v_eigenvector(n, spec.label_index);
    case TestStateKind::gaussian: {
      require(std::isfinite(spec.sigma) && spec.sigma > 0.0, "sigma must be positive");
      require(spec.center_index >= -h && spec.center_index <= h, "center index out of range");
      const double dq = grid_spacings(n, config.delta, config.p0, config.q0).dq;
      const double sigma_phys = spec.sigma * config.q0;
      const double q_center = static_cast<double>(spec.center_index) * dq;
      std::vector<complexd> amps(n);
      for (std::int64_t j = -h; j <= h; ++j) {
        const double d = static_cast<double>(j) * dq - q_center;
        amps[slot_of_index(j, n)] = complexd{std::exp(-d * d / (4.0 * sigma_phys * sigma_phys)), 0.0};
      }
      return StateVector(std::move(amps)).normalized();
    }
  }
  throw std::invalid_argument("qkin: unknown test-state kind");
}

//! |psi(boundary)|^2 / |psi(peak)|^2, the probability-level boundary leakage
//! of a state on the symmetric grid. Convergence runs assume this is tiny.
inline double boundary_probability_ratio(const StateVector& psi) {
  const std::size_t n = psi.dim();
  const auto h = static_cast<std::int64_t>((n - 1) / 2);
  double peak = 0.0;
  for (const auto& z : psi.amps) peak = std::max(peak, std::norm(z));
  require(peak > 0.0, "null state");
  const double edge = std::max(std::norm(psi.amps[slot_of_index(h, n)]), std::norm(psi.amps[slot_of_index(-h, n)]));
  return edge / peak;
}

struct ConvergenceRow {
  std::size_t n = 0;
  double delta = 0.0;
  std::string metric;
  double value = 0.0;
  std::optional<double> aux;
};

//! Sweep output; rows sorted by (metric, delta, N), all values finite.
struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;

  void sort() {
    std::stable_sort(rows.begin(), rows.end(), [](const ConvergenceRow& a, const ConvergenceRow& b) {
      return std::tie(a.metric, a.delta, a.n) < std::tie(b.metric, b.delta, b.n);
    });
  }
  bool is_sorted() const {
    return std::is_sorted(rows.begin(), rows.end(), [](const ConvergenceRow& a, const ConvergenceRow& b) {
      return std::tie(a.metric, a.delta, a.n) < std::tie(b.metric, b.delta, b.n);
    });
  }
};

//! metric "commutator_gap" = |<[Q,P]> - i*p0*q0| per (N, delta) for the
//! given test state; aux carries Im<[Q,P]>. Sweep points are independent
//! pure computations; the table is sorted once at the end.
inline ConvergenceTable commutator_sweep(std::span<const std::size_t> ns, std::span<const double> deltas,
                                         const TestStateSpec& spec, double p0, double q0) {
  require(!ns.empty(), "empty N list");
  require(!deltas.empty(), "empty delta list");
  for (const double d : deltas)
    require(std::isfinite(d) && d > 0.0 && d < 2.0, "delta out of range (0, 2) for the commutator sweep");
  ConvergenceTable table;
  for (const double delta : deltas) {
    for (const std::size_t n : ns) {
      const KinematicsConfig config{n, delta, p0, q0};
      const CanonicalPair pair = build_canonical_pair(config);
      const StateVector psi = make_state(spec, config);
      const complexd c = commutator_expectation(pair, psi);
      const double gap = std::abs(c - complexd{0.0, config.hbar_eff()});
      require(std::isfinite(gap), "non-finite sweep value");
      table.rows.push_back({n, delta, "commutator_gap", gap, c.imag()});
    }
  }
  table.sort();
  return table;
}

namespace detail {
//! The dimensionless continuum kernel (1/sqrt(2*pi)) exp(i*phase_angle),
//! evaluated through libm on the raw (unreduced) angle -- an evaluation
//! route independent of the integer-reduced finite overlap.
inline complexd continuum_kernel(double phase_angle) {
  const double a = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  return complexd{a * std::cos(phase_angle), a * std::sin(phase_angle)};
}
}  // namespace detail

//! Pointwise |<theta|m>/sqrt(dtheta/theta0) - continuum kernel| at one
//! (j_theta, j_m). The continuum phase theta*m/(m0*theta0) is evaluated via
//! the exact label identity theta*m/(m0*theta0) = (2*pi/N)*j_theta*j_m.
inline double kernel_point_error(std::size_t n, const AngularConfig& config, std::int64_t j_theta, std::int64_t j_m) {
  config.validate();
  require(n == config.dim, "dimension mismatch between N and config");
  const auto h = static_cast<std::int64_t>((n - 1) / 2);
  require(j_theta >= -h && j_theta <= h, "theta index out of range");
  require(j_m >= -h && j_m <= h, "m index out of range");

  const auto sn = static_cast<std::int64_t>(n);
  const complexd finite = root_of_unity(mul_mod(j_theta, j_m, sn), n) / std::sqrt(static_cast<double>(n));
  const double dtheta = grid_spacings(n, 0.0, config.m0, config.theta0).dq;
  const complexd normalized = finite / std::sqrt(dtheta / config.theta0);
  const double phase = (2.0 * std::numbers::pi / static_cast<double>(n)) * static_cast<double>(j_theta * j_m);
  return std::abs(normalized - detail::continuum_kernel(phase));
}

//! Max of kernel_point_error over the whole theta grid at fixed j_m.
inline double kernel_error(std::size_t n, const AngularConfig& config, std::int64_t j_m) {
  const auto h = static_cast<std::int64_t>((n - 1) / 2);
  double worst = 0.0;
  for (std::int64_t jt = -h; jt <= h; ++jt) worst = std::max(worst, kernel_point_error(n, config, jt, j_m));
  return worst;
}

//! Cartesian analogue: |<q|p>/sqrt(dp*dq/(p0*q0)) - continuum kernel| with
//! phase p*q/(p0*q0) = (2*pi/N)*j_p*j_q. Independent of delta by the label
//! algebra, bitwise: the normalization uses dp*dq/(p0*q0) = 2*pi/N.
inline double cartesian_kernel_point_error(std::size_t n, const KinematicsConfig& config, std::int64_t j_q, std::int64_t j_p) {
  config.validate();
  require(n == config.dim, "dimension mismatch between N and config");
  const auto h = static_cast<std::int64_t>((n - 1) / 2);
  require(j_q >= -h && j_q <= h, "q index out of range");
  require(j_p >= -h && j_p <= h, "p index out of range");

  const auto sn = static_cast<std::int64_t>(n);
  const complexd finite = root_of_unity(mul_mod(j_q, j_p, sn), n) / std::sqrt(static_cast<double>(n));
  const double cell = 2.0 * std::numbers::pi / static_cast<double>(n);
  const complexd normalized = finite / std::sqrt(cell);
  const double phase = cell * static_cast<double>(j_q * j_p);
  return std::abs(normalized - detail::continuum_kernel(phase));
}

//! Max of cartesian_kernel_point_error over the whole q grid at fixed j_p.
inline double cartesian_kernel_error(std::size_t n, const KinematicsConfig& config, std::int64_t j_p) {
  const auto h = static_cast<std::int64_t>((n - 1) / 2);
  double worst = 0.0;
  for (std::int64_t jq = -h; jq <= h; ++jq) worst = std::max(worst, cartesian_kernel_point_error(n, config, jq, j_p));
  return worst;
}

struct SpacingReport {
  double dp = 0.0;
  double dq = 0.0;
  double product = 0.0;  // 2*pi*p0*q0/N, independent of delta
};

inline SpacingReport spacing_report(std::size_t n, double delta, double p0, double q0) {
  require_odd_dimension(n);
  require(std::isfinite(p0) && p0 > 0.0, "p0 must be positive and finite");
  require(std::isfinite(q0) && q0 > 0.0, "q0 must be positive and finite");
  const GridSpacing s = grid_spacings(n, delta, p0, q0);
  return {s.dp, s.dq, 2.0 * std::numbers::pi * p0 * q0 / static_cast<double>(n)};
}

//! Least-squares slope of log(value) against log(N). The fit window is the
//! caller's; sweeps use the four largest N values.
inline double fit_loglog_slope(std::span<const std::size_t> ns, std::span<const double> values) {
  require(ns.size() == values.size(), "mismatched slope-fit inputs");
  require(ns.size() >= 2, "slope fit needs at least two points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const auto m = static_cast<double>(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    require(values[i] > 0.0 && std::isfinite(values[i]), "slope fit needs positive finite values");
    const double x = std::log(static_cast<double>(ns[i]));
    const double y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace qkin

#endif  // QKIN_LIMITS_HPP
