#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>

#include "oracle.hpp"
#include "qkin/hilbert.hpp"

using qkin::complexd;
using qkin::LinearOperator;
using qkin::StateVector;

namespace {

std::vector<oracle::cd> to_raw(const StateVector& s) { return s.amps; }

}  // namespace

TEST_CASE("index/slot mapping round-trips on the symmetric range") {
  for (std::size_t n : {1ul, 3ul, 9ul, 101ul}) {
    const auto h = static_cast<std::int64_t>((n - 1) / 2);
    for (std::int64_t j = -h; j <= h; ++j) {
      const std::size_t s = qkin::slot_of_index(j, n);
      REQUIRE(s < n);
      REQUIRE(qkin::index_of_slot(s, n) == j);
    }
  }
  // vectors wrap cyclically beyond the principal range
  REQUIRE(qkin::slot_of_index(-1, 3) == 2);
  REQUIRE(qkin::slot_of_index(5, 3) == 2);
}

TEST_CASE("dft_overlap matches the direct evaluation") {
  SECTION("zero phase at k=0, n=0") {
    const complexd z = qkin::dft_overlap(0, 0, 5);
    CHECK(z.real() == Catch::Approx(0.4472135955).margin(1e-9));
    CHECK(z.imag() == 0.0);
  }
  SECTION("k=1, n=1, N=5") {
    const complexd z = qkin::dft_overlap(1, 1, 5);
    CHECK(z.real() == Catch::Approx(0.1381966).margin(1e-7));
    CHECK(z.imag() == Catch::Approx(-0.4253254).margin(1e-7));
  }
  SECTION("mod-N phase reduction is exact, not approximate") {
    // 3*4 = 12 == 2*1 (mod 5)
    REQUIRE(qkin::dft_overlap(3, 4, 5) == qkin::dft_overlap(2, 1, 5));
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 2 * (rng() % 40) + 1;
      const auto k = static_cast<std::int64_t>(rng() % 2000) - 1000;
      const auto m = static_cast<std::int64_t>(rng() % 2000) - 1000;
      const auto sn = static_cast<std::int64_t>(n);
      REQUIRE(qkin::dft_overlap(k, m, n) == qkin::dft_overlap(qkin::mod_floor(k, sn), qkin::mod_floor(m, sn), n));
    }
  }
  SECTION("non-positive N is rejected") { REQUIRE_THROWS_AS(qkin::dft_overlap(0, 0, 0), std::invalid_argument); }
}

TEST_CASE("dft_matrix is the unitary Fourier kernel") {
  SECTION("N=1 is the identity") {
    const auto f = qkin::dft_matrix(1).to_dense();
    REQUIRE(f.at(0, 0) == complexd{1.0, 0.0});
  }
  SECTION("unitarity across dimensions") {
    for (std::size_t n : {1ul, 3ul, 5ul, 9ul, 33ul, 101ul}) {
      const oracle::Mat f = oracle::from_qkin(qkin::dft_matrix(n));
      const double dev = oracle::deviation_from_identity(oracle::matmul(oracle::adjoint(f), f));
      INFO("N = " << n);
      REQUIRE(dev <= 1e-12);
    }
  }
  SECTION("column through e_1 has uniform modulus") {
    const auto psi = qkin::apply(qkin::dft_matrix(5), StateVector::basis(5, 1));
    for (const auto& z : psi.amps) REQUIRE(std::abs(z) == Catch::Approx(1.0 / std::sqrt(5.0)).margin(1e-12));
  }
  SECTION("agrees with the raw-angle oracle construction") {
    for (std::size_t n : {3ul, 8ul, 21ul}) {
      const double dev = oracle::max_abs_diff(oracle::from_qkin(qkin::dft_matrix(n)), oracle::dft(n));
      REQUIRE(dev <= 1e-13);
    }
  }
}

TEST_CASE("apply dispatches every representation correctly") {
  std::mt19937_64 rng(11);

  SECTION("identity leaves any state unchanged") {
    const StateVector psi = oracle::random_state(rng, 9);
    const StateVector out = qkin::apply(LinearOperator::identity(9), psi);
    REQUIRE(out.amps == psi.amps);
  }
  SECTION("unit-phase shift acts as the cyclic permutation") {
    const StateVector out =
        qkin::apply(LinearOperator::phased_cyclic_shift(1, std::vector<complexd>(3, complexd{1.0, 0.0})), StateVector::basis(3, 0));
    REQUIRE(out.amps[2] == complexd{1.0, 0.0});
    REQUIRE(out.amps[0] == complexd{0.0, 0.0});
    REQUIRE(out.amps[1] == complexd{0.0, 0.0});
  }
  SECTION("dense application matches the naive oracle product") {
    const oracle::Mat m = oracle::random_matrix(rng, 7);
    const StateVector psi = oracle::random_state(rng, 7);
    qkin::DenseMatrix d(7);
    d.a.assign(m.a.begin(), m.a.end());
    const StateVector out = qkin::apply(LinearOperator::dense(d), psi);
    REQUIRE(oracle::max_abs_diff(to_raw(out), oracle::matvec(m, to_raw(psi))) <= 1e-12);
  }
  SECTION("dimension mismatch is rejected") {
    REQUIRE_THROWS_AS(qkin::apply(LinearOperator::identity(3), StateVector::basis(5, 0)), std::invalid_argument);
  }
}

TEST_CASE("structured representations equal their dense expansion") {
  std::mt19937_64 rng(23);
  const std::size_t n = 9;
  const StateVector psi = oracle::random_state(rng, n);

  auto unit_phases = [&rng](std::size_t dim) {
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    std::vector<complexd> v(dim);
    for (auto& z : v) z = std::polar(1.0, dist(rng));
    return v;
  };

  const LinearOperator ops[] = {
      LinearOperator::u_diagonal(oracle::random_vector(rng, n)),
      LinearOperator::v_diagonal(oracle::random_vector(rng, n)),
      LinearOperator::phased_cyclic_shift(static_cast<std::int64_t>(rng() % 17) - 8, unit_phases(n)),
  };
  for (const auto& op : ops) {
    const oracle::Mat dense = oracle::from_qkin(op);
    REQUIRE(oracle::max_abs_diff(to_raw(qkin::apply(op, psi)), oracle::matvec(dense, to_raw(psi))) <= 1e-13);
  }

  SECTION("v-diagonal dense form is F^dag diag F") {
    const auto values = oracle::random_vector(rng, n);
    const oracle::Mat f = oracle::dft(n);
    oracle::Mat diag(n);
    for (std::size_t i = 0; i < n; ++i) diag.at(i, i) = values[i];
    const oracle::Mat expected = oracle::matmul(oracle::matmul(oracle::adjoint(f), diag), f);
    REQUIRE(oracle::max_abs_diff(oracle::from_qkin(LinearOperator::v_diagonal(values)), expected) <= 1e-13);
  }
}

TEST_CASE("apply is linear") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 * (rng() % 16) + 3;  // odd, 3..33
    LinearOperator op = [&]() {
      switch (rng() % 3) {
        case 0: return LinearOperator::u_diagonal(oracle::random_vector(rng, n));
        case 1: return LinearOperator::v_diagonal(oracle::random_vector(rng, n));
        default:
          return LinearOperator::phased_cyclic_shift(static_cast<std::int64_t>(rng() % (2 * n)),
                                                     oracle::random_vector(rng, n));
      }
    }();
    const StateVector psi(oracle::random_vector(rng, n));
    const StateVector phi(oracle::random_vector(rng, n));
    const complexd alpha{dist(rng), dist(rng)};
    const complexd beta{dist(rng), dist(rng)};

    std::vector<complexd> combo(n);
    for (std::size_t i = 0; i < n; ++i) combo[i] = alpha * psi.amps[i] + beta * phi.amps[i];
    const StateVector lhs = qkin::apply(op, StateVector(combo));
    const StateVector a = qkin::apply(op, psi);
    const StateVector b = qkin::apply(op, phi);
    for (std::size_t i = 0; i < n; ++i)
      REQUIRE(std::abs(lhs.amps[i] - (alpha * a.amps[i] + beta * b.amps[i])) <= 1e-12);
  }
}

TEST_CASE("expectation values") {
  std::mt19937_64 rng(41);
  SECTION("identity on a normalized state gives 1") {
    const StateVector psi = oracle::random_state(rng, 11);
    const complexd e = qkin::expectation(LinearOperator::identity(11), psi);
    REQUIRE(std::abs(e - complexd{1.0, 0.0}) <= 1e-12);
  }
  SECTION("eigenstate of a u-diagonal sees its eigenvalue") {
    const LinearOperator op = LinearOperator::u_diagonal({complexd{-1, 0}, complexd{0, 0}, complexd{1, 0}});
    REQUIRE(qkin::expectation(op, StateVector::basis(3, 1)) == complexd{0.0, 0.0});
  }
  SECTION("Hermitian operators have real expectations") {
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 2 * (rng() % 8) + 3;
      const oracle::Mat h = oracle::random_hermitian(rng, n);
      qkin::DenseMatrix d(n);
      d.a.assign(h.a.begin(), h.a.end());
      const complexd e = qkin::expectation(LinearOperator::dense(d), oracle::random_state(rng, n));
      REQUIRE(std::abs(e.imag()) <= 1e-13);
    }
  }
  SECTION("dimension mismatch is rejected") {
    REQUIRE_THROWS_AS(qkin::expectation(LinearOperator::identity(3), StateVector::basis(5, 0)), std::invalid_argument);
  }
}

TEST_CASE("state construction guards") {
  REQUIRE_THROWS_AS(StateVector(std::vector<complexd>{}), std::invalid_argument);
  REQUIRE_THROWS_AS(StateVector({complexd{std::numeric_limits<double>::quiet_NaN(), 0.0}}), std::invalid_argument);
  REQUIRE_THROWS_AS(StateVector({complexd{std::numeric_limits<double>::infinity(), 0.0}}), std::invalid_argument);
  REQUIRE_THROWS_AS(StateVector::basis(3, 3), std::invalid_argument);
  REQUIRE_THROWS_AS(StateVector({complexd{0.0, 0.0}}).normalized(), std::invalid_argument);

  std::mt19937_64 rng(53);
  for (std::size_t n : {1ul, 5ul, 33ul}) {
    const StateVector psi = oracle::random_state(rng, n);
    REQUIRE(std::abs(psi.norm_squared() - 1.0) <= 1e-12);
  }
}

TEST_CASE("operator construction guards") {
  REQUIRE_THROWS_AS(LinearOperator::u_diagonal({}), std::invalid_argument);
  REQUIRE_THROWS_AS(LinearOperator::u_diagonal({complexd{std::numeric_limits<double>::quiet_NaN(), 0.0}}),
                    std::invalid_argument);
  qkin::DenseMatrix bad(2);
  bad.a.pop_back();
  REQUIRE_THROWS_AS(LinearOperator::dense(bad), std::invalid_argument);
}
