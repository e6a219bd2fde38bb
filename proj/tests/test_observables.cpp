#include "collspin/continuum.hpp"
#include "collspin/observables.hpp"
#include "collspin/spin_core.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace collspin;

namespace {

Wavefunction coherent_x(int n) {
  Wavefunction wf{n, std::vector<double>(static_cast<std::size_t>(n) + 1)};
  for (int k = 0; k <= n; ++k) wf.amps[static_cast<std::size_t>(k)] = std::sqrt(oracle::binomial(n, k) / std::ldexp(1.0, n));
  return wf;
}

void check_against_dense(const Wavefunction& wf) {
  const SpinMoments s = spin_moments(wf);
  const oracle::Moments d = oracle::dense_moments(wf);
  CHECK(s.sx == doctest::Approx(d.sx).epsilon(1e-9));
  CHECK(std::abs(s.sz - d.sz) <= 1e-9);
  CHECK(s.sz2 == doctest::Approx(d.sz2).epsilon(1e-9));
  CHECK(s.sx2 == doctest::Approx(d.sx2).epsilon(1e-9));
  CHECK(s.sy2 == doctest::Approx(d.sy2).epsilon(1e-9));
}

}  // namespace

TEST_CASE("x-polarized coherent state") {
  for (int n : {1, 6, 40, 300}) {
    const SpinMoments s = spin_moments(coherent_x(n));
    CHECK(s.sx == doctest::Approx(n).epsilon(1e-12));
    CHECK(s.sz2 == doctest::Approx(n).epsilon(1e-12));
    CHECK(s.sy2 == doctest::Approx(n).epsilon(1e-12));
    CHECK(s.sx2 == doctest::Approx(static_cast<double>(n) * n).epsilon(1e-12));
    CHECK(std::abs(s.sz) <= 1e-12 * n);
  }
  // The alpha = 0 ground state is that coherent state.
  const SpinMoments g = spin_moments(ground_state(UniaxialParams{30, 1.0, 0.0, 0.0}).wavefunction);
  CHECK(g.sx == doctest::Approx(30.0).epsilon(1e-10));
  CHECK(g.sy2 == doctest::Approx(30.0).epsilon(1e-10));
}

TEST_CASE("moments match dense 2^N expectation values") {
  check_against_dense(ground_state(UniaxialParams{8, 1.0, 1.0, 0.0}).wavefunction);
  check_against_dense(ground_state(UniaxialParams{8, 1.0, 2.0, 0.1}).wavefunction);
  check_against_dense(dense_oracle_ground({7, 1.0, 0.5, 0.0}).wavefunction);
  std::mt19937 rng(11);
  for (int n : {2, 5, 9}) check_against_dense(oracle::random_wavefunction(n, rng));
}

TEST_CASE("density-matrix moments agree with the pure-state sums") {
  std::mt19937 rng(5);
  const Wavefunction wf = oracle::random_wavefunction(13, rng);
  Eigen::Map<const Eigen::VectorXd> v(wf.amps.data(), static_cast<Eigen::Index>(wf.amps.size()));
  const SpinMoments a = spin_moments(wf);
  const SpinMoments b = spin_moments(13, Eigen::MatrixXd(v * v.transpose()));
  CHECK(a.sx == doctest::Approx(b.sx).epsilon(1e-12));
  CHECK(a.sz2 == doctest::Approx(b.sz2).epsilon(1e-12));
  CHECK(a.sx2 == doctest::Approx(b.sx2).epsilon(1e-12));
  CHECK(a.sy2 == doctest::Approx(b.sy2).epsilon(1e-12));
  CHECK_THROWS_AS(spin_moments(12, Eigen::MatrixXd(v * v.transpose())), std::invalid_argument);
  CHECK_THROWS_AS(spin_moments(13, Eigen::MatrixXd(2.0 * v * v.transpose())), std::invalid_argument);
}

TEST_CASE("moment invariants across the parameter grid") {
  for (int n : {2, 9, 64, 500, 4000}) {
    for (double a : {0.0, 0.3, 0.5, 1.0, 1.3, 2.0}) {
      for (double eps : {0.0, 0.1}) {
        const SpinMoments s = spin_moments(ground_state(UniaxialParams{n, 1.0, a, eps}).wavefunction);
        const double nn = n;
        CHECK(std::abs(s.casimir_defect(n)) <= 1e-9 * nn * nn);
        CHECK(s.sz2 >= 0.0);
        CHECK(s.sz2 <= nn * nn * (1.0 + 1e-12));
        CHECK(std::abs(s.sx) <= nn * (1.0 + 1e-12));
        CHECK(s.sy2 >= 0.0);
        if (eps == 0.0) CHECK(std::abs(s.sz) <= 1e-10 * nn);
      }
    }
  }
  CHECK_THROWS_AS(spin_moments(Wavefunction{3, {1.0, 1.0, 0.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(spin_moments(Wavefunction{3, {1.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("Hellmann-Feynman consistency") {
  // At fixed g: d eps0 / d delta = -<Sx>/2 and d eps0 / d g = -<Sz^2>/N.
  for (int n : {20, 200, 2000}) {
    for (double a : {0.5, 1.0, 2.0}) {
      const double delta = 1.0;
      const double g = a * delta / 4.0;
      const auto energy = [n](double d, double gg) {
        return ground_state(UniaxialParams{n, d, 4.0 * gg / d, 0.0}).energy;
      };
      const SpinMoments s = spin_moments(ground_state(UniaxialParams{n, delta, a, 0.0}).wavefunction);
      const double hd = 1e-4;
      const double de = (energy(delta + hd, g) - energy(delta - hd, g)) / (2.0 * hd);
      CHECK(-2.0 * de == doctest::Approx(s.sx).epsilon(1e-5));
      const double hg = 1e-4 * g;
      const double dg = (energy(delta, g + hg) - energy(delta, g - hg)) / (2.0 * hg);
      CHECK(-dg / n == doctest::Approx(s.sz2 / (static_cast<double>(n) * n)).epsilon(1e-5));
    }
  }
}

TEST_CASE("analytic moments") {
  const SpinMoments low = analytic_moments({1000, 1.0, 0.5, 0.0});
  CHECK(low.sz2 / 1e6 == doctest::Approx(1.41421e-3).epsilon(1e-5));
  const SpinMoments high = analytic_moments({1000, 1.0, 2.0, 0.0});
  CHECK(high.sx / 1000.0 == doctest::Approx(0.50057735).epsilon(1e-8));
  const SpinMoments inf = analytic_moments({100000000, 1.0, 2.0, 0.0});
  CHECK(inf.sy2 / 1e8 == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
  const SpinMoments s200 = analytic_moments({200, 1.0, 0.3, 0.0});
  CHECK(s200.sx / 200.0 == doctest::Approx(1.0 + (1.0 + (0.3 - 2.0) / (2.0 * std::sqrt(0.7))) / 200.0).epsilon(1e-14));
  CHECK_THROWS_AS(analytic_moments({100, 1.0, 1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(analytic_moments({100, 1.0, 0.5, 0.1}), std::invalid_argument);

  // Exact moments approach the expansions: the per-N quantities agree to
  // O(1/N^2) for <Sx>/N, and to O(1/N) relative for the fluctuation moments.
  // For alpha < 1 the published <Sx^2> correction 2(1 - 1/k) differs from the
  // Casimir-consistent 2 - k - 1/k by alpha/k, which the exact state shows.
  for (double a : {0.3, 0.5, 2.0}) {
    for (int n : {1000, 4000}) {
      const double nn = n;
      const SpinMoments e = spin_moments(ground_state(UniaxialParams{n, 1.0, a, 0.0}).wavefunction);
      const SpinMoments f = analytic_moments({n, 1.0, a, 0.0});
      CHECK(std::abs(e.sx - f.sx) / nn <= 20.0 / (nn * nn));
      const double shift = a < 1.0 ? a / std::sqrt(1.0 - a) * nn : 0.0;
      CHECK(std::abs(e.sx2 - f.sx2 - shift) / (nn * nn) <= 20.0 / (nn * nn));
      CHECK(std::abs(e.sx2 + e.sy2 + e.sz2 - nn * (nn + 2.0)) <= 1e-9 * nn * nn);
      CHECK(std::abs(e.sz2 - f.sz2) / f.sz2 <= 10.0 / nn);
      if (a < 1.0) CHECK(std::abs(e.sy2 - f.sy2) / f.sy2 <= 10.0 / nn);
    }
  }
}

TEST_CASE("Gaussian state identities") {
  const UniaxialParams p{2000, 1.0, 0.5, 0.0};
  const Wavefunction g = gaussian_wavefunction(p);
  const double k = std::sqrt(0.5);
  for (std::size_t i = 1; i + 1 < g.amps.size(); i += 97) {
    const double lhs = g.amps[i - 1] * g.amps[i + 1];
    const double rhs = std::exp(-2.0 * k / 2000.0) * g.amps[i] * g.amps[i];
    if (rhs > 1e-300) CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
  const SpinMoments s = spin_moments(g);
  const SpinMoments f = analytic_moments(p);
  CHECK(std::abs(s.casimir_defect(2000)) <= 1e-9 * 4e6);
  CHECK(s.sz2 == doctest::Approx(f.sz2).epsilon(5e-3));
  CHECK(s.sy2 == doctest::Approx(f.sy2).epsilon(5e-3));
  CHECK(s.sx / 2000.0 == doctest::Approx(f.sx / 2000.0).epsilon(1e-5));
}

TEST_CASE("critical moments") {
  const SpinMoments c = critical_moments(1000, BetaCoefficients{1.06036, 0.36203});
  CHECK(c.sz2 / 1e6 == doctest::Approx(4.0 * 0.36203 * std::pow(2000.0, -2.0 / 3.0)).epsilon(1e-14));
  CHECK(c.sz2 / 1e6 == doctest::Approx(9.12258e-3).epsilon(1e-5));
  const SpinMoments a = critical_moments(500);
  const SpinMoments b = critical_moments(8000);
  CHECK(std::log((b.sz2 / 64e6) / (a.sz2 / 25e4)) / std::log(16.0) == doctest::Approx(-2.0 / 3.0).epsilon(1e-12));
  CHECK(std::log((b.sy2 / 64e6) / (a.sy2 / 25e4)) / std::log(16.0) == doctest::Approx(-4.0 / 3.0).epsilon(1e-12));

  const SpinMoments e = spin_moments(ground_state(UniaxialParams{4096, 1.0, 1.0, 0.0}).wavefunction);
  const SpinMoments f = critical_moments(4096);
  CHECK(std::abs(e.sz2 / f.sz2 - 1.0) <= 0.03);
  CHECK(std::abs(e.sy2 / f.sy2 - 1.0) <= 0.03);
}
