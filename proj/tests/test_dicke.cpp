#include "collspin/dicke.hpp"

#include "doctest.h"

#include <array>
#include <cmath>
#include <numbers>

using namespace collspin;

namespace {

Wavefunction uniaxial_ground(int n, double alpha) { return ground_state(UniaxialParams{n, 1.0, alpha, 0.0}).wavefunction; }

// Plain O(N^2) purity sum with no band cutoff.
double tangle_reference(const Wavefunction& wf, double alpha, double d) {
  const int n = wf.n_spins;
  double purity = 0.0;
  for (std::size_t i = 0; i < wf.amps.size(); ++i) {
    for (std::size_t j = 0; j < wf.amps.size(); ++j) {
      const double dm = ladder_m(n, i) - ladder_m(n, j);
      purity += std::exp(-alpha * d * dm * dm / (4.0 * n)) * wf.amps[i] * wf.amps[i] * wf.amps[j] * wf.amps[j];
    }
  }
  return 1.0 - purity;
}

}  // namespace

TEST_CASE("parameter mapping") {
  const DickeParams p = DickeParams::from_alpha(50, 2.0, 0.1, 0.8);
  CHECK(p.d_ratio() == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(p.alpha() == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(p.coupling() == doctest::Approx(0.8 * 2.0 / 4.0).epsilon(1e-15));
  CHECK(p.in_adiabatic_regime());
  CHECK_FALSE(DickeParams::from_alpha(50, 1.0, 0.6, 0.8).in_adiabatic_regime());
  const UniaxialParams u = p.uniaxial();
  CHECK(u.coupling() == doctest::Approx(p.coupling()).epsilon(1e-15));

  CHECK_THROWS_AS((DickeParams{10, 1.0, 0.0, 0.1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((DickeParams{10, 1.0, 1.0, -0.1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((DickeParams{0, 1.0, 1.0, 0.1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS(DickeParams::from_alpha(10, 1.0, 0.0, 0.5), std::invalid_argument);
}

TEST_CASE("overlap kernels") {
  CHECK(overlap_kernel(100, 1.0, 0.1, 2) == doctest::Approx(std::exp(-0.0005)).epsilon(1e-15));
  CHECK(overlap_kernel(100, 1.0, 0.1, 4) == doctest::Approx(std::exp(-0.002)).epsilon(1e-15));
  CHECK(overlap_kernel(100, 1.0, 0.1, 0) == 1.0);
  for (int dm : {2, 10, 200}) {
    const double k = overlap_kernel(100, 2.0, 0.5, dm);
    CHECK(k > 0.0);
    CHECK(k <= 1.0);
  }
}

TEST_CASE("kernel-modified moments") {
  const Wavefunction wf = uniaxial_ground(100, 1.0);
  const SpinMoments plain = spin_moments(wf);
  const SpinMoments dressed = dicke_moments(wf, 100, 1.0, 0.1);
  CHECK(dressed.sx == doctest::Approx(plain.sx * std::exp(-0.0005)).epsilon(1e-14));
  CHECK(dressed.sz2 == plain.sz2);
  CHECK(dressed.sz == plain.sz);
  CHECK((dressed.sx2 - dressed.sy2) == doctest::Approx((plain.sx2 - plain.sy2) * std::exp(-0.002)).epsilon(1e-12));
  CHECK(std::abs(dressed.casimir_defect(100)) <= 1e-9 * 1e4);

  const SpinMoments zero = dicke_moments(wf, 100, 1.0, 0.0);
  CHECK(zero.sx == plain.sx);
  CHECK(zero.sy2 == doctest::Approx(plain.sy2).epsilon(1e-14));

  CHECK_THROWS_AS(dicke_moments(wf, 99, 1.0, 0.1), std::invalid_argument);
}

TEST_CASE("D -> 0 reduces every operation to the uniaxial one") {
  const double d = 1e-8;
  for (double a : {0.5, 1.0, 2.0}) {
    const Wavefunction wf = uniaxial_ground(200, a);
    const SpinMoments u = spin_moments(wf);
    const SpinMoments s = dicke_moments(wf, 200, a, d);
    CHECK(s.sx == doctest::Approx(u.sx).epsilon(1e-6));
    CHECK(s.sx2 == doctest::Approx(u.sx2).epsilon(1e-6));
    CHECK(s.sy2 == doctest::Approx(u.sy2).epsilon(1e-6));
    CHECK(dicke_rescaled_concurrence(wf, a, d).rescaled == doctest::Approx(rescaled_concurrence(wf).rescaled).epsilon(1e-6));
    // The tangle vanishes linearly in D.
    const double t1 = qubit_field_tangle(wf, a, d);
    CHECK(std::abs(t1) <= 1e-5);
    CHECK(qubit_field_tangle(wf, a, 2.0 * d) / t1 == doctest::Approx(2.0).epsilon(1e-3));
  }
  CHECK(dicke_critical_energy(500, 1.0, 0.0) == doctest::Approx(critical_energy(500, 1.0)).epsilon(1e-15));
  CHECK(dicke_concurrence_critical(500, 0.0) == doctest::Approx(concurrence_critical(500)).epsilon(1e-15));
  CHECK(dicke_concurrence_thermodynamic(0.6, 0.0) == doctest::Approx(concurrence_thermodynamic(0.6)).epsilon(1e-15));
}

TEST_CASE("critical energy with the field") {
  CHECK(dicke_critical_energy(1000, 1.0, 0.1, 1.06036) == doctest::Approx(-0.50043292).epsilon(1e-8));
  // The (2N)^{-4/3} coefficient matches the field-free formula at D = 0.
  for (int n : {10, 1000, 100000}) {
    CHECK(dicke_critical_energy(n, 1.0, 0.0, 1.06036) == doctest::Approx(critical_energy(n, 1.0, 1.06036)).epsilon(1e-15));
  }

  // Against the exact qubit-oscillator ground state at N = 2: the formula is an
  // asymptotic large-N form, so the error is dominated by finite N, but it
  // still shrinks as the field becomes faster.
  double prev = 1e300;
  for (double d : {0.1, 0.05, 0.025}) {
    const DickeOracleResult r = exact_dicke_oracle(DickeParams::from_alpha(2, 1.0, d, 1.0));
    const double err = std::abs(2.0 * dicke_critical_energy(2, 1.0, d) - r.energy) / std::abs(r.energy);
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("thermodynamic concurrence with the field") {
  CHECK(dicke_concurrence_thermodynamic(1.0, 0.1) == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(dicke_concurrence_thermodynamic(0.0, 0.1) == 0.0);
  CHECK(dicke_concurrence_thermodynamic(2.0, 0.1) == doctest::Approx(1.0 - 0.05 - std::sqrt(0.75)));
  CHECK(dicke_alpha_limit(0.1) == doctest::Approx(5.05));
  CHECK_THROWS_AS(dicke_concurrence_thermodynamic(5.05, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(dicke_concurrence_thermodynamic(6.0, 0.1), std::invalid_argument);
  // Clamp: 1 - 0.1 - sqrt(0.9) < 0
  CHECK(dicke_concurrence_thermodynamic(0.1, 1.0) == 0.0);
  CHECK(dicke_concurrence_critical(8, 0.5) == 0.0);
  CHECK(dicke_concurrence_critical(100000, 0.1) ==
        doctest::Approx(0.9 - 4.0 * default_quartic_constants().beta0 / (3.0 * std::cbrt(200000.0))));
}

TEST_CASE("finite-N concurrence approaches the field-shifted limit") {
  for (double a : {0.3, 0.6, 0.9}) {
    const double limit = dicke_concurrence_thermodynamic(a, 0.1);
    double prev_gap = 1e300;
    for (int n : {6, 10, 20, 100, 1000}) {
      const double c = dicke_rescaled_concurrence(uniaxial_ground(n, a), a, 0.1).rescaled;
      const double gap = std::abs(c - limit);
      CHECK(gap < prev_gap);
      prev_gap = gap;
    }
  }
}

TEST_CASE("qubit-field tangle sum") {
  CHECK(std::abs(qubit_field_tangle(uniaxial_ground(40, 0.0), 0.0, 0.1)) <= 1e-15);
  for (double a : {0.5, 1.0, 2.0}) {
    const Wavefunction wf = uniaxial_ground(300, a);
    const double t = qubit_field_tangle(wf, a, 0.3);
    CHECK(t == doctest::Approx(tangle_reference(wf, a, 0.3)).epsilon(1e-12));
    CHECK(t >= 0.0);
    CHECK(t <= 1.0);
    CHECK(qubit_field_tangle(wf, a, 0.3, TangleNormalization::block) ==
          doctest::Approx(t / (1.0 - std::ldexp(1.0, -300))).epsilon(1e-15));
  }
  const Wavefunction small = uniaxial_ground(6, 1.0);
  CHECK(qubit_field_tangle(small, 1.0, 0.1, TangleNormalization::block) ==
        doctest::Approx(qubit_field_tangle(small, 1.0, 0.1) * 64.0 / 63.0).epsilon(1e-14));

  const DickeParams p = DickeParams::from_alpha(300, 1.0, 0.3, 1.0);
  CHECK(qubit_field_tangle(uniaxial_ground(300, 1.0), p) == qubit_field_tangle(uniaxial_ground(300, 1.0), 1.0, 0.3));
  CHECK_THROWS_AS(qubit_field_tangle(uniaxial_ground(299, 1.0), p), std::invalid_argument);
}

TEST_CASE("thermodynamic tangle") {
  CHECK(tangle_thermodynamic(0.0, 0.1) == 0.0);
  CHECK(tangle_thermodynamic(1.0, 0.1) == 1.0);
  CHECK(tangle_thermodynamic(2.0, 0.1) == doctest::Approx(0.51384).epsilon(1e-5));
  CHECK(tangle_thermodynamic(0.5, 0.1) == doctest::Approx(1.0 - 1.0 / std::sqrt(1.0 + 0.05 / std::sqrt(0.5))).epsilon(1e-14));
  CHECK(tangle_thermodynamic(0.5, 0.1) == doctest::Approx(0.0335844).epsilon(1e-6));
  CHECK(tangle_thermodynamic(1.0 - 1e-14, 0.1) > 0.99);
  CHECK(tangle_thermodynamic(1.0 + 1e-14, 0.1) > 0.99);
}

TEST_CASE("tangle ordering in N toward the thermodynamic curve") {
  const std::array<int, 4> sizes{6, 10, 20, 100};
  for (int i = 1; i <= 39; ++i) {
    const double a = 0.05 * i;
    if (std::abs(a - 1.0) < 1e-9) continue;
    std::array<double, 4> t{};
    for (std::size_t j = 0; j < sizes.size(); ++j) t[j] = qubit_field_tangle(uniaxial_ground(sizes[j], a), a, 0.1);
    const double lim = tangle_thermodynamic(a, 0.1);
    for (std::size_t j = 1; j < t.size(); ++j) CHECK(t[j] > t[j - 1]);
    CHECK(std::abs(t[3] - lim) < std::abs(t[2] - lim));
    // Above the transition the N = 100 curve crosses the limit by a hair.
    CHECK(t[3] < lim + 1e-3);
  }
}

TEST_CASE("tangle grows with coupling below the critical point") {
  for (int n : {6, 20, 100}) {
    double prev = -1.0;
    for (int i = 0; i <= 20; ++i) {
      const double a = 0.05 * i;
      const double t = qubit_field_tangle(uniaxial_ground(n, a), a, 0.1);
      CHECK(t >= prev);
      prev = t;
    }
  }
}

TEST_CASE("critical tangle law") {
  const double k = default_quartic_constants().k;
  const TangleScaling far = tangle_critical_scaling(4000000, 1.0);
  CHECK(far.value == doctest::Approx(1.0 - k * std::sqrt(std::numbers::pi) * 0.1).epsilon(1e-12));
  CHECK(tangle_critical_scaling(4000000, 1.0, 0.46).value == doctest::Approx(1.0 - 0.46 * std::sqrt(std::numbers::pi) * 0.1));
  CHECK_FALSE(far.below_validity);
  CHECK(tangle_critical_scaling(100, 0.1).below_validity);
  CHECK_FALSE(tangle_critical_scaling(4001, 0.1).below_validity);
  CHECK_THROWS_AS(tangle_critical_scaling(100, 0.0), std::invalid_argument);

  // Exact tangle at alpha = 1, D = 1 rises with N and closes on the law.
  double prev_t = 0.0;
  double prev_gap = 1e300;
  for (int n : {100, 1000, 4000, 10000, 30000, 100000}) {
    const double t = qubit_field_tangle(uniaxial_ground(n, 1.0), 1.0, 1.0);
    const double gap = std::abs(t - tangle_critical_scaling(n, 1.0).value);
    CHECK(t > prev_t);
    CHECK(gap < prev_gap);
    prev_t = t;
    prev_gap = gap;
  }
  CHECK(prev_gap < 5e-3);
}

TEST_CASE("exact qubit-oscillator oracle") {
  const DickeOracleResult free = exact_dicke_oracle(DickeParams{3, 1.0, 2.0, 0.0});
  CHECK(free.energy == doctest::Approx(-1.5).epsilon(1e-10));
  CHECK(free.moments.sx == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(std::abs(free.tangle) <= 1e-10);
  CHECK(std::abs(exact_dicke_oracle(DickeParams::from_alpha(2, 1.0, 0.3, 0.0)).tangle) <= 1e-10);

  double prev_e = 1e300, prev_sx = 1e300, prev_sy2 = 1e300, prev_tau = 1e300;
  for (double d : {0.1, 0.05, 0.025}) {
    const DickeParams p = DickeParams::from_alpha(2, 1.0, d, 0.5);
    const DickeOracleResult r = exact_dicke_oracle(p);
    CHECK(r.cutoff_shift < 1e-10);
    CHECK(std::abs(r.moments.casimir_defect(2)) <= 1e-9);
    const Wavefunction wf = ground_state(p.uniaxial()).wavefunction;
    const double e_err = std::abs(ground_state(p.uniaxial()).energy - r.energy) / std::abs(r.energy);
    const SpinMoments m = dicke_moments(wf, p);
    const double sx_err = std::abs(m.sx - r.moments.sx) / 2.0;
    const double sy2_err = std::abs(m.sy2 - r.moments.sy2) / 2.0;
    const double tau_err = std::abs(qubit_field_tangle(wf, p) - r.tangle);
    CHECK(e_err < prev_e);
    CHECK(sx_err < prev_sx);
    CHECK(sy2_err < prev_sy2);
    CHECK(tau_err < prev_tau);
    CHECK(sx_err <= d);
    CHECK(sy2_err <= d);
    prev_e = e_err;
    prev_sx = sx_err;
    prev_sy2 = sy2_err;
    prev_tau = tau_err;
  }

  // A supplied cutoff that is far too small cannot pass the doubling check.
  CHECK_THROWS_AS(exact_dicke_oracle(DickeParams::from_alpha(4, 1.0, 0.5, 3.0), 2), CutoffNotConvergedError);
  CHECK_THROWS_AS(exact_dicke_oracle(DickeParams::from_alpha(5000, 1.0, 0.1, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(exact_dicke_oracle(DickeParams::from_alpha(4, 1.0, 0.1, 1.0), 0), std::invalid_argument);
}
