#include <cmath>

#include "doctest.h"
#include "lax2d/verification.hpp"

using namespace lax2d;

TEST_CASE("residual report normalization") {
  SUBCASE("ordinary relative comparison") {
    const ResidualReport r = ResidualReport::make("x", 1e-13, 1.0, 1e-11);
    CHECK(r.relative == doctest::Approx(1e-13));
    CHECK(r.passed);
  }
  SUBCASE("vanishing scale degrades to the absolute 1e-13 gate") {
    CHECK(ResidualReport::make("x", 5e-14, 0.0, 1e-11).passed);
    CHECK_FALSE(ResidualReport::make("x", 2e-13, 0.0, 1e-11).passed);
  }
}

TEST_CASE("compatibility residual is roundoff-only on band-limited data") {
  const Grid g = Grid::make(64);
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
    const SpectralField omega = random_real_field(g, 4, derive_seed(seed, 0, 10));
    const SpectralField phi = random_complex_field(g, 4, derive_seed(seed, 0, 11));
    const ResidualReport r = compatibility_residual(omega, phi);
    INFO("seed ", seed, " relative ", r.relative);
    CHECK(r.relative <= 1e-11);
    CHECK(r.passed);
  }
}

TEST_CASE("compatibility residual edge cases") {
  const Grid g = Grid::make(64);

  SUBCASE("zero vorticity gives a residual of exactly zero") {
    SpectralField zero(g);
    zero.real_valued = true;
    zero.band = 0;
    const SpectralField phi = random_complex_field(g, 4, 7);
    const ResidualReport r = compatibility_residual(zero, phi);
    CHECK(r.residual_norm == 0.0);
    CHECK(r.passed);
  }

  SUBCASE("bands too wide for the grid are rejected with the required size") {
    const SpectralField omega = random_real_field(g, 12, 1);
    const SpectralField phi = random_complex_field(g, 12, 2);
    CHECK_THROWS_WITH_AS(compatibility_residual(omega, phi), doctest::Contains("need n >="),
                         ConfigError);
  }

  SUBCASE("missing bands are rejected") {
    SpectralField omega = random_real_field(g, 4, 1);
    omega.band.reset();
    const SpectralField phi = random_complex_field(g, 4, 2);
    CHECK_THROWS_AS(compatibility_residual(omega, phi), ConfigError);
  }
}

TEST_CASE("delta perturbation makes the compatibility check fail linearly") {
  const Grid g = Grid::make(64);
  const SpectralField omega = random_real_field(g, 4, 21);
  const SpectralField phi = random_complex_field(g, 4, 22);

  SpectralField probe(g);
  probe.at_mode(1, 0) = 0.5;
  probe.at_mode(-1, 0) = 0.5;
  probe.band = 1;
  probe.real_valued = true;

  const SpectralField d1 = 1e-3 * probe;
  const SpectralField d2 = 2e-3 * probe;
  const double r1 = compatibility_residual(omega, phi, &d1).relative;
  const double r2 = compatibility_residual(omega, phi, &d2).relative;
  CHECK(r1 > 1e-11);  // the check does fail under a defect
  CHECK(r2 / r1 == doctest::Approx(2.0).epsilon(0.05));

  SUBCASE("the packaged control reports within a factor of ten of delta") {
    const ResidualReport control = compatibility_delta_control(omega, phi, 1e-3);
    INFO("log10 offset ", control.residual_norm);
    CHECK(control.passed);
  }
}

TEST_CASE("zakharov residual") {
  const Grid g = Grid::make(64);
  const double sqrt2 = std::sqrt(2.0);

  SUBCASE("non-resonant parameters are roundoff-only") {
    for (std::uint64_t seed : {5ull, 6ull}) {
      const SpectralField omega = random_real_field(g, 4, derive_seed(seed, 0, 20));
      const SpectralField phi = random_complex_field(g, 4, derive_seed(seed, 0, 21));
      const auto params = ZakharovParams::make(1.0, sqrt2, 0.0, 1.0, Complex(1.0, 1.0));
      const ResidualReport r = zakharov_residual(omega, phi, params);
      INFO("seed ", seed, " relative ", r.relative);
      CHECK(r.relative <= 1e-11);
    }
  }

  SUBCASE("lambda = 0 cancels bit-exactly") {
    const SpectralField omega = random_real_field(g, 4, 30);
    const SpectralField phi = random_complex_field(g, 4, 31);
    const auto params = ZakharovParams::make(1.0, sqrt2, 0.0, 1.0, Complex(0.0, 0.0));
    CHECK(zakharov_residual(omega, phi, params).residual_norm == 0.0);
  }

  SUBCASE("collinear single-mode data is stationary") {
    SpectralField shear(g);
    shear.at_mode(0, 1) = 0.5;
    shear.at_mode(0, -1) = 0.5;
    shear.band = 1;
    shear.real_valued = true;
    const SpectralField phi = random_complex_field(g, 4, 32);
    const auto params = ZakharovParams::make(1.0, sqrt2, 0.0, 1.0, Complex(1.0, 1.0));
    CHECK(zakharov_residual(shear, phi, params).relative <= 1e-13);
  }

  SUBCASE("the resonant error policy propagates") {
    SpectralField shear(g);
    shear.at_mode(0, 1) = 0.5;
    shear.at_mode(0, -1) = 0.5;
    shear.band = 1;
    shear.real_valued = true;
    const SpectralField phi = random_complex_field(g, 4, 33);
    const auto params = ZakharovParams::make(1.0, 0.0, 0.0, 1.0, Complex(1.0, 1.0));
    CHECK_THROWS_WITH_AS(zakharov_residual(shear, phi, params), doctest::Contains("resonant"),
                         NumericError);
  }
}

TEST_CASE("bracket identity suite") {
  const Grid g = Grid::make(64);

  SUBCASE("exact evaluation passes every identity") {
    const auto reports = bracket_identity_suite(g, 4, 2024, 3);
    CHECK(reports.size() == 3 * 5);
    for (const ResidualReport& r : reports) {
      INFO(r.name, " relative ", r.relative);
      CHECK(r.passed);
      CHECK(r.relative <= 1e-11);
    }
  }

  SUBCASE("band zero reduces to constants with exactly zero residuals") {
    for (const ResidualReport& r : bracket_identity_suite(g, 0, 1, 1)) {
      CHECK(r.residual_norm == 0.0);
      CHECK(r.passed);
    }
  }

  SUBCASE("replay from the same seed is bit-identical") {
    const auto a = bracket_identity_suite(g, 4, 99, 2);
    const auto b = bracket_identity_suite(g, 4, 99, 2);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].residual_norm == b[i].residual_norm);
      CHECK(a[i].relative == b[i].relative);
      CHECK(a[i].passed == b[i].passed);
    }
  }

  SUBCASE("aliased evaluation at full band breaks Jacobi (negative control)") {
    const auto reports = bracket_identity_suite(g, g.max_mode(), 7, 1, /*aliased=*/true);
    bool jacobi_failed = false;
    for (const ResidualReport& r : reports)
      if (r.name == "jacobi" && !r.passed && r.relative > 1e-9) jacobi_failed = true;
    CHECK(jacobi_failed);
  }
}

TEST_CASE("conservation suite") {
  const Grid g = Grid::make(32);

  SUBCASE("stationary initial data drifts by nothing") {
    ConservationOptions opts;
    opts.ic = "shear";
    opts.dt = 1e-3;
    opts.T = 0.1;
    opts.samples = 4;
    for (const ResidualReport& r : conservation_suite(g, opts)) {
      INFO(r.name, " relative ", r.relative);
      CHECK(r.relative <= 1e-10);
    }
  }

  SUBCASE("order study lands near four on the perturbed shear") {
    ConservationOptions opts;
    opts.ic = "perturbed-shear";
    opts.dt = 2e-3;
    opts.T = 0.5;
    opts.samples = 2;
    opts.order_study = true;
    const auto reports = conservation_suite(g, opts);
    bool seen = false;
    for (const ResidualReport& r : reports)
      if (r.name == "rk4-self-convergence-order") {
        seen = true;
        INFO("order ", r.context.at("order"));
        CHECK(r.passed);
      }
    CHECK(seen);
  }

  SUBCASE("energy drift scales like dt^4") {
    auto drift_at = [&](double dt) {
      ConservationOptions opts;
      opts.ic = "perturbed-shear";
      opts.dt = dt;
      opts.T = 0.5;
      opts.samples = 2;
      for (const ResidualReport& r : conservation_suite(g, opts))
        if (r.name == "energy-drift") return r.relative;
      return -1.0;
    };
    const double d1 = drift_at(2e-3);
    const double d2 = drift_at(1e-3);
    INFO("drift ratio ", d1 / d2);
    CHECK(d1 / d2 > 6.0);
    CHECK(d1 / d2 < 40.0);
  }
}

TEST_CASE("random probe fields") {
  const Grid g = Grid::make(32);
  const SpectralField a = random_complex_field(g, 5, 11);
  const SpectralField b = random_complex_field(g, 5, 11);
  const SpectralField c = random_complex_field(g, 5, 12);
  CHECK(l2_norm(a - b) == 0.0);
  CHECK(l2_norm(a - c) > 1e-3);
  CHECK(l2_norm(a) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a.band == 5);
  CHECK(std::abs(a.at_mode(0, 0)) == 0.0);
}
