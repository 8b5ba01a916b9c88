#include <doctest.h>

#include <cmath>
#include <random>

#include "halfscan/phi.hpp"
#include "halfscan/geom.hpp"
#include "halfscan/rng.hpp"

using namespace halfscan;

TEST_SUITE("phi") {
  TEST_CASE("worked values") {
    CHECK(phi_disc().eval(0.5, 0.5) == 0.0);
    CHECK(phi_disc().eval(0.9, 0.2) == doctest::Approx(0.7));
    CHECK(phi_balance(0.3).eval(0.3, 0.0) == doctest::Approx(1.0));
    CHECK(phi_balance(0.3).eval(0.0, 0.3) == doctest::Approx(0.4));
    // high-precision reference values
    CHECK(phi_kulldorff().eval(0.5, 0.25) == doctest::Approx(0.14384103622589046).epsilon(1e-12));
    CHECK(phi_kulldorff().eval(0.8, 0.2) == doctest::Approx(0.83177661667193437).epsilon(1e-12));
    CHECK(phi_kulldorff().eval(0.4, 0.4) == doctest::Approx(0.0));
  }

  TEST_CASE("Kulldorff poles are clamped to finite values") {
    const PhiSpec k = phi_kulldorff();
    CHECK(std::isfinite(k.eval(1.0, 0.0)));
    CHECK(std::isfinite(k.eval(0.0, 1.0)));
    CHECK(k.eval(1.0, 0.0) > k.eval(0.9, 0.1));
  }

  TEST_CASE("line cover counts") {
    // n_r = 5, n_b = 2, k = 3: |R| exactly when red minus blue inside is k
    const PhiSpec lc = phi_line_cover(3, 5, 2);
    CHECK(lc.eval(1.0, 1.0) == doctest::Approx(5.0));
    CHECK(lc.eval(0.6, 0.0) == doctest::Approx(5.0));
    CHECK(lc.eval(1.0, 0.0) == doctest::Approx(3.0));
    CHECK(lc.eval(0.2, 0.0) == doctest::Approx(3.0));
    CHECK_FALSE(lc.needs_blue());
  }

  TEST_CASE("NaN is rejected") {
    try {
      phi_disc().eval(std::nan(""), 0.1);
      FAIL("expected InvalidMu");
    } catch (const Error &e) {
      CHECK(e.code() == ErrorCode::InvalidMu);
    }
  }

  TEST_CASE("names") {
    CHECK(phi_by_name("disc").kind == PhiKind::Disc);
    CHECK(phi_by_name("kulldorff").kind == PhiKind::Kulldorff);
    CHECK(phi_by_name("balance:0.25").ctx.f == 0.25);
    CHECK(phi_by_name("balance").kind == PhiKind::Balance);
    CHECK_THROWS_AS(phi_by_name("nope"), Error);
    CHECK_THROWS_AS(phi_by_name("balance:x"), Error);
  }

  TEST_CASE("declared Lipschitz constants hold on 10^4 pairs") {
    Rng rng(13);
    for (const PhiSpec &spec : {phi_disc(), phi_balance(0.3), phi_kulldorff(), phi_line_cover(3, 10, 6)}) {
      std::uniform_real_distribution<double> u(spec.valid_lo, spec.valid_hi);
      std::uniform_real_distribution<double> step(-0.05, 0.05);
      int checked = 0;
      while (checked < 10000) {
        const double r0 = u(rng), b0 = u(rng);
        const double r1 = r0 + step(rng), b1 = b0 + step(rng);
        if (!spec.in_valid_region(r1, b1)) continue;
        const double lhs = std::abs(spec.eval(r0, b0) - spec.eval(r1, b1));
        const double rhs = spec.lipschitz_c * (std::abs(r0 - r1) + std::abs(b0 - b1));
        REQUIRE(lhs <= rhs + 1e-12);
        ++checked;
      }
    }
  }
}
