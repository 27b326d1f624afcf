#include "doctest.h"
#include "generators.hpp"

#include "geophase/dressed.hpp"
#include "geophase/sensitivity.hpp"

using namespace geophase;

TEST_CASE("analytic formulas") {
    const SensitivityReport a = analytic_sensitivity(Limit::Abelian, 100.0, 1.0, kPi / 2);
    CHECK(a.dgamma_domega == doctest::Approx(1.0 / 100.0));
    CHECK(a.dgamma_db == doctest::Approx(1.0 / 10000.0));
    CHECK(a.valid);

    const SensitivityReport na = analytic_sensitivity(Limit::NonAbelian, 0.01, 1.0, kPi / 2);
    CHECK(na.dgamma_domega == doctest::Approx(0.0));
    CHECK(na.dgamma_db == doctest::Approx(0.0));

    const SensitivityReport e = analytic_sensitivity(Limit::Abelian, 200.0, 10.0, 1.0);
    CHECK(e.dgamma_domega == doctest::Approx(0.003540367091367856).epsilon(1e-13));
    CHECK(e.valid);
    CHECK_FALSE(analytic_sensitivity(Limit::Abelian, 50.0, 10.0, 1.0).valid);
    CHECK_FALSE(analytic_sensitivity(Limit::NonAbelian, 2.0, 10.0, 1.0).valid);
    CHECK_THROWS_AS(analytic_sensitivity(Limit::Abelian, 0.0, 1.0, 1.0), InputError);
    CHECK_THROWS_AS(exact_sensitivity(1.0, 0.0, 1.0), InputError);
}

TEST_CASE("exact sensitivity at b = 0 and at the degenerate cone") {
    const double omega = 4.0;
    const SensitivityReport e = exact_sensitivity(0.0, omega, 1.0);
    const double root = std::sqrt(4.0 - 3.0 * std::cos(1.0) * std::cos(1.0));
    CHECK(e.dgamma_db == doctest::Approx((-std::cos(1.0) / root - 1.0) / (2.0 * omega)));
    CHECK(std::abs(e.shift_free_db()) ==
          doctest::Approx(analytic_sensitivity(Limit::NonAbelian, 0.0, omega, 1.0).dgamma_db));
    CHECK(e.dgamma_domega == 0.0);

    CHECK(std::abs(exact_sensitivity(0.5, 1.0, 0.0).dgamma_db) == doctest::Approx(1.0));
    CHECK(std::abs(exact_sensitivity(3.0, 1.0, 0.0).dgamma_db) == doctest::Approx(0.0));
}

TEST_CASE("limit consistency") {
    for (double theta : {0.5, 1.0}) {
        for (double omega : {0.5, 3.0}) {
            const double big = 1e3 * omega;
            const SensitivityReport ea = exact_sensitivity(big, omega, theta);
            const SensitivityReport aa = analytic_sensitivity(Limit::Abelian, big, omega, theta);
            CHECK(std::abs(ea.dgamma_domega) == doctest::Approx(aa.dgamma_domega).epsilon(0.005));
            CHECK(std::abs(ea.dgamma_db) == doctest::Approx(aa.dgamma_db).epsilon(0.005));
            CHECK(ea.dgamma_db < 0.0);
            CHECK(ea.dgamma_domega > 0.0);

            const double small = 1e-3 * omega;
            const SensitivityReport en = exact_sensitivity(small, omega, theta);
            const SensitivityReport an = analytic_sensitivity(Limit::NonAbelian, small, omega, theta);
            CHECK(std::abs(en.shift_free_db()) == doctest::Approx(an.dgamma_db).epsilon(0.01));
            CHECK(std::abs(en.shift_free_domega()) == doctest::Approx(an.dgamma_domega).epsilon(0.01));
        }
    }
}

TEST_CASE("property: exact partials match finite differences") {
    gen::Draw draw(71);
    for (int i = 0; i < gen::kCases; ++i) {
        const double omega = draw.omega();
        const double b = omega * draw.uniform(0.01, 30.0);
        const double theta = draw.theta();
        const SensitivityReport e = exact_sensitivity(b, omega, theta);
        const double hb = 1e-6 * b;
        const double hw = 1e-6 * omega;
        const double fdb = (gauge_exact((b + hb) / omega, theta) - gauge_exact((b - hb) / omega, theta)) / (2 * hb);
        const double fdw = (gauge_exact(b / (omega + hw), theta) - gauge_exact(b / (omega - hw), theta)) / (2 * hw);
        CHECK(e.dgamma_db == doctest::Approx(fdb).epsilon(1e-5));
        CHECK(e.dgamma_domega == doctest::Approx(fdw).epsilon(1e-5));
        // Scale relation: b dgamma/db + omega dgamma/domega = 0.
        CHECK(b * e.dgamma_db + omega * e.dgamma_domega == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("property: role interchange of the limit formulas") {
    gen::Draw draw(72);
    for (int i = 0; i < 50; ++i) {
        const double theta = draw.theta();
        const double s2 = std::sin(theta) * std::sin(theta);
        const double c = std::abs(std::cos(theta));
        const double root = std::sqrt(4.0 - 3.0 * c * c);
        const double b = draw.log_uniform(10.0, 1e3);
        const double omega = 1.0;
        const auto a = analytic_sensitivity(Limit::Abelian, b, omega, theta);
        CHECK(a.dgamma_domega / s2 == doctest::Approx(1.0 / b));
        CHECK(analytic_sensitivity(Limit::Abelian, 2 * b, omega, theta).dgamma_db < a.dgamma_db);
        const auto n = analytic_sensitivity(Limit::NonAbelian, 0.01, omega, theta);
        CHECK(n.dgamma_db == doctest::Approx(c / root / (2.0 * omega)));
        CHECK(analytic_sensitivity(Limit::NonAbelian, 0.01, 2 * omega, theta).dgamma_db < n.dgamma_db + 1e-300);
    }
}

TEST_CASE("Monte Carlo: zero noise, input checks and linearization") {
    const NoiseSample zero = monte_carlo_phase_noise(5.0, 1.0, 1.0, 0.0, 0.0, 10000);
    CHECK(zero.measured_std == 0.0);
    CHECK(zero.linearized_std == 0.0);

    CHECK_THROWS_AS(monte_carlo_phase_noise(5.0, 1.0, 1.0, 0.5, 0.0, 10000), InputError);
    CHECK_THROWS_AS(monte_carlo_phase_noise(5.0, 1.0, 1.0, 0.0, 0.1, 10000), InputError);
    CHECK_THROWS_AS(monte_carlo_phase_noise(5.0, 1.0, 1.0, 0.01, 0.0, 100), InputError);
    CHECK_THROWS_AS(monte_carlo_phase_noise(0.0, 1.0, 1.0, 0.01, 0.0, 10000), InputError);

    const NoiseSample mc = monte_carlo_phase_noise(100.0, 1.0, 1.0, 1.0, 0.0, 100000);
    CHECK(mc.measured_std == doctest::Approx(mc.linearized_std).epsilon(0.05));
    const NoiseSample both = monte_carlo_phase_noise(3.0, 2.0, 0.8, 0.03, 0.02, 100000);
    CHECK(both.measured_std == doctest::Approx(both.linearized_std).epsilon(0.05));
}

TEST_CASE("Monte Carlo is deterministic and thread-count independent") {
    NoiseOptions one;
    one.threads = 1;
    one.seed = 99;
    NoiseOptions many = one;
    many.threads = 7;
    const NoiseSample a = monte_carlo_phase_noise(10.0, 1.0, 1.0, 0.1, 0.01, 50000, one);
    const NoiseSample b = monte_carlo_phase_noise(10.0, 1.0, 1.0, 0.1, 0.01, 50000, many);
    CHECK(a.measured_std == b.measured_std);
    CHECK(a.mean == b.mean);
    many.seed = 100;
    CHECK(monte_carlo_phase_noise(10.0, 1.0, 1.0, 0.1, 0.01, 50000, many).mean != a.mean);
}

TEST_CASE("property: Monte Carlo estimator spread falls as 1/sqrt(n)") {
    auto spread = [](long n) {
        std::vector<double> v;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            NoiseOptions o;
            o.seed = seed;
            v.push_back(monte_carlo_phase_noise(10.0, 1.0, 1.0, 0.1, 0.0, n, o).measured_std);
        }
        double mean = 0.0;
        for (double x : v) mean += x / v.size();
        double var = 0.0;
        for (double x : v) var += (x - mean) * (x - mean) / (v.size() - 1);
        return std::sqrt(var);
    };
    const double ratio = spread(10000) / spread(40000);
    // Expect 2; with 20 seeds the spread estimate itself carries ~16% noise per run.
    CHECK(ratio > 1.3);
    CHECK(ratio < 3.0);
}
