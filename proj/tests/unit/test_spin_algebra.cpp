#include "doctest.h"
#include "generators.hpp"

#include "geophase/spin_algebra.hpp"

using namespace geophase;

TEST_CASE("spin values") {
    CHECK(Spin::from_value(1.5).dimension() == 4);
    CHECK(Spin::from_value(0.5).twice() == 1);
    CHECK(Spin::three_halves().m_at(0) == doctest::Approx(1.5));
    CHECK(Spin::three_halves().index_of(-0.5) == 2);
    CHECK_THROWS_AS(Spin::from_value(0.0), InputError);
    CHECK_THROWS_AS(Spin::from_value(1.3), InputError);
    CHECK_THROWS_AS(Spin::from_value(-1.0), InputError);
}

TEST_CASE("commutation relations and Casimir") {
    for (double j : {0.5, 1.0, 1.5, 2.0, 2.5}) {
        const SpinOperators s = spin_operators(j);
        const int n = s.dimension();
        CHECK((s.sx * s.sy - s.sy * s.sx - kI * s.sz).norm() < 1e-12);
        CHECK((s.sy * s.sz - s.sz * s.sy - kI * s.sx).norm() < 1e-12);
        CHECK((s.sz * s.sx - s.sx * s.sz - kI * s.sy).norm() < 1e-12);
        const CMatrix casimir = s.sx * s.sx + s.sy * s.sy + s.sz * s.sz;
        CHECK((casimir - j * (j + 1) * CMatrix::Identity(n, n)).norm() < 1e-12);
        CHECK((s.s_squared - casimir).norm() < 1e-12);
    }
}

TEST_CASE("spin 3/2 ladder elements") {
    const SpinOperators s = spin_operators(1.5);
    const CMatrix up = s.raising();
    CHECK(std::abs(up(0, 1) - std::sqrt(3.0)) < 1e-14);
    CHECK(std::abs(up(1, 2) - 2.0) < 1e-14);
    CHECK(std::abs(up(2, 3) - std::sqrt(3.0)) < 1e-14);
}

TEST_CASE("small d matches matrix exponential oracle") {
    // exp(-0.7 i Sy) for j = 3/2, computed independently at 30 digits.
    const double expected[4][4] = {
        {0.82892229660846594, -0.52408438067773232, 0.19130573264292787, -0.040317549193084288},
        {0.52408438067773232, 0.60802146413063997, -0.56484296733164983, 0.19130573264292787},
        {0.19130573264292787, 0.56484296733164983, 0.60802146413063997, -0.52408438067773232},
        {0.040317549193084288, 0.19130573264292787, 0.52408438067773232, 0.82892229660846594}};
    const Eigen::MatrixXd d = wigner_small_d(Spin::three_halves(), 0.7);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) CHECK(d(a, b) == doctest::Approx(expected[a][b]).epsilon(1e-13));
}

TEST_CASE("property: Wigner rotation is unitary and rotates Sz") {
    gen::Draw draw(11);
    for (int i = 0; i < gen::kCases; ++i) {
        const double j = 0.5 * draw.integer(1, 6);
        const double theta = draw.uniform(0.0, kPi);
        const double phi = draw.uniform(-10.0, 10.0);
        const SpinOperators s = spin_operators(j);
        const WignerRotation w = wigner_rotation(Spin::from_value(j), theta, phi);
        CHECK(unitarity_error(w.matrix) < 1e-12);
        const CMatrix rotated = w.matrix * s.sz * w.matrix.adjoint();
        CHECK((rotated - rotated_sz(s, theta, phi)).norm() < 1e-11);
    }
}

TEST_CASE("property: small d composes along the rotation axis") {
    gen::Draw draw(12);
    for (int i = 0; i < 50; ++i) {
        const double a = draw.uniform(-3.0, 3.0);
        const double b = draw.uniform(-3.0, 3.0);
        const Spin j = Spin::from_value(0.5 * draw.integer(1, 5));
        const Eigen::MatrixXd lhs = wigner_small_d(j, a) * wigner_small_d(j, b);
        CHECK((lhs - wigner_small_d(j, a + b)).norm() < 1e-11);
    }
}
