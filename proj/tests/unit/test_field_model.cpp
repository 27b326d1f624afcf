#include "doctest.h"
#include "generators.hpp"

#include "geophase/field_model.hpp"

using namespace geophase;

TEST_CASE("config validation") {
    FieldConfig ok;
    CHECK_NOTHROW(ok.validate());
    FieldConfig bad = ok;
    bad.omega = 0.0;
    CHECK_THROWS_AS(bad.validate(), InputError);
    bad = ok;
    bad.b = -1.0;
    CHECK_THROWS_AS(bad.validate(), InputError);
    bad = ok;
    bad.theta = 4.0;
    CHECK_THROWS_AS(bad.validate(), InputError);
    bad = ok;
    bad.c = std::nan("");
    CHECK_THROWS_AS(bad.validate(), InputError);
}

TEST_CASE("config json round trip and overrides") {
    const FieldConfig c = field_config_from_json(R"({"c": 500, "b": 2.5, "omega": 3, "theta_rad": 0.25, "sweep": {}})");
    CHECK(c.c == 500.0);
    CHECK(c.b == 2.5);
    CHECK(c.omega == 3.0);
    CHECK(c.theta == 0.25);
    const FieldConfig back = field_config_from_json(to_json(c));
    CHECK(back.c == c.c);
    CHECK(back.theta == c.theta);

    FieldConfig defaults;
    defaults.b = 9.0;
    CHECK(field_config_from_json(R"({"omega": 2})", defaults).b == 9.0);
    CHECK_THROWS_AS(field_config_from_json("{not json"), InputError);
    CHECK_THROWS_AS(field_config_from_json(R"({"omega": "fast"})"), InputError);
    CHECK_THROWS_AS(field_config_from_json(R"({"omega": -1})"), InputError);
    CHECK_THROWS_AS(field_config_from_json("[1, 2]"), InputError);
}

TEST_CASE("level energies and decoupling") {
    FieldConfig c;
    c.c = 10.0;
    c.b = 2.0;
    const LabHamiltonian h(c, Regime::Abelian);
    const auto e = h.level_energies();
    CHECK(e[0] == doctest::Approx(10.0 - 3.0));
    CHECK(e[1] == doctest::Approx(-10.0 - 1.0));
    CHECK(e[2] == doctest::Approx(-10.0 + 1.0));
    CHECK(e[3] == doctest::Approx(10.0 + 3.0));
    CHECK(h.spectral_radius() == doctest::Approx(13.0));

    const LabHamiltonian na(c, Regime::NonAbelian);
    CHECK(na.effective_b() == 0.0);
    CHECK(na.level_energies()[1] == doctest::Approx(na.level_energies()[2]));

    c.omega = 0.2;
    CHECK_FALSE(c.adiabatically_decoupled());
    c.omega = 0.1;
    CHECK(c.adiabatically_decoupled());
}

TEST_CASE("property: Wigner columns diagonalize H(t)") {
    gen::Draw draw(21);
    for (int i = 0; i < gen::kCases; ++i) {
        FieldConfig c;
        c.c = draw.log_uniform(1.0, 1e3);
        c.b = draw.uniform(0.0, 5.0);
        c.omega = draw.omega();
        c.theta = draw.uniform(0.0, kPi);
        const LabHamiltonian h(c, Regime::Abelian);
        const double t = draw.uniform(-5.0, 5.0);
        const CMatrix4 frame = h.wigner_frame(t);
        const CMatrix4 diag = frame.adjoint() * h.at(t) * frame;
        const auto e = h.level_energies();
        for (int k = 0; k < 4; ++k) CHECK(std::abs(diag(k, k) - e[k]) < 1e-9 * h.spectral_radius());
        CHECK((diag - diag.diagonal().asDiagonal().toDenseMatrix()).norm() < 1e-9 * h.spectral_radius());
        CHECK((h.at(t) - h.at(t).adjoint()).norm() < 1e-12 * h.spectral_radius());
    }
}

TEST_CASE("property: instantaneous eigenbasis is phase locked to the Wigner frame") {
    gen::Draw draw(22);
    for (int i = 0; i < 50; ++i) {
        FieldConfig c;
        c.c = draw.log_uniform(1.0, 1e3);
        c.b = i % 2 ? 0.0 : draw.uniform(0.1, 3.0);
        c.omega = draw.omega();
        c.theta = draw.theta();
        const LabHamiltonian h(c, c.b > 0 ? Regime::Abelian : Regime::NonAbelian);
        const double t = draw.uniform(0.0, 10.0);
        const InstantaneousBasis basis = instantaneous_eigenbasis(h, t);
        CHECK(basis.min_overlap > 0.999999);
        CHECK((basis.vectors - h.wigner_frame(t)).norm() < 1e-8);
    }
}
