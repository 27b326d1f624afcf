#include "geophase/validation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

#include "geophase/dressed.hpp"
#include "geophase/dynamics.hpp"
#include "geophase/field_model.hpp"
#include "geophase/perturbation.hpp"
#include "geophase/sensitivity.hpp"
#include "geophase/sweep.hpp"

namespace geophase {

namespace {

CheckResult make(std::string name, double measured, double threshold, std::string detail = {}) {
    const bool ok = std::isfinite(measured) && measured <= threshold;
    return {std::move(name), measured, threshold, ok, std::move(detail)};
}

std::vector<double> theta_grid7() {
    std::vector<double> g;
    for (int k = 0; k < 7; ++k) g.push_back(0.1 + (kPi - 0.2) * k / 6.0);
    return g;
}

double relative(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

bool ValidationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string ValidationReport::to_json() const {
    nlohmann::ordered_json doc;
    doc["level"] = level == ValidationLevel::Fast ? "fast" : "full";
    doc["passed"] = passed();
    auto& list = doc["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json j{{"name", c.name}, {"passed", c.passed}};
        j["measured"] = std::isfinite(c.measured) ? nlohmann::ordered_json(c.measured) : nlohmann::ordered_json();
        j["threshold"] = c.threshold;
        if (!c.detail.empty()) j["detail"] = c.detail;
        list.push_back(std::move(j));
    }
    return doc.dump(2);
}

namespace checks {

CheckResult non_abelian_endpoint() {
    double worst = 0.0;
    for (int k = 0; k <= 32; ++k) {
        const double theta = kPi * k / 32.0;
        const double c = std::cos(theta);
        worst = std::max(worst, std::abs(gauge_exact(0.0, theta) - 0.5 * std::sqrt(4.0 - 3.0 * c * c)));
    }
    return make("non_abelian_endpoint", worst, 1e-12);
}

CheckResult abelian_endpoint() {
    double worst = 0.0;
    for (double theta : {0.5, 1.0, 1.4}) worst = std::max(worst, std::abs(gauge_exact(1e3, theta) + 0.5 * std::cos(theta)));
    return make("abelian_endpoint", worst, 1e-3);
}

CheckResult gauge_matrix(Subspace subspace) {
    double worst = 0.0;
    for (double theta : theta_grid7()) {
        const GaugeMatrix numeric = gauge_matrix_numeric(subspace, theta);
        const GaugeMatrix exact = gauge_matrix_analytic(subspace, theta);
        worst = std::max(worst, (numeric.matrix - exact.matrix).cwiseAbs().maxCoeff());
    }
    return make(std::string("gauge_matrix_") + (subspace == Subspace::ThreeHalves ? "three_halves" : "one_half"),
                worst, 1e-6);
}

CheckResult gauge_b_invariance() {
    double worst = 0.0;
    for (Subspace subspace : {Subspace::ThreeHalves, Subspace::OneHalf}) {
        for (double theta : theta_grid7()) {
            NumericGaugeOptions with_b;
            with_b.b = 0.3;
            const GaugeMatrix plain = gauge_matrix_numeric(subspace, theta);
            const GaugeMatrix shifted = gauge_matrix_numeric(subspace, theta, with_b);
            worst = std::max(worst, (plain.matrix - shifted.matrix).cwiseAbs().maxCoeff());
        }
    }
    return make("gauge_b_invariance", worst, 1e-8);
}

CheckResult monotonicity() {
    // measured: largest non-negative step (any value >= 0 is a violation).
    double worst = -1.0;
    for (double theta : {0.1, 0.5, 1.0, 1.4, 2.0, 3.0}) {
        double previous = gauge_exact(0.0, theta);
        for (int k = 1; k < 1000; ++k) {
            const double g = gauge_exact(100.0 * k / 999.0, theta);
            worst = std::max(worst, g - previous);
            previous = g;
        }
    }
    CheckResult r = make("monotonicity", worst, 0.0);
    r.passed = worst < 0.0;
    return r;
}

CheckResult fig2_collapse() {
    const Table t = fig2_dataset(1000, 7, 1);
    const std::size_t n = t.rows.size() / 3;
    double spread = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = t.number(i, "gauge_exact");
        const double b = t.number(n + i, "gauge_exact");
        const double c = t.number(2 * n + i, "gauge_exact");
        spread = std::max(spread, std::max({a, b, c}) - std::min({a, b, c}));
    }
    return make("fig2_collapse", spread, 1e-12);
}

CheckResult abelian_fidelity() {
    double worst = 0.0;
    for (int k = 0; k <= 200; ++k) {
        const double x = 5.0 * std::pow(200.0, k / 200.0);
        const PerturbationReport r = abelian_correction(x, 1.0);
        worst = std::max(worst, relative(r.signed_correction, r.exact_deviation));
    }
    return make("abelian_fidelity", worst, 0.05, "x in [5, 1000], theta = 1");
}

CheckResult abelian_singularity() {
    const double omega = 10.0;
    const SingularityLocus locus = singularity_locus(1.0, omega);
    const PerturbationReport at = abelian_correction(locus.b_singular / omega, 1.0);
    const PerturbationReport near = abelian_correction(locus.b_singular / omega + 1e-6, 1.0);
    const double miss = std::abs(locus.b_singular - omega * std::cos(1.0));
    CheckResult r = make("abelian_singularity", miss, 0.0);
    r.passed = miss == 0.0 && at.singular && !at.valid && !near.singular && std::abs(near.correction) > 1e5;
    return r;
}

CheckResult non_abelian_slope() {
    double worst = 0.0;
    for (double theta : {0.0, 0.3, 0.7, 1.0, 1.3}) {
        const PerturbationReport r = non_abelian_correction(0.1, theta);
        worst = std::max(worst, std::abs(std::abs(r.correction) / r.x + 0.5 - std::abs(r.exact_slope)));
    }
    return make("non_abelian_slope", worst, 1e-12);
}

CheckResult second_order_coefficient() {
    double worst = 0.0;
    const double h = 1e-4;
    for (double theta : {0.3, 0.7, 1.0, 1.3}) {
        const double fd = 0.5 * (gauge_exact(2 * h, theta) - 2 * gauge_exact(h, theta) + gauge_exact(0.0, theta)) / (h * h);
        const PerturbationReport r = non_abelian_correction(1.0, theta);
        worst = std::max(worst, relative(r.second_order, fd));
    }
    return make("second_order_coefficient", worst, 1e-3);
}

CheckResult sensitivity_abelian_limit() {
    double worst = 0.0;
    const double omega = 2.0;
    for (double theta : {0.5, 1.0}) {
        const double b = 1e3 * omega;
        const SensitivityReport a = analytic_sensitivity(Limit::Abelian, b, omega, theta);
        const SensitivityReport e = exact_sensitivity(b, omega, theta);
        worst = std::max({worst, relative(std::abs(e.dgamma_domega), a.dgamma_domega),
                          relative(std::abs(e.dgamma_db), a.dgamma_db)});
    }
    return make("sensitivity_abelian_limit", worst, 0.01);
}

CheckResult sensitivity_non_abelian_limit() {
    double worst = 0.0;
    const double omega = 2.0;
    for (double theta : {0.5, 1.0}) {
        const double b = 1e-3 * omega;
        const SensitivityReport a = analytic_sensitivity(Limit::NonAbelian, b, omega, theta);
        const SensitivityReport e = exact_sensitivity(b, omega, theta);
        worst = std::max({worst, relative(std::abs(e.shift_free_domega()), a.dgamma_domega),
                          relative(std::abs(e.shift_free_db()), a.dgamma_db)});
    }
    return make("sensitivity_non_abelian_limit", worst, 0.01, "dressing shift removed");
}

CheckResult oracle_two_level(bool flip_coupling) {
    double worst = 0.0;
    const std::array<double, 5> omegas{0.5, 1.0, 2.0, 5.0, 10.0};
    const std::array<double, 5> xs{0.0, 0.3, 1.0, 3.0, 10.0};
    const std::array<double, 5> thetas{0.2, 0.7, 1.0, 1.6, 2.6};
    PropagationOptions options;
    options.estimate_error = false;
    options.checkpoints = 0;
    for (double omega : omegas) {
        for (double x : xs) {
            for (double theta : thetas) {
                const double b = x * omega;
                const double period = kTwoPi / omega;
                const long steps = std::max(4000L, 2 * minimum_effective_steps(omega, b, period));
                const EffectiveHamiltonian h(omega, b, theta);
                CMatrix2 flip = CMatrix2::Identity();
                if (flip_coupling) flip(1, 1) = -1.0;
                const Generator2 generator = [&](double t) -> CMatrix2 { return kI * (flip * h.at(t) * flip); };
                const PropagatorResult numeric = propagate_generator(generator, period, steps, options);
                const CMatrix2 exact = dress(omega, b, theta).propagator(period);
                worst = std::max(worst, frobenius_distance(numeric.u, exact));
            }
        }
    }
    return make("oracle_two_level", worst, 1e-8, flip_coupling ? "coupling sign flipped" : "");
}

std::array<CheckResult, 2> four_level_phases() {
    FieldConfig config;
    config.c = 1000.0;
    config.omega = 1.0;
    config.b = 0.0;
    config.theta = 1.0;
    const LabHamiltonian h(config, Regime::NonAbelian);
    const long steps = recommended_full_steps(config, Regime::NonAbelian, 1);
    PropagationOptions options;
    options.estimate_error = false;
    const PropagatorResult run = propagate_full(config, Regime::NonAbelian, 1, steps, options);
    const PhaseExtraction phases = extract_phases(run, h);

    // Geometric phases follow the connection: +2 pi gamma_mm.
    const double target32 = kTwoPi * 1.5 * std::cos(1.0);
    const double e32 = std::max(relative(phases.three_halves[0].unwrapped_geometric(), target32),
                                relative(phases.three_halves[1].unwrapped_geometric(), -target32));

    const double target12 = kTwoPi * eigengauge(1.0).plus;
    std::array<double, 2> p{phases.one_half[0].unwrapped_geometric(), phases.one_half[1].unwrapped_geometric()};
    std::sort(p.begin(), p.end(), std::greater<>());
    const double e12 = std::max(relative(p[0], target12), relative(p[1], -target12));

    std::ostringstream d32, d12;
    d32 << "m=+3/2: " << phases.three_halves[0].unwrapped_geometric()
        << ", m=-3/2: " << phases.three_halves[1].unwrapped_geometric() << ", target +-" << target32;
    d12 << "eigenphases " << p[0] << ", " << p[1] << ", target +-" << target12;
    return {make("four_level_three_halves", e32, 0.01, d32.str()), make("four_level_one_half", e12, 0.01, d12.str())};
}

}  // namespace checks

ValidationReport validate(const ValidationOptions& options) {
    ValidationReport report{options.level, {}};
    auto run = [&report](auto&& fn) {
        try {
            report.checks.push_back(fn());
        } catch (const std::exception& e) {
            report.checks.push_back({"exception", std::nan(""), 0.0, false, e.what()});
        }
    };
    run(checks::non_abelian_endpoint);
    run(checks::abelian_endpoint);
    run([] { return checks::gauge_matrix(Subspace::ThreeHalves); });
    run([] { return checks::gauge_matrix(Subspace::OneHalf); });
    run(checks::gauge_b_invariance);
    run(checks::monotonicity);
    run(checks::fig2_collapse);
    run(checks::abelian_fidelity);
    run(checks::abelian_singularity);
    run(checks::non_abelian_slope);
    run(checks::second_order_coefficient);
    run(checks::sensitivity_abelian_limit);
    run(checks::sensitivity_non_abelian_limit);
    if (options.level == ValidationLevel::Full) {
        run([&] { return checks::oracle_two_level(options.flip_coupling); });
        try {
            for (auto& c : checks::four_level_phases()) report.checks.push_back(std::move(c));
        } catch (const std::exception& e) {
            report.checks.push_back({"four_level_phases", std::nan(""), 0.0, false, e.what()});
        }
    }
    return report;
}

}  // namespace geophase
