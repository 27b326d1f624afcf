#include "geophase/perturbation.hpp"

#include <cmath>
#include <limits>

#include "geophase/dressed.hpp"

namespace geophase {

namespace {

void check_theta(double theta) {
    if (!std::isfinite(theta) || theta < 0.0 || theta > kPi) throw InputError("theta must lie in [0, pi]");
}

}  // namespace

std::string_view to_string(Limit limit) { return limit == Limit::Abelian ? "abelian" : "non_abelian"; }

double PerturbationReport::predicted_gauge() const {
    if (limit == Limit::Abelian) return unperturbed_gauge + first_order + second_order;
    return unperturbed_gauge + first_order + second_order + dressing_shift;
}

RayleighSchrodinger rayleigh_schrodinger(const Eigen::Matrix2d& h0, const Eigen::Matrix2d& v) {
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(h0);
    const auto& e = solver.eigenvalues();  // ascending
    if (e(1) - e(0) <= 0.0) throw InputError("rayleigh_schrodinger: degenerate h0");
    const Eigen::Vector2d top = solver.eigenvectors().col(1);
    const Eigen::Vector2d bottom = solver.eigenvectors().col(0);
    const double coupling = bottom.dot(v * top);
    return {e(1), top.dot(v * top), coupling * coupling / (e(1) - e(0))};
}

PerturbationReport abelian_correction(double x, double theta) {
    check_theta(theta);
    if (!std::isfinite(x) || x <= 0.0) throw InputError("abelian_correction requires x > 0");
    const double c = std::cos(theta);
    const double s = std::sin(theta);

    PerturbationReport r{};
    r.limit = Limit::Abelian;
    r.x = x;
    r.theta = theta;
    r.unperturbed_gauge = -0.5 * c;
    r.dressing_shift = -0.5 * x;
    r.exact_gauge = gauge_exact(x, theta);
    r.exact_slope = gauge_exact_slope(x, theta);
    r.exact_deviation = r.exact_gauge - r.unperturbed_gauge;
    r.singular = std::abs(x - c) < 1e-9;
    r.valid = !r.singular && x > std::abs(c);
    r.first_order = 0.0;
    if (r.singular) {
        r.correction = r.signed_correction = r.second_order = std::numeric_limits<double>::quiet_NaN();
        r.abs_error = std::numeric_limits<double>::quiet_NaN();
        return r;
    }
    r.correction = -s * s / (c - x);
    r.signed_correction = r.correction;
    // The literal expansion follows the diagonal state with energy (x - c)/2;
    // below x = cos it is the lower level and no longer the reported branch.
    r.second_order = s * s / (x - c);
    r.abs_error = std::abs(r.signed_correction - r.exact_deviation);
    return r;
}

PerturbationReport non_abelian_correction(double x, double theta) {
    check_theta(theta);
    if (!std::isfinite(x) || x < 0.0) throw InputError("non_abelian_correction requires x >= 0");
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double root = std::sqrt(4.0 - 3.0 * c * c);

    PerturbationReport r{};
    r.limit = Limit::NonAbelian;
    r.x = x;
    r.theta = theta;
    r.unperturbed_gauge = 0.5 * root;
    r.correction = x * c / (2.0 * root);
    r.signed_correction = -r.correction;
    r.dressing_shift = -0.5 * x;
    r.exact_gauge = gauge_exact(x, theta);
    r.exact_slope = gauge_exact_slope(0.0, theta);
    r.exact_deviation = r.exact_gauge - r.unperturbed_gauge;
    r.valid = x < 1.0;
    r.singular = false;

    Eigen::Matrix2d h0;
    h0 << -0.5 * c, -s, -s, 0.5 * c;
    Eigen::Matrix2d v = Eigen::Matrix2d::Zero();
    v(0, 0) = 0.5 * x;
    v(1, 1) = -0.5 * x;
    const RayleighSchrodinger rs = rayleigh_schrodinger(h0, v);
    r.first_order = rs.e1;
    r.second_order = rs.e2;
    r.abs_error = std::abs(r.signed_correction + r.dressing_shift - r.exact_deviation);
    return r;
}

SingularityLocus singularity_locus(double theta, double omega) {
    check_theta(theta);
    if (!std::isfinite(omega) || omega <= 0.0) throw InputError("omega must be positive");
    const double c = std::cos(theta);
    return {omega * c, omega * std::abs(c), c < 0.0};
}

}  // namespace geophase
