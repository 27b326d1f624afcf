#include "geophase/gauge.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "geophase/field_model.hpp"

namespace geophase {

namespace {

void check_theta(double theta) {
    if (!std::isfinite(theta) || theta < 0.0 || theta > kPi) throw InputError("theta must lie in [0, pi]");
}

std::array<double, 2> symmetric_eigenvalues(const Eigen::Matrix2d& m) {
    const double mean = 0.5 * (m(0, 0) + m(1, 1));
    const double half_gap = std::hypot(0.5 * (m(0, 0) - m(1, 1)), m(0, 1));
    return {mean + half_gap, mean - half_gap};
}

// Basis indices and the Kramers partner sign for a subspace (spin 3/2, m order).
struct KramersPair {
    int upper;
    int lower;
    double partner_sign;
};

KramersPair pair_of(Subspace subspace) {
    if (subspace == Subspace::ThreeHalves) return {0, 3, 1.0};
    return {1, 2, -1.0};
}

Eigen::Matrix<Complex, 4, 2> pair_frame(const LabHamiltonian& h, double phi, const KramersPair& pair) {
    const InstantaneousBasis basis = instantaneous_eigenbasis(h, phi / h.config().omega);
    Eigen::Matrix<Complex, 4, 2> frame;
    frame.col(0) = basis.vectors.col(pair.upper);
    frame.col(1) = pair.partner_sign * basis.vectors.col(pair.lower);
    return frame;
}

Eigen::Matrix2d finite_difference_gauge(const LabHamiltonian& h, double phi, double dphi, const KramersPair& pair) {
    const auto centre = pair_frame(h, phi, pair);
    const auto ahead = pair_frame(h, phi + dphi, pair);
    const auto behind = pair_frame(h, phi - dphi, pair);
    const Eigen::Matrix<Complex, 4, 2> derivative = (ahead - behind) / (2.0 * dphi);
    const CMatrix2 gamma = kI * (centre.adjoint() * derivative);
    // gamma is Hermitian; in the Wigner frame it is also real.
    return gamma.real();
}

}  // namespace

std::string_view to_string(Subspace subspace) {
    return subspace == Subspace::ThreeHalves ? "pm3/2" : "pm1/2";
}

Eigengauge eigengauge(double theta) {
    check_theta(theta);
    const double c = std::cos(theta);
    const double g = 0.5 * std::sqrt(4.0 - 3.0 * c * c);
    return {g, -g};
}

GaugeMatrix gauge_matrix_analytic(Subspace subspace, double theta) {
    check_theta(theta);
    const double c = std::cos(theta);
    Eigen::Matrix2d m;
    if (subspace == Subspace::ThreeHalves) {
        m << 1.5 * c, 0.0, 0.0, -1.5 * c;
    } else {
        const double s = std::sin(theta);
        m << 0.5 * c, s, s, -0.5 * c;
    }
    return GaugeMatrix{subspace, theta, m, symmetric_eigenvalues(m)};
}

GaugeMatrix gauge_matrix_numeric(Subspace subspace, double theta, const NumericGaugeOptions& options) {
    check_theta(theta);
    if (!(options.dphi > 0.0) || options.dphi > 1e-3) throw InputError("dphi must lie in (0, 1e-3]");

    FieldConfig config;
    config.c = options.c;
    config.b = options.b;
    config.omega = 1.0;  // phi == t
    config.theta = theta;
    const LabHamiltonian h(config, options.b > 0.0 ? Regime::Abelian : Regime::NonAbelian);
    const KramersPair pair = pair_of(subspace);

    const Eigen::Matrix2d gamma = finite_difference_gauge(h, options.phi, options.dphi, pair);
    const Eigen::Matrix2d check = finite_difference_gauge(h, options.check_phi, options.dphi, pair);

    const double deviation = (gamma - check).cwiseAbs().maxCoeff();
    const double rounding_floor = 1e3 * std::numeric_limits<double>::epsilon() / options.dphi;
    const double tolerance = std::max(10.0 * options.dphi * options.dphi, rounding_floor);
    if (deviation > tolerance) {
        std::ostringstream msg;
        msg << "gauge matrix depends on phi: deviation " << deviation << " exceeds " << tolerance;
        throw NumericalError(msg.str());
    }
    return GaugeMatrix{subspace, theta, gamma, symmetric_eigenvalues(gamma)};
}

}  // namespace geophase
