#include "geophase/dressed.hpp"

#include <cmath>
#include <limits>

namespace geophase {

namespace {

double mode_sign(DressingMode mode) { return mode == DressingMode::CoRotating ? 1.0 : -1.0; }

void check_common(double omega, double b, double theta) {
    if (!std::isfinite(omega) || omega <= 0.0) throw InputError("omega must be positive");
    if (!std::isfinite(b) || b < 0.0) throw InputError("b must be non-negative");
    if (!std::isfinite(theta)) throw InputError("theta must be finite");
}

// sqrt((x - s cos)^2 + 4 sin^2), the dimensionless dressed splitting 2 Lambda / w.
double dressed_root(double x, double theta, double sign) {
    const double d = x - sign * std::cos(theta);
    return std::hypot(d, 2.0 * std::sin(theta));
}

}  // namespace

std::string_view to_string(DressingMode mode) {
    return mode == DressingMode::CoRotating ? "co_rotating" : "counter_rotating";
}

EffectiveHamiltonian::EffectiveHamiltonian(double omega, double b, double theta, DressingMode mode)
    : omega_(omega), b_(b), theta_(theta), mode_(mode) {
    check_common(omega, b, theta);
}

double EffectiveHamiltonian::period() const {
    return b_ > 0.0 ? kTwoPi / b_ : std::numeric_limits<double>::infinity();
}

CMatrix2 EffectiveHamiltonian::at(double t) const {
    const double diag = 0.5 * omega_ * std::cos(theta_);
    const double coupling = omega_ * std::sin(theta_);
    const Complex phase = std::exp(kI * (mode_sign(mode_) * b_ * t));
    CMatrix2 h;
    h << diag, coupling * phase, coupling * std::conj(phase), -diag;
    return h;
}

EffectiveHamiltonian effective_hamiltonian(double omega, double b, double theta, DressingMode mode) {
    return EffectiveHamiltonian(omega, b, theta, mode);
}

CMatrix2 DressedSolution::dressing_frame(double t) const {
    CMatrix2 r = CMatrix2::Zero();
    r(0, 0) = std::exp(-kI * dressing_frequencies[0] * t);
    r(1, 1) = std::exp(-kI * dressing_frequencies[1] * t);
    return r;
}

CMatrix2 DressedSolution::propagator(double t) const {
    // H_D is real symmetric and traceless: H_D = Lambda n.sigma, so
    // exp(-i H_D t) = cos(Lambda t) I - i sin(Lambda t) H_D / Lambda.
    CMatrix2 evolution = CMatrix2::Identity() * std::cos(big_lambda * t);
    if (big_lambda > 0.0) {
        evolution -= kI * (std::sin(big_lambda * t) / big_lambda) * h_dressed.cast<Complex>();
    }
    return dressing_frame(t) * evolution;
}

DressedSolution dress(double omega, double b, double theta, DressingMode mode) {
    check_common(omega, b, theta);
    const double s = mode_sign(mode);
    const double c = std::cos(theta);
    const double sn = std::sin(theta);

    DressedSolution sol{};
    sol.omega = omega;
    sol.b = b;
    sol.theta = theta;
    sol.x = b / omega;
    sol.mode = mode;
    // w_+- = -+ s b / 2
    sol.dressing_frequencies = {-0.5 * s * b, 0.5 * s * b};
    const double top = -0.5 * omega * c + 0.5 * s * b;
    sol.h_dressed << top, -omega * sn, -omega * sn, -top;
    sol.big_lambda = 0.5 * omega * dressed_root(sol.x, theta, s);
    sol.lambda = sol.big_lambda - 0.5 * b;
    sol.lambda_companion = -sol.big_lambda - 0.5 * b;
    sol.gauge = gauge_exact(sol.x, theta, mode);
    return sol;
}

double gauge_exact(double x, double theta, DressingMode mode) {
    if (!std::isfinite(x) || x < 0.0) throw InputError("x = b/omega must be non-negative");
    const double s = mode_sign(mode);
    const double c = std::cos(theta);
    const double sn = std::sin(theta);
    const double root = dressed_root(x, theta, s);
    // (root - x)/2 rewritten as (root^2 - x^2) / (2 (root + x)) to avoid
    // cancellation at large x.
    const double numerator = 4.0 * sn * sn + c * c - 2.0 * s * x * c;
    const double denominator = 2.0 * (root + x);
    if (denominator == 0.0) return 0.0;
    return numerator / denominator;
}

double gauge_exact_slope(double x, double theta, DressingMode mode) {
    if (!std::isfinite(x) || x < 0.0) throw InputError("x = b/omega must be non-negative");
    const double s = mode_sign(mode);
    const double root = dressed_root(x, theta, s);
    const double d = x - s * std::cos(theta);
    const double ratio = root > 0.0 ? d / root : 0.0;
    return 0.5 * (ratio - 1.0);
}

LimitGauges limit_gauges(double theta) {
    if (!std::isfinite(theta) || theta < 0.0 || theta > kPi) throw InputError("theta must lie in [0, pi]");
    const double c = std::cos(theta);
    return {0.5 * std::sqrt(4.0 - 3.0 * c * c), 0.5 * std::abs(c)};
}

}  // namespace geophase
