#pragma once

// Dressed-state reduction of the +-1/2 pair.
//
// The pair's amplitudes obey dC/dt = i H_eff(t) C with
//
//   H_eff(t) = [ (w/2) cos(th)         w sin(th) e^{+i s b t} ]
//              [ w sin(th) e^{-i s b t}   -(w/2) cos(th)      ]
//
// where s = +1 for the co-rotating drive and s = -1 for the counter-rotating
// one. Writing C_k = alpha_k exp(-i w_k t) with w_+- = -+ s b/2 removes the
// time dependence: i d(alpha)/dt = H_D alpha with a constant 2x2 H_D. The
// eigenvalues of H_D are +-Lambda, and the phase-dependent energy shift of the
// reported branch is lambda = Lambda - b/2; lambda/w is the gauge.
//
// The laboratory spin-3/2 Hamiltonian c(S_z'^2 - S^2/3) - b S_z' evolved with
// the standard Schrodinger equation corresponds to the counter-rotating mode.

#include <array>
#include <string_view>

#include "geophase/common.hpp"

namespace geophase {

enum class DressingMode { CoRotating, CounterRotating };

std::string_view to_string(DressingMode mode);

class EffectiveHamiltonian {
public:
    EffectiveHamiltonian(double omega, double b, double theta, DressingMode mode = DressingMode::CoRotating);

    CMatrix2 at(double t) const;

    double omega() const { return omega_; }
    double b() const { return b_; }
    double theta() const { return theta_; }
    DressingMode mode() const { return mode_; }
    // Period of H_eff(t); infinite when b == 0 (time independent).
    double period() const;

private:
    double omega_, b_, theta_;
    DressingMode mode_;
};

EffectiveHamiltonian effective_hamiltonian(double omega, double b, double theta,
                                           DressingMode mode = DressingMode::CoRotating);

struct DressedSolution {
    double omega;
    double b;
    double theta;
    double x;  // b / omega
    DressingMode mode;
    Eigen::Matrix2d h_dressed;
    double big_lambda;          // >= 0
    double lambda;              // big_lambda - b/2
    double lambda_companion;    // -big_lambda - b/2; lambda + lambda_companion == -b
    double gauge;               // lambda / omega
    std::array<double, 2> dressing_frequencies;  // (w_+, w_-)

    // diag(e^{-i w_+ t}, e^{-i w_- t}) exp(-i H_D t): the exact propagator of
    // dC/dt = i H_eff(t) C.
    CMatrix2 propagator(double t) const;
    CMatrix2 dressing_frame(double t) const;
};

DressedSolution dress(double omega, double b, double theta, DressingMode mode = DressingMode::CoRotating);

// (1/2)(sqrt(4 sin^2 + cos^2 + x^2 -+ 2 x cos) - x); '-' for co-rotating.
double gauge_exact(double x, double theta, DressingMode mode = DressingMode::CoRotating);

// d(gauge_exact)/dx. At the conical point (theta = 0 or pi with the square
// root vanishing) the symmetric subgradient is returned.
double gauge_exact_slope(double x, double theta, DressingMode mode = DressingMode::CoRotating);

struct LimitGauges {
    double non_abelian;  // (1/2) sqrt(4 - 3 cos^2)
    double abelian;      // (1/2) |cos|
};

// Magnitudes of the two limiting gauges. In the co-rotating branch bookkeeping
// gauge_exact(0) = +non_abelian and gauge_exact(x -> inf) = -(1/2) cos(theta).
LimitGauges limit_gauges(double theta);

}  // namespace geophase
