#pragma once

// Gauge (Berry connection) matrices gamma_mn = i <psi_m| d/dphi |psi_n> over
// the two Kramers-degenerate pairs of the spin-3/2 quadrupole Hamiltonian.
//
// Each pair is expressed in the Kramers basis (|m>, T|m>) with m > 0, where
// T|m> = (-1)^(j-m) |-m> is the time-reversed partner. For the +-1/2 pair this
// puts a minus sign on |-1/2>, which makes the off-diagonal connection
// element +sin(theta). The eigengauges do not depend on this phase choice.

#include <array>
#include <string_view>

#include "geophase/common.hpp"

namespace geophase {

enum class Subspace { ThreeHalves, OneHalf };

std::string_view to_string(Subspace subspace);

struct GaugeMatrix {
    Subspace subspace;
    double theta;
    Eigen::Matrix2d matrix;           // real symmetric
    std::array<double, 2> eigengauges;  // descending
};

struct Eigengauge {
    double plus;
    double minus;
};

// +-(1/2) sqrt(4 - 3 cos^2 theta), the eigenvalues of the +-1/2 gauge matrix.
Eigengauge eigengauge(double theta);

GaugeMatrix gauge_matrix_analytic(Subspace subspace, double theta);

struct NumericGaugeOptions {
    double dphi = 1e-4;
    double phi = kPi / 4.0;        // evaluation point on the drive circle
    double check_phi = kPi / 4.0 + 1.0;  // second point for the phi-independence check
    double c = 1.0;                // Hamiltonian used to produce the eigenframe
    double b = 0.0;
};

// Central finite difference of the instantaneous eigenvectors along phi.
// Throws NumericalError if the matrices at the two sample points differ by
// more than 10 dphi^2 (floored at the rounding level ~1e3 eps/dphi).
GaugeMatrix gauge_matrix_numeric(Subspace subspace, double theta, const NumericGaugeOptions& options = {});

}  // namespace geophase
