#pragma once

// Perturbative readings of the co-rotating gauge around its two limits.
//
// All energies are divided by omega, so every term is directly comparable to
// gauge_exact. Dimensionless dressed Hamiltonian of the reported branch:
//
//   H_D / w = [ (x - cos)/2   -sin        ]
//             [ -sin          -(x - cos)/2 ]
//
// with gauge = (top eigenvalue) - x/2. The -x/2 piece is the uniform dressing
// shift and is tracked on its own.
//
// Abelian limit (x > |cos|): H0 = diagonal part, V = off-diagonal coupling.
// First order vanishes, second order is sin^2 / (x - cos).
//
// Non-Abelian limit (x < 1): H0 = H_D / w at x = 0, V = diag(x/2, -x/2).
// First order is -x cos / (2 R), second order x^2 sin^2 / R^3, with
// R = sqrt(4 - 3 cos^2). The published first-order term is quoted as the
// magnitude x cos / (2 R) and the second order is stated to vanish; both the
// published and the literal terms are reported.

#include <array>

#include "geophase/common.hpp"

namespace geophase {

enum class Limit { Abelian, NonAbelian };

std::string_view to_string(Limit limit);

struct PerturbationReport {
    Limit limit;
    double x;
    double theta;
    double unperturbed_gauge;
    double correction;         // published leading-order term
    double signed_correction;  // same term with the sign of the exact series
    double first_order;        // literal Rayleigh-Schrodinger terms of the reported branch
    double second_order;
    double dressing_shift;     // -x/2
    double exact_slope;        // d gauge_exact / dx at x
    double exact_gauge;
    double exact_deviation;    // exact_gauge - unperturbed_gauge
    double abs_error;          // |signed_correction - exact_deviation| (Abelian), includes the dressing shift (non-Abelian)
    bool valid;
    bool singular;

    // unperturbed + literal corrections (+ dressing shift for the non-Abelian limit).
    double predicted_gauge() const;
};

struct RayleighSchrodinger {
    double e0;
    double e1;
    double e2;
};

// Up-to-second-order expansion of the top eigenvalue of h0 + v (2x2, real
// symmetric, non-degenerate h0).
RayleighSchrodinger rayleigh_schrodinger(const Eigen::Matrix2d& h0, const Eigen::Matrix2d& v);

// Requires x > 0. `singular` is set (and the correction is NaN) when
// |x - cos| < 1e-9.
PerturbationReport abelian_correction(double x, double theta);

// Requires x >= 0.
PerturbationReport non_abelian_correction(double x, double theta);

struct SingularityLocus {
    double b_singular;  // omega cos(theta): pole of the second-order term
    double b_validity;  // omega |cos(theta)|: the Abelian decomposition holds above this
    bool reflected;     // theta > pi/2, the pole sits at negative b
};

SingularityLocus singularity_locus(double theta, double omega);

}  // namespace geophase
