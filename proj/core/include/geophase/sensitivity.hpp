#pragma once

// Sensitivity of the dimensionless gauge to fluctuations of b and omega.
//
// Multiply by 2 pi x cycles to convert to accumulated phase.

#include <cstdint>
#include <optional>

#include "geophase/common.hpp"
#include "geophase/perturbation.hpp"

namespace geophase {

struct SensitivityReport {
    std::optional<Limit> limit;  // empty for exact_sensitivity
    double dgamma_domega;
    double dgamma_db;
    // Part of each partial coming from the uniform -x/2 dressing shift
    // (zero for the limit formulas, which leave it out).
    double dressing_domega;
    double dressing_db;
    double b;
    double omega;
    double theta;
    bool valid;

    double shift_free_domega() const { return dgamma_domega - dressing_domega; }
    double shift_free_db() const { return dgamma_db - dressing_db; }
};

// Limit formulas, as magnitudes.
//   Abelian:     d/domega = sin^2/b,               d/db = omega sin^2 / b^2
//   non-Abelian: d/domega = b |cos| / (2 w^2 R),   d/db = |cos| / (2 w R)
// valid is false outside x >= 10 (Abelian) or x <= 0.1 (non-Abelian).
// The Abelian branch throws InputError for b == 0.
SensitivityReport analytic_sensitivity(Limit limit, double b, double omega, double theta);

// Signed partials of gauge_exact(b / omega, theta) at any (b, omega).
SensitivityReport exact_sensitivity(double b, double omega, double theta);

struct NoiseSample {
    double sigma_b;
    double sigma_omega;
    long n_samples;
    std::uint64_t seed;
    double mean;
    double measured_std;
    double linearized_std;
};

struct NoiseOptions {
    std::uint64_t seed = 7;
    unsigned threads = 0;  // 0: hardware concurrency
    long min_samples = 10000;
};

// Draws (b + db, omega + dw) with independent Gaussian db, dw and measures the
// spread of gauge_exact. Samples are processed in fixed blocks with one seed
// per block, so the result depends on the seed only, not on the thread count.
// Throws InputError if a sigma exceeds 5% of its nominal value or n is below
// options.min_samples.
NoiseSample monte_carlo_phase_noise(double b, double omega, double theta, double sigma_b, double sigma_omega, long n,
                                    const NoiseOptions& options = {});

}  // namespace geophase
