#include "geophase/spin_algebra.hpp"

#include <cmath>
#include <string>

namespace geophase {

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace

Spin Spin::from_twice(int twice_j) {
    if (twice_j <= 0) throw InputError("spin quantum number must be positive, got 2j=" + std::to_string(twice_j));
    return Spin{twice_j};
}

Spin Spin::from_value(double j) {
    if (!std::isfinite(j) || j <= 0.0)
        throw InputError("spin quantum number must be positive and finite");
    const double twice = 2.0 * j;
    const double rounded = std::round(twice);
    if (std::abs(twice - rounded) > 1e-12)
        throw InputError("spin quantum number must be a half-integer, got " + std::to_string(j));
    return Spin{static_cast<int>(rounded)};
}

int Spin::index_of(double m) const {
    const double k = value() - m;
    const double rounded = std::round(k);
    if (std::abs(k - rounded) > 1e-12 || rounded < 0 || rounded > twice_j_)
        throw InputError("magnetic quantum number " + std::to_string(m) + " not in multiplet");
    return static_cast<int>(rounded);
}

SpinOperators spin_operators(Spin j) {
    const int n = j.dimension();
    const double jj = j.value();

    CMatrix sz = CMatrix::Zero(n, n);
    CMatrix splus = CMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        const double m = j.m_at(k);
        sz(k, k) = m;
        // <m+1| S+ |m> sits one row above the diagonal because m descends with index.
        if (k > 0) splus(k - 1, k) = std::sqrt(jj * (jj + 1.0) - m * (m + 1.0));
    }
    const CMatrix sminus = splus.adjoint();

    SpinOperators ops{j, 0.5 * (splus + sminus), (splus - sminus) / (2.0 * kI), sz,
                      CMatrix::Identity(n, n) * (jj * (jj + 1.0))};
    return ops;
}

SpinOperators spin_operators(double j) { return spin_operators(Spin::from_value(j)); }

CMatrix rotated_sz(const SpinOperators& ops, double theta, double phi) {
    const double st = std::sin(theta);
    return (st * std::cos(phi)) * ops.sx + (st * std::sin(phi)) * ops.sy + std::cos(theta) * ops.sz;
}

Eigen::MatrixXd wigner_small_d(Spin j, double beta) {
    const int n = j.dimension();
    const int tj = j.twice();
    const double c = std::cos(0.5 * beta);
    const double s = std::sin(0.5 * beta);

    Eigen::MatrixXd d(n, n);
    for (int row = 0; row < n; ++row) {
        for (int col = 0; col < n; ++col) {
            // Work with integer offsets a = j+m etc. so half-integer spins stay exact.
            const int jp_mp = tj - row;  // j + m'
            const int jm_mp = row;       // j - m'
            const int jp_m = tj - col;   // j + m
            const int jm_m = col;        // j - m
            const int mp_minus_m = col - row;

            const double prefactor =
                std::sqrt(factorial(jp_mp) * factorial(jm_mp) * factorial(jp_m) * factorial(jm_m));
            double sum = 0.0;
            for (int k = 0; k <= tj; ++k) {
                const int d1 = jp_m - k;
                const int d2 = mp_minus_m + k;
                const int d3 = jm_mp - k;
                if (d1 < 0 || d2 < 0 || d3 < 0) continue;
                const int cos_power = tj - mp_minus_m - 2 * k;
                const int sin_power = mp_minus_m + 2 * k;
                const double sign = ((mp_minus_m + k) % 2 == 0) ? 1.0 : -1.0;
                sum += sign * std::pow(c, cos_power) * std::pow(s, sin_power) /
                       (factorial(d1) * factorial(k) * factorial(d2) * factorial(d3));
            }
            d(row, col) = prefactor * sum;
        }
    }
    return d;
}

WignerRotation wigner_rotation(Spin j, double theta, double phi) {
    const int n = j.dimension();
    CMatrix m = wigner_small_d(j, theta).cast<Complex>();
    for (int row = 0; row < n; ++row) m.row(row) *= std::exp(-kI * phi * j.m_at(row));
    return WignerRotation{j, theta, phi, std::move(m)};
}

}  // namespace geophase
