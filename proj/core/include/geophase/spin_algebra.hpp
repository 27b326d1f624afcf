#pragma once

// Angular-momentum matrices and Wigner rotations for arbitrary (half-)integer
// spin. Basis ordering is m = +j, +j-1, ..., -j throughout the library.

#include <vector>

#include "geophase/common.hpp"

namespace geophase {

// Spin quantum number stored as the integer 2j, so half-integers are exact.
class Spin {
public:
    // Rejects non-positive or non-half-integer j.
    static Spin from_value(double j);
    static Spin from_twice(int twice_j);

    static Spin three_halves() { return Spin{3}; }

    int twice() const { return twice_j_; }
    double value() const { return 0.5 * twice_j_; }
    int dimension() const { return twice_j_ + 1; }

    // Magnetic quantum number of basis index k (0 -> +j).
    double m_at(int index) const { return value() - index; }
    // Basis index of magnetic quantum number m; throws InputError if m is not in the multiplet.
    int index_of(double m) const;

    friend bool operator==(Spin, Spin) = default;

private:
    explicit Spin(int twice_j) : twice_j_(twice_j) {}
    int twice_j_;
};

struct SpinOperators {
    Spin j;
    CMatrix sx;
    CMatrix sy;
    CMatrix sz;
    CMatrix s_squared;  // j(j+1) I

    int dimension() const { return j.dimension(); }
    CMatrix raising() const { return sx + kI * sy; }
    CMatrix lowering() const { return sx - kI * sy; }
};

SpinOperators spin_operators(Spin j);
SpinOperators spin_operators(double j);

// sin(theta)cos(phi) Sx + sin(theta)sin(phi) Sy + cos(theta) Sz
CMatrix rotated_sz(const SpinOperators& ops, double theta, double phi);

struct WignerRotation {
    Spin j;
    double theta;
    double phi;
    // exp(-i phi Sz) exp(-i theta Sy); column k is the rotated |m_k> state.
    CMatrix matrix;

    CVector column(int index) const { return matrix.col(index); }
};

// Reduced Wigner matrix d^j_{m'm}(beta) = <j m'| exp(-i beta Sy) |j m>.
Eigen::MatrixXd wigner_small_d(Spin j, double beta);

WignerRotation wigner_rotation(Spin j, double theta, double phi);

}  // namespace geophase
