#pragma once

// Physical configuration of the co-rotating quadrupole + magnetic drive and
// the laboratory-frame spin-3/2 Hamiltonians built from it.
//
// Units: hbar = 1, all rates (c, b, omega) in angular-frequency units, angles
// in radians. Only the ratio b/omega enters the geometric physics.

#include <array>
#include <string>
#include <string_view>

#include "geophase/common.hpp"
#include "geophase/spin_algebra.hpp"

namespace geophase {

struct FieldConfig {
    double c = 1000.0;      // quadrupole coupling strength
    double b = 0.0;         // magnetic splitting strength, >= 0
    double omega = 1.0;     // common rotation frequency of both fields, > 0
    double theta = 1.0;     // cone half-angle, [0, pi]
    double decoupling_threshold = 1e-2;  // omega/c at or below which the +-1/2 and +-3/2 pairs decouple

    // Throws InputError when an invariant is violated.
    void validate() const;

    double x() const { return b / omega; }
    double period() const { return kTwoPi / omega; }
    bool adiabatically_decoupled() const { return omega / c <= decoupling_threshold; }
};

// JSON object with keys {"c", "b", "omega", "theta_rad"}. Missing keys keep the
// values of `defaults`; unknown keys are ignored so sweep specs can share a file.
FieldConfig field_config_from_json(std::string_view json_text, const FieldConfig& defaults = {});
std::string to_json(const FieldConfig& config);

enum class Regime { NonAbelian, Abelian };

std::string_view to_string(Regime regime);

// H(t) = c (S_z'^2 - S^2/3) - b S_z',  S_z' = rotated_sz(theta, omega t).
// The NonAbelian regime drops the magnetic term regardless of config.b.
class LabHamiltonian {
public:
    LabHamiltonian(const FieldConfig& config, Regime regime);

    const FieldConfig& config() const { return config_; }
    Regime regime() const { return regime_; }
    double effective_b() const { return regime_ == Regime::Abelian ? config_.b : 0.0; }

    CMatrix4 at(double t) const;
    CMatrix4 rotated_sz_at(double t) const;

    // Eigenvalues in m order (+3/2, +1/2, -1/2, -3/2); time independent.
    std::array<double, 4> level_energies() const;
    // Largest |eigenvalue|, sets the fastest dynamical time scale.
    double spectral_radius() const;

    // Wigner frame D(theta, omega t), columns in m order.
    CMatrix4 wigner_frame(double t) const;

private:
    FieldConfig config_;
    Regime regime_;
    CMatrix4 sx_, sy_, sz_;
    CMatrix4 small_d_;
};

CMatrix4 hamiltonian_at(const LabHamiltonian& h, double t);

struct InstantaneousBasis {
    double t = 0.0;
    std::array<double, 4> energies{};  // m order
    CMatrix4 vectors;                  // column k <-> m = 3/2 - k, phases locked to the Wigner columns
    double min_overlap = 0.0;          // worst projection norm of a Wigner column onto its eigenspace
};

// Diagonalizes H(t) and orders the eigenpairs by matching each eigenspace to
// the Wigner-rotated basis columns. Degenerate eigenspaces are resolved by
// projecting the Wigner column into them. Throws NumericalError when a
// column's overlap falls below `min_overlap`.
InstantaneousBasis instantaneous_eigenbasis(const LabHamiltonian& h, double t, double min_overlap = 0.99);

}  // namespace geophase
