#pragma once

// Brute-force time-dependent Schrodinger integration used as the independent
// oracle for every closed form in the library.
//
// Integration is fixed-step classical RK4 on the propagator, dU/dt = A(t) U,
// U(0) = I. Every run reports a step-halving error estimate
// ||U_N - U_{N/2}||_F / 15 and its unitarity defect.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "geophase/common.hpp"
#include "geophase/dressed.hpp"
#include "geophase/field_model.hpp"

namespace geophase {

struct Checkpoint {
    long step;
    double t;
    CMatrix u;
};

struct PropagatorResult {
    int dimension = 0;
    double t_final = 0.0;
    CMatrix u;
    long step_count = 0;
    double estimated_error = 0.0;  // NaN when the estimate was disabled
    double unitarity_error = 0.0;
    std::vector<Checkpoint> checkpoints;  // first at t = 0, last at t_final
    std::vector<std::string> warnings;
};

struct PropagationOptions {
    int checkpoints = 64;
    bool estimate_error = true;
    double unitarity_abort = 1e-7;
};

// A(t) in dU/dt = A(t) U.
using Generator2 = std::function<CMatrix2(double)>;
using Generator4 = std::function<CMatrix4(double)>;

PropagatorResult propagate_generator(const Generator2& generator, double t_final, long steps,
                                     const PropagationOptions& options = {});
PropagatorResult propagate_generator(const Generator4& generator, double t_final, long steps,
                                     const PropagationOptions& options = {});

// --- two-level effective problem --------------------------------------------

// 1000 steps per shortest period among {2 pi / omega, 2 pi / b}.
long minimum_effective_steps(double omega, double b, double t_final);

struct EffectiveOptions {
    DressingMode mode = DressingMode::CoRotating;
    PropagationOptions propagation;
};

// Integrates dC/dt = +i H_eff(t) C. Throws InputError when `steps` is below
// minimum_effective_steps.
PropagatorResult propagate_effective(double omega, double b, double theta, double t_final, long steps,
                                     const EffectiveOptions& options = {});

// Quasi-energies -arg(eig U(T))/T of a monodromy, folded into (-pi/T, pi/T], descending.
std::array<double, 2> monodromy_quasi_energies(const PropagatorResult& monodromy);

struct DressedFrameSpectrum {
    double big_lambda;
    double lambda;
    double gauge;
};

// Removes the dressing frame diag(e^{-i w_+ t}, e^{-i w_- t}) from each
// checkpoint of an effective-problem propagation and unwraps the remaining
// SU(2) rotation angle Lambda t across checkpoints. Requires Lambda dt <= pi/4
// between checkpoints for an unambiguous unwrap.
DressedFrameSpectrum dressed_frame_spectrum(const PropagatorResult& effective, double omega, double b,
                                            double theta, DressingMode mode = DressingMode::CoRotating);

struct OracleGauge {
    DressedFrameSpectrum spectrum;
    double estimated_error;
    long steps;
};

// One drive period 2 pi / omega of the effective problem, integrated and
// reduced to the dimensionless gauge lambda / omega.
OracleGauge oracle_gauge(double omega, double b, double theta, long steps_per_period = 2000,
                         DressingMode mode = DressingMode::CoRotating);

// max_t |U_21(t)|^2 starting from the first rotating-frame state.
double max_population_transfer(double omega, double b, double theta, double t_final, long steps,
                               DressingMode mode = DressingMode::CoRotating);

// --- four-level laboratory problem ------------------------------------------

// Steps giving h * spectral_radius = 0.005, enough for unitarity drift < 1e-9
// over ~1e3 fast periods.
long recommended_full_steps(const FieldConfig& config, Regime regime, int cycles);

// Integrates i dU/dt = H(t) U over `cycles` drive periods. Requires at least
// ~31 steps per fastest period 2 pi / spectral_radius. Adds a warning (not an
// error) when omega/c exceeds the decoupling threshold. `options.checkpoints`
// is per cycle.
PropagatorResult propagate_full(const FieldConfig& config, Regime regime, int cycles, long steps,
                                const PropagationOptions& options = {});

struct PhaseResult {
    double state_label;      // m of the state (or of the state the branch connects to)
    double total_phase;      // per cycle, unwrapped
    double dynamical_phase;  // per cycle, -integral of E_m dt
    double geometric_phase;  // per cycle, wrapped to (-pi, pi]
    int winding;             // geometric_phase + 2 pi winding is the unwrapped value

    double unwrapped_geometric() const { return geometric_phase + kTwoPi * winding; }
};

struct PhaseExtraction {
    int cycles = 0;
    std::vector<PhaseResult> three_halves;  // m = +3/2, -3/2 (per state)
    std::vector<PhaseResult> one_half;      // monodromy eigenbranches, labelled +1/2 then -1/2
    double leakage = 0.0;                   // max |amplitude| between the two pairs
};

// Projects the propagator checkpoints onto the instantaneous eigenframe,
// removes Simpson-integrated dynamical phases and unwraps the geometric
// phases across checkpoints. Throws NumericalError ("subspace mixing") when the
// inter-pair leakage exceeds `mixing_tolerance`.
PhaseExtraction extract_phases(const PropagatorResult& result, const LabHamiltonian& hamiltonian,
                               double mixing_tolerance = 1e-3);

}  // namespace geophase
