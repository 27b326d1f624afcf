#include "geophase/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace geophase {

namespace {

std::vector<long> checkpoint_steps(long steps, int count) {
    std::vector<long> out;
    if (count <= 0) {
        out = {0, steps};
        return out;
    }
    out.reserve(static_cast<size_t>(count) + 1);
    for (int k = 0; k <= count; ++k) {
        const long s = std::lround(static_cast<double>(k) * static_cast<double>(steps) / count);
        if (out.empty() || s != out.back()) out.push_back(s);
    }
    return out;
}

struct NoObserver {
    template <class Mat>
    void operator()(long, double, const Mat&) const {}
};

// Classical RK4 on dU/dt = A(t) U with U(0) = I. A at the step end is reused
// as the next step's start value, so each step costs two generator calls.
template <class Mat, class Gen, class Observer = NoObserver>
Mat rk4(const Gen& generator, double t_final, long steps, std::vector<Checkpoint>* checkpoints,
        const std::vector<long>& checkpoint_at, Observer&& observer = {}) {
    const double h = t_final / static_cast<double>(steps);
    Mat u = Mat::Identity();
    Mat a_start = generator(0.0);
    size_t next = 0;
    if (checkpoints != nullptr && !checkpoint_at.empty() && checkpoint_at[0] == 0) {
        checkpoints->push_back({0, 0.0, CMatrix(u)});
        next = 1;
    }
    for (long i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) * h;
        const double t_end = static_cast<double>(i + 1) * h;
        const Mat a_mid = generator(t + 0.5 * h);
        const Mat a_end = generator(t_end);
        const Mat k1 = a_start * u;
        const Mat k2 = a_mid * (u + (0.5 * h) * k1);
        const Mat k3 = a_mid * (u + (0.5 * h) * k2);
        const Mat k4 = a_end * (u + h * k3);
        u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        a_start = a_end;
        observer(i + 1, t_end, u);
        if (checkpoints != nullptr && next < checkpoint_at.size() && checkpoint_at[next] == i + 1) {
            checkpoints->push_back({i + 1, t_end, CMatrix(u)});
            ++next;
        }
    }
    return u;
}

template <class Mat, class Gen>
PropagatorResult propagate_impl(const Gen& generator, double t_final, long steps, const PropagationOptions& options) {
    if (!std::isfinite(t_final) || t_final <= 0.0) throw InputError("t_final must be positive");
    if (steps < 1) throw InputError("steps must be at least 1");

    PropagatorResult result;
    result.dimension = static_cast<int>(Mat::RowsAtCompileTime);
    result.t_final = t_final;
    result.step_count = steps;

    const auto at = checkpoint_steps(steps, options.checkpoints);
    const Mat u = rk4<Mat>(generator, t_final, steps, &result.checkpoints, at);
    result.u = u;
    result.unitarity_error = unitarity_error(u);

    if (options.estimate_error && steps >= 2) {
        const Mat coarse = rk4<Mat>(generator, t_final, steps / 2, nullptr, {});
        result.estimated_error = (u - coarse).norm() / 15.0;
    } else {
        result.estimated_error = std::numeric_limits<double>::quiet_NaN();
    }

    if (result.unitarity_error > options.unitarity_abort) {
        std::ostringstream msg;
        msg << "unitarity drift " << result.unitarity_error << " exceeds " << options.unitarity_abort
            << " after " << steps << " steps; increase the step count";
        throw NumericalError(msg.str());
    }
    return result;
}

// Rotation angle a in [0, pi] of an SU(2)-like matrix: eigenvalues e^{+-i a}.
double su2_angle(const CMatrix2& m) {
    const Complex root_det = std::sqrt(m.determinant());
    const double half_trace = (m.trace() / (2.0 * root_det)).real();
    return std::acos(std::clamp(half_trace, -1.0, 1.0));
}

// Picks the branch 2 pi n +- folded closest to `prediction`.
double unfold_angle(double folded, double prediction) {
    const double n0 = std::floor(prediction / kTwoPi);
    double best = folded;
    double best_dist = std::numeric_limits<double>::infinity();
    for (double n = n0 - 1.0; n <= n0 + 2.0; n += 1.0) {
        for (double candidate : {kTwoPi * n + folded, kTwoPi * n - folded}) {
            const double dist = std::abs(candidate - prediction);
            if (dist < best_dist) {
                best_dist = dist;
                best = candidate;
            }
        }
    }
    return best;
}

double unwrap_step(double previous, double wrapped_now) {
    return previous + wrap_phase(wrapped_now - previous);
}

}  // namespace

PropagatorResult propagate_generator(const Generator2& generator, double t_final, long steps,
                                     const PropagationOptions& options) {
    return propagate_impl<CMatrix2>(generator, t_final, steps, options);
}

PropagatorResult propagate_generator(const Generator4& generator, double t_final, long steps,
                                     const PropagationOptions& options) {
    return propagate_impl<CMatrix4>(generator, t_final, steps, options);
}

long minimum_effective_steps(double omega, double b, double t_final) {
    const double fastest = std::max(omega, b);
    const double shortest_period = kTwoPi / fastest;
    return static_cast<long>(std::ceil(1000.0 * t_final / shortest_period - 1e-9));
}

PropagatorResult propagate_effective(double omega, double b, double theta, double t_final, long steps,
                                     const EffectiveOptions& options) {
    const EffectiveHamiltonian h(omega, b, theta, options.mode);
    const long minimum = minimum_effective_steps(omega, b, t_final);
    if (steps < minimum) {
        std::ostringstream msg;
        msg << "effective propagation needs at least " << minimum << " steps (1000 per shortest period), got "
            << steps;
        throw InputError(msg.str());
    }
    const Generator2 generator = [&h](double t) -> CMatrix2 { return kI * h.at(t); };
    return propagate_generator(generator, t_final, steps, options.propagation);
}

std::array<double, 2> monodromy_quasi_energies(const PropagatorResult& monodromy) {
    if (monodromy.dimension != 2) throw InputError("monodromy_quasi_energies expects a 2x2 propagator");
    const Eigen::ComplexEigenSolver<CMatrix2> solver(CMatrix2(monodromy.u));
    std::array<double, 2> eps{};
    for (int k = 0; k < 2; ++k) eps[k] = -std::arg(solver.eigenvalues()(k)) / monodromy.t_final;
    std::sort(eps.begin(), eps.end(), std::greater<>());
    return eps;
}

DressedFrameSpectrum dressed_frame_spectrum(const PropagatorResult& effective, double omega, double b, double theta,
                                            DressingMode mode) {
    if (effective.dimension != 2) throw InputError("dressed_frame_spectrum expects a 2x2 propagation");
    if (effective.checkpoints.size() < 2) throw InputError("dressed_frame_spectrum needs checkpoints");
    const DressedSolution frame = dress(omega, b, theta, mode);

    double previous = 0.0;
    double slope = 0.0;
    double last_t = 0.0;
    bool have_slope = false;
    for (const auto& cp : effective.checkpoints) {
        if (cp.t == 0.0) continue;
        const CMatrix2 rotating = frame.dressing_frame(cp.t).adjoint() * CMatrix2(cp.u);
        const double folded = su2_angle(rotating);
        const double prediction = have_slope ? previous + slope * (cp.t - last_t) : previous;
        const double angle = have_slope ? unfold_angle(folded, prediction) : folded;
        slope = (angle - previous) / (cp.t - last_t);
        have_slope = true;
        previous = angle;
        last_t = cp.t;
    }
    DressedFrameSpectrum out{};
    out.big_lambda = previous / last_t;
    out.lambda = out.big_lambda - 0.5 * b;
    out.gauge = out.lambda / omega;
    return out;
}

OracleGauge oracle_gauge(double omega, double b, double theta, long steps_per_period, DressingMode mode) {
    const double period = kTwoPi / omega;
    const long steps = std::max(steps_per_period, minimum_effective_steps(omega, b, period));
    const double x = b / omega;
    EffectiveOptions options;
    options.mode = mode;
    // Lambda T <= pi (x + 3); keep the unwrapped angle increment below pi/4.
    options.propagation.checkpoints = static_cast<int>(std::max(16.0, std::ceil(4.0 * (x + 3.0)) + 1.0));
    const PropagatorResult result = propagate_effective(omega, b, theta, period, steps, options);
    return OracleGauge{dressed_frame_spectrum(result, omega, b, theta, mode), result.estimated_error, steps};
}

double max_population_transfer(double omega, double b, double theta, double t_final, long steps, DressingMode mode) {
    const EffectiveHamiltonian h(omega, b, theta, mode);
    const long minimum = minimum_effective_steps(omega, b, t_final);
    if (steps < minimum) throw InputError("max_population_transfer: too few steps");
    double peak = 0.0;
    auto generator = [&h](double t) -> CMatrix2 { return kI * h.at(t); };
    rk4<CMatrix2>(generator, t_final, steps, nullptr, {},
                  [&peak](long, double, const CMatrix2& u) { peak = std::max(peak, std::norm(u(1, 0))); });
    return peak;
}

long recommended_full_steps(const FieldConfig& config, Regime regime, int cycles) {
    const LabHamiltonian h(config, regime);
    const double span = cycles * config.period();
    return static_cast<long>(std::ceil(span * h.spectral_radius() / 0.005));
}

PropagatorResult propagate_full(const FieldConfig& config, Regime regime, int cycles, long steps,
                                const PropagationOptions& options) {
    if (cycles < 1) throw InputError("cycles must be at least 1");
    const LabHamiltonian h(config, regime);
    const double t_final = cycles * config.period();
    const long minimum = static_cast<long>(std::ceil(t_final * h.spectral_radius() / 0.2));
    if (steps < minimum) {
        std::ostringstream msg;
        msg << "full propagation needs at least " << minimum << " steps to resolve 2 pi / c, got " << steps;
        throw InputError(msg.str());
    }
    PropagationOptions per_run = options;
    per_run.checkpoints = options.checkpoints * cycles;
    const Generator4 generator = [&h](double t) -> CMatrix4 { return -kI * h.at(t); };
    PropagatorResult result = propagate_generator(generator, t_final, steps, per_run);
    if (!config.adiabatically_decoupled()) {
        std::ostringstream msg;
        msg << "omega/c = " << config.omega / config.c << " exceeds the decoupling threshold "
            << config.decoupling_threshold << "; pair mixing expected";
        result.warnings.push_back(msg.str());
    }
    return result;
}

PhaseExtraction extract_phases(const PropagatorResult& result, const LabHamiltonian& hamiltonian,
                               double mixing_tolerance) {
    if (result.dimension != 4) throw InputError("extract_phases expects a 4x4 propagation");
    if (result.checkpoints.size() < 2) throw InputError("extract_phases needs checkpoints");
    const double period = hamiltonian.config().period();
    const double cycles_real = result.t_final / period;
    const int cycles = static_cast<int>(std::lround(cycles_real));
    if (cycles < 1 || std::abs(cycles_real - cycles) > 1e-9 * std::max(1.0, cycles_real))
        throw InputError("extract_phases requires an integer number of drive cycles");

    // Dynamical phases: Simpson on every integrator step, recorded at checkpoints.
    const long steps = result.step_count;
    const double h = result.t_final / static_cast<double>(steps);
    auto energies = [&hamiltonian](double t) {
        const CMatrix4 ham = hamiltonian.at(t);
        const CMatrix4 frame = hamiltonian.wigner_frame(t);
        Eigen::Array4d e;
        for (int k = 0; k < 4; ++k) e(k) = (frame.col(k).adjoint() * ham * frame.col(k))(0, 0).real();
        return e;
    };
    std::vector<Eigen::Array4d> integral_at;
    integral_at.reserve(result.checkpoints.size());
    Eigen::Array4d integral = Eigen::Array4d::Zero();
    Eigen::Array4d e_start = energies(0.0);
    size_t next = 0;
    if (result.checkpoints[0].step == 0) {
        integral_at.push_back(integral);
        next = 1;
    }
    for (long i = 0; i < steps && next < result.checkpoints.size(); ++i) {
        const double t = static_cast<double>(i) * h;
        const Eigen::Array4d e_mid = energies(t + 0.5 * h);
        const Eigen::Array4d e_end = energies(static_cast<double>(i + 1) * h);
        integral += (h / 6.0) * (e_start + 4.0 * e_mid + e_end);
        e_start = e_end;
        if (result.checkpoints[next].step == i + 1) {
            integral_at.push_back(integral);
            ++next;
        }
    }

    const CMatrix4 frame0 = instantaneous_eigenbasis(hamiltonian, 0.0).vectors;

    PhaseExtraction out;
    out.cycles = cycles;

    std::array<double, 2> g32{0.0, 0.0};        // unwrapped, index 0: m=+3/2, 1: m=-3/2
    std::array<double, 2> g12{0.0, 0.0};        // unwrapped, index 0: branch -> +1/2, 1: -> -1/2
    std::array<double, 2> raw32{0.0, 0.0};
    std::array<double, 2> raw12{0.0, 0.0};
    Eigen::Matrix2cd previous_vectors = Eigen::Matrix2cd::Identity();
    bool have_vectors = false;

    for (size_t k = 0; k < result.checkpoints.size(); ++k) {
        const auto& cp = result.checkpoints[k];
        const Eigen::Array4d& phi = integral_at[k];
        const CMatrix4 frame = instantaneous_eigenbasis(hamiltonian, cp.t).vectors;
        const CMatrix4 amp = frame.adjoint() * CMatrix4(cp.u) * frame0;

        for (int i : {0, 3})
            for (int j : {1, 2}) out.leakage = std::max({out.leakage, std::abs(amp(i, j)), std::abs(amp(j, i))});

        if (cp.step == 0) continue;

        // +-3/2: per-state phases.
        const std::array<int, 2> idx32{0, 3};
        for (int s = 0; s < 2; ++s) {
            const double now = std::arg(amp(idx32[s], idx32[s])) + phi(idx32[s]);
            g32[s] = unwrap_step(raw32[s], now) - raw32[s] + g32[s];
            raw32[s] = now;
        }

        // +-1/2: eigenbranches of the block with the mean dynamical phase removed.
        const double mean_phi = 0.5 * (phi(1) + phi(2));
        const CMatrix2 block = amp.block<2, 2>(1, 1) * std::exp(kI * mean_phi);
        const Eigen::ComplexEigenSolver<CMatrix2> solver(block);
        Eigen::Matrix2cd vectors = solver.eigenvectors();
        Eigen::Vector2cd values = solver.eigenvalues();

        // Branch labelling: continuity with the previous eigenvectors when the
        // branches are separated, otherwise weight on |+1/2>.
        const bool separated = std::abs(values(0) - values(1)) > 1e-6;
        bool swap = false;
        if (have_vectors) {
            const double keep = std::abs(previous_vectors.col(0).dot(vectors.col(0)));
            const double cross = std::abs(previous_vectors.col(0).dot(vectors.col(1)));
            swap = cross > keep;
        } else {
            const double w0 = std::norm(vectors(0, 0));
            const double w1 = std::norm(vectors(0, 1));
            swap = (w1 > w0 + 1e-12) || (std::abs(w1 - w0) <= 1e-12 && std::arg(values(1)) > std::arg(values(0)));
        }
        if (swap) {
            vectors.col(0).swap(vectors.col(1));
            std::swap(values(0), values(1));
        }
        if (separated) {
            previous_vectors = vectors;
            have_vectors = true;
        }
        for (int s = 0; s < 2; ++s) {
            const double now = std::arg(values(s)) - mean_phi + phi(1 + s);
            g12[s] = unwrap_step(raw12[s], now) - raw12[s] + g12[s];
            raw12[s] = now;
        }
    }

    if (out.leakage > mixing_tolerance) {
        std::ostringstream msg;
        msg << "subspace mixing: leakage " << out.leakage << " between the +-1/2 and +-3/2 pairs exceeds "
            << mixing_tolerance << " (omega/c too large?)";
        throw NumericalError(msg.str());
    }

    const Eigen::Array4d& phi_final = integral_at.back();
    auto make = [cycles](double label, double geometric_total, double integral_total) {
        PhaseResult r{};
        r.state_label = label;
        const double geometric = geometric_total / cycles;
        r.dynamical_phase = -integral_total / cycles;
        r.total_phase = geometric + r.dynamical_phase;
        r.geometric_phase = wrap_phase(geometric);
        r.winding = static_cast<int>(std::lround((geometric - r.geometric_phase) / kTwoPi));
        return r;
    };
    out.three_halves = {make(1.5, g32[0], phi_final(0)), make(-1.5, g32[1], phi_final(3))};
    out.one_half = {make(0.5, g12[0], phi_final(1)), make(-0.5, g12[1], phi_final(2))};
    return out;
}

}  // namespace geophase
