#include "geophase/field_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace geophase {

void FieldConfig::validate() const {
    if (!std::isfinite(c) || c <= 0.0) throw InputError("c must be positive");
    if (!std::isfinite(b) || b < 0.0) throw InputError("b must be non-negative");
    if (!std::isfinite(omega) || omega <= 0.0) throw InputError("omega must be positive");
    if (!std::isfinite(theta) || theta < 0.0 || theta > kPi) throw InputError("theta must lie in [0, pi]");
    if (!(decoupling_threshold > 0.0)) throw InputError("decoupling threshold must be positive");
}

FieldConfig field_config_from_json(std::string_view json_text, const FieldConfig& defaults) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw InputError("config must be a JSON object");

    FieldConfig config = defaults;
    auto read = [&](const char* key, double& target) {
        if (!doc.contains(key)) return;
        if (!doc[key].is_number()) throw InputError(std::string("config key '") + key + "' must be a number");
        target = doc[key].get<double>();
    };
    read("c", config.c);
    read("b", config.b);
    read("omega", config.omega);
    read("theta_rad", config.theta);
    config.validate();
    return config;
}

std::string to_json(const FieldConfig& config) {
    nlohmann::ordered_json doc;
    doc["c"] = config.c;
    doc["b"] = config.b;
    doc["omega"] = config.omega;
    doc["theta_rad"] = config.theta;
    return doc.dump();
}

std::string_view to_string(Regime regime) {
    return regime == Regime::Abelian ? "abelian" : "non_abelian";
}

LabHamiltonian::LabHamiltonian(const FieldConfig& config, Regime regime) : config_(config), regime_(regime) {
    config_.validate();
    const SpinOperators ops = spin_operators(Spin::three_halves());
    sx_ = ops.sx;
    sy_ = ops.sy;
    sz_ = ops.sz;
    small_d_ = wigner_small_d(Spin::three_halves(), config_.theta).cast<Complex>();
}

CMatrix4 LabHamiltonian::rotated_sz_at(double t) const {
    const double phi = config_.omega * t;
    const double st = std::sin(config_.theta);
    return (st * std::cos(phi)) * sx_ + (st * std::sin(phi)) * sy_ + std::cos(config_.theta) * sz_;
}

CMatrix4 LabHamiltonian::at(double t) const {
    const CMatrix4 szp = rotated_sz_at(t);
    // S^2/3 = (15/4)/3 = 5/4 for spin 3/2.
    CMatrix4 h = config_.c * (szp * szp - 1.25 * CMatrix4::Identity());
    const double b = effective_b();
    if (b != 0.0) h -= b * szp;
    return h;
}

std::array<double, 4> LabHamiltonian::level_energies() const {
    const double b = effective_b();
    std::array<double, 4> e{};
    for (int k = 0; k < 4; ++k) {
        const double m = 1.5 - k;
        e[k] = config_.c * (m * m - 1.25) - b * m;
    }
    return e;
}

double LabHamiltonian::spectral_radius() const {
    const auto e = level_energies();
    double r = 0.0;
    for (double v : e) r = std::max(r, std::abs(v));
    return r;
}

CMatrix4 LabHamiltonian::wigner_frame(double t) const {
    const double phi = config_.omega * t;
    CMatrix4 d = small_d_;
    for (int row = 0; row < 4; ++row) d.row(row) *= std::exp(-kI * phi * (1.5 - row));
    return d;
}

CMatrix4 hamiltonian_at(const LabHamiltonian& h, double t) { return h.at(t); }

InstantaneousBasis instantaneous_eigenbasis(const LabHamiltonian& h, double t, double min_overlap) {
    const CMatrix4 ham = h.at(t);
    const Eigen::SelfAdjointEigenSolver<CMatrix4> solver(ham);
    if (solver.info() != Eigen::Success) throw NumericalError("eigensolver failed");
    const auto& evals = solver.eigenvalues();
    const CMatrix4& evecs = solver.eigenvectors();

    // Cluster (ascending) eigenvalues into degenerate groups.
    const double scale = std::max(1.0, h.spectral_radius());
    const double tol = 1e-9 * scale;
    std::vector<std::vector<int>> clusters;
    for (int k = 0; k < 4; ++k) {
        if (clusters.empty() || evals(k) - evals(clusters.back().back()) > tol) clusters.emplace_back();
        clusters.back().push_back(k);
    }

    const CMatrix4 frame = h.wigner_frame(t);
    InstantaneousBasis basis;
    basis.t = t;
    basis.min_overlap = 1.0;
    for (int col = 0; col < 4; ++col) {
        const Eigen::Vector4cd w = frame.col(col);
        Eigen::Vector4cd best = Eigen::Vector4cd::Zero();
        double best_norm = -1.0;
        for (const auto& cluster : clusters) {
            Eigen::Vector4cd proj = Eigen::Vector4cd::Zero();
            for (int k : cluster) proj += evecs.col(k) * evecs.col(k).dot(w);
            const double nrm = proj.norm();
            if (nrm > best_norm) {
                best_norm = nrm;
                best = proj;
            }
        }
        if (best_norm < min_overlap) {
            std::ostringstream msg;
            msg << "eigenvector matching overlap " << best_norm << " below " << min_overlap
                << " for m=" << (1.5 - col) << " (frame convention drift)";
            throw NumericalError(msg.str());
        }
        basis.min_overlap = std::min(basis.min_overlap, best_norm);
        const Eigen::Vector4cd v = best / best_norm;
        basis.vectors.col(col) = v;
        basis.energies[col] = (v.adjoint() * ham * v)(0, 0).real();
    }
    return basis;
}

}  // namespace geophase
