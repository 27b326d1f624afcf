#include "geophase/sensitivity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "geophase/dressed.hpp"

namespace geophase {

namespace {

void check_inputs(double b, double omega, double theta) {
    if (!std::isfinite(omega) || omega <= 0.0) throw InputError("omega must be positive");
    if (!std::isfinite(b) || b < 0.0) throw InputError("b must be non-negative");
    if (!std::isfinite(theta) || theta < 0.0 || theta > kPi) throw InputError("theta must lie in [0, pi]");
}

constexpr long kBlock = 4096;

struct Welford {
    long n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double v) {
        ++n;
        const double d = v - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (v - mean);
    }

    void merge(const Welford& o) {
        if (o.n == 0) return;
        const long total = n + o.n;
        const double d = o.mean - mean;
        mean += d * static_cast<double>(o.n) / static_cast<double>(total);
        m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) / static_cast<double>(total);
        n = total;
    }
};

}  // namespace

SensitivityReport analytic_sensitivity(Limit limit, double b, double omega, double theta) {
    check_inputs(b, omega, theta);
    const double c = std::abs(std::cos(theta));
    const double s = std::sin(theta);
    SensitivityReport r{};
    r.limit = limit;
    r.b = b;
    r.omega = omega;
    r.theta = theta;
    const double x = b / omega;
    if (limit == Limit::Abelian) {
        if (b == 0.0) throw InputError("the Abelian sensitivity formulas diverge at b = 0");
        r.dgamma_domega = s * s / b;
        r.dgamma_db = omega * s * s / (b * b);
        r.valid = x >= 10.0;
    } else {
        const double root = std::sqrt(4.0 - 3.0 * std::cos(theta) * std::cos(theta));
        r.dgamma_domega = b * c / (2.0 * omega * omega * root);
        r.dgamma_db = c / (2.0 * omega * root);
        r.valid = x <= 0.1;
    }
    return r;
}

SensitivityReport exact_sensitivity(double b, double omega, double theta) {
    check_inputs(b, omega, theta);
    const double x = b / omega;
    const double slope = gauge_exact_slope(x, theta);
    SensitivityReport r{};
    r.b = b;
    r.omega = omega;
    r.theta = theta;
    r.dgamma_db = slope / omega;
    r.dgamma_domega = -x * slope / omega;
    r.dressing_db = -0.5 / omega;
    r.dressing_domega = 0.5 * b / (omega * omega);
    r.valid = true;
    return r;
}

NoiseSample monte_carlo_phase_noise(double b, double omega, double theta, double sigma_b, double sigma_omega, long n,
                                    const NoiseOptions& options) {
    check_inputs(b, omega, theta);
    if (!(sigma_b >= 0.0) || !(sigma_omega >= 0.0)) throw InputError("noise sigmas must be non-negative");
    if (sigma_b > 0.05 * b) throw InputError("sigma_b exceeds 5% of b (outside the linear regime)");
    if (sigma_omega > 0.05 * omega) throw InputError("sigma_omega exceeds 5% of omega (outside the linear regime)");
    if (n < options.min_samples) throw InputError("monte carlo needs at least " + std::to_string(options.min_samples) + " samples");

    const long blocks = (n + kBlock - 1) / kBlock;
    std::vector<Welford> partial(static_cast<size_t>(blocks));
    std::atomic<long> next{0};

    auto worker = [&] {
        for (long k = next++; k < blocks; k = next++) {
            std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                              static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
            std::mt19937_64 rng(seq);
            std::normal_distribution<double> gauss(0.0, 1.0);
            const long count = std::min(kBlock, n - k * kBlock);
            Welford acc;
            for (long i = 0; i < count; ++i) {
                const double bb = std::max(0.0, b + sigma_b * gauss(rng));
                const double ww = omega + sigma_omega * gauss(rng);
                acc.add(gauge_exact(bb / ww, theta));
            }
            partial[static_cast<size_t>(k)] = acc;
        }
    };

    unsigned threads = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<long>(threads, blocks));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    Welford total;
    for (const auto& p : partial) total.merge(p);

    const SensitivityReport exact = exact_sensitivity(b, omega, theta);
    NoiseSample out{};
    out.sigma_b = sigma_b;
    out.sigma_omega = sigma_omega;
    out.n_samples = n;
    out.seed = options.seed;
    out.mean = total.mean;
    out.measured_std = n > 1 ? std::sqrt(total.m2 / static_cast<double>(n - 1)) : 0.0;
    out.linearized_std = std::hypot(exact.dgamma_db * sigma_b, exact.dgamma_domega * sigma_omega);
    return out;
}

}  // namespace geophase
