#include "stablewh/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <thread>

#include "stablewh/errors.hpp"
#include "stablewh/quadrature.hpp"

namespace stablewh {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t fmix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

unsigned resolve_workers(const MCConfig& cfg) {
    if (cfg.n_workers > 0) return cfg.n_workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Runs body(path_index, rng) for every path, split across workers.
/// Exceptions from workers are rethrown on the caller thread.
template <typename Body>
void parallel_paths(const MCConfig& cfg, Body&& body) {
    const unsigned workers = resolve_workers(cfg);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    const std::uint64_t n = cfg.n_paths;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (std::uint64_t k = w; k < n; k += workers) {
                    RngStream rng = rng_stream(cfg.seed, k);
                    body(k, rng);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}
} // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) {
    state_ = fmix64(seed ^ fmix64(stream + kGolden));
    gamma_ = fmix64(state_ ^ kGolden) | 1ull;
}

std::uint64_t RngStream::next_u64() {
    state_ += gamma_;
    return fmix64(state_);
}

double RngStream::next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::next_exponential() { return -std::log(next_uniform()); }

StableSampler::StableSampler(const StableParams& p)
    : alpha_(p.alpha()),
      inv_alpha_(1.0 / p.alpha()),
      shift_(kPi * (p.rho() - 0.5)),
      cauchy_(std::abs(p.alpha() - 1.0) < 1e-9) {}

double StableSampler::sample(RngStream& rng) const {
    const double U = kPi * (rng.next_uniform() - 0.5);
    if (cauchy_) return std::tan(U); // alpha = 1 admissible only when symmetric
    const double W = rng.next_exponential();
    const double t = alpha_ * (U + shift_);
    // Zolotarev/CMS in the (alpha, rho) normalisation: the scale
    // cos(pi alpha (rho - 1/2))^{1/alpha} cancels against the skewness factor.
    return std::sin(t) / std::pow(std::cos(U), inv_alpha_) *
           std::pow(std::cos(U - t) / W, (1.0 - alpha_) * inv_alpha_);
}

double sample_stable_increment(const StableParams& p, double h, RngStream& rng) {
    if (!(h > 0.0)) throw DomainError("sample_stable_increment: h must be > 0");
    return StableSampler(p).sample(rng, h);
}

std::vector<ExitRecord> simulate_two_sided_exit(const StableParams& p, double x,
                                                const MCConfig& cfg) {
    if (!(x > -1.0 && x < 1.0)) throw DomainError("simulate_two_sided_exit: x must be in (-1,1)");
    if (!(cfg.time_step > 0.0)) throw DomainError("simulate_two_sided_exit: h must be > 0");
    const StableSampler sampler(p);
    const double scale = std::pow(cfg.time_step, sampler.inv_alpha());
    std::vector<ExitRecord> records(cfg.n_paths);
    parallel_paths(cfg, [&](std::uint64_t k, RngStream& rng) {
        double pos = x;
        std::uint64_t steps = 0;
        while (pos > -1.0 && pos < 1.0) {
            if (++steps > cfg.step_cap)
                throw BudgetError("simulate_two_sided_exit: path exceeded step cap");
            pos += scale * sampler.sample(rng);
        }
        records[k] = {static_cast<std::int8_t>(pos >= 1.0 ? 1 : 2), std::abs(pos) - 1.0, steps};
    });
    return records;
}

std::vector<LadderOvershootSample> estimate_ladder_overshoot(const StableParams& p, double a,
                                                             const MCConfig& cfg, int start_sign) {
    if (p.alpha() > 1.0)
        throw RegimeError("estimate_ladder_overshoot: requires alpha in (0,1]");
    if (!(a > 0.0)) throw DomainError("estimate_ladder_overshoot: a must be > 0");
    const double x0 = (start_sign >= 0 ? 1.0 : -1.0) * std::exp(-a);
    const StableSampler sampler(p);
    const double scale = std::pow(cfg.time_step, sampler.inv_alpha());
    std::vector<LadderOvershootSample> out(cfg.n_paths);
    parallel_paths(cfg, [&](std::uint64_t k, RngStream& rng) {
        double pos = x0;
        std::uint64_t steps = 0;
        while (pos > -1.0 && pos < 1.0) {
            if (++steps > cfg.step_cap)
                throw BudgetError("estimate_ladder_overshoot: path exceeded step cap");
            pos += scale * sampler.sample(rng);
        }
        out[k] = {std::log(std::abs(pos)), static_cast<std::int8_t>(pos >= 1.0 ? 1 : 2)};
    });
    return out;
}

MCEstimate proportion_estimate(std::uint64_t hits, std::uint64_t n) {
    MCEstimate e;
    e.n_effective = n;
    if (n == 0) return e;
    e.value = static_cast<double>(hits) / static_cast<double>(n);
    e.std_error = std::sqrt(std::max(e.value * (1.0 - e.value), 1e-300) / static_cast<double>(n));
    return e;
}

namespace {
/// 16-point Gauss-Legendre on [a, b].
double gl16(const std::function<double(double)>& f, double a, double b) {
    static const double xs[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                                 0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                                 0.9445750230732326, 0.9894009349916499};
    static const double ws[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                                 0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                                 0.0622535239386479, 0.0271524594117541};
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < 8; ++i)
        acc += ws[i] * (f(mid + half * xs[i]) + f(mid - half * xs[i]));
    return acc * half;
}
} // namespace

double ks_statistic_vs_density(std::vector<double> samples,
                               const std::function<double(double)>& density,
                               double origin_exponent, double total_mass) {
    if (samples.empty()) throw DomainError("ks_statistic_vs_density: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double cdf = 0.0, prev = 0.0, d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double x = samples[i];
        if (x > prev) {
            if (prev == 0.0) {
                // singular first segment: map to (0,1) and declare the exponent
                auto f = [&](double u, double) { return density(u * x) * x; };
                cdf += integrate_01<double>(f, std::min(origin_exponent, 0.999), 0.0, {1e-9, 1e-13, 12});
            } else {
                cdf += gl16(density, prev, x);
            }
            prev = x;
        }
        const double F = std::min(cdf / total_mass, 1.0);
        d = std::max(d, std::abs(F - static_cast<double>(i) / n));
        d = std::max(d, std::abs(F - static_cast<double>(i + 1) / n));
    }
    return d;
}

namespace {
double kolmogorov_sf(double lambda) {
    if (lambda < 0.2) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-16) break;
    }
    return std::min(std::max(2.0 * sum, 0.0), 1.0);
}
} // namespace

TwoSampleKs two_sample_ks(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw DomainError("two_sample_ks: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    return {d, kolmogorov_sf((ne + 0.12 + 0.11 / ne) * d)};
}

Histogram Histogram::build(const std::vector<double>& samples, double lo, double hi, int n_bins) {
    if (!(hi > lo) || n_bins < 1) throw DomainError("Histogram::build: bad range");
    Histogram h;
    h.edges.resize(n_bins + 1);
    for (int k = 0; k <= n_bins; ++k)
        h.edges[k] = lo + (hi - lo) * static_cast<double>(k) / n_bins;
    h.counts.assign(n_bins, 0);
    for (double s : samples) {
        if (s < lo || s >= hi) continue;
        const int k = std::min(static_cast<int>((s - lo) / (hi - lo) * n_bins), n_bins - 1);
        ++h.counts[k];
    }
    h.total = samples.size();
    return h;
}

double Histogram::density(int k) const {
    const double width = edges[k + 1] - edges[k];
    if (total == 0 || width <= 0.0) return 0.0;
    return static_cast<double>(counts[k]) / (static_cast<double>(total) * width);
}

void Histogram::write_csv(const std::string& path, const std::vector<std::string>& header_comments,
                          const std::function<double(double)>& analytic_density) const {
    std::ofstream out(path);
    if (!out) throw Error("Histogram::write_csv: cannot open " + path);
    out.precision(17);
    for (const auto& line : header_comments) out << "# " << line << "\n";
    out << "bin_left,bin_right,count,density,analytic_density\n";
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        const double mid = 0.5 * (edges[k] + edges[k + 1]);
        out << edges[k] << "," << edges[k + 1] << "," << counts[k] << "," << density(static_cast<int>(k))
            << "," << (analytic_density ? analytic_density(mid) : 0.0) << "\n";
    }
}

} // namespace stablewh
