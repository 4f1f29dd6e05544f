#pragma once

// Stable-process path simulation (Chambers-Mallows-Stuck increments in the
// (alpha, rho) parametrisation) and the statistical estimators used to verify
// the closed-form exit laws.  Streams are counter-based per path, so results
// are bitwise reproducible and independent of the worker count.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stablewh/stable_params.hpp"

namespace stablewh {

struct MCConfig {
    std::uint64_t n_paths = 10000;
    double time_step = 1e-3;
    std::uint64_t seed = 1;
    unsigned n_workers = 0;            // 0 = hardware concurrency
    std::uint64_t step_cap = 100000000; // per-path budget
};

struct MCEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t n_effective = 0;
};

/// Counter-based substream: SplitMix64 with a per-stream increment, so
/// distinct (seed, stream) pairs walk disjoint arithmetic progressions.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next_u64();
    /// Uniform on the open interval (0,1).
    double next_uniform();
    /// Standard exponential.
    double next_exponential();

  private:
    std::uint64_t state_;
    std::uint64_t gamma_;
};

/// Deterministic substream factory (counter-based construction).
inline RngStream rng_stream(std::uint64_t seed, std::uint64_t stream_index) {
    return RngStream(seed, stream_index);
}

/// Precomputed Chambers-Mallows-Stuck sampler for one (alpha, rho).
class StableSampler {
  public:
    explicit StableSampler(const StableParams& p);

    /// One unit-time increment X_1.
    double sample(RngStream& rng) const;
    /// One increment over time h, i.e. h^{1/alpha} X_1.
    double sample(RngStream& rng, double h) const { return std::pow(h, inv_alpha_) * sample(rng); }

    double inv_alpha() const { return inv_alpha_; }

  private:
    double alpha_;
    double inv_alpha_;
    double shift_;  // pi (rho - 1/2)
    bool cauchy_;
};

/// Single stable increment over time h (convenience wrapper).
double sample_stable_increment(const StableParams& p, double h, RngStream& rng);

struct ExitRecord {
    std::int8_t side;      // 1 = upper barrier, 2 = lower barrier
    double overshoot;      // |X_exit| - barrier
    std::uint64_t n_steps;
};

/// Simulates the random-walk skeleton X_{kh} from x until first exit of
/// (-1,1); one record per path.  Paths are distributed over workers with
/// per-path substreams.  Throws BudgetError if a path exceeds cfg.step_cap.
std::vector<ExitRecord> simulate_two_sided_exit(const StableParams& p, double x,
                                                const MCConfig& cfg);

struct LadderOvershootSample {
    double u;        // log |X_exit|
    std::int8_t j;   // exit side state
};

/// Ladder-overshoot estimator via self-similarity: paths start at
/// sign * e^{-a} and run to the exit of (-1,1); (u, j) has the law of
/// (H+(T_a) - a, J+(T_a)).  Requires alpha in (0,1] (unkilled ascending ladder).
std::vector<LadderOvershootSample> estimate_ladder_overshoot(const StableParams& p, double a,
                                                             const MCConfig& cfg,
                                                             int start_sign = +1);

// ---- statistics helpers ----------------------------------------------------

/// Binomial proportion estimate with standard error.
MCEstimate proportion_estimate(std::uint64_t hits, std::uint64_t n);

/// One-sample Kolmogorov-Smirnov statistic sup_x |F_n(x) - F(x)| against a
/// density on (0, inf) with an integrable algebraic singularity x^{-origin_exponent}
/// at 0.  The CDF is accumulated across the sorted sample with per-segment
/// quadrature; total_mass normalises the density.
double ks_statistic_vs_density(std::vector<double> samples,
                               const std::function<double(double)>& density,
                               double origin_exponent, double total_mass);

/// Two-sample Kolmogorov-Smirnov statistic and its asymptotic p-value.
struct TwoSampleKs {
    double statistic;
    double p_value;
};
TwoSampleKs two_sample_ks(std::vector<double> a, std::vector<double> b);

/// Histogram with an optional analytic overlay, in the CSV layout
/// bin_left, bin_right, count, density, analytic_density.
struct Histogram {
    std::vector<double> edges;      // size n_bins + 1
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;

    static Histogram build(const std::vector<double>& samples, double lo, double hi, int n_bins);
    /// Empirical density of bin k (count / (total * width)).
    double density(int k) const;
    /// Writes the CSV contract, prepending '#'-prefixed header lines.
    void write_csv(const std::string& path, const std::vector<std::string>& header_comments,
                   const std::function<double(double)>& analytic_density) const;
};

} // namespace stablewh
