#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pvg {

/// Uniformly sampled scalar signal. Sample i sits at t0 + i*dt.
///
/// The constructor enforces the invariants (at least two samples, finite
/// values, dt > 0), so every TimeSeries in flight is valid.
class TimeSeries {
public:
    TimeSeries(std::vector<double> values, double dt, double t0 = 0.0);

    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }
    [[nodiscard]] double dt() const noexcept { return dt_; }
    [[nodiscard]] double t0() const noexcept { return t0_; }
    [[nodiscard]] double time(std::size_t i) const noexcept {
        return t0_ + static_cast<double>(i) * dt_;
    }
    [[nodiscard]] double rate_hz() const noexcept { return 1.0 / dt_; }

private:
    std::vector<double> values_;
    double dt_;
    double t0_;
};

/// A TimeSeries affinely mapped onto [0,1]. Produced only by normalize().
class NormalizedSeries {
public:
    [[nodiscard]] const TimeSeries& series() const noexcept { return series_; }
    [[nodiscard]] std::size_t size() const noexcept { return series_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return series_.values(); }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return series_[i]; }
    [[nodiscard]] double dt() const noexcept { return series_.dt(); }
    [[nodiscard]] double t0() const noexcept { return series_.t0(); }

    [[nodiscard]] double original_min() const noexcept { return original_min_; }
    [[nodiscard]] double original_max() const noexcept { return original_max_; }
    /// True when the source had max == min; values are then all zero.
    [[nodiscard]] bool is_constant() const noexcept { return constant_; }

private:
    friend NormalizedSeries normalize(const TimeSeries& series);

    NormalizedSeries(TimeSeries series, double lo, double hi, bool constant)
        : series_(std::move(series)), original_min_(lo), original_max_(hi), constant_(constant) {}

    TimeSeries series_;
    double original_min_;
    double original_max_;
    bool constant_;
};

/// Min-max normalization onto [0,1]. A constant input maps to all zeros with
/// is_constant() set instead of failing.
[[nodiscard]] NormalizedSeries normalize(const TimeSeries& series);

struct AmSignalParams {
    double carrier_amplitude = 1.0;
    double carrier_hz = 40.0;
    double modulation_hz = 6.0;
    double modulation_depth = 0.5;
    double noise_std = 0.01;
    double duration_s = 5.0;
    double dt = 0.001;
    std::uint64_t rng_seed = 0;

    /// Throws Error(InvalidParams) on violated invariants.
    void validate() const;
    [[nodiscard]] std::size_t sample_count() const;
};

/// A_c (1 + m cos(2 pi f_m t)) sin(2 pi f_c t) + eta, eta ~ N(0, noise_std^2).
[[nodiscard]] TimeSeries generate_am(const AmSignalParams& params);

/// Seeded 1/f noise (white Gaussian noise shaped by a pinking filter), scaled
/// to unit variance and then multiplied by `std_dev`. Used as a surrogate
/// recording when no real data is available.
[[nodiscard]] TimeSeries generate_pink_noise(std::size_t n, double dt, double std_dev,
                                             std::uint64_t rng_seed);

/// Biased sample autocorrelation r(0..max_lag); r(0) = 1. A zero-variance
/// input yields all zeros.
[[nodiscard]] std::vector<double> autocorrelation(std::span<const double> values,
                                                  std::size_t max_lag);

/// Largest lag whose sample autocorrelation exceeds the white-noise
/// significance bound z / sqrt(N), where z is the two-sided 5% normal
/// quantile Bonferroni-corrected over the N-1 lags examined. Returns 0 when
/// no lag is significant.
[[nodiscard]] std::size_t autocorr_max_lag(const TimeSeries& series);

/// The bound used by autocorr_max_lag for a series of length n.
[[nodiscard]] double autocorr_significance_bound(std::size_t n);

}  // namespace pvg
