#include "pvg/series.hpp"

#include "pvg/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include <boost/math/distributions/normal.hpp>

namespace pvg {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::InvalidConfig: return "InvalidConfig";
        case ErrorCode::TooShort: return "TooShort";
        case ErrorCode::RateMismatch: return "RateMismatch";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::Disconnected: return "Disconnected";
        case ErrorCode::DegenerateBaseline: return "DegenerateBaseline";
        case ErrorCode::InsufficientSupport: return "InsufficientSupport";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

DisconnectedError::DisconnectedError(std::size_t components)
    : Error(ErrorCode::Disconnected,
            "graph is disconnected (" + std::to_string(components) + " components)"),
      components_(components) {}

TimeSeries::TimeSeries(std::vector<double> values, double dt, double t0)
    : values_(std::move(values)), dt_(dt), t0_(t0) {
    if (values_.size() < 2) {
        throw Error(ErrorCode::InvalidParams, "time series needs at least 2 samples");
    }
    if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
        throw Error(ErrorCode::InvalidParams, "sample interval must be finite and > 0");
    }
    if (!std::isfinite(t0_)) {
        throw Error(ErrorCode::InvalidParams, "start time must be finite");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw Error(ErrorCode::InvalidParams,
                        "non-finite sample at index " + std::to_string(i));
        }
    }
}

NormalizedSeries normalize(const TimeSeries& series) {
    const auto values = series.values();
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;

    std::vector<double> out(values.size(), 0.0);
    const bool constant = !(hi > lo);
    if (!constant) {
        const double range = hi - lo;
        for (std::size_t i = 0; i < values.size(); ++i) {
            out[i] = (values[i] - lo) / range;
        }
    }
    return NormalizedSeries(TimeSeries(std::move(out), series.dt(), series.t0()), lo, hi,
                            constant);
}

void AmSignalParams::validate() const {
    auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidParams, msg); };
    const double all[] = {carrier_amplitude, carrier_hz, modulation_hz, modulation_depth,
                          noise_std,         duration_s, dt};
    for (double v : all) {
        if (!std::isfinite(v)) fail("AM parameters must be finite");
    }
    if (!(modulation_hz >= 0.0)) fail("modulation frequency must be >= 0");
    if (!(carrier_hz > modulation_hz)) fail("carrier frequency must exceed modulation frequency");
    if (!(dt > 0.0)) fail("dt must be > 0");
    if (!(duration_s >= dt)) fail("duration must be >= dt");
    if (!(modulation_depth >= 0.0)) fail("modulation depth must be >= 0");
    if (!(noise_std >= 0.0)) fail("noise_std must be >= 0");
    if (sample_count() < 2) fail("AM signal must contain at least 2 samples");
}

std::size_t AmSignalParams::sample_count() const {
    return static_cast<std::size_t>(std::llround(duration_s / dt));
}

TimeSeries generate_am(const AmSignalParams& params) {
    params.validate();
    const std::size_t n = params.sample_count();
    constexpr double two_pi = 2.0 * std::numbers::pi;

    std::mt19937_64 rng(params.rng_seed);
    std::normal_distribution<double> noise(0.0, 1.0);

    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * params.dt;
        const double envelope =
            params.carrier_amplitude *
            (1.0 + params.modulation_depth * std::cos(two_pi * params.modulation_hz * t));
        double v = envelope * std::sin(two_pi * params.carrier_hz * t);
        if (params.noise_std > 0.0) v += params.noise_std * noise(rng);
        values[i] = v;
    }
    return TimeSeries(std::move(values), params.dt);
}

TimeSeries generate_pink_noise(std::size_t n, double dt, double std_dev,
                               std::uint64_t rng_seed) {
    if (n < 2) throw Error(ErrorCode::InvalidParams, "pink noise needs at least 2 samples");
    if (!(std_dev >= 0.0) || !std::isfinite(std_dev)) {
        throw Error(ErrorCode::InvalidParams, "pink noise std must be finite and >= 0");
    }
    std::mt19937_64 rng(rng_seed);
    std::normal_distribution<double> white(0.0, 1.0);

    // Paul Kellet's three-pole pinking filter (accurate to ~0.25 dB above
    // 9 Hz at 44.1 kHz; the shape is what matters for a surrogate).
    double b0 = 0.0, b1 = 0.0, b2 = 0.0;
    std::vector<double> values(n);
    for (auto& v : values) {
        const double w = white(rng);
        b0 = 0.99765 * b0 + w * 0.0990460;
        b1 = 0.96300 * b1 + w * 0.2965164;
        b2 = 0.57000 * b2 + w * 1.0526913;
        v = b0 + b1 + b2 + w * 0.1848;
    }

    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);
    const double scale = var > 0.0 ? std_dev / std::sqrt(var) : 0.0;
    for (auto& v : values) v = (v - mean) * scale;
    return TimeSeries(std::move(values), dt);
}

std::vector<double> autocorrelation(std::span<const double> values, std::size_t max_lag) {
    const std::size_t n = values.size();
    if (max_lag >= n) max_lag = n == 0 ? 0 : n - 1;
    std::vector<double> r(max_lag + 1, 0.0);
    if (n == 0) return r;

    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);

    std::vector<double> centered(n);
    for (std::size_t i = 0; i < n; ++i) centered[i] = values[i] - mean;

    double denom = 0.0;
    for (double c : centered) denom += c * c;
    if (!(denom > 0.0)) return r;

    for (std::size_t lag = 0; lag <= max_lag; ++lag) {
        double acc = 0.0;
        for (std::size_t t = 0; t + lag < n; ++t) acc += centered[t] * centered[t + lag];
        r[lag] = acc / denom;
    }
    return r;
}

double autocorr_significance_bound(std::size_t n) {
    if (n < 3) throw Error(ErrorCode::InvalidParams, "autocorrelation bound needs N >= 3");
    const double tests = static_cast<double>(n - 1);
    const boost::math::normal standard;
    const double z = boost::math::quantile(boost::math::complement(standard, 0.025 / tests));
    return z / std::sqrt(static_cast<double>(n));
}

std::size_t autocorr_max_lag(const TimeSeries& series) {
    const std::size_t n = series.size();
    const double bound = autocorr_significance_bound(n);
    const auto r = autocorrelation(series.values(), n - 1);
    for (std::size_t lag = n - 1; lag >= 1; --lag) {
        if (r[lag] > bound) return lag;
    }
    return 0;
}

}  // namespace pvg
