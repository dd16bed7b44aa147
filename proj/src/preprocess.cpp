#include "pvg/preprocess.hpp"

#include "pvg/error.hpp"
#include "pvg/filter.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pvg {

void PreprocessConfig::validate() const {
    auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidConfig, msg); };
    if (!(cutoff_hz > 0.0) || !std::isfinite(cutoff_hz)) fail("cutoff_hz must be > 0");
    if (filter_order < 1) fail("filter_order must be >= 1");
    if (!(target_rate_hz > 0.0) || !std::isfinite(target_rate_hz)) fail("target_rate_hz must be > 0");
    if (cutoff_hz > target_rate_hz / 2.0) fail("cutoff_hz must not exceed target_rate_hz / 2");
    if (!(segment_seconds > 0.0) || !std::isfinite(segment_seconds)) fail("segment_seconds must be > 0");
    if (n_segments < 1) fail("n_segments must be >= 1");
    if (segment_length() < 2) fail("segments must contain at least 2 samples");
}

std::size_t PreprocessConfig::segment_length() const {
    const double samples = segment_seconds * target_rate_hz;
    const double rounded = std::round(samples);
    if (std::abs(samples - rounded) > 1e-9 * std::max(1.0, samples)) {
        throw Error(ErrorCode::InvalidConfig,
                    "segment_seconds * target_rate_hz must be an integer sample count");
    }
    return static_cast<std::size_t>(rounded);
}

std::size_t decimation_factor(double source_rate_hz, double target_rate_hz) {
    const double ratio = source_rate_hz / target_rate_hz;
    const double rounded = std::round(ratio);
    if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * ratio) {
        throw Error(ErrorCode::RateMismatch,
                    "source rate " + std::to_string(source_rate_hz) +
                        " Hz is not an integer multiple of target rate " +
                        std::to_string(target_rate_hz) + " Hz");
    }
    return static_cast<std::size_t>(rounded);
}

std::vector<TimeSeries> preprocess(const TimeSeries& series, const PreprocessConfig& cfg) {
    cfg.validate();
    const double source_rate = series.rate_hz();
    const std::size_t factor = decimation_factor(source_rate, cfg.target_rate_hz);
    const std::size_t seg_len = cfg.segment_length();
    const std::size_t needed = cfg.n_segments * seg_len;

    // Samples kept by decimation: indices 0, k, 2k, ...
    const std::size_t available = (series.size() + factor - 1) / factor;
    if (available < needed) {
        throw Error(ErrorCode::TooShort,
                    "recording supplies " + std::to_string(available) + " samples at " +
                        std::to_string(cfg.target_rate_hz) + " Hz, need " +
                        std::to_string(needed));
    }
    if (cfg.cutoff_hz >= source_rate / 2.0) {
        throw Error(ErrorCode::InvalidConfig, "cutoff_hz must be below the source Nyquist rate");
    }

    const auto sections = design_butterworth_lowpass(cfg.filter_order, cfg.cutoff_hz, source_rate);
    // Filtering the offset from the first sample keeps a constant recording
    // exactly constant; the filter has unit DC gain, so nothing else changes.
    const double offset = series[0];
    std::vector<double> shifted(series.values().begin(), series.values().end());
    for (double& v : shifted) v -= offset;
    auto filtered = sos_filtfilt(sections, shifted);
    for (double& v : filtered) v += offset;

    const double out_dt = 1.0 / cfg.target_rate_hz;
    std::vector<TimeSeries> segments;
    segments.reserve(cfg.n_segments);
    for (std::size_t s = 0; s < cfg.n_segments; ++s) {
        std::vector<double> seg(seg_len);
        const std::size_t first = s * seg_len;
        for (std::size_t k = 0; k < seg_len; ++k) seg[k] = filtered[(first + k) * factor];
        segments.emplace_back(std::move(seg), out_dt, series.time(first * factor));
    }
    return segments;
}

}  // namespace pvg
