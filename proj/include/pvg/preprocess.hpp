#pragma once

#include "pvg/series.hpp"

#include <cstddef>
#include <vector>

namespace pvg {

/// Filter, decimate and segment a long recording.
struct PreprocessConfig {
    double cutoff_hz = 25.0;
    int filter_order = 4;
    double target_rate_hz = 50.0;
    double segment_seconds = 10.0;
    std::size_t n_segments = 30;

    void validate() const;
    [[nodiscard]] std::size_t segment_length() const;
};

/// Integer decimation factor source_rate / target_rate. Throws RateMismatch
/// unless the ratio is an integer to 1e-9 relative tolerance.
[[nodiscard]] std::size_t decimation_factor(double source_rate_hz, double target_rate_hz);

/// Zero-phase low-pass at cfg.cutoff_hz, keep every k-th sample, then cut
/// cfg.n_segments consecutive non-overlapping segments from the start of the
/// decimated signal. Each segment has dt = 1 / target_rate_hz and t0 set to
/// its start time in the recording.
[[nodiscard]] std::vector<TimeSeries> preprocess(const TimeSeries& series,
                                                 const PreprocessConfig& cfg);

}  // namespace pvg
