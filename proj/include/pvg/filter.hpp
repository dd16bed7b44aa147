#pragma once

#include <span>
#include <vector>

namespace pvg {

/// One second-order section, a0 normalized to 1. First-order sections use
/// b2 = a2 = 0.
struct Biquad {
    double b0 = 1.0, b1 = 0.0, b2 = 0.0;
    double a1 = 0.0, a2 = 0.0;

    [[nodiscard]] double dc_gain() const noexcept { return (b0 + b1 + b2) / (1.0 + a1 + a2); }
};

/// Digital Butterworth low-pass via the bilinear transform with frequency
/// prewarping. Sections are ordered with the pole pair farthest from the
/// unit circle first; each section has unit DC gain.
[[nodiscard]] std::vector<Biquad> design_butterworth_lowpass(int order, double cutoff_hz,
                                                             double sample_rate_hz);

/// |H(f)| of a cascade, evaluated on the unit circle.
[[nodiscard]] double magnitude_response(std::span<const Biquad> sections, double freq_hz,
                                        double sample_rate_hz);

/// Single forward pass (transposed direct form II), zero initial state.
[[nodiscard]] std::vector<double> sos_filter(std::span<const Biquad> sections,
                                             std::span<const double> x);

/// Zero-phase forward-backward filtering. Odd-extension padding of
/// 3 * (2 * sections + 1) samples and steady-state initial conditions, so a
/// constant input is returned unchanged.
[[nodiscard]] std::vector<double> sos_filtfilt(std::span<const Biquad> sections,
                                               std::span<const double> x);

}  // namespace pvg
