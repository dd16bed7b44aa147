#include "pvg/filter.hpp"

#include "pvg/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace pvg {

namespace {

using cplx = std::complex<double>;

// Filter state initialised to the steady state reached by a constant unit
// input, for every section in the cascade.
std::vector<std::array<double, 2>> steady_state(std::span<const Biquad> sections) {
    std::vector<std::array<double, 2>> zi(sections.size());
    double scale = 1.0;
    for (std::size_t s = 0; s < sections.size(); ++s) {
        const auto& q = sections[s];
        const double g = q.dc_gain();
        zi[s] = {(g - q.b0) * scale, (q.b2 - q.a2 * g) * scale};
        scale *= g;
    }
    return zi;
}

void run_cascade(std::span<const Biquad> sections, std::vector<double>& x,
                 std::vector<std::array<double, 2>> state) {
    for (std::size_t s = 0; s < sections.size(); ++s) {
        const auto& q = sections[s];
        double z0 = state[s][0];
        double z1 = state[s][1];
        for (double& v : x) {
            const double in = v;
            const double out = q.b0 * in + z0;
            z0 = q.b1 * in - q.a1 * out + z1;
            z1 = q.b2 * in - q.a2 * out;
            v = out;
        }
    }
}

}  // namespace

std::vector<Biquad> design_butterworth_lowpass(int order, double cutoff_hz,
                                               double sample_rate_hz) {
    if (order < 1) throw Error(ErrorCode::InvalidParams, "filter order must be >= 1");
    if (!(sample_rate_hz > 0.0) || !(cutoff_hz > 0.0) || !(cutoff_hz < sample_rate_hz / 2.0)) {
        throw Error(ErrorCode::InvalidParams, "cutoff must lie in (0, fs/2)");
    }
    const double fs2 = 2.0 * sample_rate_hz;
    const double warped = fs2 * std::tan(std::numbers::pi * cutoff_hz / sample_rate_hz);

    std::vector<std::pair<double, Biquad>> sections;
    // Upper-half-plane prototype poles; each stands for a conjugate pair.
    for (int k = 0; k < order / 2; ++k) {
        const double theta = std::numbers::pi * (2.0 * k + 1.0 + order) / (2.0 * order);
        const cplx s = warped * std::polar(1.0, theta);
        const cplx z = (fs2 + s) / (fs2 - s);
        Biquad q;
        q.a1 = -2.0 * z.real();
        q.a2 = std::norm(z);
        const double g = (1.0 + q.a1 + q.a2) / 4.0;
        q.b0 = g;
        q.b1 = 2.0 * g;
        q.b2 = g;
        sections.emplace_back(std::abs(z), q);
    }
    if (order % 2 == 1) {
        const double s = -warped;
        const double z = (fs2 + s) / (fs2 - s);
        Biquad q;
        q.a1 = -z;
        const double g = (1.0 + q.a1) / 2.0;
        q.b0 = g;
        q.b1 = g;
        sections.emplace_back(std::abs(z), q);
    }
    std::stable_sort(sections.begin(), sections.end(),
                     [](const auto& l, const auto& r) { return l.first < r.first; });

    std::vector<Biquad> out;
    out.reserve(sections.size());
    for (const auto& [radius, q] : sections) out.push_back(q);
    return out;
}

double magnitude_response(std::span<const Biquad> sections, double freq_hz,
                          double sample_rate_hz) {
    const cplx zinv = std::polar(1.0, -2.0 * std::numbers::pi * freq_hz / sample_rate_hz);
    cplx h = 1.0;
    for (const auto& q : sections) {
        const cplx num = q.b0 + zinv * (q.b1 + zinv * q.b2);
        const cplx den = 1.0 + zinv * (q.a1 + zinv * q.a2);
        h *= num / den;
    }
    return std::abs(h);
}

std::vector<double> sos_filter(std::span<const Biquad> sections, std::span<const double> x) {
    std::vector<double> y(x.begin(), x.end());
    run_cascade(sections, y, std::vector<std::array<double, 2>>(sections.size(), {0.0, 0.0}));
    return y;
}

std::vector<double> sos_filtfilt(std::span<const Biquad> sections, std::span<const double> x) {
    const auto zero_b2 = std::count_if(sections.begin(), sections.end(),
                                       [](const Biquad& q) { return q.b2 == 0.0; });
    const auto zero_a2 = std::count_if(sections.begin(), sections.end(),
                                       [](const Biquad& q) { return q.a2 == 0.0; });
    const std::size_t taps =
        2 * sections.size() + 1 - static_cast<std::size_t>(std::min(zero_b2, zero_a2));
    const std::size_t pad = 3 * taps;
    const std::size_t n = x.size();
    if (n <= pad) {
        throw Error(ErrorCode::TooShort, "signal too short for zero-phase filtering (need more than " +
                                             std::to_string(pad) + " samples)");
    }

    std::vector<double> ext;
    ext.reserve(n + 2 * pad);
    for (std::size_t k = pad; k >= 1; --k) ext.push_back(2.0 * x[0] - x[k]);
    ext.insert(ext.end(), x.begin(), x.end());
    for (std::size_t k = 1; k <= pad; ++k) ext.push_back(2.0 * x[n - 1] - x[n - 1 - k]);

    const auto unit = steady_state(sections);
    auto scaled = [&](double u) {
        auto st = unit;
        for (auto& s : st) {
            s[0] *= u;
            s[1] *= u;
        }
        return st;
    };

    run_cascade(sections, ext, scaled(ext.front()));
    std::reverse(ext.begin(), ext.end());
    run_cascade(sections, ext, scaled(ext.front()));
    std::reverse(ext.begin(), ext.end());

    return std::vector<double>(ext.begin() + static_cast<std::ptrdiff_t>(pad),
                               ext.begin() + static_cast<std::ptrdiff_t>(pad + n));
}

}  // namespace pvg
