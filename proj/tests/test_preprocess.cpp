#include "pvg/error.hpp"
#include "pvg/filter.hpp"
#include "pvg/preprocess.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace pvg {
namespace {

TimeSeries white(std::size_t n, double dt, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<double> x(n);
    for (auto& v : x) v = g(rng);
    return TimeSeries(std::move(x), dt);
}

TEST(Preprocess, DefaultLayoutThirtySegmentsOfFiveHundred) {
    const auto rec = white(300000, 0.001, 1);
    const auto segs = preprocess(rec, PreprocessConfig{});
    ASSERT_EQ(segs.size(), 30u);
    for (std::size_t s = 0; s < segs.size(); ++s) {
        EXPECT_EQ(segs[s].size(), 500u);
        EXPECT_DOUBLE_EQ(segs[s].dt(), 0.02);
        EXPECT_NEAR(segs[s].t0(), 10.0 * static_cast<double>(s), 1e-9);
    }
}

TEST(Preprocess, SegmentLengthProperty) {
    const auto rec = white(12000, 0.001, 2);
    for (double rate : {50.0, 100.0, 200.0}) {
        for (double seconds : {1.0, 2.5}) {
            PreprocessConfig cfg;
            cfg.target_rate_hz = rate;
            cfg.cutoff_hz = rate / 2.0;
            cfg.segment_seconds = seconds;
            cfg.n_segments = 4;
            for (const auto& seg : preprocess(rec, cfg)) {
                EXPECT_EQ(seg.size(), static_cast<std::size_t>(seconds * rate));
            }
        }
    }
}

TEST(Preprocess, ConstantInputGivesConstantSegments) {
    const TimeSeries rec(std::vector<double>(300000, -4.5), 0.001);
    for (const auto& seg : preprocess(rec, PreprocessConfig{})) {
        for (double v : seg.values()) ASSERT_EQ(v, -4.5);
    }
}

TEST(Preprocess, SuppressesAboveCutoff) {
    // Forward-backward filtering applies |H(100 Hz)|^2 (~1e-5 for order 4);
    // after decimation the residual must stay far below 5% of the input RMS.
    std::vector<double> x(300000);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(2 * std::numbers::pi * 100.0 * i * 0.001);
    const TimeSeries rec(x, 0.001);
    const auto sos = design_butterworth_lowpass(4, 25.0, 1000.0);
    const double predicted = std::pow(magnitude_response(sos, 100.0, 1000.0), 2.0);
    EXPECT_LT(predicted, 0.05);

    const double in_rms = std::sqrt(0.5);
    const auto segs = preprocess(rec, PreprocessConfig{});
    for (std::size_t s = 0; s < segs.size(); ++s) {
        double sq = 0.0;
        for (double v : segs[s].values()) sq += v * v;
        const double rms = std::sqrt(sq / static_cast<double>(segs[s].size()));
        EXPECT_LT(rms, 0.05 * in_rms);
        // Away from the recording edges (padding transients) the residual
        // is the steady-state response.
        if (s > 0 && s + 1 < segs.size()) EXPECT_LT(rms, 2.0 * predicted * in_rms + 1e-6);
    }
}

TEST(Preprocess, KeepsLowFrequencyContent) {
    std::vector<double> x(300000);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(2 * std::numbers::pi * 2.0 * i * 0.001);
    const auto segs = preprocess(TimeSeries(x, 0.001), PreprocessConfig{});
    // Decimated sample k of segment s sits at t = 10 s + k / 50.
    for (std::size_t k : {0u, 13u, 250u, 499u}) {
        const double t = 10.0 + static_cast<double>(k) / 50.0;
        EXPECT_NEAR(segs[1][k], std::sin(2 * std::numbers::pi * 2.0 * t), 1e-3);
    }
}

TEST(Preprocess, Errors) {
    const auto rec = white(1000, 0.001, 3);
    try {
        (void)preprocess(rec, PreprocessConfig{});
        FAIL() << "expected TooShort";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::TooShort);
    }

    PreprocessConfig odd;
    odd.target_rate_hz = 300.0;  // 1000 / 300 is not an integer
    odd.cutoff_hz = 100.0;
    odd.segment_seconds = 1.0;
    odd.n_segments = 1;
    try {
        (void)preprocess(rec, odd);
        FAIL() << "expected RateMismatch";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::RateMismatch);
    }

    PreprocessConfig aliasing;
    aliasing.cutoff_hz = 30.0;  // above 50 / 2
    EXPECT_THROW((void)preprocess(rec, aliasing), Error);
}

TEST(DecimationFactor, IntegerRatiosOnly) {
    EXPECT_EQ(decimation_factor(1000.0, 50.0), 20u);
    EXPECT_EQ(decimation_factor(1.0 / 0.001, 50.0), 20u);
    EXPECT_THROW((void)decimation_factor(1000.0, 300.0), Error);
    EXPECT_THROW((void)decimation_factor(10.0, 50.0), Error);
}

}  // namespace
}  // namespace pvg
