#include "pvg/error.hpp"
#include "pvg/series.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace pvg {
namespace {

std::vector<double> values_of(const NormalizedSeries& s) {
    return {s.values().begin(), s.values().end()};
}

TEST(TimeSeries, RejectsInvalidInput) {
    EXPECT_THROW(TimeSeries({1.0}, 1.0), Error);
    EXPECT_THROW(TimeSeries({1.0, 2.0}, 0.0), Error);
    EXPECT_THROW(TimeSeries({1.0, 2.0}, -1.0), Error);
    EXPECT_THROW(TimeSeries({1.0, std::numeric_limits<double>::quiet_NaN()}, 1.0), Error);
    EXPECT_THROW(TimeSeries({1.0, std::numeric_limits<double>::infinity()}, 1.0), Error);
}

TEST(TimeSeries, ImplicitTimestamps) {
    TimeSeries s({1.0, 2.0, 3.0}, 0.5, 10.0);
    EXPECT_DOUBLE_EQ(s.time(0), 10.0);
    EXPECT_DOUBLE_EQ(s.time(2), 11.0);
    EXPECT_DOUBLE_EQ(s.rate_hz(), 2.0);
}

TEST(Normalize, AffineEndpoints) {
    const auto n = normalize(TimeSeries({2.0, 4.0, 6.0}, 1.0));
    EXPECT_EQ(values_of(n), (std::vector<double>{0.0, 0.5, 1.0}));
    EXPECT_EQ(n.original_min(), 2.0);
    EXPECT_EQ(n.original_max(), 6.0);
    EXPECT_FALSE(n.is_constant());
}

TEST(Normalize, NegativeValues) {
    const auto n = normalize(TimeSeries({-1.0, 0.0, 3.0}, 1.0));
    EXPECT_EQ(values_of(n), (std::vector<double>{0.0, 0.25, 1.0}));
}

TEST(Normalize, ConstantSeriesFlagged) {
    const auto n = normalize(TimeSeries({5.0, 5.0, 5.0}, 1.0));
    EXPECT_TRUE(n.is_constant());
    EXPECT_EQ(values_of(n), (std::vector<double>{0.0, 0.0, 0.0}));
}

TEST(Normalize, KeepsTimeAxis) {
    const auto n = normalize(TimeSeries({3.0, 1.0, 2.0}, 0.25, 7.0));
    EXPECT_EQ(n.dt(), 0.25);
    EXPECT_EQ(n.t0(), 7.0);
}

// Property: idempotence, [0,1] range with exact extremes, order preservation.
TEST(Normalize, PropertiesOnRandomSeries) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g(3.0, 10.0);
    std::uniform_int_distribution<std::size_t> len(2, 300);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> x(len(rng));
        for (auto& v : x) v = g(rng);
        const TimeSeries s(x, 0.01);
        const auto n = normalize(s);
        const auto once = values_of(n);
        const auto twice = values_of(normalize(n.series()));
        ASSERT_EQ(once, twice);

        const auto [lo, hi] = std::minmax_element(once.begin(), once.end());
        ASSERT_EQ(*lo, 0.0);
        ASSERT_EQ(*hi, 1.0);
        ASSERT_EQ(lo - once.begin(), std::min_element(x.begin(), x.end()) - x.begin());
        ASSERT_EQ(hi - once.begin(), std::max_element(x.begin(), x.end()) - x.begin());
        for (std::size_t i = 0; i + 1 < x.size(); ++i) {
            if (x[i] < x[i + 1]) ASSERT_LT(once[i], once[i + 1]);
            if (x[i] > x[i + 1]) ASSERT_GT(once[i], once[i + 1]);
        }
    }
}

TEST(GenerateAm, DefaultResolutionGivesFiveThousandSamples) {
    AmSignalParams p;  // A_c=1, f_c=40, f_m=6, m=0.5, 5 s at 1 ms
    const auto s = generate_am(p);
    EXPECT_EQ(s.size(), 5000u);
    EXPECT_DOUBLE_EQ(s.dt(), 0.001);
}

TEST(GenerateAm, NoiselessStartsAtZero) {
    AmSignalParams p;
    p.noise_std = 0.0;
    EXPECT_EQ(generate_am(p)[0], 0.0);
}

TEST(GenerateAm, UnmodulatedPeakEqualsAmplitude) {
    AmSignalParams p;
    p.noise_std = 0.0;
    p.modulation_hz = 0.0;
    p.modulation_depth = 0.0;
    p.carrier_amplitude = 2.5;
    p.carrier_hz = 10.0;
    p.dt = 1.0 / (4.0 * p.carrier_hz);  // sample 1 lands on t = 1/(4 f_c)
    p.duration_s = 1.0;
    EXPECT_NEAR(generate_am(p)[1], 2.5, 1e-12);
}

TEST(GenerateAm, MatchesClosedFormWhenNoiseless) {
    AmSignalParams p;
    p.noise_std = 0.0;
    const auto s = generate_am(p);
    for (std::size_t i : {1u, 17u, 250u, 4999u}) {
        const double t = static_cast<double>(i) * 0.001;
        const double want = (1.0 + 0.5 * std::cos(2 * std::numbers::pi * 6 * t)) *
                            std::sin(2 * std::numbers::pi * 40 * t);
        EXPECT_NEAR(s[i], want, 1e-12);
    }
}

TEST(GenerateAm, SeedReproducibility) {
    AmSignalParams p;
    p.rng_seed = 99;
    const auto a = generate_am(p);
    const auto b = generate_am(p);
    EXPECT_TRUE(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
    p.rng_seed = 100;
    const auto c = generate_am(p);
    EXPECT_FALSE(std::equal(a.values().begin(), a.values().end(), c.values().begin()));

    p.noise_std = 0.0;
    p.rng_seed = 1;
    const auto d = generate_am(p);
    p.rng_seed = 2;
    const auto e = generate_am(p);
    EXPECT_TRUE(std::equal(d.values().begin(), d.values().end(), e.values().begin()));
}

TEST(GenerateAm, NoiseHasRequestedSpread) {
    AmSignalParams noisy;
    noisy.rng_seed = 5;
    AmSignalParams clean = noisy;
    clean.noise_std = 0.0;
    const auto a = generate_am(noisy);
    const auto b = generate_am(clean);
    double sq = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sq += (a[i] - b[i]) * (a[i] - b[i]);
    EXPECT_NEAR(std::sqrt(sq / static_cast<double>(a.size())), 0.01, 0.001);
}

TEST(GenerateAm, InvalidParams) {
    auto bad = [](auto mutate) {
        AmSignalParams p;
        mutate(p);
        return p;
    };
    EXPECT_THROW((void)generate_am(bad([](auto& p) { p.carrier_hz = 5.0; })), Error);
    EXPECT_THROW((void)generate_am(bad([](auto& p) { p.modulation_hz = -1.0; })), Error);
    EXPECT_THROW((void)generate_am(bad([](auto& p) { p.dt = 0.0; })), Error);
    EXPECT_THROW((void)generate_am(bad([](auto& p) { p.duration_s = 0.0001; })), Error);
    EXPECT_THROW((void)generate_am(bad([](auto& p) { p.modulation_depth = -0.1; })), Error);
    EXPECT_THROW((void)generate_am(bad([](auto& p) { p.noise_std = -0.1; })), Error);
    try {
        (void)generate_am(bad([](auto& p) { p.carrier_hz = 1.0; }));
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidParams);
    }
}

TEST(PinkNoise, SeededAndScaled) {
    const auto a = generate_pink_noise(20000, 0.001, 2.0, 3);
    const auto b = generate_pink_noise(20000, 0.001, 2.0, 3);
    EXPECT_TRUE(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
    double mean = 0.0, sq = 0.0;
    for (double v : a.values()) mean += v;
    mean /= 20000.0;
    for (double v : a.values()) sq += (v - mean) * (v - mean);
    EXPECT_NEAR(mean, 0.0, 1e-9);
    EXPECT_NEAR(std::sqrt(sq / 20000.0), 2.0, 1e-9);

    // 1/f: neighbouring samples are strongly correlated, unlike white noise.
    const auto r = autocorrelation(a.values(), 1);
    EXPECT_GT(r[1], 0.5);
}

// Brute-force autocorrelation straight from the definition.
double acf_oracle(const std::vector<double>& x, std::size_t lag) {
    const double n = static_cast<double>(x.size());
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= n;
    double num = 0.0, den = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) den += (x[t] - mean) * (x[t] - mean);
    for (std::size_t t = 0; t + lag < x.size(); ++t) num += (x[t] - mean) * (x[t + lag] - mean);
    return num / den;
}

TEST(Autocorrelation, MatchesDefinition) {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> g;
    std::vector<double> x(300);
    for (auto& v : x) v = g(rng);
    const auto r = autocorrelation(x, 299);
    EXPECT_DOUBLE_EQ(r[0], 1.0);
    for (std::size_t lag : {1u, 7u, 150u, 299u}) EXPECT_NEAR(r[lag], acf_oracle(x, lag), 1e-12);
}

TEST(Autocorrelation, SignificanceBound) {
    // z_{1 - 0.025/999} = 4.0556 (two-sided 5%, Bonferroni over 999 lags).
    EXPECT_NEAR(autocorr_significance_bound(1000) * std::sqrt(1000.0), 4.0556, 1e-3);
    EXPECT_THROW((void)autocorr_significance_bound(2), Error);
}

TEST(AutocorrMaxLag, WhiteNoiseHasNoLongMemory) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> g;
        std::vector<double> x(1000);
        for (auto& v : x) v = g(rng);
        EXPECT_LT(autocorr_max_lag(TimeSeries(x, 1.0)), 10u) << "seed " << seed;
    }
}

TEST(AutocorrMaxLag, SinusoidStaysCorrelatedToTheTail) {
    // r(l) of a pure sinusoid is ~ (N - l)/N cos(w l): brute force locates the
    // last lag above the bound and the implementation must agree.
    const std::size_t n = 1000;
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = std::sin(2 * std::numbers::pi * i / 50.0);
    const double bound = autocorr_significance_bound(n);
    std::size_t expected = 0;
    for (std::size_t lag = 1; lag < n; ++lag) {
        if (acf_oracle(x, lag) > bound) expected = lag;
    }
    const auto got = autocorr_max_lag(TimeSeries(x, 1.0));
    EXPECT_EQ(got, expected);
    EXPECT_GT(got, 800u);
}

TEST(AutocorrMaxLag, ConstantSeriesIsZero) {
    EXPECT_EQ(autocorr_max_lag(TimeSeries(std::vector<double>(50, 2.0), 1.0)), 0u);
}

}  // namespace
}  // namespace pvg
