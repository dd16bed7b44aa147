#include "oracles.hpp"

#include "pvg/error.hpp"
#include "pvg/graph_builder.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

namespace pvg {
namespace {

NormalizedSeries series_of(std::vector<double> x, double dt = 1.0, double t0 = 0.0) {
    return normalize(TimeSeries(std::move(x), dt, t0));
}

std::vector<double> values_of(const NormalizedSeries& s) { return {s.values().begin(), s.values().end()}; }

std::set<Edge> edge_set(const Adjacency& a) {
    const auto e = a.edges();
    return {e.begin(), e.end()};
}

TEST(ObstructionHeight, ClosedFormExamples) {
    const auto peak = series_of({0.0, 1.0, 0.0});
    EXPECT_EQ(obstruction_height_max(peak, 0, 2), 1.0);
    EXPECT_EQ(obstruction_height_max(peak, 0, 1), 0.0);
    EXPECT_EQ(obstruction_height_max(peak, 1, 2), 0.0);
    EXPECT_EQ(obstruction_height_max(series_of({0.0, 0.5, 1.0}), 0, 2), 0.0);
    EXPECT_EQ(obstruction_height_max(series_of({1.0, 0.0, 1.0}), 0, 2), 0.0);
}

TEST(ObstructionHeight, IndexChecks) {
    const auto s = series_of({0.0, 1.0, 0.0});
    for (auto [i, j] : {std::pair{2, 1}, std::pair{1, 1}, std::pair{0, 3}}) {
        try {
            (void)obstruction_height_max(s, i, j);
            FAIL() << i << "," << j;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::IndexOutOfRange);
        }
    }
}

TEST(ObstructionField, MatchesBruteForceOnRandomSeries) {
    for (std::size_t n : {2u, 3u, 17u, 200u, 500u}) {
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const auto s = series_of(oracle::uniform_series(n, seed), 0.004, 1.5);
            const auto x = values_of(s);
            const auto field = compute_obstruction_field(s, 1);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    ASSERT_NEAR(field.h_max(i, j), oracle::h_max(x, s.dt(), s.t0(), i, j), 1e-12)
                        << "n=" << n << " (" << i << "," << j << ")";
                }
            }
        }
    }
}

TEST(ObstructionField, DirectScanAgreesWithField) {
    const auto s = series_of(oracle::uniform_series(120, 4));
    const auto field = compute_obstruction_field(s);
    for (std::size_t i = 0; i < 120; i += 7) {
        for (std::size_t j = i + 1; j < 120; j += 3) {
            EXPECT_NEAR(obstruction_height_max(s, i, j), field.h_max(i, j), 1e-12);
        }
    }
}

TEST(ObstructionField, HandlesPlateausAndCollinearRuns) {
    // Ties and exact collinearity stress the hull's pop rule.
    const std::vector<double> x = {0, 1, 1, 1, 0, 2, 4, 6, 8, 3, 3, 3, 0, 5, 5, 1, 1, 9, 0, 0};
    const auto s = series_of(x);
    const auto v = values_of(s);
    const auto field = compute_obstruction_field(s, 1);
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            ASSERT_NEAR(field.h_max(i, j), oracle::h_max(v, 1.0, 0.0, i, j), 1e-12) << i << "," << j;
        }
    }
}

TEST(ObstructionField, ThreadCountDoesNotChangeResult) {
    const auto s = series_of(oracle::uniform_series(300, 9));
    const auto one = compute_obstruction_field(s, 1);
    const auto many = compute_obstruction_field(s, 5);
    EXPECT_EQ(one.excess(), many.excess());
}

TEST(TunnelProbability, ClosedForm) {
    EXPECT_EQ(tunnel_probability(0.0, 3.0), 1.0);
    EXPECT_NEAR(tunnel_probability(1.0, 1.0), 0.36787944117144233, 1e-15);
    EXPECT_EQ(tunnel_probability(0.7, 0.0), 1.0);
}

TEST(InteractionStrength, ClosedForm) {
    const auto s = series_of({0.0, 1.0, 1.0});
    EXPECT_NEAR(interaction_strength(s, 0, 1), std::numbers::pi / 4, 1e-15);
    EXPECT_EQ(interaction_strength(s, 1, 2), 0.0);
    EXPECT_NEAR(interaction_strength(s, 0, 2), std::atan(0.5), 1e-15);

    const auto fast = series_of({0.0, 1.0}, 0.001);
    EXPECT_NEAR(interaction_strength(fast, 0, 1), 1.5697963271282298, 1e-12);
    EXPECT_THROW((void)interaction_strength(s, 2, 1), Error);
}

TEST(BuildPvg, PeakExample) {
    const auto pvg = build_pvg(series_of({0.0, 1.0, 0.0}), PvgParams{1.0, 0.5});
    EXPECT_NEAR(pvg.prob(0, 2), std::exp(-1.0), 1e-15);
    EXPECT_EQ(edge_set(pvg.adjacency()), (std::set<Edge>{{0, 1}, {1, 2}}));

    const auto loose = build_pvg(series_of({0.0, 1.0, 0.0}), PvgParams{1.0, 0.1});
    EXPECT_TRUE(loose.adjacency().has_edge(0, 2));
}

TEST(BuildPvg, RejectsBadParams) {
    const auto s = series_of({0.0, 1.0, 0.0});
    EXPECT_THROW((void)build_pvg(s, PvgParams{-1.0, 0.5}), Error);
    EXPECT_THROW((void)build_pvg(s, PvgParams{1.0, 1.5}), Error);
    EXPECT_THROW((void)build_pvg(s, PvgParams{1.0, -0.1}), Error);
    EXPECT_THROW((void)build_pvg(s, PvgParams{NAN, 0.5}), Error);
}

TEST(BuildPvg, MatrixInvariants) {
    const auto s = series_of(oracle::uniform_series(80, 21), 0.01);
    const auto pvg = build_pvg(s, PvgParams{3.0, 0.6});
    const auto x = values_of(s);
    const auto prob = pvg.prob_matrix();
    const auto strength = pvg.strength_matrix();
    const auto weighted = pvg.weighted_matrix();
    for (std::size_t i = 0; i < 80; ++i) {
        EXPECT_EQ(pvg.prob(i, i), 0.0);
        EXPECT_EQ(pvg.strength(i, i), 0.0);
        EXPECT_EQ(prob(i, i), 0.0);
        EXPECT_FALSE(pvg.adjacency().has_edge(i, i));
        if (i + 1 < 80) {
            EXPECT_EQ(pvg.prob(i, i + 1), 1.0);
            EXPECT_TRUE(pvg.adjacency().has_edge(i, i + 1));
        }
        for (std::size_t j = 0; j < 80; ++j) {
            if (i == j) continue;
            ASSERT_EQ(pvg.prob(i, j), pvg.prob(j, i));
            ASSERT_EQ(pvg.strength(i, j), pvg.strength(j, i));
            ASSERT_EQ(pvg.adjacency().has_edge(i, j), pvg.adjacency().has_edge(j, i));
            ASSERT_EQ(pvg.weighted(i, j), pvg.strength(i, j) * pvg.prob(i, j));
            ASSERT_EQ(prob(i, j), pvg.prob(i, j));
            ASSERT_EQ(strength(i, j), pvg.strength(i, j));
            ASSERT_EQ(weighted(i, j), pvg.weighted(i, j));
            ASSERT_EQ(pvg.adjacency().has_edge(i, j), pvg.prob(i, j) >= 0.6);
            const auto [a, b] = std::minmax(i, j);
            ASSERT_NEAR(pvg.prob(i, j), std::exp(-3.0 * oracle::h_max(x, 0.01, 0.0, a, b)), 1e-12);
            ASSERT_GE(pvg.strength(i, j), 0.0);
            ASSERT_LT(pvg.strength(i, j), std::numbers::pi / 2);
        }
    }
}

TEST(BuildPvg, ZeroDecayIsComplete) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto s = series_of(oracle::uniform_series(60, seed));
        for (double p0 : {0.0, 0.3, 1.0}) {
            EXPECT_EQ(build_pvg(s, PvgParams{0.0, p0}).adjacency(), Adjacency::complete(60));
        }
    }
}

TEST(BuildPvg, ReducesToClassicalVgAtFullThreshold) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto s = series_of(oracle::uniform_series(150, 100 + seed), 0.5);
        const auto reference = oracle::classical_vg(values_of(s), 0.5);
        for (double rho : {0.01, 1.0, 1e4}) {
            EXPECT_EQ(build_pvg(s, PvgParams{rho, 1.0}).adjacency(), reference) << seed;
        }
    }
}

TEST(BuildPvg, CollinearTripleSplitsPvgFromVg) {
    // On the chord the obstruction is 0, so the PVG connects; the strict
    // VG criterion does not.
    const auto s = series_of({1.0, 2.0, 3.0});
    EXPECT_TRUE(build_pvg(s, PvgParams{5.0, 1.0}).adjacency().has_edge(0, 2));
    EXPECT_FALSE(build_classical_vg(s).adjacency.has_edge(0, 2));
}

TEST(BuildPvg, MonotoneInRhoAndNestedInThreshold) {
    const auto s = series_of(oracle::uniform_series(120, 33));
    const auto field = std::make_shared<const ObstructionField>(compute_obstruction_field(s));
    const std::vector<double> rhos = {0.0, 0.1, 1.0, 5.0, 50.0, 1e3};
    const std::vector<double> p0s = {0.0, 0.2, 0.5, 0.9, 1.0};
    for (std::size_t r = 1; r < rhos.size(); ++r) {
        const PvgMatrices lo(field, s, PvgParams{rhos[r - 1], 0.5});
        const PvgMatrices hi(field, s, PvgParams{rhos[r], 0.5});
        for (std::size_t i = 0; i < 120; ++i) {
            for (std::size_t j = i + 1; j < 120; ++j) {
                ASSERT_LE(hi.prob(i, j), lo.prob(i, j));
                if (field->h_max(i, j) > 0.0) ASSERT_LT(hi.prob(i, j), lo.prob(i, j));
            }
        }
    }
    const auto vg = build_classical_vg(*field).adjacency;
    for (double rho : rhos) {
        for (std::size_t p = 0; p < p0s.size(); ++p) {
            const auto a = threshold_adjacency(*field, PvgParams{rho, p0s[p]});
            EXPECT_TRUE(vg.is_subgraph_of(a));
            EXPECT_TRUE(Adjacency::path(120).is_subgraph_of(a));
            if (p > 0) {
                EXPECT_TRUE(a.is_subgraph_of(threshold_adjacency(*field, PvgParams{rho, p0s[p - 1]})));
            }
        }
    }
}

TEST(BuildPvg, ZeroWeightExactlyForEqualValues) {
    const auto s = series_of({0.0, 2.0, 1.0, 2.0, 0.0, 1.0});
    const auto pvg = build_pvg(s, PvgParams{2.0, 0.5});
    const auto x = values_of(s);
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = i + 1; j < 6; ++j) {
            EXPECT_GT(pvg.prob(i, j), 0.0);
            EXPECT_EQ(pvg.weighted(i, j) == 0.0, x[i] == x[j]) << i << "," << j;
            EXPECT_EQ(pvg.strength(i, j) == 0.0, x[i] == x[j]);
        }
    }
}

TEST(BuildPvg, TimeTranslationInvariant) {
    const auto x = oracle::uniform_series(90, 44);
    const auto a = build_pvg(series_of(x, 0.02, 0.0), PvgParams{4.0, 0.5});
    const auto b = build_pvg(series_of(x, 0.02, 1234.5), PvgParams{4.0, 0.5});
    EXPECT_EQ(a.prob_matrix(), b.prob_matrix());
    EXPECT_EQ(a.strength_matrix(), b.strength_matrix());
    EXPECT_EQ(a.weighted_matrix(), b.weighted_matrix());
    EXPECT_EQ(a.adjacency(), b.adjacency());
}

TEST(BuildPvg, ThreadIndependent) {
    const auto s = series_of(oracle::uniform_series(400, 45));
    const auto a = build_pvg(s, PvgParams{10.0, 0.5}, 1);
    const auto b = build_pvg(s, PvgParams{10.0, 0.5}, 3);
    EXPECT_EQ(a.prob_matrix(), b.prob_matrix());
    EXPECT_EQ(a.adjacency(), b.adjacency());
}

TEST(ClassicalVg, Examples) {
    EXPECT_EQ(build_classical_vg(series_of({1.0, 2.0, 3.0})).adjacency, Adjacency::path(3));
    EXPECT_EQ(build_classical_vg(series_of({3.0, 1.0, 2.0})).adjacency, Adjacency::complete(3));
    EXPECT_EQ(build_classical_vg(series_of(std::vector<double>(12, 4.0))).adjacency, Adjacency::path(12));
}

TEST(ClassicalVg, MatchesStrictOracle) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto s = series_of(oracle::uniform_series(250, 300 + seed), 0.001);
        EXPECT_EQ(build_classical_vg(s).adjacency, oracle::classical_vg(values_of(s), 0.001));
    }
    // Quantized values produce many exact ties.
    auto x = oracle::uniform_series(200, 7);
    for (auto& v : x) v = std::round(v * 4.0);
    const auto s = series_of(x);
    EXPECT_EQ(build_classical_vg(s).adjacency, oracle::classical_vg(values_of(s), 1.0));
}

TEST(DegreeSequence, Examples) {
    EXPECT_EQ(degree_sequence(Adjacency::path(3)), (std::vector<std::size_t>{1, 2, 1}));
    EXPECT_EQ(degree_sequence(Adjacency::complete(4)), (std::vector<std::size_t>{3, 3, 3, 3}));

    const auto a = build_pvg(series_of(oracle::uniform_series(100, 5)), PvgParams{2.0, 0.5}).adjacency();
    const auto d = degree_sequence(a);
    std::size_t total = 0;
    for (std::size_t i = 0; i < 100; ++i) {
        std::size_t row = 0;
        for (std::size_t j = 0; j < 100; ++j) row += a.has_edge(i, j);
        EXPECT_EQ(d[i], row);
        total += d[i];
    }
    EXPECT_EQ(total, 2 * a.edge_count());
}

TEST(SymmetricMatrixLayout, PackedOffsets) {
    SymmetricMatrix m(4);
    EXPECT_EQ(m.upper().size(), 6u);
    EXPECT_EQ(m.offset(0, 1), 0u);
    EXPECT_EQ(m.offset(0, 3), 2u);
    EXPECT_EQ(m.offset(1, 2), 3u);
    EXPECT_EQ(m.offset(3, 2), 5u);
}

}  // namespace
}  // namespace pvg
