/*
Copyright 2026 The overlaymap Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
you may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include <doctest.h>

#include "oracles.hpp"
#include "support.hpp"

#include "overlaymap/core.hpp"
#include "overlaymap/error.hpp"
#include "overlaymap/map_io.hpp"
#include "overlaymap/summation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace overlaymap;

namespace {

std::vector<double> to_vec(const VectorN& v) { return {v.values().begin(), v.values().end()}; }

PublicationProfile paper_profile() {
    return PublicationProfile("u1", UnitKind::research_group, oracle::paper_m());
}

OverlayMap map_from_points(const std::vector<std::pair<double, double>>& pts) {
    std::vector<SubjectCategory> cats;
    for (std::size_t i = 0; i < pts.size(); ++i)
        cats.push_back({i, static_cast<long>(i + 1), "c" + std::to_string(i), pts[i].first, pts[i].second});
    return OverlayMap(cats);
}

} // namespace

TEST_CASE("compensated sum recovers cancelled terms") {
    const double v[] = {1.0, 1e100, 1.0, -1e100};
    CHECK(compensated_sum(v) == 2.0);
}

TEST_CASE("barycenter_2d") {
    SUBCASE("single category returns its coordinates") {
        auto map = map_from_points({{0.5, 0.25}, {3, 3}});
        PublicationProfile p("u", UnitKind::panel_member, {7.0, 0.0});
        CHECK(barycenter_2d(p, map) == Point2D{0.5, 0.25});
    }
    SUBCASE("weighted average") {
        auto map = map_from_points({{0, 0}, {1, 0}, {0, 1}, {9, 9}});
        PublicationProfile p("u", UnitKind::research_group, {1, 1, 2, 0});
        auto [ox, oy] = oracle::weighted_mean_2d({1, 1, 2, 0}, {0, 1, 0, 9}, {0, 0, 1, 9});
        CHECK(ox == doctest::Approx(0.25).epsilon(1e-15));
        CHECK(oy == doctest::Approx(0.5).epsilon(1e-15));
        const auto c = barycenter_2d(p, map);
        CHECK(c.c1 == 0.25);
        CHECK(c.c2 == 0.5);
    }
    SUBCASE("rectangle vertices with unit counts") {
        auto map = testing::paper_map(false);
        PublicationProfile p("u", UnitKind::research_group, {1, 1, 1, 1});
        CHECK(barycenter_2d(p, map) == Point2D{1.0, 0.5});
    }
    SUBCASE("dimension mismatch") {
        auto map = testing::paper_map(false);
        PublicationProfile p("u", UnitKind::research_group, {1, 1});
        CHECK_THROWS_AS(barycenter_2d(p, map), InvalidArgument);
    }
}

TEST_CASE("barycenter_2d properties on random maps") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        auto map = testing::random_map(rng, 30, false);
        auto p = testing::random_profile(rng, 30, "u");
        const auto c = barycenter_2d(p, map);

        std::vector<double> xs, ys;
        for (const auto& cat : map.categories()) {
            xs.push_back(cat.x);
            ys.push_back(cat.y);
        }
        std::vector<double> m(p.counts().begin(), p.counts().end());
        auto [ox, oy] = oracle::weighted_mean_2d(m, xs, ys);
        CHECK(std::fabs(c.c1 - ox) <= 1e-12);
        CHECK(std::fabs(c.c2 - oy) <= 1e-12);

        double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (m[j] <= 0)
                continue;
            lo_x = std::min(lo_x, xs[j]);
            hi_x = std::max(hi_x, xs[j]);
            lo_y = std::min(lo_y, ys[j]);
            hi_y = std::max(hi_y, ys[j]);
        }
        CHECK(c.c1 >= lo_x);
        CHECK(c.c1 <= hi_x);
        CHECK(c.c2 >= lo_y);
        CHECK(c.c2 <= hi_y);

        for (double scale : {1e-3, 0.37, 1.0, 42.0, 1e3}) {
            const auto cs = barycenter_2d(p.scaled(scale), map);
            CHECK(std::fabs(cs.c1 - c.c1) <= 1e-9);
            CHECK(std::fabs(cs.c2 - c.c2) <= 1e-9);
        }
    }
}

TEST_CASE("barycenter_set") {
    const std::vector<VectorN> rect{{0, 0}, {0, 1}, {2, 1}, {2, 0}};
    CHECK(barycenter_set(rect) == VectorN{1.0, 0.5});

    const std::vector<VectorN> single{{0.3, -7.25, 11.0}};
    CHECK(barycenter_set(single) == single[0]);

    const std::vector<VectorN> pair{{1, 2, 3}, {3, 2, 1}};
    CHECK(barycenter_set(pair) == VectorN{2, 2, 2});

    CHECK_THROWS_AS(barycenter_set(std::vector<VectorN>{}), InvalidArgument);
    CHECK_THROWS_AS(barycenter_set(std::vector<VectorN>{{1, 2}, {1}}), InvalidArgument);
}

TEST_CASE("weighted_barycenter") {
    const std::vector<VectorN> rect{{0, 0}, {0, 1}, {2, 1}, {2, 0}};
    std::vector<WeightedVector> unit;
    for (const auto& v : rect)
        unit.push_back({1.0, v});
    CHECK(weighted_barycenter(unit) == barycenter_set(rect));

    CHECK(weighted_barycenter(std::vector<WeightedVector>{{3.0, {0, 0}}, {1.0, {4, 0}}}) == VectorN{1, 0});

    SUBCASE("common scale of weights cancels") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> w(0.1, 10.0), x(-5.0, 5.0);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<WeightedVector> a, b;
            const double c = std::pow(10.0, std::uniform_real_distribution<double>(-3, 3)(rng));
            for (int n = 0; n < 6; ++n) {
                VectorN v{x(rng), x(rng), x(rng)};
                const double wn = w(rng);
                a.push_back({wn, v});
                b.push_back({c * wn, v});
            }
            const auto ra = weighted_barycenter(a), rb = weighted_barycenter(b);
            for (std::size_t k = 0; k < 3; ++k)
                CHECK(rb[k] == doctest::Approx(ra[k]).epsilon(1e-12));
        }
    }

    SUBCASE("equal weights degenerate to the plain barycenter") {
        std::mt19937_64 rng(6);
        std::uniform_real_distribution<double> x(-5.0, 5.0), w(0.01, 100.0);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<VectorN> vs;
            std::vector<WeightedVector> ws;
            const double common = w(rng);
            for (int n = 0; n < 5; ++n) {
                vs.push_back({x(rng), x(rng)});
                ws.push_back({common, vs.back()});
            }
            const auto plain = barycenter_set(vs), weighted = weighted_barycenter(ws);
            for (std::size_t k = 0; k < 2; ++k)
                CHECK(std::fabs(weighted[k] - plain[k]) <= 1e-12 * std::max(1.0, std::fabs(plain[k])));
        }
    }

    CHECK_THROWS_AS(weighted_barycenter(std::vector<WeightedVector>{}), InvalidArgument);
    CHECK_THROWS_AS(weighted_barycenter(std::vector<WeightedVector>{{0.0, {1}}}), InvalidArgument);
    CHECK_THROWS_AS(weighted_barycenter(std::vector<WeightedVector>{{-1.0, {1}}}), InvalidArgument);
    CHECK_THROWS_AS(weighted_barycenter(std::vector<WeightedVector>{{1.0, {1}}, {1.0, {1, 2}}}),
                    InvalidArgument);
}

TEST_CASE("similarity_adapt on the worked example") {
    const auto s = *testing::paper_map().similarity();
    const auto p = paper_profile();

    const auto expected_raw = oracle::s_times_m(oracle::paper_s(), oracle::paper_m());
    const std::vector<double> printed_raw{4.1, 1.4, 1.4, 3.3};
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(std::fabs(expected_raw[k] - printed_raw[k]) <= 1e-12);

    const auto raw = similarity_adapt(p, s, NormalizationMode::raw);
    CHECK(raw.mode == NormalizationMode::raw);
    CHECK(raw.source_total == 5.0);
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(std::fabs(raw.values[k] - printed_raw[k]) <= 1e-12);

    const std::vector<double> printed_total{0.82, 0.28, 0.28, 0.66};
    const auto by_total = similarity_adapt(p, s, NormalizationMode::by_total);
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(std::fabs(by_total.values[k] - printed_total[k]) <= 1e-12);

    const double adapted_sum = oracle::sum(expected_raw);
    CHECK(std::fabs(adapted_sum - 10.2) <= 1e-12);
    const auto by_sum = similarity_adapt(p, s, NormalizationMode::by_adapted_sum);
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(std::fabs(by_sum.values[k] - printed_raw[k] / 10.2) <= 1e-12);
    CHECK(oracle::sum(to_vec(by_sum.values)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("similarity_adapt with identity keeps the column") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        auto m = oracle::random_counts(rng, 12);
        PublicationProfile p("u", UnitKind::other, m);
        const auto v = similarity_adapt(p, SimilarityMatrix::identity(12), NormalizationMode::by_total);
        const double t = oracle::sum(m);
        for (std::size_t k = 0; k < 12; ++k)
            CHECK(v.values[k] == m[k] / t);
        CHECK(similarity_adapt(p, SimilarityMatrix::identity(12), NormalizationMode::raw).values ==
              VectorN(m));
    }
}

TEST_CASE("similarity_adapt properties") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        auto map = testing::random_map(rng, 40);
        const auto& s = *map.similarity();
        auto ma = oracle::random_counts(rng, 40), mb = oracle::random_counts(rng, 40);
        PublicationProfile a("a", UnitKind::other, ma), b("b", UnitKind::other, mb);
        std::vector<double> msum(40);
        for (std::size_t j = 0; j < 40; ++j)
            msum[j] = ma[j] + mb[j];
        PublicationProfile ab("ab", UnitKind::other, msum);

        // linearity of the raw product
        const auto ra = similarity_adapt(a, s, NormalizationMode::raw);
        const auto rb = similarity_adapt(b, s, NormalizationMode::raw);
        const auto rab = similarity_adapt(ab, s, NormalizationMode::raw);
        for (std::size_t k = 0; k < 40; ++k) {
            const double lhs = rab.values[k], rhs = ra.values[k] + rb.values[k];
            CHECK(std::fabs(lhs - rhs) <= 1e-12 * std::max(1.0, std::fabs(rhs)));
        }

        // oracle agreement
        std::vector<std::vector<double>> sm(40, std::vector<double>(40));
        for (std::size_t i = 0; i < 40; ++i)
            for (std::size_t j = 0; j < 40; ++j)
                sm[i][j] = s(i, j);
        const auto expect = oracle::s_times_m(sm, ma);
        for (std::size_t k = 0; k < 40; ++k)
            CHECK(std::fabs(ra.values[k] - expect[k]) <= 1e-12 * std::max(1.0, std::fabs(expect[k])));

        // by_total is invariant under c*M
        const auto t1 = similarity_adapt(a, s, NormalizationMode::by_total);
        for (double c : {1e-3, 0.5, 7.0, 1e3}) {
            const auto tc = similarity_adapt(a.scaled(c), s, NormalizationMode::by_total);
            for (std::size_t k = 0; k < 40; ++k)
                CHECK(std::fabs(tc.values[k] - t1.values[k]) <= 1e-9 * std::max(1e-300, std::fabs(t1.values[k])));
        }
    }
}

TEST_CASE("similarity_adapt errors") {
    const auto p = paper_profile();
    CHECK_THROWS_AS(similarity_adapt(p, SimilarityMatrix::identity(3), NormalizationMode::raw), InvalidArgument);

    // an all-zero similarity matrix makes the adapted sum vanish
    const SimilarityMatrix zero(4);
    CHECK_NOTHROW(similarity_adapt(p, zero, NormalizationMode::by_total));
    CHECK_THROWS_AS(similarity_adapt(p, zero, NormalizationMode::by_adapted_sum), DataError);
}

TEST_CASE("normalization mode names") {
    CHECK(parse_normalization_mode("by-total") == NormalizationMode::by_total);
    CHECK(parse_normalization_mode("by_adapted_sum") == NormalizationMode::by_adapted_sum);
    CHECK(parse_normalization_mode("raw") == NormalizationMode::raw);
    CHECK_FALSE(parse_normalization_mode("sum").has_value());
    CHECK(to_string(NormalizationMode::by_total) == "by_total");
}

TEST_CASE("cosine_normalize") {
    SUBCASE("two rows at 45 degrees") {
        CountMatrix c{2, 2, {1, 0, 1, 1}};
        const auto r = cosine_normalize(c);
        CHECK(std::fabs(r.similarity(0, 1) - 1.0 / std::sqrt(2.0)) <= 1e-15);
        CHECK(std::fabs(r.similarity(0, 1) - 0.70710678) <= 1e-8);
        CHECK(r.similarity(0, 1) == r.similarity(1, 0));
        CHECK(r.similarity(0, 0) == 1.0);
        CHECK(r.similarity(1, 1) == 1.0);
        CHECK(r.zero_rows.empty());
    }
    SUBCASE("orthogonal rows") {
        const auto r = cosine_normalize(CountMatrix{2, 2, {1, 0, 0, 1}});
        CHECK(r.similarity(0, 1) == 0.0);
    }
    SUBCASE("zero rows are flagged, not fatal") {
        const auto r = cosine_normalize(CountMatrix{3, 2, {1, 2, 0, 0, 3, 1}});
        CHECK(r.zero_rows == std::vector<std::size_t>{1});
        CHECK(r.similarity(1, 1) == 0.0);
        CHECK(r.similarity(0, 1) == 0.0);
        CHECK(r.similarity(2, 1) == 0.0);
        CHECK(r.similarity(0, 0) == 1.0);
    }
    SUBCASE("rectangular citing x cited input") {
        const auto r = cosine_normalize(CountMatrix{2, 3, {1, 2, 3, 3, 2, 1}});
        CHECK(r.similarity.size() == 2);
        CHECK(r.similarity(0, 1) == doctest::Approx(10.0 / 14.0).epsilon(1e-15));
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(cosine_normalize(CountMatrix{2, 2, {0, 0, 0, 0}}), DataError);
        CHECK_THROWS_AS(cosine_normalize(CountMatrix{2, 2, {1, -1, 0, 1}}), DataError);
        CHECK_THROWS_AS(cosine_normalize(CountMatrix{2, 2, {1, NAN, 0, 1}}), DataError);
        CHECK_THROWS_AS(cosine_normalize(CountMatrix{2, 2, {1, 0, 0}}), InvalidArgument);
        CHECK_THROWS_AS(cosine_normalize(CountMatrix{}), InvalidArgument);
    }
}

TEST_CASE("cosine_normalize matches the brute-force oracle") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    std::bernoulli_distribution sparse(0.4);
    for (int trial = 0; trial < 50; ++trial) {
        oracle::Mat counts(10, oracle::Vec(10));
        for (auto& row : counts)
            for (auto& v : row)
                v = sparse(rng) ? 0.0 : u(rng);
        const auto result = cosine_normalize(CountMatrix{10, 10, oracle::flatten(counts)});
        const auto expect = oracle::cosine(counts);
        for (std::size_t i = 0; i < 10; ++i)
            for (std::size_t j = 0; j < 10; ++j)
                CHECK(std::fabs(result.similarity(i, j) - expect[i][j]) <= 1e-12);
        CHECK_NOTHROW(validate_similarity_matrix(result.similarity, SymmetryPolicy::strict));
    }
}

TEST_CASE("euclidean_distance") {
    CHECK(euclidean_distance(Point2D{0, 0}, Point2D{3, 4}) == 5.0);
    CHECK(euclidean_distance(Point2D{1.5, -2}, Point2D{1.5, -2}) == 0.0);

    const VectorN v{0.82, 0.28, 0.28, 0.66};
    const double expect = oracle::distance({0.82, 0.28, 0.28, 0.66}, {0, 0, 0, 0});
    CHECK(std::fabs(expect - std::sqrt(0.82 * 0.82 + 0.28 * 0.28 + 0.28 * 0.28 + 0.66 * 0.66)) <= 1e-15);
    CHECK(std::fabs(euclidean_distance(v, VectorN{0, 0, 0, 0}) - expect) <= 1e-15);
    CHECK(euclidean_distance(v, v) == 0.0);
    CHECK_THROWS_AS(euclidean_distance(v, VectorN{0, 0}), InvalidArgument);

    SUBCASE("adapted vectors must share a mode") {
        const auto s = *testing::paper_map().similarity();
        const auto p = paper_profile();
        const auto a = similarity_adapt(p, s, NormalizationMode::by_total);
        const auto b = similarity_adapt(p, s, NormalizationMode::raw);
        CHECK(euclidean_distance(a, a) == 0.0);
        CHECK_THROWS_AS(euclidean_distance(a, b), InvalidArgument);
    }
}

TEST_CASE("euclidean_distance metric axioms") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t dim : {2u, 7u, 224u}) {
        for (int trial = 0; trial < 300; ++trial) {
            std::vector<double> a(dim), b(dim), c(dim);
            for (std::size_t k = 0; k < dim; ++k) {
                a[k] = u(rng);
                b[k] = u(rng);
                c[k] = u(rng);
            }
            const VectorN x(a), y(b), z(c);
            const double xy = euclidean_distance(x, y);
            CHECK(xy >= 0.0);
            CHECK(xy == euclidean_distance(y, x));
            CHECK(euclidean_distance(x, x) == 0.0);
            CHECK(xy <= euclidean_distance(x, z) + euclidean_distance(z, y) + 1e-12);
            CHECK(std::fabs(xy - oracle::distance(a, b)) <= 1e-12);
        }
    }
}
