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

#include "overlaymap/core.hpp"

#include "overlaymap/error.hpp"
#include "overlaymap/summation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace overlaymap {

std::string_view to_string(NormalizationMode mode) noexcept {
    switch (mode) {
    case NormalizationMode::raw: return "raw";
    case NormalizationMode::by_total: return "by_total";
    case NormalizationMode::by_adapted_sum: return "by_adapted_sum";
    }
    return "raw";
}

std::optional<NormalizationMode> parse_normalization_mode(std::string_view s) noexcept {
    if (s == "raw")
        return NormalizationMode::raw;
    if (s == "by_total" || s == "by-total")
        return NormalizationMode::by_total;
    if (s == "by_adapted_sum" || s == "by-adapted-sum")
        return NormalizationMode::by_adapted_sum;
    return std::nullopt;
}

Point2D barycenter_2d(const PublicationProfile& profile, const OverlayMap& map) {
    if (profile.dimension() != map.size())
        throw InvalidArgument("profile '" + profile.unit_id() + "' has " + std::to_string(profile.dimension()) +
                              " categories, map has " + std::to_string(map.size()));

    CompensatedSum sx, sy;
    constexpr double inf = std::numeric_limits<double>::infinity();
    double lo_x = inf, hi_x = -inf, lo_y = inf, hi_y = -inf;
    const auto counts = profile.counts();
    for (std::size_t j = 0; j < counts.size(); ++j) {
        const double m = counts[j];
        if (m == 0.0)
            continue;
        const auto& c = map.categories()[j];
        sx += m * c.x;
        sy += m * c.y;
        lo_x = std::min(lo_x, c.x);
        hi_x = std::max(hi_x, c.x);
        lo_y = std::min(lo_y, c.y);
        hi_y = std::max(hi_y, c.y);
    }
    const double t = profile.total();
    return {std::clamp(sx.result() / t, lo_x, hi_x), std::clamp(sy.result() / t, lo_y, hi_y)};
}

VectorN barycenter_set(std::span<const VectorN> vectors) {
    if (vectors.empty())
        throw InvalidArgument("barycenter of an empty set");
    std::vector<WeightedVector> unit;
    unit.reserve(vectors.size());
    for (const auto& v : vectors)
        unit.push_back({1.0, v});
    return weighted_barycenter(unit);
}

VectorN weighted_barycenter(std::span<const WeightedVector> weighted) {
    if (weighted.empty())
        throw InvalidArgument("barycenter of an empty set");
    const auto dim = weighted.front().vector.size();
    std::vector<CompensatedSum> acc(dim);
    CompensatedSum total;
    for (std::size_t n = 0; n < weighted.size(); ++n) {
        const auto& [w, x] = weighted[n];
        if (!(w > 0.0) || !std::isfinite(w))
            throw InvalidArgument("weight " + std::to_string(n) + " must be strictly positive and finite");
        if (x.size() != dim)
            throw InvalidArgument("vector " + std::to_string(n) + " has dimension " + std::to_string(x.size()) +
                                  ", expected " + std::to_string(dim));
        total += w;
        for (std::size_t k = 0; k < dim; ++k)
            acc[k] += w * x[k];
    }
    const double t = total.result();
    std::vector<double> out(dim);
    for (std::size_t k = 0; k < dim; ++k)
        out[k] = acc[k].result() / t;
    return VectorN(std::move(out));
}

SimilarityAdaptedVector similarity_adapt(const PublicationProfile& profile, const SimilarityMatrix& s,
                                         NormalizationMode mode) {
    const auto n = s.size();
    if (profile.dimension() != n)
        throw InvalidArgument("profile '" + profile.unit_id() + "' has " + std::to_string(profile.dimension()) +
                              " categories, similarity matrix is " + std::to_string(n) + "x" + std::to_string(n));

    // (S*M)_k = sum_j m_j s_jk, accumulated row by row of S
    std::vector<CompensatedSum> acc(n);
    const auto m = profile.counts();
    for (std::size_t j = 0; j < n; ++j) {
        if (m[j] == 0.0)
            continue;
        const auto row = s.row(j);
        for (std::size_t k = 0; k < n; ++k)
            acc[k] += m[j] * row[k];
    }
    std::vector<double> values(n);
    for (std::size_t k = 0; k < n; ++k)
        values[k] = acc[k].result();

    double divisor = 1.0;
    switch (mode) {
    case NormalizationMode::raw:
        break;
    case NormalizationMode::by_total:
        divisor = profile.total();
        break;
    case NormalizationMode::by_adapted_sum:
        divisor = compensated_sum(values);
        if (!(divisor > 0.0))
            throw DataError("unit '" + profile.unit_id() + "': similarity-adapted vector sums to 0");
        break;
    }
    if (mode != NormalizationMode::raw)
        for (auto& v : values)
            v /= divisor;
    return {VectorN(std::move(values)), mode, profile.total()};
}

CosineResult cosine_normalize(const CountMatrix& counts) {
    const auto rows = counts.rows, cols = counts.cols;
    if (rows == 0 || cols == 0)
        throw InvalidArgument("count matrix is empty");
    if (counts.values.size() != rows * cols)
        throw InvalidArgument("count matrix holds " + std::to_string(counts.values.size()) + " values, expected " +
                              std::to_string(rows * cols));
    for (std::size_t i = 0; i < counts.values.size(); ++i) {
        const double v = counts.values[i];
        if (!std::isfinite(v) || v < 0.0)
            throw DataError("count matrix entry (" + std::to_string(i / cols) + "," + std::to_string(i % cols) +
                            ") must be nonnegative and finite");
    }

    std::vector<double> norms(rows);
    CosineResult result{SimilarityMatrix(rows, SimilaritySource::computed), {}};
    for (std::size_t i = 0; i < rows; ++i) {
        norms[i] = std::sqrt(compensated_dot(counts.row(i), counts.row(i)));
        if (norms[i] == 0.0)
            result.zero_rows.push_back(i);
    }
    if (result.zero_rows.size() == rows)
        throw DataError("count matrix has no nonzero row");

    auto& s = result.similarity;
    for (std::size_t i = 0; i < rows; ++i) {
        if (norms[i] == 0.0)
            continue;
        s(i, i) = 1.0;
        for (std::size_t j = i + 1; j < rows; ++j) {
            if (norms[j] == 0.0)
                continue;
            const double c = compensated_dot(counts.row(i), counts.row(j)) / (norms[i] * norms[j]);
            s(i, j) = s(j, i) = std::clamp(c, 0.0, 1.0);
        }
    }
    return result;
}

namespace {

double distance_impl(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw InvalidArgument("distance between vectors of dimension " + std::to_string(a.size()) + " and " +
                              std::to_string(b.size()));
    CompensatedSum acc;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        acc += d * d;
    }
    return std::sqrt(acc.result());
}

} // namespace

double euclidean_distance(const Point2D& a, const Point2D& b) noexcept {
    const double pa[] = {a.c1, a.c2}, pb[] = {b.c1, b.c2};
    return distance_impl(pa, pb);
}

double euclidean_distance(const VectorN& a, const VectorN& b) { return distance_impl(a.values(), b.values()); }

double euclidean_distance(const SimilarityAdaptedVector& a, const SimilarityAdaptedVector& b) {
    if (a.mode != b.mode)
        throw InvalidArgument("distance between similarity-adapted vectors with modes " +
                              std::string(to_string(a.mode)) + " and " + std::string(to_string(b.mode)));
    return distance_impl(a.values.values(), b.values.values());
}

} // namespace overlaymap
