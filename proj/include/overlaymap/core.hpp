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

#pragma once

#include "overlaymap/types.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string_view>
#include <optional>
#include <vector>

namespace overlaymap {

struct Point2D {
    double c1 = 0.0;
    double c2 = 0.0;

    bool operator==(const Point2D&) const = default;
};

/// A point in R^N.
class VectorN {
public:
    VectorN() = default;
    explicit VectorN(std::vector<double> values) : values_(std::move(values)) {}
    VectorN(std::initializer_list<double> values) : values_(values) {}

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    std::span<const double> values() const noexcept { return values_; }

    bool operator==(const VectorN&) const = default;

private:
    std::vector<double> values_;
};

/// How S*M is normalized.
enum class NormalizationMode {
    raw,            ///< S*M itself
    by_total,       ///< S*M / T, T the sum of the unit's counts
    by_adapted_sum, ///< S*M / sum_k (S*M)_k, coordinates sum to 1
};

std::string_view to_string(NormalizationMode mode) noexcept;
/// Accepts snake_case and kebab-case spellings.
std::optional<NormalizationMode> parse_normalization_mode(std::string_view s) noexcept;

/// The similarity-adapted publication vector S*M of one unit, normalized
/// according to `mode`.
struct SimilarityAdaptedVector {
    VectorN values;
    NormalizationMode mode = NormalizationMode::raw;
    double source_total = 0.0; ///< T of the originating profile

    bool operator==(const SimilarityAdaptedVector&) const = default;
};

/// Publication-weighted mean of category coordinates:
///   C_k = sum_j m_j L_{j,k} / T.
/// The result is clamped to the bounding box of the supporting categories,
/// which only ever corrects last-ulp rounding.
Point2D barycenter_2d(const PublicationProfile& profile, const OverlayMap& map);

/// Unweighted mean (1/k) sum_n X_n of a nonempty set of equal-length vectors.
VectorN barycenter_set(std::span<const VectorN> vectors);

struct WeightedVector {
    double weight = 1.0;
    VectorN vector;
};

/// (1/T) sum_n m_n X_n with T = sum_n m_n; every weight must be > 0.
VectorN weighted_barycenter(std::span<const WeightedVector> weighted);

/// (S*M)_k = sum_j m_j s_jk, then normalized per `mode`.
SimilarityAdaptedVector similarity_adapt(const PublicationProfile& profile, const SimilarityMatrix& s,
                                         NormalizationMode mode);

/// Dense rows x cols matrix of nonnegative counts, row-major.
struct CountMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    std::span<const double> row(std::size_t i) const noexcept {
        return {values.data() + i * cols, cols};
    }
};

struct CosineResult {
    SimilarityMatrix similarity;
    std::vector<std::size_t> zero_rows; ///< rows with no citations; their similarities are 0
};

/// Cosine similarity between the citing rows of a count matrix:
///   s_ij = (r_i . r_j) / (|r_i| |r_j|).
/// The result is exactly symmetric with unit diagonal for nonzero rows.
CosineResult cosine_normalize(const CountMatrix& counts);

double euclidean_distance(const Point2D& a, const Point2D& b) noexcept;
double euclidean_distance(const VectorN& a, const VectorN& b);
/// Both vectors must carry the same normalization mode.
double euclidean_distance(const SimilarityAdaptedVector& a, const SimilarityAdaptedVector& b);

} // namespace overlaymap
