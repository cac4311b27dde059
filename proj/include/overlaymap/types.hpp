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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace overlaymap {

/// One subject category of an overlay map: a labelled point in the 2-D layout.
struct SubjectCategory {
    std::size_t index = 0; ///< 0-based position in the map
    long pajek_id = 0;     ///< vertex id as read from the source file
    std::string label;
    double x = 0.0;
    double y = 0.0;

    bool operator==(const SubjectCategory&) const = default;
};

/// Where the entries of a similarity matrix came from. Only matters for the
/// diagonal rule applied during validation: edge lists omit self-loops, so
/// their zero diagonal is filled with 1.
enum class SimilaritySource { matrix, edge_list, computed };

/// Dense, row-major N x N matrix of category similarities.
class SimilarityMatrix {
public:
    SimilarityMatrix() = default;
    explicit SimilarityMatrix(std::size_t n, SimilaritySource source = SimilaritySource::matrix)
        : n_(n), values_(n * n, 0.0), source_(source) {}
    /// Takes ownership of `values` (row-major); throws InvalidArgument when the
    /// size is not n*n.
    SimilarityMatrix(std::size_t n, std::vector<double> values,
                     SimilaritySource source = SimilaritySource::matrix);

    static SimilarityMatrix identity(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    SimilaritySource source() const noexcept { return source_; }

    double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) noexcept { return values_[i * n_ + j]; }

    std::span<const double> row(std::size_t i) const noexcept {
        return {values_.data() + i * n_, n_};
    }
    std::span<const double> values() const noexcept { return values_; }

    bool operator==(const SimilarityMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> values_;
    SimilaritySource source_ = SimilaritySource::matrix;
};

/// Categories with coordinates plus an optional similarity matrix.
///
/// The constructor enforces the map invariants: indices contiguous from 0,
/// finite coordinates, labels unique after whitespace normalization, and a
/// similarity dimension equal to the number of categories.
class OverlayMap {
public:
    OverlayMap() = default;
    OverlayMap(std::vector<SubjectCategory> categories,
               std::optional<SimilarityMatrix> similarity = std::nullopt);

    std::size_t size() const noexcept { return categories_.size(); }
    const std::vector<SubjectCategory>& categories() const noexcept { return categories_; }
    const SubjectCategory& category(std::size_t i) const { return categories_.at(i); }
    const std::optional<SimilarityMatrix>& similarity() const noexcept { return similarity_; }
    bool has_similarity() const noexcept { return similarity_.has_value(); }

    /// Index of the category whose normalized label equals normalize(label).
    std::optional<std::size_t> find_label(std::string_view label) const;

    /// Same categories, different similarity matrix.
    OverlayMap with_similarity(std::optional<SimilarityMatrix> similarity) const;

    bool operator==(const OverlayMap&) const = default;

private:
    std::vector<SubjectCategory> categories_;
    std::optional<SimilarityMatrix> similarity_;
};

/// Trim and collapse internal whitespace runs to a single space.
std::string normalize_whitespace(std::string_view s);

enum class UnitKind { panel_member, research_group, other };

std::string_view to_string(UnitKind kind) noexcept;
/// Accepts the enum spelling and the kebab-case variant.
std::optional<UnitKind> parse_unit_kind(std::string_view s) noexcept;

/// Publication counts of one unit over the categories of a map (the column M).
///
/// Counts are dense, one entry per category, nonnegative and finite; fractional
/// counts are allowed. Construction rejects empty profiles (total 0).
class PublicationProfile {
public:
    PublicationProfile(std::string unit_id, UnitKind kind, std::vector<double> counts);

    const std::string& unit_id() const noexcept { return unit_id_; }
    UnitKind kind() const noexcept { return kind_; }
    std::span<const double> counts() const noexcept { return counts_; }
    double count(std::size_t category) const { return counts_.at(category); }
    std::size_t dimension() const noexcept { return counts_.size(); }
    double total() const noexcept { return total_; }

    /// Every count multiplied by c (c > 0).
    PublicationProfile scaled(double c) const;

    bool operator==(const PublicationProfile&) const = default;

private:
    std::string unit_id_;
    UnitKind kind_;
    std::vector<double> counts_;
    double total_ = 0.0;
};

/// Sum the counts of several profiles into one unit of the given id and kind.
PublicationProfile merge_profiles(std::span<const PublicationProfile> profiles, std::string unit_id,
                                  UnitKind kind = UnitKind::other);

} // namespace overlaymap
