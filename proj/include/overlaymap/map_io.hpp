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

#include "overlaymap/pajek.hpp"
#include "overlaymap/types.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace overlaymap {

inline constexpr double kSymmetryTolerance = 1e-9;
inline constexpr double kNegativeClampTolerance = 1e-12;
inline constexpr double kUpperBoundTolerance = 1e-12;

/// Build an overlay map from one network of a parsed Pajek document.
///
/// Without a selector the first network whose vertices all carry at least
/// two coordinates is used. Vertices are reindexed by file position. A
/// *Matrix section becomes the similarity matrix as-is; otherwise link
/// weights are used (absent entries 0, edges set both directions, arcs one).
/// A network with neither yields a coordinates-only map. The similarity
/// matrix is not validated here.
OverlayMap extract_overlay_map(const pajek::Document& doc,
                               const std::optional<std::string>& network_selector = std::nullopt);

enum class SymmetryPolicy { strict, symmetrize };

struct ValidatedSimilarity {
    SimilarityMatrix matrix;
    double max_asymmetry = 0.0;       ///< max |s_ij - s_ji| of the input
    std::size_t clamped_entries = 0;  ///< tiny negatives set to 0
    std::size_t diagonal_filled = 0;  ///< zero diagonal entries set to 1 (edge lists only)
};

/// Check and repair a similarity matrix.
///
/// Entries must be finite; negatives down to -1e-12 are clamped to 0, lower
/// ones rejected. Strict policy rejects asymmetry above 1e-9, symmetrize
/// replaces each pair by its mean so the result is bitwise symmetric.
/// Matrices assembled from edge lists get their zero diagonal set to 1.
/// Entries above 1 + 1e-12 are rejected.
ValidatedSimilarity validate_similarity_matrix(const SimilarityMatrix& m, SymmetryPolicy policy);

enum class UnknownCategoryPolicy { error, skip };

struct ProfileSet {
    std::vector<PublicationProfile> profiles; ///< sorted by unit id
    std::size_t skipped_rows = 0;             ///< rows dropped for unknown categories
};

/// Read profiles from CSV with header `unit_id,kind,category,count`.
///
/// Categories resolve by label (whitespace-normalized) first, then as a
/// 0-based numeric index. Rows of the same (unit, category) are summed in
/// sorted order so the result does not depend on row order.
ProfileSet load_profiles_csv(std::string_view text, const OverlayMap& map,
                             UnknownCategoryPolicy unknown_policy = UnknownCategoryPolicy::error);

/// Serialize profiles back to CSV (one row per nonzero count, category by label).
std::string write_profiles_csv(std::span<const PublicationProfile> profiles, const OverlayMap& map);

/// Map JSON: {"categories":[{"index","pajek_id","label","x","y"}...],
///            "similarity": [[...]] | null, "similarity_source": "..."}
/// Numbers are written in shortest round-trip form.
std::string write_map_json(const OverlayMap& map);
OverlayMap read_map_json(std::string_view text);

} // namespace overlaymap
