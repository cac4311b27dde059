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

#include "overlaymap/core.hpp"
#include "overlaymap/types.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace overlaymap {

inline constexpr double kAuditTolerance = 1e-9;

/// How a unit is represented before distances are taken.
struct Representation {
    enum class Kind { barycenter2d, adapted };

    Kind kind = Kind::barycenter2d;
    NormalizationMode mode = NormalizationMode::by_total; ///< used when kind == adapted

    static Representation barycenter() { return {Kind::barycenter2d, NormalizationMode::by_total}; }
    static Representation adapted(NormalizationMode m) { return {Kind::adapted, m}; }

    bool operator==(const Representation& o) const noexcept {
        return kind == o.kind && (kind == Kind::barycenter2d || mode == o.mode);
    }
};

/// "barycenter2d" or "adapted:<mode>".
std::string to_string(const Representation& r);
/// Accepts "barycenter2d", "adapted" (by_total), "adapted:<mode>" and the
/// mode names on their own.
std::optional<Representation> parse_representation(std::string_view s);

/// Representation of one unit: a map point or a similarity-adapted vector.
VectorN represent(const PublicationProfile& profile, const OverlayMap& map, const Representation& r);

enum class Aggregation { per_member, pooled };

std::string_view to_string(Aggregation a) noexcept;
std::optional<Aggregation> parse_aggregation(std::string_view s) noexcept;

struct DistanceReport {
    Representation representation;
    Aggregation aggregation = Aggregation::per_member;
    std::vector<std::string> row_units;
    std::vector<std::string> column_units;
    std::vector<std::vector<double>> distances; ///< [row][column]
    /// Per row: column indices by ascending distance, ties by column order.
    std::vector<std::vector<std::size_t>> ranking;
};

inline constexpr std::string_view kPooledUnitId = "pooled_panel";

/// Distances from every group (rows) to every panel unit (columns).
///
/// per_member keeps each panel member as its own column; pooled merges the
/// panel's counts into a single unit with id kPooledUnitId first.
DistanceReport pairwise_distances(std::span<const PublicationProfile> groups,
                                  std::span<const PublicationProfile> panel, const OverlayMap& map,
                                  const Representation& representation,
                                  Aggregation aggregation = Aggregation::per_member);

/// Matrix CSV: header `unit_id,<column ids...>`, one line per row unit.
std::string report_to_csv(const DistanceReport& report, int precision = 17);
std::string report_to_json(const DistanceReport& report);

struct ScaleAuditEntry {
    Representation representation;
    double max_drift = 0.0;
    bool pass = true;
};

struct ScaleAudit {
    std::string unit_id;
    std::vector<double> scale_factors;
    double tolerance = kAuditTolerance;
    std::vector<ScaleAuditEntry> entries;
};

/// For every representation, the largest distance between rep(M) and
/// rep(c*M) over the scale factors; pass iff that drift <= tolerance.
ScaleAudit scale_invariance_audit(const PublicationProfile& profile, const OverlayMap& map,
                                  std::span<const Representation> representations,
                                  std::span<const double> scale_factors,
                                  double tolerance = kAuditTolerance);

struct NormalizationAudit {
    std::string unit_id;
    double coordinate_sum = 0.0; ///< sum_k (S*M/T)_k
    double deviation = 0.0;      ///< |coordinate_sum - 1|
};

/// Reports how far S*M/T is from summing to 1. Never fails on the deviation.
NormalizationAudit normalization_audit(const PublicationProfile& profile, const SimilarityMatrix& s);

struct BoundingBox {
    double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
};

struct BoundingBoxCheck {
    bool pass = true;
    Point2D barycenter;
    BoundingBox box; ///< of the categories with m_j > 0
    std::vector<std::string> violations; ///< e.g. "c1=2.5 > max_x=2"
};

BoundingBoxCheck bounding_box_check(const PublicationProfile& profile, const OverlayMap& map);

} // namespace overlaymap
