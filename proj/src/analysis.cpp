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

#include "overlaymap/analysis.hpp"

#include "overlaymap/error.hpp"
#include "overlaymap/summation.hpp"
#include "text_util.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace overlaymap {

std::string to_string(const Representation& r) {
    if (r.kind == Representation::Kind::barycenter2d)
        return "barycenter2d";
    return "adapted:" + std::string(to_string(r.mode));
}

std::optional<Representation> parse_representation(std::string_view s) {
    if (s == "barycenter2d" || s == "barycenter")
        return Representation::barycenter();
    if (s == "adapted")
        return Representation::adapted(NormalizationMode::by_total);
    constexpr std::string_view prefix = "adapted:";
    if (s.substr(0, prefix.size()) == prefix)
        s.remove_prefix(prefix.size());
    if (auto mode = parse_normalization_mode(s))
        return Representation::adapted(*mode);
    return std::nullopt;
}

std::string_view to_string(Aggregation a) noexcept {
    return a == Aggregation::pooled ? "pooled" : "per_member";
}

std::optional<Aggregation> parse_aggregation(std::string_view s) noexcept {
    if (s == "per_member" || s == "per-member")
        return Aggregation::per_member;
    if (s == "pooled")
        return Aggregation::pooled;
    return std::nullopt;
}

VectorN represent(const PublicationProfile& profile, const OverlayMap& map, const Representation& r) {
    if (r.kind == Representation::Kind::barycenter2d) {
        const auto c = barycenter_2d(profile, map);
        return VectorN{c.c1, c.c2};
    }
    if (!map.has_similarity())
        throw DataError("the adapted representation needs a map with a similarity matrix");
    if (profile.dimension() != map.size())
        throw InvalidArgument("profile '" + profile.unit_id() + "' does not match the map");
    return similarity_adapt(profile, *map.similarity(), r.mode).values;
}

DistanceReport pairwise_distances(std::span<const PublicationProfile> groups,
                                  std::span<const PublicationProfile> panel, const OverlayMap& map,
                                  const Representation& representation, Aggregation aggregation) {
    if (representation.kind == Representation::Kind::adapted && !map.has_similarity())
        throw DataError("the adapted representation needs a map with a similarity matrix");

    DistanceReport report;
    report.representation = representation;
    report.aggregation = aggregation;

    std::vector<VectorN> columns;
    if (aggregation == Aggregation::pooled && !panel.empty()) {
        const auto pooled = merge_profiles(panel, std::string(kPooledUnitId), UnitKind::panel_member);
        report.column_units.push_back(pooled.unit_id());
        columns.push_back(represent(pooled, map, representation));
    } else {
        for (const auto& p : panel) {
            report.column_units.push_back(p.unit_id());
            columns.push_back(represent(p, map, representation));
        }
    }

    report.distances.reserve(groups.size());
    report.ranking.reserve(groups.size());
    for (const auto& g : groups) {
        report.row_units.push_back(g.unit_id());
        const auto row_vec = represent(g, map, representation);
        std::vector<double> row;
        row.reserve(columns.size());
        for (const auto& c : columns)
            row.push_back(euclidean_distance(row_vec, c));

        std::vector<std::size_t> order(row.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return row[a] < row[b]; });

        report.distances.push_back(std::move(row));
        report.ranking.push_back(std::move(order));
    }
    return report;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

} // namespace

std::string report_to_csv(const DistanceReport& report, int precision) {
    std::string out = "unit_id";
    for (const auto& c : report.column_units)
        out += "," + csv_field(c);
    out += '\n';
    for (std::size_t i = 0; i < report.row_units.size(); ++i) {
        out += csv_field(report.row_units[i]);
        for (double d : report.distances[i])
            out += "," + detail::format_double(d, precision);
        out += '\n';
    }
    return out;
}

std::string report_to_json(const DistanceReport& report) {
    nlohmann::ordered_json j;
    j["representation"] = to_string(report.representation);
    j["aggregation"] = std::string(to_string(report.aggregation));
    j["row_units"] = report.row_units;
    j["column_units"] = report.column_units;
    j["distances"] = report.distances;
    j["ranking"] = report.ranking;
    return j.dump(1) + "\n";
}

ScaleAudit scale_invariance_audit(const PublicationProfile& profile, const OverlayMap& map,
                                  std::span<const Representation> representations,
                                  std::span<const double> scale_factors, double tolerance) {
    for (double c : scale_factors)
        if (!(c > 0.0) || !std::isfinite(c))
            throw InvalidArgument("scale factors must be strictly positive and finite");
    if (!(tolerance >= 0.0))
        throw InvalidArgument("audit tolerance must be nonnegative");

    ScaleAudit audit;
    audit.unit_id = profile.unit_id();
    audit.scale_factors.assign(scale_factors.begin(), scale_factors.end());
    audit.tolerance = tolerance;

    std::vector<PublicationProfile> scaled;
    scaled.reserve(scale_factors.size());
    for (double c : scale_factors)
        scaled.push_back(profile.scaled(c));

    for (const auto& r : representations) {
        const auto base = represent(profile, map, r);
        double drift = 0.0;
        for (const auto& p : scaled)
            drift = std::max(drift, euclidean_distance(base, represent(p, map, r)));
        audit.entries.push_back({r, drift, drift <= tolerance});
    }
    return audit;
}

NormalizationAudit normalization_audit(const PublicationProfile& profile, const SimilarityMatrix& s) {
    const auto raw = similarity_adapt(profile, s, NormalizationMode::raw);
    const double sum = compensated_sum(raw.values.values()) / profile.total();
    return {profile.unit_id(), sum, std::fabs(sum - 1.0)};
}

BoundingBoxCheck bounding_box_check(const PublicationProfile& profile, const OverlayMap& map) {
    BoundingBoxCheck check;
    check.barycenter = barycenter_2d(profile, map);

    bool first = true;
    for (std::size_t j = 0; j < profile.dimension(); ++j) {
        if (profile.counts()[j] <= 0.0)
            continue;
        const auto& c = map.category(j);
        if (first) {
            check.box = {c.x, c.x, c.y, c.y};
            first = false;
        }
        check.box.min_x = std::min(check.box.min_x, c.x);
        check.box.max_x = std::max(check.box.max_x, c.x);
        check.box.min_y = std::min(check.box.min_y, c.y);
        check.box.max_y = std::max(check.box.max_y, c.y);
    }

    using detail::format_double;
    const auto& p = check.barycenter;
    const auto& b = check.box;
    if (p.c1 < b.min_x)
        check.violations.push_back("c1=" + format_double(p.c1) + " < min_x=" + format_double(b.min_x));
    if (p.c1 > b.max_x)
        check.violations.push_back("c1=" + format_double(p.c1) + " > max_x=" + format_double(b.max_x));
    if (p.c2 < b.min_y)
        check.violations.push_back("c2=" + format_double(p.c2) + " < min_y=" + format_double(b.min_y));
    if (p.c2 > b.max_y)
        check.violations.push_back("c2=" + format_double(p.c2) + " > max_y=" + format_double(b.max_y));
    check.pass = check.violations.empty();
    return check;
}

} // namespace overlaymap
