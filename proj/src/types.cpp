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

#include "overlaymap/types.hpp"

#include "overlaymap/error.hpp"
#include "overlaymap/summation.hpp"

#include <cctype>
#include <cmath>
#include <unordered_map>

namespace overlaymap {

SimilarityMatrix::SimilarityMatrix(std::size_t n, std::vector<double> values, SimilaritySource source)
    : n_(n), values_(std::move(values)), source_(source) {
    if (values_.size() != n * n)
        throw InvalidArgument("similarity matrix needs " + std::to_string(n * n) + " values, got " +
                              std::to_string(values_.size()));
}

SimilarityMatrix SimilarityMatrix::identity(std::size_t n) {
    SimilarityMatrix m(n, SimilaritySource::computed);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

std::string normalize_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending_space = false;
    for (unsigned char c : s) {
        if (std::isspace(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space)
            out.push_back(' ');
        pending_space = false;
        out.push_back(static_cast<char>(c));
    }
    return out;
}

OverlayMap::OverlayMap(std::vector<SubjectCategory> categories, std::optional<SimilarityMatrix> similarity)
    : categories_(std::move(categories)), similarity_(std::move(similarity)) {
    std::unordered_map<std::string, std::size_t> seen;
    for (std::size_t i = 0; i < categories_.size(); ++i) {
        const auto& c = categories_[i];
        if (c.index != i)
            throw DataError("category '" + c.label + "' has index " + std::to_string(c.index) +
                            " at position " + std::to_string(i));
        if (!std::isfinite(c.x) || !std::isfinite(c.y))
            throw DataError("category '" + c.label + "' has non-finite coordinates");
        auto [it, inserted] = seen.emplace(normalize_whitespace(c.label), i);
        if (!inserted)
            throw DataError("duplicate category label '" + c.label + "' at indices " +
                            std::to_string(it->second) + " and " + std::to_string(i));
    }
    if (similarity_ && similarity_->size() != categories_.size())
        throw DataError("similarity matrix is " + std::to_string(similarity_->size()) + "x" +
                        std::to_string(similarity_->size()) + " but the map has " +
                        std::to_string(categories_.size()) + " categories");
}

std::optional<std::size_t> OverlayMap::find_label(std::string_view label) const {
    const auto key = normalize_whitespace(label);
    for (const auto& c : categories_)
        if (normalize_whitespace(c.label) == key)
            return c.index;
    return std::nullopt;
}

OverlayMap OverlayMap::with_similarity(std::optional<SimilarityMatrix> similarity) const {
    return OverlayMap(categories_, std::move(similarity));
}

std::string_view to_string(UnitKind kind) noexcept {
    switch (kind) {
    case UnitKind::panel_member: return "panel_member";
    case UnitKind::research_group: return "research_group";
    case UnitKind::other: return "other";
    }
    return "other";
}

std::optional<UnitKind> parse_unit_kind(std::string_view s) noexcept {
    if (s == "panel_member" || s == "panel-member")
        return UnitKind::panel_member;
    if (s == "research_group" || s == "research-group")
        return UnitKind::research_group;
    if (s == "other")
        return UnitKind::other;
    return std::nullopt;
}

PublicationProfile::PublicationProfile(std::string unit_id, UnitKind kind, std::vector<double> counts)
    : unit_id_(std::move(unit_id)), kind_(kind), counts_(std::move(counts)) {
    for (std::size_t j = 0; j < counts_.size(); ++j) {
        if (!std::isfinite(counts_[j]) || counts_[j] < 0.0)
            throw DataError("unit '" + unit_id_ + "': count for category " + std::to_string(j) +
                            " must be a nonnegative finite number");
    }
    total_ = compensated_sum(counts_);
    if (!(total_ > 0.0))
        throw DataError("unit '" + unit_id_ + "' has total 0");
}

PublicationProfile PublicationProfile::scaled(double c) const {
    if (!(c > 0.0) || !std::isfinite(c))
        throw InvalidArgument("scale factor must be strictly positive and finite");
    std::vector<double> counts(counts_);
    for (auto& v : counts)
        v *= c;
    return PublicationProfile(unit_id_, kind_, std::move(counts));
}

PublicationProfile merge_profiles(std::span<const PublicationProfile> profiles, std::string unit_id,
                                  UnitKind kind) {
    if (profiles.empty())
        throw InvalidArgument("cannot merge an empty set of profiles");
    const auto n = profiles.front().dimension();
    std::vector<CompensatedSum> acc(n);
    for (const auto& p : profiles) {
        if (p.dimension() != n)
            throw InvalidArgument("profiles to merge have different dimensions");
        for (std::size_t j = 0; j < n; ++j)
            acc[j] += p.counts()[j];
    }
    std::vector<double> counts(n);
    for (std::size_t j = 0; j < n; ++j)
        counts[j] = acc[j].result();
    return PublicationProfile(std::move(unit_id), kind, std::move(counts));
}

} // namespace overlaymap
