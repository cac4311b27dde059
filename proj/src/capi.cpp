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

// C wrapper around the overlaymap C++ core.

#include "overlaymap/overlaymap.h"

#include "overlaymap/analysis.hpp"
#include "overlaymap/core.hpp"
#include "overlaymap/error.hpp"
#include "overlaymap/map_io.hpp"
#include "overlaymap/pajek.hpp"
#include "overlaymap/plot.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

using namespace overlaymap;

struct om_map {
    OverlayMap map;
};

struct om_profiles {
    std::vector<PublicationProfile> profiles;
};

struct om_report {
    DistanceReport report;
};

namespace {

thread_local std::string last_error;
thread_local std::size_t last_error_line = 0;

om_status fail(om_status status, std::string msg, std::size_t line = 0) {
    last_error = std::move(msg);
    last_error_line = line;
    return status;
}

template <class F>
om_status guarded(F&& fn) {
    try {
        fn();
        last_error.clear();
        last_error_line = 0;
        return OM_OK;
    } catch (const ParseError& e) {
        return fail(OM_E_PARSE, e.what(), e.line());
    } catch (const DataError& e) {
        return fail(OM_E_DATA, e.what());
    } catch (const InvalidArgument& e) {
        return fail(OM_E_INVALID_ARGUMENT, e.what());
    } catch (const std::out_of_range& e) {
        return fail(OM_E_OUT_OF_RANGE, e.what());
    } catch (const std::bad_alloc&) {
        return fail(OM_E_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(OM_E_INTERNAL, e.what());
    } catch (...) {
        return fail(OM_E_INTERNAL, "unknown error");
    }
}

void require(bool cond, const char* what) {
    if (!cond)
        throw InvalidArgument(what);
}

char* dup_string(const std::string& s) {
    auto* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out)
        throw std::bad_alloc();
    std::memcpy(out, s.data(), s.size() + 1);
    return out;
}

SymmetryPolicy to_policy(int p) {
    require(p == OM_SYMMETRY_STRICT || p == OM_SYMMETRY_SYMMETRIZE, "unknown symmetry policy");
    return p == OM_SYMMETRY_STRICT ? SymmetryPolicy::strict : SymmetryPolicy::symmetrize;
}

NormalizationMode to_mode(int m) {
    switch (m) {
    case OM_MODE_RAW: return NormalizationMode::raw;
    case OM_MODE_BY_TOTAL: return NormalizationMode::by_total;
    case OM_MODE_BY_ADAPTED_SUM: return NormalizationMode::by_adapted_sum;
    }
    throw InvalidArgument("unknown normalization mode");
}

Representation to_representation(int r, int mode) {
    if (r == OM_REPR_BARYCENTER2D)
        return Representation::barycenter();
    require(r == OM_REPR_ADAPTED, "unknown representation");
    return Representation::adapted(to_mode(mode));
}

UnitKind to_kind(int k) {
    switch (k) {
    case OM_KIND_PANEL_MEMBER: return UnitKind::panel_member;
    case OM_KIND_RESEARCH_GROUP: return UnitKind::research_group;
    case OM_KIND_OTHER: return UnitKind::other;
    }
    throw InvalidArgument("unknown unit kind");
}

int from_kind(UnitKind k) {
    switch (k) {
    case UnitKind::panel_member: return OM_KIND_PANEL_MEMBER;
    case UnitKind::research_group: return OM_KIND_RESEARCH_GROUP;
    case UnitKind::other: return OM_KIND_OTHER;
    }
    return OM_KIND_OTHER;
}

const PublicationProfile& profile_at(const om_profiles* p, std::size_t i) {
    require(p != nullptr, "profiles handle is null");
    if (i >= p->profiles.size())
        throw std::out_of_range("profile index " + std::to_string(i) + " out of range");
    return p->profiles[i];
}

const OverlayMap& map_of(const om_map* m) {
    require(m != nullptr, "map handle is null");
    return m->map;
}

OverlayMap validated(const OverlayMap& map, SymmetryPolicy policy, om_map_info* info) {
    if (!map.has_similarity())
        return map;
    auto v = validate_similarity_matrix(*map.similarity(), policy);
    if (info) {
        info->max_asymmetry = v.max_asymmetry;
        info->clamped_entries = v.clamped_entries;
        info->diagonal_filled = v.diagonal_filled;
    }
    return map.with_similarity(std::move(v.matrix));
}

} // namespace

extern "C" {

const char* om_version(void) { return "0.1.0"; }
const char* om_last_error(void) { return last_error.c_str(); }
size_t om_last_error_line(void) { return last_error_line; }
void om_string_free(char* s) { std::free(s); }

om_status om_map_from_pajek(const char* text, size_t len, const char* network, int policy, int cosine,
                            om_map** out, om_map_info* info) {
    return guarded([&] {
        require(text != nullptr || len == 0, "text is null");
        require(out != nullptr, "out is null");
        const auto pol = to_policy(policy);
        if (info)
            *info = om_map_info{0.0, 0, 0, 0, 0};
        const auto doc = pajek::parse(std::string_view(text ? text : "", len));
        auto map = extract_overlay_map(doc, network ? std::optional<std::string>(network) : std::nullopt);
        if (info)
            info->ignored_sections = doc.ignored_sections.size();
        if (cosine) {
            if (!map.has_similarity())
                throw DataError("cosine normalization needs a *Matrix section or link weights");
            const auto& s = *map.similarity();
            CountMatrix counts{s.size(), s.size(), {s.values().begin(), s.values().end()}};
            auto result = cosine_normalize(counts);
            if (info)
                info->zero_rows = result.zero_rows.size();
            map = map.with_similarity(std::move(result.similarity));
        }
        *out = new om_map{validated(map, pol, info)};
    });
}

om_status om_map_from_json(const char* text, size_t len, om_map** out) {
    return guarded([&] {
        require(text != nullptr || len == 0, "text is null");
        require(out != nullptr, "out is null");
        *out = new om_map{read_map_json(std::string_view(text ? text : "", len))};
    });
}

om_status om_map_validated(const om_map* map, int policy, om_map** out, om_map_info* info) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        const auto pol = to_policy(policy);
        if (info)
            *info = om_map_info{0.0, 0, 0, 0, 0};
        *out = new om_map{validated(map_of(map), pol, info)};
    });
}

om_status om_map_to_json(const om_map* map, char** out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = dup_string(write_map_json(map_of(map)));
    });
}

void om_map_free(om_map* map) { delete map; }

size_t om_map_size(const om_map* map) { return map ? map->map.size() : 0; }

int om_map_has_similarity(const om_map* map) { return map && map->map.has_similarity() ? 1 : 0; }

om_status om_map_category(const om_map* map, size_t index, const char** label, double* x, double* y) {
    return guarded([&] {
        const auto& c = map_of(map).category(index);
        if (label)
            *label = c.label.c_str();
        if (x)
            *x = c.x;
        if (y)
            *y = c.y;
    });
}

om_status om_map_similarity(const om_map* map, size_t i, size_t j, double* value) {
    return guarded([&] {
        const auto& m = map_of(map);
        require(value != nullptr, "value is null");
        if (!m.has_similarity())
            throw DataError("map has no similarity matrix");
        if (i >= m.size() || j >= m.size())
            throw std::out_of_range("similarity index out of range");
        *value = (*m.similarity())(i, j);
    });
}

om_status om_profiles_from_csv(const char* text, size_t len, const om_map* map, int unknown_policy,
                               om_profiles** out, size_t* skipped_rows) {
    return guarded([&] {
        require(text != nullptr || len == 0, "text is null");
        require(out != nullptr, "out is null");
        require(unknown_policy == OM_UNKNOWN_ERROR || unknown_policy == OM_UNKNOWN_SKIP,
                "unknown category policy");
        auto set = load_profiles_csv(std::string_view(text ? text : "", len), map_of(map),
                                     unknown_policy == OM_UNKNOWN_SKIP ? UnknownCategoryPolicy::skip
                                                                       : UnknownCategoryPolicy::error);
        if (skipped_rows)
            *skipped_rows = set.skipped_rows;
        *out = new om_profiles{std::move(set.profiles)};
    });
}

om_status om_profiles_select_kind(const om_profiles* profiles, int kind, om_profiles** out) {
    return guarded([&] {
        require(profiles != nullptr && out != nullptr, "null argument");
        const auto k = to_kind(kind);
        auto* sel = new om_profiles{};
        for (const auto& p : profiles->profiles)
            if (p.kind() == k)
                sel->profiles.push_back(p);
        *out = sel;
    });
}

void om_profiles_free(om_profiles* profiles) { delete profiles; }

size_t om_profiles_count(const om_profiles* profiles) { return profiles ? profiles->profiles.size() : 0; }

om_status om_profile_info(const om_profiles* profiles, size_t index, const char** unit_id, int* kind,
                          double* total) {
    return guarded([&] {
        const auto& p = profile_at(profiles, index);
        if (unit_id)
            *unit_id = p.unit_id().c_str();
        if (kind)
            *kind = from_kind(p.kind());
        if (total)
            *total = p.total();
    });
}

om_status om_profile_counts(const om_profiles* profiles, size_t index, double* out, size_t out_len) {
    return guarded([&] {
        const auto& p = profile_at(profiles, index);
        require(out != nullptr, "out is null");
        require(out_len == p.dimension(), "output length does not match the profile dimension");
        std::copy(p.counts().begin(), p.counts().end(), out);
    });
}

om_status om_barycenter_2d(const om_profiles* profiles, size_t index, const om_map* map, double* c1, double* c2) {
    return guarded([&] {
        require(c1 != nullptr && c2 != nullptr, "output is null");
        const auto p = barycenter_2d(profile_at(profiles, index), map_of(map));
        *c1 = p.c1;
        *c2 = p.c2;
    });
}

om_status om_similarity_adapt(const om_profiles* profiles, size_t index, const om_map* map, int mode, double* out,
                              size_t out_len) {
    return guarded([&] {
        const auto& m = map_of(map);
        require(out != nullptr, "out is null");
        require(out_len == m.size(), "output length does not match the map size");
        if (!m.has_similarity())
            throw DataError("map has no similarity matrix");
        const auto v = similarity_adapt(profile_at(profiles, index), *m.similarity(), to_mode(mode));
        std::copy(v.values.values().begin(), v.values.values().end(), out);
    });
}

om_status om_weighted_barycenter(const double* weights, const double* vectors, size_t k, size_t dim, double* out) {
    return guarded([&] {
        require(vectors != nullptr && out != nullptr, "null argument");
        std::vector<WeightedVector> wv;
        wv.reserve(k);
        for (size_t n = 0; n < k; ++n)
            wv.push_back({weights ? weights[n] : 1.0, VectorN(std::vector<double>(vectors + n * dim,
                                                                                  vectors + (n + 1) * dim))});
        const auto b = weighted_barycenter(wv);
        std::copy(b.values().begin(), b.values().end(), out);
    });
}

om_status om_cosine_normalize(const double* counts, size_t rows, size_t cols, double* out, size_t* zero_rows) {
    return guarded([&] {
        require(counts != nullptr && out != nullptr, "null argument");
        const auto r = cosine_normalize(CountMatrix{rows, cols, {counts, counts + rows * cols}});
        std::copy(r.similarity.values().begin(), r.similarity.values().end(), out);
        if (zero_rows)
            *zero_rows = r.zero_rows.size();
    });
}

om_status om_euclidean_distance(const double* a, const double* b, size_t dim, double* out) {
    return guarded([&] {
        require(a != nullptr && b != nullptr && out != nullptr, "null argument");
        *out = euclidean_distance(VectorN(std::vector<double>(a, a + dim)), VectorN(std::vector<double>(b, b + dim)));
    });
}

om_status om_distance_report(const om_profiles* groups, const om_profiles* panel, const om_map* map,
                             int representation, int mode, int aggregation, om_report** out) {
    return guarded([&] {
        require(groups != nullptr && panel != nullptr && out != nullptr, "null argument");
        require(aggregation == OM_AGG_PER_MEMBER || aggregation == OM_AGG_POOLED, "unknown aggregation");
        auto report = pairwise_distances(groups->profiles, panel->profiles, map_of(map),
                                         to_representation(representation, mode),
                                         aggregation == OM_AGG_POOLED ? Aggregation::pooled
                                                                      : Aggregation::per_member);
        *out = new om_report{std::move(report)};
    });
}

void om_report_free(om_report* report) { delete report; }
size_t om_report_rows(const om_report* report) { return report ? report->report.row_units.size() : 0; }
size_t om_report_columns(const om_report* report) { return report ? report->report.column_units.size() : 0; }

const char* om_report_row_unit(const om_report* report, size_t row) {
    if (!report || row >= report->report.row_units.size())
        return nullptr;
    return report->report.row_units[row].c_str();
}

const char* om_report_column_unit(const om_report* report, size_t column) {
    if (!report || column >= report->report.column_units.size())
        return nullptr;
    return report->report.column_units[column].c_str();
}

om_status om_report_distance(const om_report* report, size_t row, size_t column, double* out) {
    return guarded([&] {
        require(report != nullptr && out != nullptr, "null argument");
        *out = report->report.distances.at(row).at(column);
    });
}

om_status om_report_rank(const om_report* report, size_t row, size_t rank, size_t* column) {
    return guarded([&] {
        require(report != nullptr && column != nullptr, "null argument");
        *column = report->report.ranking.at(row).at(rank);
    });
}

om_status om_report_to_csv(const om_report* report, int precision, char** out) {
    return guarded([&] {
        require(report != nullptr && out != nullptr, "null argument");
        require(precision >= 1 && precision <= 17, "precision must be within 1..17");
        *out = dup_string(report_to_csv(report->report, precision));
    });
}

om_status om_report_to_json(const om_report* report, char** out) {
    return guarded([&] {
        require(report != nullptr && out != nullptr, "null argument");
        *out = dup_string(report_to_json(report->report));
    });
}

om_status om_scale_audit(const om_profiles* profiles, size_t index, const om_map* map, int representation, int mode,
                         const double* scales, size_t n_scales, double tolerance, double* max_drift, int* pass) {
    return guarded([&] {
        require(scales != nullptr || n_scales == 0, "scales is null");
        require(max_drift != nullptr && pass != nullptr, "output is null");
        const Representation reps[] = {to_representation(representation, mode)};
        const auto audit = scale_invariance_audit(profile_at(profiles, index), map_of(map), reps,
                                                  std::span<const double>(scales, n_scales), tolerance);
        *max_drift = audit.entries.front().max_drift;
        *pass = audit.entries.front().pass ? 1 : 0;
    });
}

om_status om_normalization_audit(const om_profiles* profiles, size_t index, const om_map* map,
                                 double* coordinate_sum, double* deviation) {
    return guarded([&] {
        const auto& m = map_of(map);
        if (!m.has_similarity())
            throw DataError("map has no similarity matrix");
        const auto a = normalization_audit(profile_at(profiles, index), *m.similarity());
        if (coordinate_sum)
            *coordinate_sum = a.coordinate_sum;
        if (deviation)
            *deviation = a.deviation;
    });
}

om_status om_bounding_box_check(const om_profiles* profiles, size_t index, const om_map* map, int* pass) {
    return guarded([&] {
        require(pass != nullptr, "pass is null");
        const auto check = bounding_box_check(profile_at(profiles, index), map_of(map));
        *pass = check.pass ? 1 : 0;
    });
}

void om_plot_options_default(om_plot_options* options) {
    if (!options)
        return;
    const PlotSpec spec;
    *options = om_plot_options{spec.width, spec.height, spec.margin, spec.labels ? 1 : 0, 0};
}

om_status om_render_svg(const om_map* map, const om_profiles* profiles, const om_plot_options* options,
                        char** out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        const auto& m = map_of(map);
        PlotSpec spec;
        if (options) {
            spec.width = options->width;
            spec.height = options->height;
            spec.margin = options->margin;
            spec.labels = options->labels != 0;
        }
        std::vector<BarycenterMarker> markers;
        if (profiles) {
            if (options && options->size_by_volume)
                spec.category_volumes.assign(m.size(), 0.0);
            for (const auto& p : profiles->profiles) {
                markers.push_back({p.unit_id(), p.kind(), barycenter_2d(p, m)});
                for (std::size_t j = 0; j < spec.category_volumes.size(); ++j)
                    spec.category_volumes[j] += p.counts()[j];
            }
        }
        *out = dup_string(render_overlay_svg(m, markers, spec));
    });
}

} // extern "C"
