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

// Exercises the shared library through its C header only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "overlaymap/overlaymap.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string fixture(const std::string& name) {
    std::ifstream in(std::string(OVERLAYMAP_FIXTURE_DIR) + "/" + name, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct MapDeleter {
    void operator()(om_map* m) const { om_map_free(m); }
};
struct ProfilesDeleter {
    void operator()(om_profiles* p) const { om_profiles_free(p); }
};
struct ReportDeleter {
    void operator()(om_report* r) const { om_report_free(r); }
};
struct StringDeleter {
    void operator()(char* s) const { om_string_free(s); }
};
using MapPtr = std::unique_ptr<om_map, MapDeleter>;
using ProfilesPtr = std::unique_ptr<om_profiles, ProfilesDeleter>;
using ReportPtr = std::unique_ptr<om_report, ReportDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

MapPtr paper_map() {
    const auto text = fixture("paper4.paj");
    om_map* m = nullptr;
    REQUIRE(om_map_from_pajek(text.data(), text.size(), nullptr, OM_SYMMETRY_STRICT, 0, &m, nullptr) == OM_OK);
    return MapPtr(m);
}

const char* kProfiles = "unit_id,kind,category,count\n"
                        "u1,research_group,cat0,4\n"
                        "u1,research_group,cat1,1\n"
                        "m1,panel_member,cat0,1\n"
                        "m1,panel_member,cat1,4\n";

ProfilesPtr load(const om_map* map, const char* csv = kProfiles) {
    om_profiles* p = nullptr;
    REQUIRE(om_profiles_from_csv(csv, std::strlen(csv), map, OM_UNKNOWN_ERROR, &p, nullptr) == OM_OK);
    return ProfilesPtr(p);
}

} // namespace

TEST_CASE("version and errors") {
    CHECK(std::strlen(om_version()) > 0);
    om_map* m = nullptr;
    CHECK(om_map_from_pajek(nullptr, 5, nullptr, 0, 0, &m, nullptr) == OM_E_INVALID_ARGUMENT);
    CHECK(std::strlen(om_last_error()) > 0);

    const char bad[] = "*Vertices 2\n1 \"a\" 0 0\nx\n";
    CHECK(om_map_from_pajek(bad, sizeof bad - 1, nullptr, 0, 0, &m, nullptr) == OM_E_PARSE);
    CHECK(om_last_error_line() == 3);
    CHECK(m == nullptr);

    const char asym[] = "*Vertices 2\n1 \"a\" 0 0\n2 \"b\" 1 1\n*Arcs\n1 2 0.5\n";
    CHECK(om_map_from_pajek(asym, sizeof asym - 1, nullptr, OM_SYMMETRY_STRICT, 0, &m, nullptr) == OM_E_DATA);
    om_map_info info{};
    REQUIRE(om_map_from_pajek(asym, sizeof asym - 1, nullptr, OM_SYMMETRY_SYMMETRIZE, 0, &m, &info) == OM_OK);
    MapPtr owned(m);
    CHECK(info.max_asymmetry == 0.5);
    CHECK(info.diagonal_filled == 2);
    double s = 0;
    CHECK(om_map_similarity(m, 0, 1, &s) == OM_OK);
    CHECK(s == 0.25);
    CHECK(om_map_similarity(m, 2, 0, &s) == OM_E_OUT_OF_RANGE);
    CHECK(std::strlen(om_last_error()) > 0);
    CHECK(om_map_similarity(m, 0, 0, &s) == OM_OK);
    CHECK(std::strlen(om_last_error()) == 0);
    CHECK(om_map_from_pajek(asym, sizeof asym - 1, nullptr, 7, 0, &m, nullptr) == OM_E_INVALID_ARGUMENT);
}

TEST_CASE("map accessors and JSON") {
    auto map = paper_map();
    CHECK(om_map_size(map.get()) == 4);
    CHECK(om_map_has_similarity(map.get()) == 1);
    const char* label = nullptr;
    double x = -1, y = -1;
    REQUIRE(om_map_category(map.get(), 2, &label, &x, &y) == OM_OK);
    CHECK(std::string(label) == "cat2");
    CHECK(x == 2.0);
    CHECK(y == 1.0);
    CHECK(om_map_category(map.get(), 4, &label, &x, &y) == OM_E_OUT_OF_RANGE);

    char* json = nullptr;
    REQUIRE(om_map_to_json(map.get(), &json) == OM_OK);
    StringPtr text(json);
    om_map* back = nullptr;
    REQUIRE(om_map_from_json(json, std::strlen(json), &back) == OM_OK);
    MapPtr owned(back);
    char* again = nullptr;
    REQUIRE(om_map_to_json(back, &again) == OM_OK);
    StringPtr text2(again);
    CHECK(std::string(json) == std::string(again));

    om_map* valid = nullptr;
    CHECK(om_map_validated(back, OM_SYMMETRY_STRICT, &valid, nullptr) == OM_OK);
    om_map_free(valid);
    CHECK(om_map_from_json("{", 1, &back) == OM_E_PARSE);
}

TEST_CASE("cosine normalization on load") {
    const char text[] = "*Vertices 3\n1 \"a\" 0 0\n2 \"b\" 1 0\n3 \"c\" 0 1\n*Matrix\n1 1 0\n2 2 0\n0 0 0\n";
    om_map* m = nullptr;
    om_map_info info{};
    REQUIRE(om_map_from_pajek(text, sizeof text - 1, nullptr, OM_SYMMETRY_STRICT, 1, &m, &info) == OM_OK);
    MapPtr owned(m);
    CHECK(info.zero_rows == 1);
    double s = 0;
    om_map_similarity(m, 0, 1, &s);
    CHECK(s == doctest::Approx(1.0).epsilon(1e-15));
    // a zero citing row keeps a zero diagonal
    om_map_similarity(m, 2, 2, &s);
    CHECK(s == 0.0);
    om_map_similarity(m, 0, 2, &s);
    CHECK(s == 0.0);
}

TEST_CASE("profiles") {
    auto map = paper_map();
    auto all = load(map.get());
    CHECK(om_profiles_count(all.get()) == 2);
    const char* id = nullptr;
    int kind = -1;
    double total = 0;
    REQUIRE(om_profile_info(all.get(), 0, &id, &kind, &total) == OM_OK);
    CHECK(std::string(id) == "m1"); // sorted by id
    CHECK(kind == OM_KIND_PANEL_MEMBER);
    CHECK(total == 5.0);

    om_profiles* groups = nullptr;
    REQUIRE(om_profiles_select_kind(all.get(), OM_KIND_RESEARCH_GROUP, &groups) == OM_OK);
    ProfilesPtr g(groups);
    REQUIRE(om_profiles_count(groups) == 1);
    double counts[4];
    REQUIRE(om_profile_counts(groups, 0, counts, 4) == OM_OK);
    CHECK(counts[0] == 4.0);
    CHECK(counts[1] == 1.0);
    CHECK(om_profile_counts(groups, 0, counts, 3) == OM_E_INVALID_ARGUMENT);
    CHECK(om_profile_info(groups, 1, &id, &kind, &total) == OM_E_OUT_OF_RANGE);

    om_profiles* p = nullptr;
    const char unknown[] = "unit_id,kind,category,count\nu,other,zzz,1\nu,other,cat0,1\n";
    CHECK(om_profiles_from_csv(unknown, sizeof unknown - 1, map.get(), OM_UNKNOWN_ERROR, &p, nullptr) == OM_E_DATA);
    size_t skipped = 0;
    REQUIRE(om_profiles_from_csv(unknown, sizeof unknown - 1, map.get(), OM_UNKNOWN_SKIP, &p, &skipped) == OM_OK);
    om_profiles_free(p);
    CHECK(skipped == 1);
}

TEST_CASE("worked example through the C API") {
    auto map = paper_map();
    auto all = load(map.get());
    // index 1 is u1 (4, 1, 0, 0)
    double c1 = -1, c2 = -1;
    REQUIRE(om_barycenter_2d(all.get(), 1, map.get(), &c1, &c2) == OM_OK);
    CHECK(c1 == 0.0);
    CHECK(c2 == doctest::Approx(0.2).epsilon(1e-15));

    double v[4];
    REQUIRE(om_similarity_adapt(all.get(), 1, map.get(), OM_MODE_BY_TOTAL, v, 4) == OM_OK);
    const double expected[] = {0.82, 0.28, 0.28, 0.66};
    for (int k = 0; k < 4; ++k)
        CHECK(std::fabs(v[k] - expected[k]) <= 1e-12);
    REQUIRE(om_similarity_adapt(all.get(), 1, map.get(), OM_MODE_RAW, v, 4) == OM_OK);
    CHECK(v[0] == doctest::Approx(4.1).epsilon(1e-15));
    CHECK(om_similarity_adapt(all.get(), 1, map.get(), 9, v, 4) == OM_E_INVALID_ARGUMENT);

    double sum = 0, dev = 0;
    REQUIRE(om_normalization_audit(all.get(), 1, map.get(), &sum, &dev) == OM_OK);
    CHECK(std::fabs(sum - 2.04) <= 1e-12);

    int pass = 0;
    REQUIRE(om_bounding_box_check(all.get(), 1, map.get(), &pass) == OM_OK);
    CHECK(pass == 1);

    const double scales[] = {2.0};
    double drift = -1;
    REQUIRE(om_scale_audit(all.get(), 1, map.get(), OM_REPR_ADAPTED, OM_MODE_RAW, scales, 1, 1e-9, &drift, &pass) ==
            OM_OK);
    CHECK(pass == 0);
    CHECK(drift == doctest::Approx(std::sqrt(4.1 * 4.1 + 2 * 1.4 * 1.4 + 3.3 * 3.3)).epsilon(1e-14));
    REQUIRE(om_scale_audit(all.get(), 1, map.get(), OM_REPR_BARYCENTER2D, OM_MODE_RAW, scales, 1, 1e-9, &drift,
                           &pass) == OM_OK);
    CHECK(pass == 1);
}

TEST_CASE("vector helpers") {
    const double rect[] = {0, 0, 0, 1, 2, 1, 2, 0};
    double out[2];
    REQUIRE(om_weighted_barycenter(nullptr, rect, 4, 2, out) == OM_OK);
    CHECK(out[0] == 1.0);
    CHECK(out[1] == 0.5);
    const double w[] = {1, 1, 1, 1};
    REQUIRE(om_weighted_barycenter(w, rect, 4, 2, out) == OM_OK);
    CHECK(out[0] == 1.0);
    const double wbad[] = {1, 0, 1, 1};
    CHECK(om_weighted_barycenter(wbad, rect, 4, 2, out) == OM_E_INVALID_ARGUMENT);

    const double counts[] = {1, 0, 1, 1, 0, 0};
    double sim[4];
    size_t zero = 9;
    REQUIRE(om_cosine_normalize(counts, 2, 3, sim, &zero) == OM_OK);
    CHECK(zero == 0);
    CHECK(sim[0] == 1.0);
    CHECK(sim[1] == sim[2]);
    CHECK(sim[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));

    const double a[] = {0, 0}, b[] = {3, 4};
    double d = 0;
    REQUIRE(om_euclidean_distance(a, b, 2, &d) == OM_OK);
    CHECK(d == 5.0);
    CHECK(om_euclidean_distance(a, nullptr, 2, &d) == OM_E_INVALID_ARGUMENT);
}

TEST_CASE("distance report") {
    auto map = paper_map();
    auto all = load(map.get());
    om_profiles *g = nullptr, *p = nullptr;
    REQUIRE(om_profiles_select_kind(all.get(), OM_KIND_RESEARCH_GROUP, &g) == OM_OK);
    ProfilesPtr groups(g);
    REQUIRE(om_profiles_select_kind(all.get(), OM_KIND_PANEL_MEMBER, &p) == OM_OK);
    ProfilesPtr panel(p);

    om_report* r = nullptr;
    REQUIRE(om_distance_report(g, p, map.get(), OM_REPR_BARYCENTER2D, OM_MODE_BY_TOTAL, OM_AGG_PER_MEMBER, &r) ==
            OM_OK);
    ReportPtr report(r);
    CHECK(om_report_rows(r) == 1);
    CHECK(om_report_columns(r) == 1);
    CHECK(std::string(om_report_row_unit(r, 0)) == "u1");
    CHECK(std::string(om_report_column_unit(r, 0)) == "m1");
    CHECK(om_report_row_unit(r, 1) == nullptr);
    double d = 0;
    REQUIRE(om_report_distance(r, 0, 0, &d) == OM_OK);
    CHECK(d == doctest::Approx(0.6).epsilon(1e-14));
    size_t col = 9;
    REQUIRE(om_report_rank(r, 0, 0, &col) == OM_OK);
    CHECK(col == 0);
    CHECK(om_report_rank(r, 0, 1, &col) == OM_E_OUT_OF_RANGE);

    char* csv = nullptr;
    REQUIRE(om_report_to_csv(r, 17, &csv) == OM_OK);
    StringPtr c(csv);
    CHECK(std::string(csv).rfind("unit_id,m1\nu1,", 0) == 0);
    CHECK(om_report_to_csv(r, 0, &csv) == OM_E_INVALID_ARGUMENT);
    char* json = nullptr;
    REQUIRE(om_report_to_json(r, &json) == OM_OK);
    StringPtr j(json);
    CHECK(std::string(json).find("\"per_member\"") != std::string::npos);
}

TEST_CASE("svg") {
    auto map = paper_map();
    auto all = load(map.get());
    om_plot_options opts;
    om_plot_options_default(&opts);
    CHECK(opts.width == 800.0);
    opts.size_by_volume = 1;
    char* svg = nullptr;
    REQUIRE(om_render_svg(map.get(), all.get(), &opts, &svg) == OM_OK);
    StringPtr s(svg);
    CHECK(std::string(svg).find("id=\"unit-u1\"") != std::string::npos);
    CHECK(std::string(svg).find("id=\"unit-m1\"") != std::string::npos);
    char* bare = nullptr;
    REQUIRE(om_render_svg(map.get(), nullptr, nullptr, &bare) == OM_OK);
    om_string_free(bare);
    opts.margin = 1e6;
    CHECK(om_render_svg(map.get(), nullptr, &opts, &bare) == OM_E_INVALID_ARGUMENT);
}
