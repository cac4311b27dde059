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

// overlaymap command line frontend. Talks to the library through the C API only.

#include "overlaymap/overlaymap.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kAuditFailure = 3 };

constexpr const char* kMapEnv = "OVERLAYMAP_MAP";

struct CliError : std::runtime_error {
    CliError(int c, const std::string& msg) : std::runtime_error(msg), code(c) {}
    int code;
};

using MapPtr = std::unique_ptr<om_map, decltype(&om_map_free)>;
using ProfilesPtr = std::unique_ptr<om_profiles, decltype(&om_profiles_free)>;
using ReportPtr = std::unique_ptr<om_report, decltype(&om_report_free)>;
using CString = std::unique_ptr<char, decltype(&om_string_free)>;

struct RunConfig {
    std::string map_path;
    std::string profiles_path;
    std::string output_path = "-";
    std::string format = "csv";
    std::string network;
    std::string policy = "strict";
    std::string unknown = "error";
    std::string mode = "by_total";
    std::string representation = "barycenter2d";
    std::vector<std::string> audit_representations;
    std::string aggregation = "per_member";
    std::string rows_kind = "research_group";
    std::string columns_kind = "panel_member";
    std::vector<double> scales{1e-3, 1e-1, 1.0, 1e1, 1e3};
    double tolerance = 1e-9;
    int precision = 17;
    bool cosine = false;
    bool verbose = false;
    bool skip_scale_audit = false;
    bool skip_normalization_audit = false;
    bool skip_bbox_audit = false;
    double width = 800, height = 600, margin = 40;
    bool no_labels = false;
    bool size_by_volume = false;
};

void check(om_status status, const std::string& context) {
    if (status == OM_OK)
        return;
    const int code = status == OM_E_INVALID_ARGUMENT ? kUsage : kData;
    throw CliError(code, context + ": " + om_last_error());
}

std::string read_input(const std::string& path) {
    if (path.empty())
        throw CliError(kUsage, "missing input path");
    if (path == "-")
        return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw CliError(kData, path + ": cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text))
        throw CliError(kData, path + ": cannot write");
}

std::string fmt(double v, int precision) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, precision);
    return std::string(buf, r.ptr);
}

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

int parse_policy(const std::string& s) {
    if (s == "strict")
        return OM_SYMMETRY_STRICT;
    if (s == "symmetrize")
        return OM_SYMMETRY_SYMMETRIZE;
    throw CliError(kUsage, "unknown --policy '" + s + "'");
}

int parse_mode(std::string s) {
    for (auto& c : s)
        if (c == '-')
            c = '_';
    if (s == "raw")
        return OM_MODE_RAW;
    if (s == "by_total")
        return OM_MODE_BY_TOTAL;
    if (s == "by_adapted_sum")
        return OM_MODE_BY_ADAPTED_SUM;
    throw CliError(kUsage, "unknown --mode '" + s + "'");
}

const char* mode_name(int mode) {
    switch (mode) {
    case OM_MODE_RAW: return "raw";
    case OM_MODE_BY_TOTAL: return "by_total";
    default: return "by_adapted_sum";
    }
}

int parse_kind(std::string s) {
    for (auto& c : s)
        if (c == '-')
            c = '_';
    if (s == "panel_member")
        return OM_KIND_PANEL_MEMBER;
    if (s == "research_group")
        return OM_KIND_RESEARCH_GROUP;
    if (s == "other")
        return OM_KIND_OTHER;
    throw CliError(kUsage, "unknown unit kind '" + s + "'");
}

const char* kind_name(int kind) {
    switch (kind) {
    case OM_KIND_PANEL_MEMBER: return "panel_member";
    case OM_KIND_RESEARCH_GROUP: return "research_group";
    default: return "other";
    }
}

struct Repr {
    int kind = OM_REPR_BARYCENTER2D;
    int mode = OM_MODE_BY_TOTAL;

    std::string name() const {
        return kind == OM_REPR_BARYCENTER2D ? "barycenter2d" : std::string("adapted:") + mode_name(mode);
    }
    // Every representation except the raw product is scale invariant.
    bool expected_invariant() const { return kind == OM_REPR_BARYCENTER2D || mode != OM_MODE_RAW; }
};

Repr parse_repr(const std::string& s, const std::string& default_mode) {
    if (s == "barycenter2d" || s == "barycenter")
        return {};
    if (s == "adapted")
        return {OM_REPR_ADAPTED, parse_mode(default_mode)};
    const std::string prefix = "adapted:";
    if (s.rfind(prefix, 0) == 0)
        return {OM_REPR_ADAPTED, parse_mode(s.substr(prefix.size()))};
    // a bare mode name means the adapted vector in that mode
    try {
        return {OM_REPR_ADAPTED, parse_mode(s)};
    } catch (const CliError&) {
        throw CliError(kUsage, "unknown representation '" + s + "'");
    }
}

bool looks_like_json(const std::string& path, const std::string& text) {
    if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0)
        return true;
    const auto first = text.find_first_not_of(" \t\r\n");
    return first != std::string::npos && text[first] == '{';
}

MapPtr load_map(const RunConfig& cfg) {
    if (cfg.map_path.empty())
        throw CliError(kUsage, std::string("no map given (use --map or set ") + kMapEnv + ")");
    const auto text = read_input(cfg.map_path);
    const int policy = parse_policy(cfg.policy);
    om_map_info info{};
    om_map* raw = nullptr;
    if (looks_like_json(cfg.map_path, text)) {
        if (cfg.cosine)
            throw CliError(kUsage, "--cosine-normalize needs a Pajek map");
        check(om_map_from_json(text.data(), text.size(), &raw), cfg.map_path);
        MapPtr parsed(raw, om_map_free);
        check(om_map_validated(parsed.get(), policy, &raw, &info), cfg.map_path);
    } else {
        check(om_map_from_pajek(text.data(), text.size(), cfg.network.empty() ? nullptr : cfg.network.c_str(), policy,
                                cfg.cosine ? 1 : 0, &raw, &info),
              cfg.map_path);
    }
    MapPtr map(raw, om_map_free);
    if (cfg.verbose) {
        std::cerr << "map: " << om_map_size(map.get()) << " categories"
                  << (om_map_has_similarity(map.get()) ? ", similarity matrix" : ", coordinates only")
                  << "; max asymmetry " << info.max_asymmetry << ", clamped " << info.clamped_entries
                  << ", diagonal filled " << info.diagonal_filled << ", zero rows " << info.zero_rows
                  << ", ignored sections " << info.ignored_sections << "\n";
    }
    return map;
}

ProfilesPtr load_profiles(const RunConfig& cfg, const om_map* map) {
    if (cfg.profiles_path.empty())
        throw CliError(kUsage, "no profiles given (use --profiles)");
    if (cfg.profiles_path == "-" && cfg.map_path == "-")
        throw CliError(kUsage, "map and profiles cannot both be read from stdin");
    int unknown = OM_UNKNOWN_ERROR;
    if (cfg.unknown == "skip")
        unknown = OM_UNKNOWN_SKIP;
    else if (cfg.unknown != "error")
        throw CliError(kUsage, "unknown --unknown-category '" + cfg.unknown + "'");
    const auto text = read_input(cfg.profiles_path);
    om_profiles* raw = nullptr;
    std::size_t skipped = 0;
    check(om_profiles_from_csv(text.data(), text.size(), map, unknown, &raw, &skipped), cfg.profiles_path);
    if (skipped)
        std::cerr << "overlaymap: skipped " << skipped << " rows with unknown categories\n";
    return ProfilesPtr(raw, om_profiles_free);
}

struct UnitInfo {
    std::string id;
    int kind = OM_KIND_OTHER;
    double total = 0.0;
};

UnitInfo unit_info(const om_profiles* p, std::size_t i) {
    const char* id = nullptr;
    UnitInfo u;
    check(om_profile_info(p, i, &id, &u.kind, &u.total), "profiles");
    u.id = id;
    return u;
}

// ---- subcommands ------------------------------------------------------------

int cmd_map(const RunConfig& cfg) {
    auto map = load_map(cfg);
    char* raw = nullptr;
    check(om_map_to_json(map.get(), &raw), "map");
    CString json(raw, om_string_free);
    write_output(cfg.output_path, json.get());
    return kOk;
}

int cmd_barycenter(const RunConfig& cfg) {
    auto map = load_map(cfg);
    auto profiles = load_profiles(cfg, map.get());
    const auto n = om_profiles_count(profiles.get());

    std::string out;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    if (cfg.format == "csv")
        out = "unit_id,kind,c1,c2\n";
    for (std::size_t i = 0; i < n; ++i) {
        const auto u = unit_info(profiles.get(), i);
        double c1 = 0, c2 = 0;
        check(om_barycenter_2d(profiles.get(), i, map.get(), &c1, &c2), u.id);
        if (cfg.format == "csv")
            out += csv_field(u.id) + "," + kind_name(u.kind) + "," + fmt(c1, cfg.precision) + "," +
                   fmt(c2, cfg.precision) + "\n";
        else
            arr.push_back({{"unit_id", u.id}, {"kind", kind_name(u.kind)}, {"c1", c1}, {"c2", c2}});
    }
    write_output(cfg.output_path, cfg.format == "csv" ? out : arr.dump(1) + "\n");
    return kOk;
}

int cmd_adapt(const RunConfig& cfg) {
    const int mode = parse_mode(cfg.mode);
    auto map = load_map(cfg);
    if (!om_map_has_similarity(map.get()))
        throw CliError(kData, cfg.map_path + ": map has no similarity matrix");
    auto profiles = load_profiles(cfg, map.get());
    const auto dim = om_map_size(map.get());
    const auto n = om_profiles_count(profiles.get());

    std::string out;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    if (cfg.format == "csv") {
        out = "unit_id,kind,mode,total";
        for (std::size_t k = 0; k < dim; ++k) {
            const char* label = nullptr;
            check(om_map_category(map.get(), k, &label, nullptr, nullptr), "map");
            out += "," + csv_field(label);
        }
        out += "\n";
    }
    std::vector<double> values(dim);
    for (std::size_t i = 0; i < n; ++i) {
        const auto u = unit_info(profiles.get(), i);
        check(om_similarity_adapt(profiles.get(), i, map.get(), mode, values.data(), dim), u.id);
        if (cfg.format == "csv") {
            out += csv_field(u.id) + "," + kind_name(u.kind) + "," + mode_name(mode) + "," + fmt(u.total, cfg.precision);
            for (double v : values)
                out += "," + fmt(v, cfg.precision);
            out += "\n";
        } else {
            arr.push_back({{"unit_id", u.id},
                           {"kind", kind_name(u.kind)},
                           {"mode", mode_name(mode)},
                           {"source_total", u.total},
                           {"values", values}});
        }
    }
    write_output(cfg.output_path, cfg.format == "csv" ? out : arr.dump(1) + "\n");
    return kOk;
}

int cmd_distance(const RunConfig& cfg) {
    const auto repr = parse_repr(cfg.representation, cfg.mode);
    int aggregation = OM_AGG_PER_MEMBER;
    if (cfg.aggregation == "pooled")
        aggregation = OM_AGG_POOLED;
    else if (cfg.aggregation != "per_member" && cfg.aggregation != "per-member")
        throw CliError(kUsage, "unknown --aggregation '" + cfg.aggregation + "'");

    auto map = load_map(cfg);
    auto profiles = load_profiles(cfg, map.get());
    om_profiles *rows_raw = nullptr, *cols_raw = nullptr;
    check(om_profiles_select_kind(profiles.get(), parse_kind(cfg.rows_kind), &rows_raw), "profiles");
    ProfilesPtr rows(rows_raw, om_profiles_free);
    check(om_profiles_select_kind(profiles.get(), parse_kind(cfg.columns_kind), &cols_raw), "profiles");
    ProfilesPtr cols(cols_raw, om_profiles_free);

    om_report* rep_raw = nullptr;
    check(om_distance_report(rows.get(), cols.get(), map.get(), repr.kind, repr.mode, aggregation, &rep_raw),
          "distance");
    ReportPtr report(rep_raw, om_report_free);

    char* text = nullptr;
    if (cfg.format == "csv")
        check(om_report_to_csv(report.get(), cfg.precision, &text), "distance");
    else
        check(om_report_to_json(report.get(), &text), "distance");
    CString owned(text, om_string_free);
    write_output(cfg.output_path, owned.get());
    return kOk;
}

int cmd_audit(const RunConfig& cfg) {
    auto map = load_map(cfg);
    auto profiles = load_profiles(cfg, map.get());
    const bool has_s = om_map_has_similarity(map.get()) != 0;

    std::vector<Repr> reprs;
    if (cfg.audit_representations.empty()) {
        reprs.push_back({});
        if (has_s)
            for (int m : {OM_MODE_BY_TOTAL, OM_MODE_BY_ADAPTED_SUM, OM_MODE_RAW})
                reprs.push_back({OM_REPR_ADAPTED, m});
    } else {
        for (const auto& s : cfg.audit_representations)
            reprs.push_back(parse_repr(s, cfg.mode));
    }
    for (double c : cfg.scales)
        if (!(c > 0.0))
            throw CliError(kUsage, "scale factors must be strictly positive");
    if (!(cfg.tolerance >= 0.0))
        throw CliError(kUsage, "--tolerance must be nonnegative");

    std::string out = "unit_id,check,representation,value,pass\n";
    nlohmann::ordered_json units = nlohmann::ordered_json::array();
    std::size_t failures = 0;
    double worst_expected_drift = 0.0;
    const auto n = om_profiles_count(profiles.get());

    for (std::size_t i = 0; i < n; ++i) {
        const auto u = unit_info(profiles.get(), i);
        nlohmann::ordered_json unit{{"unit_id", u.id}};
        const auto row = [&](const std::string& check_name, const std::string& repr, const std::string& value,
                             const std::string& pass) {
            out += csv_field(u.id) + "," + check_name + "," + repr + "," + value + "," + pass + "\n";
        };

        if (!cfg.skip_scale_audit) {
            nlohmann::ordered_json scale = nlohmann::ordered_json::array();
            for (const auto& r : reprs) {
                double drift = 0.0;
                int pass = 0;
                check(om_scale_audit(profiles.get(), i, map.get(), r.kind, r.mode, cfg.scales.data(), cfg.scales.size(),
                                     cfg.tolerance, &drift, &pass),
                      u.id);
                if (r.expected_invariant()) {
                    worst_expected_drift = std::max(worst_expected_drift, drift);
                    if (!pass)
                        ++failures;
                }
                row("scale_drift", r.name(), fmt(drift, cfg.precision), pass ? "true" : "false");
                scale.push_back({{"representation", r.name()},
                                 {"max_drift", drift},
                                 {"pass", pass != 0},
                                 {"expected_pass", r.expected_invariant()}});
            }
            unit["scale"] = std::move(scale);
        }
        if (!cfg.skip_normalization_audit && has_s) {
            double sum = 0.0, dev = 0.0;
            check(om_normalization_audit(profiles.get(), i, map.get(), &sum, &dev), u.id);
            row("coordinate_sum", "adapted:by_total", fmt(sum, cfg.precision), "");
            unit["coordinate_sum"] = sum;
            unit["deviation"] = dev;
        }
        if (!cfg.skip_bbox_audit) {
            int pass = 0;
            check(om_bounding_box_check(profiles.get(), i, map.get(), &pass), u.id);
            if (!pass)
                ++failures;
            row("bounding_box", "barycenter2d", "", pass ? "true" : "false");
            unit["bounding_box_pass"] = pass != 0;
        }
        units.push_back(std::move(unit));
    }

    if (cfg.format == "csv") {
        write_output(cfg.output_path, out);
    } else {
        nlohmann::ordered_json doc{{"tolerance", cfg.tolerance}, {"scale_factors", cfg.scales}, {"units", units}};
        write_output(cfg.output_path, doc.dump(1) + "\n");
    }
    std::cerr << "audit: " << n << " units, max drift of invariant representations " << worst_expected_drift << ", "
              << failures << " failures\n";
    return failures ? kAuditFailure : kOk;
}

int cmd_plot(const RunConfig& cfg) {
    auto map = load_map(cfg);
    ProfilesPtr profiles(nullptr, om_profiles_free);
    if (!cfg.profiles_path.empty())
        profiles = load_profiles(cfg, map.get());
    om_plot_options opts;
    om_plot_options_default(&opts);
    opts.width = cfg.width;
    opts.height = cfg.height;
    opts.margin = cfg.margin;
    opts.labels = cfg.no_labels ? 0 : 1;
    opts.size_by_volume = cfg.size_by_volume ? 1 : 0;
    char* svg = nullptr;
    check(om_render_svg(map.get(), profiles.get(), &opts, &svg), "plot");
    CString owned(svg, om_string_free);
    write_output(cfg.output_path, owned.get());
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Barycenters, similarity-adapted vectors and distances on science overlay maps"};
    app.set_version_flag("--version", std::string(om_version()));
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "Read key=value defaults from FILE; explicit flags win");

    RunConfig cfg;
    app.add_option("--map", cfg.map_path, "Map file: Pajek (.paj/.net) or map JSON, '-' for stdin")
        ->envname(kMapEnv);
    app.add_option("--profiles", cfg.profiles_path, "Profile CSV (unit_id,kind,category,count), '-' for stdin");
    app.add_option("-o,--output", cfg.output_path, "Output path, '-' for stdout")->capture_default_str();
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    app.add_option("--network", cfg.network, "Pajek network name (default: first with coordinates)");
    app.add_option("--policy", cfg.policy, "Similarity symmetry policy")
        ->check(CLI::IsMember({"strict", "symmetrize"}))
        ->capture_default_str();
    app.add_flag("--cosine-normalize", cfg.cosine, "Treat Pajek matrix/weights as citing x cited counts");
    app.add_option("--unknown-category", cfg.unknown, "Unknown CSV categories")
        ->check(CLI::IsMember({"error", "skip"}))
        ->capture_default_str();
    app.add_option("--mode", cfg.mode, "Normalization of S*M: raw, by-total, by-adapted-sum")->capture_default_str();
    app.add_option("--representation", cfg.representation,
                   "barycenter2d | adapted | adapted:<mode> (for audit: repeatable list)")
        ->capture_default_str();
    app.add_option("--aggregation", cfg.aggregation, "per-member | pooled")->capture_default_str();
    app.add_option("--rows-kind", cfg.rows_kind, "Unit kind forming report rows")->capture_default_str();
    app.add_option("--columns-kind", cfg.columns_kind, "Unit kind forming report columns")->capture_default_str();
    app.add_option("--scales", cfg.scales, "Audit scale factors")->delimiter(',')->capture_default_str();
    app.add_option("--tolerance", cfg.tolerance, "Audit tolerance")->capture_default_str();
    app.add_option("--precision", cfg.precision, "Significant digits in CSV output")
        ->check(CLI::Range(1, 17))
        ->capture_default_str();
    app.add_flag("--no-scale-audit", cfg.skip_scale_audit, "audit: skip the scale-invariance audit");
    app.add_flag("--no-normalization-audit", cfg.skip_normalization_audit, "audit: skip the coordinate-sum audit");
    app.add_flag("--no-bbox-audit", cfg.skip_bbox_audit, "audit: skip the bounding-box check");
    app.add_option("--width", cfg.width, "plot: canvas width (px)")->capture_default_str();
    app.add_option("--height", cfg.height, "plot: canvas height (px)")->capture_default_str();
    app.add_option("--margin", cfg.margin, "plot: margin (px)")->capture_default_str();
    app.add_flag("--no-labels", cfg.no_labels, "plot: omit text labels");
    app.add_flag("--size-by-volume", cfg.size_by_volume, "plot: scale categories by summed profile counts");
    app.add_flag("-v,--verbose", cfg.verbose, "Report map statistics on stderr");

    auto* map_cmd = app.add_subcommand("map", "Parse and validate a map, emit map JSON");
    auto* bary_cmd = app.add_subcommand("barycenter", "Per-unit publication-weighted map barycenters");
    auto* adapt_cmd = app.add_subcommand("adapt", "Per-unit similarity-adapted vectors S*M");
    auto* dist_cmd = app.add_subcommand("distance", "Distance report between two unit families");
    auto* audit_cmd = app.add_subcommand("audit", "Scale-invariance, normalization and bounding-box audits");
    auto* plot_cmd = app.add_subcommand("plot", "SVG overlay map with unit barycenters");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    // audit takes a list of representations, everything else a single one
    if (audit_cmd->parsed() && app.count("--representation")) {
        std::stringstream ss(cfg.representation);
        for (std::string item; std::getline(ss, item, ',');)
            if (!item.empty())
                cfg.audit_representations.push_back(item);
    }

    try {
        if (map_cmd->parsed())
            return cmd_map(cfg);
        if (bary_cmd->parsed())
            return cmd_barycenter(cfg);
        if (adapt_cmd->parsed())
            return cmd_adapt(cfg);
        if (dist_cmd->parsed())
            return cmd_distance(cfg);
        if (audit_cmd->parsed())
            return cmd_audit(cfg);
        if (plot_cmd->parsed())
            return cmd_plot(cfg);
    } catch (const CliError& e) {
        std::cerr << "overlaymap: " << e.what() << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "overlaymap: " << e.what() << "\n";
        return kData;
    }
    return kUsage;
}
