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

#include "overlaymap/map_io.hpp"

#include "overlaymap/error.hpp"
#include "overlaymap/summation.hpp"
#include "text_util.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

namespace overlaymap {

using detail::format_double;

// ---------------------------------------------------------------------------
// Pajek -> OverlayMap

OverlayMap extract_overlay_map(const pajek::Document& doc, const std::optional<std::string>& network_selector) {
    auto has_coordinates = [](const pajek::Network& n) {
        return !n.vertices.empty() && std::all_of(n.vertices.begin(), n.vertices.end(),
                                                  [](const auto& v) { return v.coordinates.size() >= 2; });
    };

    const pajek::Network* net = nullptr;
    if (network_selector) {
        for (const auto& n : doc.networks)
            if (n.name == *network_selector) {
                net = &n;
                break;
            }
        if (!net)
            throw DataError("no network named '" + *network_selector + "'");
    } else {
        for (const auto& n : doc.networks)
            if (has_coordinates(n)) {
                net = &n;
                break;
            }
        if (!net)
            throw DataError("no network with vertex coordinates");
    }

    std::vector<SubjectCategory> cats;
    cats.reserve(net->vertices.size());
    for (std::size_t k = 0; k < net->vertices.size(); ++k) {
        const auto& v = net->vertices[k];
        if (v.coordinates.size() < 2)
            throw DataError("vertex " + std::to_string(v.id) + " ('" + v.label + "') has no map coordinates");
        cats.push_back({k, v.id, v.label, v.coordinates[0], v.coordinates[1]});
    }

    std::optional<SimilarityMatrix> similarity;
    const auto n = cats.size();
    if (net->matrix) {
        similarity.emplace(n, *net->matrix, SimilaritySource::matrix);
    } else if (!net->links.empty()) {
        std::unordered_map<long, std::size_t> pos;
        for (std::size_t k = 0; k < n; ++k)
            pos.emplace(net->vertices[k].id, k);
        SimilarityMatrix s(n, SimilaritySource::edge_list);
        for (const auto& l : net->links) {
            const auto i = pos.at(l.from), j = pos.at(l.to);
            s(i, j) = l.weight;
            if (!l.directed)
                s(j, i) = l.weight;
        }
        similarity = std::move(s);
    }
    return OverlayMap(std::move(cats), std::move(similarity));
}

// ---------------------------------------------------------------------------
// Similarity validation

ValidatedSimilarity validate_similarity_matrix(const SimilarityMatrix& m, SymmetryPolicy policy) {
    const auto n = m.size();
    ValidatedSimilarity out{m, 0.0, 0, 0};
    auto& s = out.matrix;

    auto where = [](std::size_t i, std::size_t j) {
        return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
    };

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double& v = s(i, j);
            if (!std::isfinite(v))
                throw DataError("similarity entry " + where(i, j) + " is not finite");
            if (v < 0.0) {
                if (v < -kNegativeClampTolerance)
                    throw DataError("similarity entry " + where(i, j) + " = " + format_double(v) + " is negative");
                v = 0.0;
                ++out.clamped_entries;
            }
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = std::fabs(s(i, j) - s(j, i));
            if (d > out.max_asymmetry)
                out.max_asymmetry = d;
            if (policy == SymmetryPolicy::strict && d > kSymmetryTolerance)
                throw DataError("similarity matrix is not symmetric at " + where(i, j) + ": |" +
                                format_double(s(i, j)) + " - " + format_double(s(j, i)) + "| > 1e-9");
            if (policy == SymmetryPolicy::symmetrize) {
                const double mean = (s(i, j) + s(j, i)) / 2.0;
                s(i, j) = s(j, i) = mean;
            }
        }
    }

    if (s.source() == SimilaritySource::edge_list) {
        for (std::size_t i = 0; i < n; ++i)
            if (s(i, i) == 0.0) {
                s(i, i) = 1.0;
                ++out.diagonal_filled;
            }
    }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (s(i, j) > 1.0 + kUpperBoundTolerance)
                throw DataError("similarity entry " + where(i, j) + " = " + format_double(s(i, j)) +
                                " exceeds 1");
    return out;
}

// ---------------------------------------------------------------------------
// Profile CSV

namespace {

struct CsvRecord {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

// RFC 4180 style: comma separated, "quoted" fields with "" escapes, LF or CRLF.
std::vector<CsvRecord> parse_csv(std::string_view text) {
    std::vector<CsvRecord> records;
    CsvRecord rec;
    std::string field;
    std::size_t line = 1;
    rec.line = 1;
    bool in_quotes = false, field_started = false, any = false;

    auto end_field = [&] {
        rec.fields.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        const bool blank = rec.fields.size() == 1 && detail::trim(rec.fields[0]).empty();
        if (!blank)
            records.push_back(std::move(rec));
        rec = CsvRecord{};
        rec.line = line;
        any = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n')
                    ++line;
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
        case '"':
            if (!detail::trim(field).empty())
                throw ParseError("quote inside an unquoted field", line);
            field.clear();
            in_quotes = true;
            field_started = true;
            any = true;
            break;
        case ',':
            end_field();
            any = true;
            break;
        case '\r':
            break;
        case '\n':
            ++line;
            end_record();
            break;
        default:
            field.push_back(c);
            any = true;
        }
    }
    if (in_quotes)
        throw ParseError("unterminated quoted field", rec.line);
    if (any || field_started || !field.empty())
        end_record();
    return records;
}

std::string csv_quote(std::string_view s) {
    const bool needs = s.find_first_of(",\"\r\n") != std::string_view::npos ||
                       (!s.empty() && (std::isspace(static_cast<unsigned char>(s.front())) ||
                                       std::isspace(static_cast<unsigned char>(s.back()))));
    if (!needs)
        return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

} // namespace

ProfileSet load_profiles_csv(std::string_view text, const OverlayMap& map, UnknownCategoryPolicy unknown_policy) {
    const auto records = parse_csv(detail::strip_bom(text));
    if (records.empty())
        throw ParseError("profile CSV is empty", 1);

    const auto& header = records.front();
    static const char* const expected[] = {"unit_id", "kind", "category", "count"};
    bool header_ok = header.fields.size() == 4;
    for (std::size_t i = 0; header_ok && i < 4; ++i)
        header_ok = lower(detail::trim(header.fields[i])) == expected[i];
    if (!header_ok)
        throw ParseError("expected header 'unit_id,kind,category,count'", header.line);

    std::unordered_map<std::string, std::size_t> label_index;
    for (const auto& c : map.categories())
        label_index.emplace(normalize_whitespace(c.label), c.index);

    struct Unit {
        UnitKind kind;
        std::map<std::size_t, std::vector<double>> values;
    };
    std::map<std::string, Unit> units;
    ProfileSet result;

    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.fields.size() != 4)
            throw ParseError("expected 4 fields, got " + std::to_string(rec.fields.size()), rec.line);
        const std::string unit_id(detail::trim(rec.fields[0]));
        if (unit_id.empty())
            throw ParseError("empty unit_id", rec.line);

        const auto kind = parse_unit_kind(detail::trim(rec.fields[1]));
        if (!kind)
            throw ParseError("unknown unit kind '" + rec.fields[1] + "'", rec.line);

        double count = 0.0;
        if (!detail::parse_double(detail::trim(rec.fields[3]), count) || !std::isfinite(count))
            throw ParseError("count '" + rec.fields[3] + "' is not a finite number", rec.line);
        if (count < 0.0)
            throw DataError("line " + std::to_string(rec.line) + ": negative count " + rec.fields[3]);

        std::optional<std::size_t> category;
        const auto cat_key = normalize_whitespace(rec.fields[2]);
        if (auto it = label_index.find(cat_key); it != label_index.end()) {
            category = it->second;
        } else if (long idx = -1; detail::parse_long(cat_key, idx) && idx >= 0 &&
                                  static_cast<std::size_t>(idx) < map.size()) {
            category = static_cast<std::size_t>(idx);
        }
        if (!category) {
            if (unknown_policy == UnknownCategoryPolicy::skip) {
                ++result.skipped_rows;
                continue;
            }
            throw DataError("line " + std::to_string(rec.line) + ": unknown category '" + rec.fields[2] + "'");
        }

        auto [it, inserted] = units.try_emplace(unit_id, Unit{*kind, {}});
        if (!inserted && it->second.kind != *kind)
            throw DataError("line " + std::to_string(rec.line) + ": unit '" + unit_id + "' listed as both " +
                            std::string(to_string(it->second.kind)) + " and " + std::string(to_string(*kind)));
        it->second.values[*category].push_back(count);
    }

    result.profiles.reserve(units.size());
    for (auto& [id, unit] : units) {
        std::vector<double> counts(map.size(), 0.0);
        for (auto& [cat, vals] : unit.values) {
            std::sort(vals.begin(), vals.end());
            counts[cat] = compensated_sum(vals);
        }
        result.profiles.emplace_back(id, unit.kind, std::move(counts));
    }
    return result;
}

std::string write_profiles_csv(std::span<const PublicationProfile> profiles, const OverlayMap& map) {
    std::string out = "unit_id,kind,category,count\n";
    for (const auto& p : profiles) {
        if (p.dimension() != map.size())
            throw InvalidArgument("profile '" + p.unit_id() + "' does not match the map");
        for (std::size_t j = 0; j < p.dimension(); ++j) {
            if (p.counts()[j] == 0.0)
                continue;
            out += csv_quote(p.unit_id()) + ',' + std::string(to_string(p.kind())) + ',' +
                   csv_quote(map.category(j).label) + ',' + format_double(p.counts()[j]) + '\n';
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Map JSON

namespace {

using json = nlohmann::ordered_json;

std::string_view to_string(SimilaritySource s) {
    switch (s) {
    case SimilaritySource::matrix: return "matrix";
    case SimilaritySource::edge_list: return "edge_list";
    case SimilaritySource::computed: return "computed";
    }
    return "matrix";
}

SimilaritySource parse_source(const std::string& s) {
    if (s == "matrix")
        return SimilaritySource::matrix;
    if (s == "edge_list")
        return SimilaritySource::edge_list;
    if (s == "computed")
        return SimilaritySource::computed;
    throw ParseError("unknown similarity_source '" + s + "'");
}

const json& require(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ParseError(where + ": missing \"" + key + "\"");
    return *it;
}

double require_number(const json& obj, const char* key, const std::string& where) {
    const auto& v = require(obj, key, where);
    if (!v.is_number())
        throw ParseError(where + ": \"" + key + "\" must be a number");
    return v.get<double>();
}

} // namespace

std::string write_map_json(const OverlayMap& map) {
    json doc;
    json cats = json::array();
    for (const auto& c : map.categories())
        cats.push_back({{"index", c.index}, {"pajek_id", c.pajek_id}, {"label", c.label}, {"x", c.x}, {"y", c.y}});
    doc["categories"] = std::move(cats);
    if (const auto& s = map.similarity()) {
        json rows = json::array();
        for (std::size_t i = 0; i < s->size(); ++i) {
            const auto r = s->row(i);
            rows.push_back(json(std::vector<double>(r.begin(), r.end())));
        }
        doc["similarity"] = std::move(rows);
        doc["similarity_source"] = to_string(s->source());
    } else {
        doc["similarity"] = nullptr;
    }
    return doc.dump(1) + "\n";
}

OverlayMap read_map_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ParseError("map JSON must be an object");

    const auto& cats = require(doc, "categories", "map");
    if (!cats.is_array())
        throw ParseError("\"categories\" must be an array");

    std::vector<SubjectCategory> categories;
    categories.reserve(cats.size());
    for (std::size_t i = 0; i < cats.size(); ++i) {
        const auto& c = cats[i];
        const auto where = "categories[" + std::to_string(i) + "]";
        if (!c.is_object())
            throw ParseError(where + " must be an object");
        const auto& index = require(c, "index", where);
        const auto& pajek_id = require(c, "pajek_id", where);
        const auto& label = require(c, "label", where);
        if (!index.is_number_unsigned())
            throw ParseError(where + ": \"index\" must be a nonnegative integer");
        if (!pajek_id.is_number_integer())
            throw ParseError(where + ": \"pajek_id\" must be an integer");
        if (!label.is_string())
            throw ParseError(where + ": \"label\" must be a string");
        categories.push_back({index.get<std::size_t>(), pajek_id.get<long>(), label.get<std::string>(),
                              require_number(c, "x", where), require_number(c, "y", where)});
    }

    std::optional<SimilarityMatrix> similarity;
    if (auto it = doc.find("similarity"); it != doc.end() && !it->is_null()) {
        if (!it->is_array())
            throw ParseError("\"similarity\" must be an array of rows or null");
        const auto n = it->size();
        if (n != categories.size())
            throw DataError("similarity has " + std::to_string(n) + " rows for " +
                            std::to_string(categories.size()) + " categories");
        auto source = SimilaritySource::matrix;
        if (auto src = doc.find("similarity_source"); src != doc.end()) {
            if (!src->is_string())
                throw ParseError("\"similarity_source\" must be a string");
            source = parse_source(src->get<std::string>());
        }
        std::vector<double> values;
        values.reserve(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& row = (*it)[i];
            if (!row.is_array())
                throw ParseError("similarity row " + std::to_string(i) + " must be an array");
            if (row.size() != n)
                throw DataError("similarity row " + std::to_string(i) + " has " + std::to_string(row.size()) +
                                " entries, expected " + std::to_string(n));
            for (const auto& v : row) {
                if (!v.is_number())
                    throw ParseError("similarity row " + std::to_string(i) + " holds a non-number");
                values.push_back(v.get<double>());
            }
        }
        similarity.emplace(n, std::move(values), source);
    }
    return OverlayMap(std::move(categories), std::move(similarity));
}

} // namespace overlaymap
