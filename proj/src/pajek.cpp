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

#include "overlaymap/pajek.hpp"

#include "overlaymap/error.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <unordered_map>
#include <unordered_set>

namespace overlaymap::pajek {

namespace {

using detail::parse_double;
using detail::parse_long;

// Split a line into whitespace-separated tokens; "double quoted" tokens keep
// their inner spaces and lose the quotes.
std::vector<std::string> tokenize(std::string_view line, std::size_t lineno) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        if (i >= line.size())
            break;
        if (line[i] == '"') {
            const auto close = line.find('"', i + 1);
            if (close == std::string_view::npos)
                throw ParseError("unterminated quoted label", lineno);
            out.emplace_back(line.substr(i + 1, close - i - 1));
            i = close + 1;
        } else {
            const auto start = i;
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
                ++i;
            out.emplace_back(line.substr(start, i - start));
        }
    }
    return out;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string_view first_word(std::string_view s) {
    const auto end = s.find_first_of(" \t");
    return s.substr(0, end);
}

std::string_view rest_after_word(std::string_view s) {
    const auto end = s.find_first_of(" \t");
    if (end == std::string_view::npos)
        return {};
    return detail::trim(s.substr(end));
}

class Parser {
public:
    Document run(std::string_view text) {
        std::size_t lineno = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            auto nl = text.find('\n', pos);
            if (nl == std::string_view::npos)
                nl = text.size();
            auto line = text.substr(pos, nl - pos);
            pos = nl + 1;
            ++lineno;
            if (!line.empty() && line.back() == '\r')
                line.remove_suffix(1);
            handle_line(detail::trim(line), lineno);
            if (nl == text.size())
                break;
        }
        finish_section();
        return std::move(doc_);
    }

private:
    enum class Section { none, vertices, links, matrix, skipped };

    void handle_line(std::string_view line, std::size_t lineno) {
        if (line.empty() || line.front() == '%')
            return;
        if (line.front() == '*')
            handle_header(line, lineno);
        else
            handle_data(line, lineno);
    }

    Network& current() { return doc_.networks.back(); }

    void handle_header(std::string_view line, std::size_t lineno) {
        const auto word = first_word(line);
        const auto key = lower(word);

        if (key == "*vertices" && section_ == Section::skipped) {
            // vertex count line of a *Partition / *Vector block
            return;
        }
        finish_section();
        header_line_ = lineno;

        if (key == "*network") {
            doc_.networks.push_back({});
            current().name = std::string(rest_after_word(line));
            has_vertices_ = false;
            section_ = Section::none;
        } else if (key == "*vertices") {
            if (doc_.networks.empty() || has_vertices_) {
                doc_.networks.push_back({});
                ids_.clear();
            }
            const auto rest = tokenize(rest_after_word(line), lineno);
            long declared = 0;
            if (rest.empty() || !parse_long(rest.front(), declared) || declared < 0)
                throw ParseError("*Vertices needs a nonnegative vertex count", lineno);
            current().declared_vertices = static_cast<std::size_t>(declared);
            current().vertices.reserve(current().declared_vertices);
            ids_.clear();
            has_vertices_ = true;
            section_ = Section::vertices;
        } else if (key == "*arcs" || key == "*edges") {
            require_vertices(word, lineno);
            directed_ = key == "*arcs";
            section_ = Section::links;
        } else if (key == "*matrix") {
            require_vertices(word, lineno);
            if (current().matrix)
                throw ParseError("second *Matrix section in one network", lineno);
            matrix_.clear();
            section_ = Section::matrix;
        } else {
            doc_.ignored_sections.emplace_back(word);
            section_ = Section::skipped;
        }
    }

    void require_vertices(std::string_view word, std::size_t lineno) {
        if (doc_.networks.empty() || !has_vertices_)
            throw ParseError(std::string(word) + " section before any *Vertices", lineno);
    }

    void handle_data(std::string_view line, std::size_t lineno) {
        switch (section_) {
        case Section::none:
            throw ParseError("data line outside of any section", lineno);
        case Section::skipped:
            return;
        case Section::vertices:
            return vertex_line(line, lineno);
        case Section::links:
            return link_line(line, lineno);
        case Section::matrix:
            return matrix_line(line, lineno);
        }
    }

    void vertex_line(std::string_view line, std::size_t lineno) {
        auto& net = current();
        const auto tokens = tokenize(line, lineno);
        Vertex v;
        if (!parse_long(tokens.at(0), v.id))
            throw ParseError("vertex id '" + tokens[0] + "' is not an integer", lineno);
        if (!ids_.emplace(v.id, net.vertices.size()).second)
            throw ParseError("duplicate vertex id " + tokens[0], lineno);
        v.label = tokens.size() > 1 ? tokens[1] : tokens[0];
        for (std::size_t t = 2; t < tokens.size() && v.coordinates.size() < 3; ++t) {
            double c = 0.0;
            if (!parse_double(tokens[t], c))
                break; // drawing attributes (ic, bc, ...) follow the coordinates
            v.coordinates.push_back(c);
        }
        if (v.coordinates.size() == 1)
            throw ParseError("vertex " + tokens[0] + " has a single coordinate", lineno);
        if (net.vertices.size() >= net.declared_vertices)
            throw ParseError("more vertex lines than the " + std::to_string(net.declared_vertices) + " declared",
                             lineno);
        net.vertices.push_back(std::move(v));
    }

    void link_line(std::string_view line, std::size_t lineno) {
        const auto tokens = tokenize(line, lineno);
        Link link;
        link.directed = directed_;
        if (tokens.size() < 2 || !parse_long(tokens[0], link.from) || !parse_long(tokens[1], link.to))
            throw ParseError("link line needs two integer vertex ids", lineno);
        if (tokens.size() > 2 && !parse_double(tokens[2], link.weight))
            throw ParseError("link weight '" + tokens[2] + "' is not a number", lineno);
        for (long id : {link.from, link.to})
            if (!ids_.count(id))
                throw ParseError("link references undeclared vertex " + std::to_string(id), lineno);
        current().links.push_back(link);
    }

    void matrix_line(std::string_view line, std::size_t lineno) {
        for (const auto& tok : tokenize(line, lineno)) {
            double v = 0.0;
            if (!parse_double(tok, v))
                throw ParseError("matrix entry '" + tok + "' is not a number", lineno);
            matrix_.push_back(v);
        }
    }

    void finish_section() {
        if (section_ == Section::vertices) {
            const auto& net = current();
            if (net.vertices.size() != net.declared_vertices)
                throw ParseError("*Vertices declares " + std::to_string(net.declared_vertices) + " vertices but " +
                                     std::to_string(net.vertices.size()) + " are listed",
                                 header_line_);
        } else if (section_ == Section::matrix) {
            const auto n = current().declared_vertices;
            if (matrix_.size() != n * n)
                throw ParseError("*Matrix holds " + std::to_string(matrix_.size()) + " entries, expected " +
                                     std::to_string(n) + "x" + std::to_string(n),
                                 header_line_);
            current().matrix = std::move(matrix_);
            matrix_.clear();
        }
        section_ = Section::none;
    }

    Document doc_;
    Section section_ = Section::none;
    bool has_vertices_ = false;
    bool directed_ = false;
    std::size_t header_line_ = 0;
    std::unordered_map<long, std::size_t> ids_;
    std::vector<double> matrix_;
};

} // namespace

std::optional<std::size_t> Network::position_of(long id) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].id == id)
            return i;
    return std::nullopt;
}

std::string to_utf8(std::string_view text) {
    if (detail::is_valid_utf8(text))
        return std::string(text);
    std::string out;
    out.reserve(text.size() + text.size() / 8);
    for (unsigned char c : text) {
        if (c < 0x80) {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back(static_cast<char>(0xC0 | (c >> 6)));
            out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
        }
    }
    return out;
}

Document parse(std::string_view text) {
    const auto utf8 = to_utf8(detail::strip_bom(text));
    return Parser().run(utf8);
}

std::string write(const Document& doc) {
    using detail::format_double;
    std::string out;
    for (const auto& net : doc.networks) {
        out += "*Network";
        if (!net.name.empty())
            out += " " + net.name;
        out += "\n*Vertices " + std::to_string(net.declared_vertices) + "\n";
        for (const auto& v : net.vertices) {
            out += std::to_string(v.id) + " \"" + v.label + "\"";
            for (double c : v.coordinates)
                out += " " + format_double(c);
            out += "\n";
        }
        std::optional<bool> directed;
        for (const auto& l : net.links) {
            if (directed != l.directed) {
                out += l.directed ? "*Arcs\n" : "*Edges\n";
                directed = l.directed;
            }
            out += std::to_string(l.from) + " " + std::to_string(l.to) + " " + format_double(l.weight) + "\n";
        }
        if (net.matrix) {
            out += "*Matrix\n";
            const auto n = net.declared_vertices;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (j)
                        out += ' ';
                    out += format_double((*net.matrix)[i * n + j]);
                }
                out += '\n';
            }
        }
    }
    return out;
}

} // namespace overlaymap::pajek
