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
#include <string>
#include <string_view>
#include <vector>

namespace overlaymap::pajek {

struct Vertex {
    long id = 0;
    std::string label;
    std::vector<double> coordinates; ///< as many as the line carries (0..3)

    bool operator==(const Vertex&) const = default;
};

struct Link {
    long from = 0;
    long to = 0;
    double weight = 1.0;
    bool directed = false; ///< true for *Arcs, false for *Edges

    bool operator==(const Link&) const = default;
};

struct Network {
    std::string name;
    std::size_t declared_vertices = 0;
    std::vector<Vertex> vertices;
    std::vector<Link> links;
    /// Row-major declared_vertices^2 values of a *Matrix section, if any.
    std::optional<std::vector<double>> matrix;

    /// File position of the vertex with the given id.
    std::optional<std::size_t> position_of(long id) const;

    bool operator==(const Network&) const = default;
};

struct Document {
    std::vector<Network> networks;
    /// Headers (e.g. "*Partition") of sections that were skipped.
    std::vector<std::string> ignored_sections;

    bool operator==(const Document&) const = default;
};

/// Parse a Pajek .net/.paj file.
///
/// Supported sections are *Network, *Vertices, *Arcs, *Edges and *Matrix.
/// Any other section is skipped and its header recorded in
/// Document::ignored_sections; a *Vertices line directly inside a skipped
/// section (as in *Partition blocks) belongs to that section. Keywords are
/// case-insensitive, '%' starts a comment line, and Latin-1 input is
/// transcoded to UTF-8.
///
/// Throws ParseError (with the line number) for malformed vertex, link or
/// matrix lines, links to undeclared vertices, and vertex or matrix counts
/// that disagree with the *Vertices declaration.
Document parse(std::string_view text);

/// Serialize back to Pajek text; parse(write(d)) == d for any parsed d
/// without ignored sections.
std::string write(const Document& doc);

/// Return `text` unchanged if it is valid UTF-8, otherwise treat it as
/// Latin-1 and transcode.
std::string to_utf8(std::string_view text);

} // namespace overlaymap::pajek
