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

#include "overlaymap/plot.hpp"

#include "overlaymap/error.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_set>

namespace overlaymap {

namespace {

using detail::format_double;

void check_spec(const PlotSpec& spec) {
    const bool ok = std::isfinite(spec.width) && std::isfinite(spec.height) && std::isfinite(spec.margin) &&
                    spec.width > 0 && spec.height > 0 && spec.margin >= 0 && 2 * spec.margin < spec.width &&
                    2 * spec.margin < spec.height;
    if (!ok)
        throw InvalidArgument("plot needs width, height > 0 and a margin smaller than half of each");
}

std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

// Lower-case ASCII alphanumerics; every other run of bytes becomes one '-'.
std::string slug(std::string_view s) {
    std::string out;
    for (unsigned char c : s) {
        if (std::isalnum(c) && c < 0x80) {
            out.push_back(static_cast<char>(std::tolower(c)));
        } else if (!out.empty() && out.back() != '-') {
            out.push_back('-');
        }
    }
    while (!out.empty() && out.back() == '-')
        out.pop_back();
    return out.empty() ? "x" : out;
}

class IdRegistry {
public:
    std::string make(std::string_view prefix, std::string_view name) {
        const std::string base = std::string(prefix) + slug(name);
        std::string id = base;
        for (int k = 2; !used_.insert(id).second; ++k)
            id = base + "-" + std::to_string(k);
        return id;
    }

private:
    std::unordered_set<std::string> used_;
};

struct KindStyle {
    const char* color;
    const char* shape;
};

KindStyle style_for(UnitKind kind) {
    switch (kind) {
    case UnitKind::panel_member: return {"#d62728", "circle"};
    case UnitKind::research_group: return {"#1f77b4", "square"};
    case UnitKind::other: return {"#2ca02c", "diamond"};
    }
    return {"#2ca02c", "diamond"};
}

} // namespace

CanvasTransform::CanvasTransform(const OverlayMap& map, const PlotSpec& spec) {
    check_spec(spec);
    double lo_x = 0, hi_x = 1, lo_y = 0, hi_y = 1;
    if (map.size() > 0) {
        lo_x = hi_x = map.category(0).x;
        lo_y = hi_y = map.category(0).y;
        for (const auto& c : map.categories()) {
            lo_x = std::min(lo_x, c.x);
            hi_x = std::max(hi_x, c.x);
            lo_y = std::min(lo_y, c.y);
            hi_y = std::max(hi_y, c.y);
        }
    }
    if (hi_x == lo_x) {
        lo_x -= 0.5;
        hi_x += 0.5;
    }
    if (hi_y == lo_y) {
        lo_y -= 0.5;
        hi_y += 0.5;
    }
    const double inner_w = spec.width - 2 * spec.margin, inner_h = spec.height - 2 * spec.margin;
    min_x_ = lo_x;
    min_y_ = lo_y;
    scale_ = std::min(inner_w / (hi_x - lo_x), inner_h / (hi_y - lo_y));
    origin_x_ = spec.margin + (inner_w - scale_ * (hi_x - lo_x)) / 2;
    // canvas y grows downwards: map min_y sits at the bottom of the drawing area
    origin_y_ = spec.height - spec.margin - (inner_h - scale_ * (hi_y - lo_y)) / 2;
}

Point2D CanvasTransform::to_canvas(const Point2D& p) const noexcept {
    return {origin_x_ + scale_ * (p.c1 - min_x_), origin_y_ - scale_ * (p.c2 - min_y_)};
}

Point2D CanvasTransform::to_map(const Point2D& canvas) const noexcept {
    return {min_x_ + (canvas.c1 - origin_x_) / scale_, min_y_ + (origin_y_ - canvas.c2) / scale_};
}

std::string render_overlay_svg(const OverlayMap& map, const std::vector<BarycenterMarker>& barycenters,
                               const PlotSpec& spec) {
    const CanvasTransform tf(map, spec);
    if (!spec.category_volumes.empty() && spec.category_volumes.size() != map.size())
        throw InvalidArgument("category_volumes must have one entry per category");
    for (const auto& b : barycenters)
        if (!std::isfinite(b.point.c1) || !std::isfinite(b.point.c2))
            throw InvalidArgument("barycenter of '" + b.unit_id + "' is not finite");

    double vmax = 0.0;
    for (double v : spec.category_volumes)
        if (std::isfinite(v) && v > vmax)
            vmax = v;

    IdRegistry ids;
    const auto w = format_double(spec.width), h = format_double(spec.height);
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + w + "\" height=\"" + h +
           "\" viewBox=\"0 0 " + w + " " + h + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

    out += "<g fill=\"#bdbdbd\" fill-opacity=\"0.7\" stroke=\"#7f7f7f\" stroke-width=\"0.5\">\n";
    std::string labels;
    for (const auto& c : map.categories()) {
        const auto pos = tf.to_canvas({c.x, c.y});
        double r = spec.category_radius;
        if (!spec.category_volumes.empty()) {
            const double v = spec.category_volumes[c.index];
            const double frac = vmax > 0 && v > 0 && std::isfinite(v) ? std::sqrt(v / vmax) : 0.0;
            r = spec.min_category_radius + (spec.max_category_radius - spec.min_category_radius) * frac;
        }
        out += "<circle id=\"" + ids.make("cat-", c.label) + "\" cx=\"" + format_double(pos.c1) + "\" cy=\"" +
               format_double(pos.c2) + "\" r=\"" + format_double(r) + "\"><title>" + xml_escape(c.label) +
               "</title></circle>\n";
        if (spec.labels)
            labels += "<text x=\"" + format_double(pos.c1 + r + 1) + "\" y=\"" + format_double(pos.c2 + 3) +
                      "\">" + xml_escape(c.label) + "</text>\n";
    }
    out += "</g>\n";
    if (spec.labels && !labels.empty())
        out += "<g font-family=\"sans-serif\" font-size=\"8\" fill=\"#525252\">\n" + labels + "</g>\n";

    const double s = spec.marker_size;
    const auto half = format_double(s / 2), full = format_double(s);
    out += "<g stroke=\"#000000\" stroke-width=\"0.75\" font-family=\"sans-serif\" font-size=\"10\">\n";
    for (const auto& b : barycenters) {
        const auto pos = tf.to_canvas(b.point);
        const auto st = style_for(b.kind);
        out += "<g id=\"" + ids.make("unit-", b.unit_id) + "\" class=\"" + std::string(to_string(b.kind)) +
               "\" transform=\"translate(" + format_double(pos.c1) + "," + format_double(pos.c2) + ")\" fill=\"" +
               st.color + "\">";
        const std::string shape = st.shape;
        if (shape == "circle") {
            out += "<circle cx=\"0\" cy=\"0\" r=\"" + half + "\"/>";
        } else if (shape == "square") {
            out += "<rect x=\"-" + half + "\" y=\"-" + half + "\" width=\"" + full + "\" height=\"" + full + "\"/>";
        } else {
            out += "<polygon points=\"0,-" + half + " " + half + ",0 0," + half + " -" + half + ",0\"/>";
        }
        out += "<title>" + xml_escape(b.unit_id) + "</title>";
        if (spec.labels)
            out += "<text x=\"" + format_double(s) + "\" y=\"4\" stroke=\"none\">" + xml_escape(b.unit_id) +
                   "</text>";
        out += "</g>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

} // namespace overlaymap
