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

#include <string>
#include <vector>

namespace overlaymap {

struct PlotSpec {
    double width = 800.0;
    double height = 600.0;
    double margin = 40.0;
    double category_radius = 3.0;     ///< radius when no volumes are given
    double min_category_radius = 2.0; ///< radius range when volumes are given
    double max_category_radius = 14.0;
    double marker_size = 7.0;
    bool labels = true;
    /// Optional publication volume per category; radius grows with sqrt(volume).
    std::vector<double> category_volumes;
};

struct BarycenterMarker {
    std::string unit_id;
    UnitKind kind = UnitKind::other;
    Point2D point;
};

/// Map-to-canvas transform: uniform scale, centered, y axis flipped.
class CanvasTransform {
public:
    CanvasTransform(const OverlayMap& map, const PlotSpec& spec);

    Point2D to_canvas(const Point2D& p) const noexcept;
    Point2D to_map(const Point2D& canvas) const noexcept;

    double min_x() const noexcept { return min_x_; }
    double min_y() const noexcept { return min_y_; }
    double scale() const noexcept { return scale_; }

private:
    double min_x_ = 0.0, min_y_ = 0.0;
    double scale_ = 1.0;
    double origin_x_ = 0.0, origin_y_ = 0.0;
};

/// Static SVG 1.1 overlay map. Categories are circles with id "cat-<label>",
/// barycenters are <g id="unit-<unit id>" transform="translate(x,y)"> groups
/// shaped by unit kind. Ids are made unique with a numeric suffix.
std::string render_overlay_svg(const OverlayMap& map, const std::vector<BarycenterMarker>& barycenters,
                               const PlotSpec& spec = {});

} // namespace overlaymap
