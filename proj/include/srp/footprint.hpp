#pragma once

#include <Eigen/Dense>

#include <array>
#include <vector>

#include "srp/types.hpp"

namespace srp {

// Polygon vertices in continuous grid units: x runs along columns, y along
// rows (row 0 at top). Cell (r, c) spans [c, c+1) x [r, r+1).
using Vec2 = Eigen::Vector2d;
using Polygon = std::vector<Vec2>;

struct CellOffset {
    int dr = 0;
    int dc = 0;

    auto operator<=>(const CellOffset&) const = default;
};

using CellMask = std::vector<CellOffset>;

struct MaskBounds {
    int min_dr = 0, max_dr = 0, min_dc = 0, max_dc = 0;
};

double polygon_area(const Polygon& poly);
Vec2 polygon_centroid(const Polygon& poly);

// Rotates `poly` about its centroid by bin*15 degrees clockwise (top-down
// view, y down) and collects every cell whose center falls inside, as
// offsets from the cell containing the centroid. Falls back to the centroid
// cell itself so the mask is never empty.
CellMask rasterize_footprint(const Polygon& poly, int bin, int grid_size);

struct ObjectFootprint {
    int id = 0;
    Polygon polygon;
    std::array<CellMask, kOrientationBins> masks;
    std::array<MaskBounds, kOrientationBins> bounds;

    const CellMask& mask(int bin) const { return masks[bin]; }
};

// Builds a footprint with all 24 masks precomputed.
ObjectFootprint make_footprint(int id, Polygon polygon, int grid_size);

MaskBounds mask_bounds(const CellMask& mask);

}  // namespace srp
