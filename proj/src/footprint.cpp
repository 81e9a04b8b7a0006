#include "srp/footprint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "srp/errors.hpp"

namespace srp {

namespace {

constexpr double kRadiansPerBin = kDegreesPerBin * 3.14159265358979323846 / 180.0;

// Even-odd ray crossing. Boundary points get a deterministic half-open
// classification; generator shapes keep cell centers off polygon edges.
bool point_in_polygon(const Polygon& poly, const Vec2& p) {
    bool inside = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[j];
        if ((a.y() > p.y()) != (b.y() > p.y())) {
            const double x_cross = (b.x() - a.x()) * (p.y() - a.y()) / (b.y() - a.y()) + a.x();
            if (p.x() < x_cross) inside = !inside;
        }
    }
    return inside;
}

int floor_int(double v) { return static_cast<int>(std::floor(v)); }

}  // namespace

double polygon_area(const Polygon& poly) {
    double twice = 0.0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        twice += poly[j].x() * poly[i].y() - poly[i].x() * poly[j].y();
    }
    return 0.5 * twice;
}

Vec2 polygon_centroid(const Polygon& poly) {
    const double area = polygon_area(poly);
    double cx = 0.0, cy = 0.0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const double cross = poly[j].x() * poly[i].y() - poly[i].x() * poly[j].y();
        cx += (poly[j].x() + poly[i].x()) * cross;
        cy += (poly[j].y() + poly[i].y()) * cross;
    }
    return Vec2(cx / (6.0 * area), cy / (6.0 * area));
}

CellMask rasterize_footprint(const Polygon& poly, int bin, int grid_size) {
    if (bin < 0 || bin >= kOrientationBins) throw InvalidFootprintError("orientation bin out of range");
    if (poly.size() < 3) throw InvalidFootprintError("polygon needs at least 3 vertices");
    const double area = polygon_area(poly);
    if (std::abs(area) < 1e-12) throw InvalidFootprintError("degenerate polygon (zero area)");

    const Vec2 c = polygon_centroid(poly);
    // Clockwise in the top-down view (y down).
    const double theta = bin * kRadiansPerBin;
    const double cs = std::cos(theta), sn = std::sin(theta);
    Polygon rotated(poly.size());
    double min_x = std::numeric_limits<double>::max(), max_x = std::numeric_limits<double>::lowest();
    double min_y = min_x, max_y = max_x;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec2 rel = poly[i] - c;
        rotated[i] = Vec2(c.x() + rel.x() * cs - rel.y() * sn, c.y() + rel.x() * sn + rel.y() * cs);
        min_x = std::min(min_x, rotated[i].x());
        max_x = std::max(max_x, rotated[i].x());
        min_y = std::min(min_y, rotated[i].y());
        max_y = std::max(max_y, rotated[i].y());
    }
    if (max_x - min_x > grid_size || max_y - min_y > grid_size) {
        throw InvalidFootprintError("polygon larger than the grid bounding square");
    }

    const int anchor_r = floor_int(c.y());
    const int anchor_c = floor_int(c.x());

    CellMask mask;
    for (int r = floor_int(min_y); r <= floor_int(max_y); ++r) {
        for (int col = floor_int(min_x); col <= floor_int(max_x); ++col) {
            const Vec2 center(col + 0.5, r + 0.5);
            if (point_in_polygon(rotated, center)) {
                mask.push_back({r - anchor_r, col - anchor_c});
            }
        }
    }
    if (mask.empty()) mask.push_back({0, 0});
    std::sort(mask.begin(), mask.end());
    return mask;
}

MaskBounds mask_bounds(const CellMask& mask) {
    MaskBounds b{mask[0].dr, mask[0].dr, mask[0].dc, mask[0].dc};
    for (const auto& o : mask) {
        b.min_dr = std::min(b.min_dr, o.dr);
        b.max_dr = std::max(b.max_dr, o.dr);
        b.min_dc = std::min(b.min_dc, o.dc);
        b.max_dc = std::max(b.max_dc, o.dc);
    }
    return b;
}

ObjectFootprint make_footprint(int id, Polygon polygon, int grid_size) {
    ObjectFootprint fp;
    fp.id = id;
    fp.polygon = std::move(polygon);
    for (int bin = 0; bin < kOrientationBins; ++bin) {
        fp.masks[bin] = rasterize_footprint(fp.polygon, bin, grid_size);
        fp.bounds[bin] = mask_bounds(fp.masks[bin]);
    }
    return fp;
}

}  // namespace srp
