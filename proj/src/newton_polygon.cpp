#include "varpi/newton_polygon.hpp"

#include <algorithm>

namespace varpi {

NewtonPolygon NewtonPolygon::lower_hull(std::vector<PolygonPoint> pts) {
    std::sort(pts.begin(), pts.end(),
              [](const PolygonPoint& a, const PolygonPoint& b) { return a.x < b.x; });
    for (size_t i = 1; i < pts.size(); ++i)
        if (pts[i].x == pts[i - 1].x) throw domain_error("newton polygon: repeated abscissa");

    std::vector<PolygonPoint> finite;
    for (const auto& pt : pts)
        if (!pt.y.is_infinite()) finite.push_back(pt);
    if (finite.size() < 2) throw domain_error("newton polygon: fewer than two finite points");

    // Andrew-style scan for the lower hull of the finite points. Collinear
    // middle points are dropped so vertices are extreme points only.
    std::vector<PolygonPoint> hull;
    for (const auto& pt : finite) {
        while (hull.size() >= 2) {
            const PolygonPoint& a = hull[hull.size() - 2];
            const PolygonPoint& b = hull[hull.size() - 1];
            // keep b iff slope(a,b) < slope(b,pt), i.e. strict convexity
            Rational lhs = (b.y - a.y) * Rational(pt.x - b.x);
            Rational rhs = (pt.y - b.y) * Rational(b.x - a.x);
            if (lhs < rhs) break;
            hull.pop_back();
        }
        hull.push_back(pt);
    }

    NewtonPolygon np;
    // Leading vertical edge: rightmost infinite point strictly left of the
    // first finite hull vertex, if any.
    const PolygonPoint* lead = nullptr;
    for (const auto& pt : pts)
        if (pt.y.is_infinite() && pt.x < hull.front().x)
            if (!lead || pt.x > lead->x) lead = &pt;
    if (lead) np.vertices_.push_back(*lead);
    for (const auto& v : hull) np.vertices_.push_back(v);

    for (size_t i = 1; i < hull.size(); ++i) {
        Rational slope = (hull[i].y - hull[i - 1].y) / Rational(hull[i].x - hull[i - 1].x);
        np.segments_.push_back({slope, hull[i].x - hull[i - 1].x});
    }
    return np;
}

long long NewtonPolygon::infinite_root_multiplicity() const {
    for (const auto& v : vertices_)
        if (!v.y.is_infinite()) return v.x;
    return 0;
}

std::vector<std::pair<Rational, long long>> NewtonPolygon::root_valuations() const {
    std::vector<std::pair<Rational, long long>> out;
    for (const auto& s : segments_) out.emplace_back(-s.slope, s.length);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return b.first < a.first; });
    return out;
}

} // namespace varpi
