#ifndef VARPI_NEWTON_POLYGON_HPP
#define VARPI_NEWTON_POLYGON_HPP

#include <utility>
#include <vector>

#include "varpi/rational.hpp"

namespace varpi {

struct PolygonPoint {
    long long x;
    Rational y; // may be +inf (e.g. a vanishing coefficient)
};

struct PolygonSegment {
    Rational slope;
    long long length; // horizontal length
};

/// Lower convex hull of a set of (integer, rational-or-inf) points.
///
/// Conventions: collinear points are merged into one segment and the vertex
/// list keeps extreme points only. Points with infinite ordinate do not
/// constrain the hull; if some lie strictly left of the first finite vertex,
/// the rightmost of them is kept as a leading vertex (it records the
/// vertical edge, e.g. the zero roots of a polynomial with vanishing low
/// coefficients).
class NewtonPolygon {
  public:
    /// Requires at least two points with finite ordinate, distinct abscissas.
    static NewtonPolygon lower_hull(std::vector<PolygonPoint> pts);

    const std::vector<PolygonPoint>& vertices() const { return vertices_; }
    const std::vector<PolygonSegment>& segments() const { return segments_; }

    /// Number of roots accounted to the vertical edge (valuation +inf),
    /// i.e. the abscissa of the first finite vertex.
    long long infinite_root_multiplicity() const;

    /// Root valuations of the polynomial whose coefficient valuations were
    /// given: the negated slopes, with horizontal lengths as multiplicities.
    /// Sorted by decreasing valuation. Does not include the infinite roots.
    std::vector<std::pair<Rational, long long>> root_valuations() const;

  private:
    std::vector<PolygonPoint> vertices_;
    std::vector<PolygonSegment> segments_;
};

} // namespace varpi

#endif
