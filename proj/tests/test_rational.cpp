#include "doctest.h"

#include <random>

#include "varpi/newton_polygon.hpp"
#include "varpi/rational.hpp"

using namespace varpi;

TEST_CASE("rational arithmetic and ordering") {
    Rational a(1, 2), b(1, 3);
    CHECK(a + b == Rational(5, 6));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 6));
    CHECK(a / b == Rational(3, 2));
    CHECK(Rational(-4, -8) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(b < a);
    CHECK(min(a, b) == b);
    CHECK(Rational(7, 3).floor() == 2);
    CHECK(Rational(-7, 3).floor() == -3);
    CHECK(Rational(7, 3).ceil() == 3);
    CHECK(Rational(1, 2).str() == "1/2");
}

TEST_CASE("infinity ordering and closure") {
    Rational inf = Rational::infinity();
    CHECK(inf.is_infinite());
    CHECK(Rational(1000000) < inf);
    CHECK(min(inf, Rational(3)) == Rational(3));
    CHECK((inf + Rational(5)).is_infinite());
    CHECK_THROWS_AS(inf - inf, domain_error);
}

TEST_CASE("polygon: multiplication-by-uniformizer vertices, q=3, val(a)=1/2") {
    // hull of (0,inf), (1,1), (3,1/2), (9,0): slopes -1/4 x2 and -1/12 x6
    auto np = NewtonPolygon::lower_hull({{0, Rational::infinity()},
                                         {1, Rational(1)},
                                         {3, Rational(1, 2)},
                                         {9, Rational(0)}});
    REQUIRE(np.segments().size() == 2);
    CHECK(np.segments()[0].slope == Rational(-1, 4));
    CHECK(np.segments()[0].length == 2);
    CHECK(np.segments()[1].slope == Rational(-1, 12));
    CHECK(np.segments()[1].length == 6);
    auto rv = np.root_valuations();
    REQUIRE(rv.size() == 2);
    CHECK(rv[0] == std::make_pair(Rational(1, 4), 2LL));
    CHECK(rv[1] == std::make_pair(Rational(1, 12), 6LL));
    CHECK(np.infinite_root_multiplicity() == 1);
    // (0, inf) is retained as the vertical-edge vertex
    CHECK(np.vertices().front().y.is_infinite());
}

TEST_CASE("polygon: flat segment and singleton hull checks") {
    auto np = NewtonPolygon::lower_hull({{0, Rational(0)}, {1, Rational(0)}});
    REQUIRE(np.segments().size() == 1);
    CHECK(np.segments()[0].slope == Rational(0));
    CHECK(np.segments()[0].length == 1);

    CHECK_THROWS_AS(NewtonPolygon::lower_hull({{0, Rational(1)}}), domain_error);
    CHECK_THROWS_AS(
        NewtonPolygon::lower_hull({{0, Rational::infinity()}, {1, Rational::infinity()}}),
        domain_error);
}

TEST_CASE("polygon: all three points can be vertices") {
    auto np = NewtonPolygon::lower_hull({{0, Rational(2)}, {1, Rational(0)}, {2, Rational(1)}});
    REQUIRE(np.segments().size() == 2);
    CHECK(np.segments()[0].slope == Rational(-2));
    CHECK(np.segments()[1].slope == Rational(1));
    CHECK(np.vertices().size() == 3);
}

namespace {
// independent oracle: a point set's lower hull membership by definition --
// every input point lies on or above every hull segment, and every vertex is
// an input point that cannot be written as lying strictly above the hull
bool above_or_on_hull(const NewtonPolygon& np, const PolygonPoint& pt) {
    if (pt.y.is_infinite()) return true;
    const auto& vs = np.vertices();
    for (size_t i = 0; i + 1 < vs.size(); ++i) {
        if (vs[i].y.is_infinite()) continue;
        const auto& a = vs[i];
        const auto& b = vs[i + 1];
        if (pt.x < a.x || pt.x > b.x) continue;
        // y >= a.y + slope*(x-a.x)
        Rational lhs = (pt.y - a.y) * Rational(b.x - a.x);
        Rational rhs = (b.y - a.y) * Rational(pt.x - a.x);
        if (lhs < rhs) return false;
    }
    // left of the first finite vertex or right of the last: unconstrained
    return true;
}
} // namespace

TEST_CASE("polygon equals brute-force lower hull on random small inputs") {
    std::mt19937_64 rng(20240817);
    for (int trial = 0; trial < 400; ++trial) {
        int n = 2 + (int)(rng() % 7);
        std::vector<PolygonPoint> pts;
        for (int i = 0; i < n; ++i) {
            long long x = (long long)(rng() % 12);
            bool dup = false;
            for (auto& q : pts) dup |= q.x == x;
            if (dup) continue;
            if (rng() % 8 == 0)
                pts.push_back({x, Rational::infinity()});
            else
                pts.push_back({x, Rational((long long)(rng() % 19) - 6, 1 + (long long)(rng() % 4))});
        }
        int finite = 0;
        for (auto& q : pts) finite += q.y.is_infinite() ? 0 : 1;
        if (finite < 2) continue;

        auto np = NewtonPolygon::lower_hull(pts);
        // all points above or on the hull
        for (auto& q : pts) CHECK(above_or_on_hull(np, q));
        // slopes strictly increasing, total length spans the finite range
        long long lo = INT64_MAX, hi = INT64_MIN, total = 0;
        for (auto& q : pts)
            if (!q.y.is_infinite()) {
                lo = std::min(lo, q.x);
                hi = std::max(hi, q.x);
            }
        for (size_t i = 0; i < np.segments().size(); ++i) {
            total += np.segments()[i].length;
            if (i) CHECK(np.segments()[i - 1].slope < np.segments()[i].slope);
        }
        CHECK(total == hi - lo);
        // every vertex is an input point lying on the hull
        for (auto& v : np.vertices()) {
            bool found = false;
            for (auto& q : pts)
                found |= q.x == v.x && ((q.y.is_infinite() && v.y.is_infinite()) || q.y == v.y);
            CHECK(found);
        }
    }
}
