#include "expsys/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace expsys {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// relative tolerance of the orientation predicate, scaled by the squared coordinate range
constexpr double kCollinearTol = 1e-12;

double cross(PlanePoint o, PlanePoint a, PlanePoint b)
{
    return (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re);
}

double dot(PlanePoint a, PlanePoint b) { return a.re * b.re + a.im * b.im; }

bool lex_less(PlanePoint a, PlanePoint b)
{
    return a.re < b.re || (a.re == b.re && a.im < b.im);
}

double coordinate_scale(std::span<const PlanePoint> pts)
{
    double s = 0.0;
    for (auto p : pts)
        s = std::max({s, std::abs(p.re), std::abs(p.im)});
    return s > 0.0 ? s : 1.0;
}

void require_finite(PlanePoint p)
{
    if (!std::isfinite(p.re) || !std::isfinite(p.im))
        throw std::invalid_argument("non-finite coordinate");
}

double wrap_angle(double a)
{
    if (a < 0.0)
        a += kTwoPi;
    if (a >= kTwoPi)
        a -= kTwoPi;
    return a;
}

double normal_angle(PlanePoint from, PlanePoint to)
{
    // outward normal of a counter-clockwise edge: the edge direction turned clockwise
    return wrap_angle(std::atan2(-(to.re - from.re), to.im - from.im));
}

}  // namespace

double modulus(PlanePoint z) { return std::hypot(z.re, z.im); }

PlanePoint conj(PlanePoint z) { return {z.re, -z.im}; }

ConvexBody ConvexBody::polygon(std::vector<PlanePoint> v)
{
    if (v.size() < 3)
        throw std::invalid_argument("polygon needs at least 3 vertices");
    for (auto p : v)
        require_finite(p);
    const std::size_t n = v.size();
    const double tol = kCollinearTol * std::pow(coordinate_scale(v), 2);
    double turning = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        PlanePoint a = v[i], b = v[(i + 1) % n], c = v[(i + 2) % n];
        if (a == b)
            throw std::invalid_argument("polygon vertices must be pairwise distinct");
        if (cross(a, b, c) <= tol)
            throw std::invalid_argument("polygon must be strictly convex and counter-clockwise");
        PlanePoint e1{b.re - a.re, b.im - a.im}, e2{c.re - b.re, c.im - b.im};
        turning += std::atan2(e1.re * e2.im - e1.im * e2.re, dot(e1, e2));
    }
    // all left turns but wound more than once (a star polygon)
    if (std::abs(turning - kTwoPi) > 1e-6)
        throw std::invalid_argument("polygon must be simple");
    auto first = std::min_element(v.begin(), v.end(), lex_less);
    std::rotate(v.begin(), first, v.end());
    return ConvexBody(Polygon{std::move(v)});
}

ConvexBody ConvexBody::disk(PlanePoint center, double radius)
{
    require_finite(center);
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw std::invalid_argument("disk radius must be positive");
    return ConvexBody(Disk{center, radius});
}

ConvexBody ConvexBody::segment(PlanePoint a, PlanePoint b)
{
    require_finite(a);
    require_finite(b);
    if (a == b)
        throw std::invalid_argument("segment endpoints must be distinct");
    return ConvexBody(Segment{a, b});
}

ConvexBody ConvexBody::point(PlanePoint p)
{
    require_finite(p);
    return ConvexBody(Point{p});
}

std::string ConvexBody::type_name() const
{
    static constexpr const char* names[] = {"polygon", "disk", "segment", "point"};
    return names[shape_.index()];
}

double ArcLengthMeasure::total_mass() const
{
    double m = density * kTwoPi;
    for (const auto& a : atoms)
        m += a.weight;
    return m;
}

ConvexBody convex_hull(std::span<const PlanePoint> points)
{
    if (points.empty())
        throw std::invalid_argument("empty point set");
    std::vector<PlanePoint> pts(points.begin(), points.end());
    for (auto p : pts)
        require_finite(p);
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() == 1)
        return ConvexBody::point(pts.front());

    const double tol = kCollinearTol * std::pow(coordinate_scale(pts), 2);
    std::vector<PlanePoint> hull;
    hull.reserve(2 * pts.size());
    // Andrew's monotone chain: lower chain left to right, then upper chain back
    for (int pass = 0; pass < 2; ++pass) {
        const std::size_t base = hull.size();
        for (auto p : pts) {
            while (hull.size() >= base + 2 && cross(hull[hull.size() - 2], hull.back(), p) <= tol)
                hull.pop_back();
            hull.push_back(p);
        }
        hull.pop_back();  // endpoint repeats as the start of the next chain
        std::reverse(pts.begin(), pts.end());
    }
    if (hull.size() <= 2) {
        // collinear input: extreme points in lexicographic order
        return ConvexBody::segment(std::min(hull[0], hull[1], lex_less),
                                   std::max(hull[0], hull[1], lex_less));
    }
    return ConvexBody::polygon(std::move(hull));
}

double perimeter(const ConvexBody& body)
{
    return std::visit(
        [](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Polygon>) {
                // summed in sorted order so that orientation-reversed copies agree bitwise
                std::vector<double> lengths;
                const auto& v = s.vertices;
                for (std::size_t i = 0; i < v.size(); ++i) {
                    const auto& q = v[(i + 1) % v.size()];
                    lengths.push_back(std::hypot(q.re - v[i].re, q.im - v[i].im));
                }
                std::sort(lengths.begin(), lengths.end());
                double sum = 0.0;
                for (double l : lengths)
                    sum += l;
                return sum;
            } else if constexpr (std::is_same_v<T, Disk>) {
                return kTwoPi * s.radius;
            } else if constexpr (std::is_same_v<T, Segment>) {
                return 2.0 * std::hypot(s.b.re - s.a.re, s.b.im - s.a.im);
            } else {
                return 0.0;
            }
        },
        body.shape());
}

double support(const ConvexBody& body, PlanePoint z)
{
    return std::visit(
        [z](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Polygon>) {
                double m = dot(s.vertices.front(), z);
                for (auto v : s.vertices)
                    m = std::max(m, dot(v, z));
                return m;
            } else if constexpr (std::is_same_v<T, Disk>) {
                return dot(s.center, z) + s.radius * modulus(z);
            } else if constexpr (std::is_same_v<T, Segment>) {
                return std::max(dot(s.a, z), dot(s.b, z));
            } else {
                return dot(s.p, z);
            }
        },
        body.shape());
}

ConvexBody mirror(const ConvexBody& body)
{
    return std::visit(
        [](const auto& s) -> ConvexBody {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Polygon>) {
                std::vector<PlanePoint> v;
                v.reserve(s.vertices.size());
                for (auto it = s.vertices.rbegin(); it != s.vertices.rend(); ++it)
                    v.push_back(conj(*it));
                return ConvexBody::polygon(std::move(v));
            } else if constexpr (std::is_same_v<T, Disk>) {
                return ConvexBody::disk(conj(s.center), s.radius);
            } else if constexpr (std::is_same_v<T, Segment>) {
                return ConvexBody::segment(conj(s.a), conj(s.b));
            } else {
                return ConvexBody::point(conj(s.p));
            }
        },
        body.shape());
}

ArcLengthMeasure arc_length_measure(const ConvexBody& body)
{
    ArcLengthMeasure m;
    std::visit(
        [&m](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Polygon>) {
                const auto& v = s.vertices;
                for (std::size_t i = 0; i < v.size(); ++i) {
                    const auto& q = v[(i + 1) % v.size()];
                    m.atoms.push_back({normal_angle(v[i], q), std::hypot(q.re - v[i].re, q.im - v[i].im)});
                }
            } else if constexpr (std::is_same_v<T, Disk>) {
                m.density = s.radius;
            } else if constexpr (std::is_same_v<T, Segment>) {
                const double len = std::hypot(s.b.re - s.a.re, s.b.im - s.a.im);
                m.atoms.push_back({normal_angle(s.a, s.b), len});
                m.atoms.push_back({normal_angle(s.b, s.a), len});
            } else {
                throw std::invalid_argument("zero-perimeter body has no arc-length measure");
            }
        },
        body.shape());
    std::sort(m.atoms.begin(), m.atoms.end(),
              [](const ArcAtom& a, const ArcAtom& b) { return a.angle < b.angle; });
    return m;
}

std::vector<PlanePoint> vertices(const ConvexBody& body)
{
    return std::visit(
        [](const auto& s) -> std::vector<PlanePoint> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Polygon>)
                return s.vertices;
            else if constexpr (std::is_same_v<T, Disk>)
                throw std::invalid_argument("a disk has no vertices");
            else if constexpr (std::is_same_v<T, Segment>)
                return {s.a, s.b};
            else
                return {s.p};
        },
        body.shape());
}

ConvexBody scale(const ConvexBody& body, double lambda)
{
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("scale factor must be positive");
    auto mul = [lambda](PlanePoint p) { return PlanePoint{lambda * p.re, lambda * p.im}; };
    return std::visit(
        [&](const auto& s) -> ConvexBody {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Polygon>) {
                std::vector<PlanePoint> v;
                for (auto p : s.vertices)
                    v.push_back(mul(p));
                return ConvexBody::polygon(std::move(v));
            } else if constexpr (std::is_same_v<T, Disk>) {
                return ConvexBody::disk(mul(s.center), lambda * s.radius);
            } else if constexpr (std::is_same_v<T, Segment>) {
                return ConvexBody::segment(mul(s.a), mul(s.b));
            } else {
                return ConvexBody::point(mul(s.p));
            }
        },
        body.shape());
}

ConvexBody minkowski_sum(const ConvexBody& lhs, const ConvexBody& rhs)
{
    auto translate = [](const ConvexBody& b, PlanePoint t) {
        return std::visit(
            [t](const auto& s) -> ConvexBody {
                using T = std::decay_t<decltype(s)>;
                auto add = [t](PlanePoint p) { return PlanePoint{p.re + t.re, p.im + t.im}; };
                if constexpr (std::is_same_v<T, Polygon>) {
                    std::vector<PlanePoint> v;
                    for (auto p : s.vertices)
                        v.push_back(add(p));
                    return ConvexBody::polygon(std::move(v));
                } else if constexpr (std::is_same_v<T, Disk>) {
                    return ConvexBody::disk(add(s.center), s.radius);
                } else if constexpr (std::is_same_v<T, Segment>) {
                    return ConvexBody::segment(add(s.a), add(s.b));
                } else {
                    return ConvexBody::point(add(s.p));
                }
            },
            b.shape());
    };
    if (const auto* p = std::get_if<Point>(&rhs.shape()))
        return translate(lhs, p->p);
    if (const auto* p = std::get_if<Point>(&lhs.shape()))
        return translate(rhs, p->p);
    if (lhs.is<Disk>() && rhs.is<Disk>()) {
        const auto& a = std::get<Disk>(lhs.shape());
        const auto& b = std::get<Disk>(rhs.shape());
        return ConvexBody::disk({a.center.re + b.center.re, a.center.im + b.center.im},
                                a.radius + b.radius);
    }
    if (lhs.is<Disk>() || rhs.is<Disk>())
        throw std::invalid_argument("Minkowski sum of a disk and a polygon is not representable");
    std::vector<PlanePoint> sums;
    for (auto a : vertices(lhs))
        for (auto b : vertices(rhs))
            sums.push_back({a.re + b.re, a.im + b.im});
    return convex_hull(sums);
}

double origin_inradius(const ConvexBody& body)
{
    return std::visit(
        [](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Polygon>) {
                const auto& v = s.vertices;
                double m = INFINITY;
                for (std::size_t i = 0; i < v.size(); ++i) {
                    const auto& q = v[(i + 1) % v.size()];
                    const double len = std::hypot(q.re - v[i].re, q.im - v[i].im);
                    PlanePoint n{(q.im - v[i].im) / len, -(q.re - v[i].re) / len};
                    m = std::min(m, dot(n, v[i]));
                }
                return m;
            } else if constexpr (std::is_same_v<T, Disk>) {
                return s.radius - modulus(s.center);
            } else if constexpr (std::is_same_v<T, Segment>) {
                const double len = std::hypot(s.b.re - s.a.re, s.b.im - s.a.im);
                PlanePoint n{(s.b.im - s.a.im) / len, -(s.b.re - s.a.re) / len};
                return -std::abs(dot(n, s.a));
            } else {
                return -modulus(s.p);
            }
        },
        body.shape());
}

}  // namespace expsys
