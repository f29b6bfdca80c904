#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace expsys {

/// A point of the complex plane, stored as (re, im).
struct PlanePoint {
    double re = 0.0;
    double im = 0.0;

    friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

double modulus(PlanePoint z);
PlanePoint conj(PlanePoint z);

struct Polygon {
    std::vector<PlanePoint> vertices;  // strictly convex, counter-clockwise
};

struct Disk {
    PlanePoint center;
    double radius = 0.0;
};

struct Segment {
    PlanePoint a;
    PlanePoint b;
};

struct Point {
    PlanePoint p;
};

/** A compact convex set of the plane.

    Only the four shapes needed by the criteria are representable: strictly convex
    polygons, disks, segments (degenerate hulls of collinear sets) and points.
    The factories validate the invariants and throw std::invalid_argument.
*/
class ConvexBody {
public:
    using Shape = std::variant<Polygon, Disk, Segment, Point>;

    static ConvexBody polygon(std::vector<PlanePoint> vertices);
    static ConvexBody disk(PlanePoint center, double radius);
    static ConvexBody segment(PlanePoint a, PlanePoint b);
    static ConvexBody point(PlanePoint p);

    const Shape& shape() const { return shape_; }
    std::string type_name() const;

    template <class T>
    bool is() const { return std::holds_alternative<T>(shape_); }

private:
    explicit ConvexBody(Shape s) : shape_(std::move(s)) {}
    Shape shape_;
};

/// Atom of the boundary arc-length measure: boundary length carried by the outward
/// normal direction `angle`.
struct ArcAtom {
    double angle;
    double weight;
};

/** Boundary length swept as the outward normal turns, as a measure on [0, 2pi).
    Polygons and segments give atoms, disks give the constant density `density`. */
struct ArcLengthMeasure {
    std::vector<ArcAtom> atoms;  // angles strictly increasing in [0, 2pi)
    double density = 0.0;

    double total_mass() const;
};

ConvexBody convex_hull(std::span<const PlanePoint> points);

/// Boundary length; a segment counts twice its length and a point has perimeter 0.
double perimeter(const ConvexBody& body);

/// sup over s in the body of Re(s * conj(z)).
double support(const ConvexBody& body, PlanePoint z);

/// Reflection across the real axis.
ConvexBody mirror(const ConvexBody& body);

ArcLengthMeasure arc_length_measure(const ConvexBody& body);

/// Extreme points for polygons, segments and points; a disk has none and throws.
std::vector<PlanePoint> vertices(const ConvexBody& body);

/// Homothety about the origin with factor lambda > 0.
ConvexBody scale(const ConvexBody& body, double lambda);

/// Minkowski sum. Disks only combine with points; other pairs go through the hull
/// of pairwise vertex sums.
ConvexBody minkowski_sum(const ConvexBody& lhs, const ConvexBody& rhs);

/// Largest rho with support(body, z) >= rho*|z| for all z, i.e. the distance from the
/// origin to the boundary when the origin is interior; 0 or negative otherwise.
double origin_inradius(const ConvexBody& body);

}  // namespace expsys
