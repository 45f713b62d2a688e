#pragma once

#include <vector>

namespace mgcolor {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

// 2D affine map: (x, y) -> (a*x + c*y + e, b*x + d*y + f).
struct Affine {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0, e = 0.0, f = 0.0;

    static Affine translation(Vec2 t);
    static Affine scaling(Vec2 s);
    static Affine rotation(double degrees);

    Vec2 apply(Vec2 p) const;
    // (*this) * rhs: rhs is applied first.
    Affine operator*(const Affine& rhs) const;
};

// Cubic Bezier path in Lottie's layout: tangents are offsets from their
// vertex, so the control points are vertex + in_tangent / vertex + out_tangent.
struct BezierPath {
    std::vector<Vec2> vertices;
    std::vector<Vec2> in_tangents;
    std::vector<Vec2> out_tangents;
    bool closed = false;

    static BezierPath rectangle(Vec2 center, Vec2 size);
    // Four-anchor approximation with the usual kappa handles.
    static BezierPath ellipse(Vec2 center, Vec2 size);
};

struct Box {
    double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;

    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
    double area() const { return width() * height(); }
};

// Axis-aligned box over every anchor and control point after `transform`.
// Returns an empty box at the origin for a path without vertices.
Box bounding_box(const BezierPath& path, const Affine& transform);

// Area of bounding_box(); 0 for an empty path.
double bounding_box_area(const BezierPath& path, const Affine& transform = {});

}  // namespace mgcolor
