#include "mgcolor/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mgcolor {

Affine Affine::translation(Vec2 t) {
    return {1.0, 0.0, 0.0, 1.0, t.x, t.y};
}

Affine Affine::scaling(Vec2 s) {
    return {s.x, 0.0, 0.0, s.y, 0.0, 0.0};
}

Affine Affine::rotation(double degrees) {
    const double rad = degrees * std::numbers::pi / 180.0;
    const double cs = std::cos(rad);
    const double sn = std::sin(rad);
    return {cs, sn, -sn, cs, 0.0, 0.0};
}

Vec2 Affine::apply(Vec2 p) const {
    return {a * p.x + c * p.y + e, b * p.x + d * p.y + f};
}

Affine Affine::operator*(const Affine& r) const {
    return {
        a * r.a + c * r.b,
        b * r.a + d * r.b,
        a * r.c + c * r.d,
        b * r.c + d * r.d,
        a * r.e + c * r.f + e,
        b * r.e + d * r.f + f,
    };
}

BezierPath BezierPath::rectangle(Vec2 center, Vec2 size) {
    const double hx = size.x / 2.0;
    const double hy = size.y / 2.0;
    BezierPath p;
    p.vertices = {{center.x - hx, center.y - hy},
                  {center.x + hx, center.y - hy},
                  {center.x + hx, center.y + hy},
                  {center.x - hx, center.y + hy}};
    p.in_tangents.assign(4, {});
    p.out_tangents.assign(4, {});
    p.closed = true;
    return p;
}

BezierPath BezierPath::ellipse(Vec2 center, Vec2 size) {
    constexpr double kKappa = 0.5522847498307936;
    const double rx = size.x / 2.0;
    const double ry = size.y / 2.0;
    const double kx = rx * kKappa;
    const double ky = ry * kKappa;
    BezierPath p;
    p.vertices = {{center.x, center.y - ry},
                  {center.x + rx, center.y},
                  {center.x, center.y + ry},
                  {center.x - rx, center.y}};
    p.in_tangents = {{-kx, 0.0}, {0.0, -ky}, {kx, 0.0}, {0.0, ky}};
    p.out_tangents = {{kx, 0.0}, {0.0, ky}, {-kx, 0.0}, {0.0, -ky}};
    p.closed = true;
    return p;
}

Box bounding_box(const BezierPath& path, const Affine& transform) {
    if (path.vertices.empty()) {
        return {};
    }
    Box box{INFINITY, INFINITY, -INFINITY, -INFINITY};
    auto include = [&](Vec2 p) {
        const Vec2 q = transform.apply(p);
        box.min_x = std::min(box.min_x, q.x);
        box.min_y = std::min(box.min_y, q.y);
        box.max_x = std::max(box.max_x, q.x);
        box.max_y = std::max(box.max_y, q.y);
    };
    for (std::size_t i = 0; i < path.vertices.size(); ++i) {
        const Vec2 v = path.vertices[i];
        include(v);
        if (i < path.in_tangents.size()) {
            include({v.x + path.in_tangents[i].x, v.y + path.in_tangents[i].y});
        }
        if (i < path.out_tangents.size()) {
            include({v.x + path.out_tangents[i].x, v.y + path.out_tangents[i].y});
        }
    }
    return box;
}

double bounding_box_area(const BezierPath& path, const Affine& transform) {
    return bounding_box(path, transform).area();
}

}  // namespace mgcolor
