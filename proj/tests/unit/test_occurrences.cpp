#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "mgcolor/error.hpp"
#include "mgcolor/occurrences.hpp"
#include "oracles.hpp"

using namespace mgcolor;
using namespace testsupport;

namespace {

OccurrenceSet extract(const Json& doc) { return extract_occurrences(parse_document(doc.dump())); }

}  // namespace

TEST_CASE("bounding box area") {
    BezierPath square;
    square.vertices = {{0, 0}, {4, 0}, {4, 4}, {0, 4}};
    square.in_tangents.assign(4, {0, 0});
    square.out_tangents.assign(4, {0, 0});
    square.closed = true;
    CHECK(bounding_box_area(square) == 16.0);
    CHECK(bounding_box_area(square, Affine::scaling({2, 2})) == 64.0);
    CHECK(bounding_box_area(BezierPath{}) == 0.0);

    SUBCASE("kappa circle reaches its extrema with anchors, not handles") {
        const BezierPath circle = BezierPath::ellipse({0, 0}, {20, 20});
        double max_x = -1e9, min_x = 1e9, max_y = -1e9, min_y = 1e9;
        for (std::size_t i = 0; i < circle.vertices.size(); ++i) {
            for (const Vec2& p : {circle.vertices[i],
                                  Vec2{circle.vertices[i].x + circle.in_tangents[i].x, circle.vertices[i].y + circle.in_tangents[i].y},
                                  Vec2{circle.vertices[i].x + circle.out_tangents[i].x, circle.vertices[i].y + circle.out_tangents[i].y}}) {
                max_x = std::max(max_x, p.x);
                min_x = std::min(min_x, p.x);
                max_y = std::max(max_y, p.y);
                min_y = std::min(min_y, p.y);
            }
        }
        CHECK((max_x - min_x) * (max_y - min_y) == doctest::Approx(400.0).epsilon(1e-12));
        CHECK(bounding_box_area(circle) == doctest::Approx(400.0).epsilon(1e-12));
    }

    SUBCASE("control points count") {
        BezierPath arch;
        arch.vertices = {{0, 0}, {10, 0}};
        arch.in_tangents = {{0, 0}, {0, 0}};
        arch.out_tangents = {{0, -6}, {0, 0}};
        CHECK(bounding_box_area(arch) == 60.0);
    }

    SUBCASE("rotation grows the axis-aligned box") {
        CHECK(bounding_box_area(square, Affine::rotation(45)) == doctest::Approx(32.0));
    }
}

TEST_CASE("one static rect") {
    const auto set = extract_occurrences(parse_document(read_fixture("static_fill.json")));
    REQUIRE(set.occurrences.size() == 1);
    const auto& occ = set.occurrences[0];
    CHECK(occ.interval == FrameInterval{0, 60});
    CHECK(occ.area == 16.0);
    CHECK_FALSE(occ.animated);
    CHECK(occ.color == Rgba{0, 0, 1, 1});
    CHECK(occ.opacity == 1.0);
    CHECK(occ.element_id == "Square#1");
    CHECK(set.total_weight == 16.0 * 60.0);
    CHECK(proportion(set, occ.color) == 1.0);
}

TEST_CASE("keyframed paint splits into segments") {
    const auto set = extract_occurrences(parse_document(read_fixture("keyframed_fill.json")));
    REQUIRE(set.occurrences.size() == 2);
    CHECK(set.occurrences[0].color == Rgba{0, 0, 1, 1});
    CHECK(set.occurrences[0].interval == FrameInterval{0, 30});
    CHECK(set.occurrences[1].color == Rgba{1, 0, 0, 1});
    CHECK(set.occurrences[1].interval == FrameInterval{30, 60});
    CHECK(set.occurrences[0].animated);
    CHECK(proportion(set, {0, 0, 1, 1}) == 0.5);
    CHECK(proportion(set, {1, 0, 0, 1}) == 0.5);
}

TEST_CASE("empty documents") {
    const auto set = extract(document(30, 0, 60, {}));
    CHECK(set.occurrences.empty());
    CHECK(set.total_weight == 0.0);
    CHECK_THROWS_AS(proportion(set, {0, 0, 0, 1}), Error);
}

TEST_CASE("proportion is area times duration") {
    const Rgba x{0.2, 0.4, 0.6, 1}, y{0.9, 0.1, 0.1, 1};
    const auto set = extract(document(30, 0, 60,
                                      {shape_layer("A", 1, 0, 60, {box_path(0, 0, 4, 4), fill_item(x)}),
                                       shape_layer("B", 2, 0, 30, {box_path(0, 0, 8, 8), fill_item(y)})}));
    CHECK(proportion(set, x) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(proportion(set, y) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("paint scoping: a paint covers the geometry before it in its own group") {
    const Rgba a{1, 0, 0, 1}, b{0, 1, 0, 1}, c{0, 0, 1, 1};
    const auto set = extract(document(
        30, 0, 30,
        {shape_layer("L", 1, 0, 30,
                     {box_path(0, 0, 2, 2), fill_item(a), box_path(0, 0, 3, 3), fill_item(b),
                      group_item("g", {box_path(0, 0, 5, 5), fill_item(c)})})}));
    REQUIRE(set.occurrences.size() == 3);
    CHECK(set.occurrences[0].area == 4.0);
    CHECK(set.occurrences[1].area == 4.0 + 9.0);
    CHECK(set.occurrences[2].area == 25.0);
}

TEST_CASE("stroke and fill share their path") {
    const auto set = extract_occurrences(parse_document(read_fixture("stroke_fill.json")));
    REQUIRE(set.occurrences.size() == 2);
    CHECK(set.occurrences[0].address.slot == PaintSlot::stroke);
    CHECK(set.occurrences[1].address.slot == PaintSlot::fill);
    // hand-computed box over anchors and handles: x 10..50, y 0..20
    CHECK(set.occurrences[0].area == 800.0);
    CHECK(set.occurrences[1].area == 800.0);
    // layer frames 10..80 inside the document's 0..90
    CHECK(set.occurrences[0].interval == FrameInterval{10, 80});
}

TEST_CASE("transforms: layer scale, parent chain and nested group transforms") {
    const auto nested = extract_occurrences(parse_document(read_fixture("nested_groups.json")));
    REQUIRE(nested.occurrences.size() == 2);
    CHECK(nested.occurrences[0].area == doctest::Approx(80.0 * 40.0));
    CHECK(nested.occurrences[1].area == doctest::Approx(10.0 * 10.0));
    CHECK(nested.occurrences[1].opacity == doctest::Approx(0.8));

    Json parent = shape_layer("P", 7, 0, 30, {}, layer_ks(0, 0, 200));
    Json child = shape_layer("C", 8, 0, 30, {box_path(0, 0, 3, 3), fill_item({1, 1, 0, 1})}, layer_ks(5, 5, 100));
    child["parent"] = 7;
    const auto set = extract(document(30, 0, 30, {parent, child}));
    REQUIRE(set.occurrences.size() == 1);
    CHECK(set.occurrences[0].area == doctest::Approx(36.0));
}

TEST_CASE("unsupported paints are reported, not counted") {
    const auto set = extract_occurrences(parse_document(read_fixture("unsupported_layer.json")));
    REQUIRE(set.occurrences.size() == 1);
    REQUIRE(set.warnings.size() == 1);
    CHECK(set.warnings[0].pointer == "/layers/3/shapes/1");
}

TEST_CASE("element ids") {
    const auto set = extract_occurrences(parse_document(read_fixture("shared_color.json")));
    CHECK(set.occurrences[0].element_id == "Left#1");
    CHECK(set.occurrences.back().element_id == "Layer 3#3");
}

TEST_CASE("per-frame sampling oracle on random documents") {
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
        CAPTURE(seed);
        Gen gen(seed);
        const Json raw = random_document(gen);
        const auto set = extract(raw);
        for (const auto& paint : raw_paints(raw)) {
            for (double f = paint.first; f < paint.last; f += 1.0) {
                const Rgba expected = sample_color(paint.item->at("c"), f);
                int hits = 0;
                for (const auto& occ : set.occurrences) {
                    if ("/" + to_string(occ.address) != paint.pointer) continue;
                    if (!occ.interval.contains(f)) continue;
                    ++hits;
                    CHECK(occ.color == clamped(expected));
                }
                CHECK(hits == 1);
            }
        }
    }
}

TEST_CASE("set invariants on random documents") {
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
        CAPTURE(seed);
        Gen gen(seed);
        const Json raw = random_document(gen);
        const auto doc = parse_document(raw.dump());
        const auto set = extract_occurrences(doc);
        double total = 0.0;
        for (const auto& occ : set.occurrences) {
            total += occ.weight();
            CHECK(occ.area >= 0.0);
            CHECK(occ.interval.start < occ.interval.end);
            CHECK(occ.interval.start >= doc.in_point);
            CHECK(occ.interval.end <= doc.out_point);
        }
        CHECK(total == set.total_weight);
        if (set.total_weight > 0.0) {
            double sum = 0.0;
            for (const auto& c : distinct_colors(set)) sum += proportion(set, c);
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
        }
        const auto again = extract_occurrences(doc);
        REQUIRE(again.occurrences.size() == set.occurrences.size());
        for (std::size_t i = 0; i < set.occurrences.size(); ++i) {
            CHECK(again.occurrences[i].address == set.occurrences[i].address);
            CHECK(again.occurrences[i].color == set.occurrences[i].color);
        }
    }
}
