#include <doctest.h>

#include "fixtures.hpp"
#include "gen.hpp"
#include "mgcolor/error.hpp"
#include "mgcolor/lottie_doc.hpp"
#include "mgcolor/recolor.hpp"
#include "oracles.hpp"

using namespace mgcolor;
using namespace testsupport;

namespace {

ErrorCode error_of(std::string_view text) {
    try {
        parse_document(text);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected a parse error");
    return ErrorCode::InvalidArgument;
}

std::string error_path(std::string_view text) {
    try {
        parse_document(text);
    } catch (const Error& e) {
        return e.path();
    }
    return "<no error>";
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

}  // namespace

TEST_CASE("minimal document") {
    const auto doc = parse_document(R"({"fr":30,"ip":0,"op":60,"w":512,"h":512,"layers":[]})");
    CHECK(doc.frame_rate == 30);
    CHECK(doc.in_point == 0);
    CHECK(doc.out_point == 60);
    CHECK(doc.width == 512);
    CHECK(doc.layers.empty());
}

TEST_CASE("one rect with one static fill") {
    const auto doc = parse_document(read_fixture("static_fill.json"));
    REQUIRE(doc.layers.size() == 1);
    CHECK(doc.layers[0].type == LayerType::shape);
    CHECK(doc.layers[0].name == "Square");
    CHECK(doc.layers[0].index == 1);
    const auto addrs = paint_addresses(doc);
    REQUIRE(addrs.size() == 1);
    const ColorProperty& fill = resolve_address(doc, addrs[0]);
    CHECK_FALSE(fill.animated);
    CHECK(fill.value.rgba == Rgba{0, 0, 1, 1});
    CHECK(addrs[0] == ColorAddress{0, {1}, PaintSlot::fill});
}

TEST_CASE("rejected inputs") {
    CHECK(error_of("not json") == ErrorCode::MalformedJson);
    CHECK(error_of("[1,2]") == ErrorCode::UnsupportedDocument);
    CHECK(error_of(R"({"ip":0,"op":60,"layers":[]})") == ErrorCode::UnsupportedDocument);
    CHECK(error_of(R"({"fr":30,"op":60,"layers":[]})") == ErrorCode::UnsupportedDocument);
    CHECK(error_of(R"({"fr":0,"ip":0,"op":60,"layers":[]})") == ErrorCode::UnsupportedDocument);
    CHECK(error_of(R"({"fr":30,"ip":60,"op":60,"layers":[]})") == ErrorCode::UnsupportedDocument);
}

TEST_CASE("structural errors carry a JSON path") {
    const std::string bad_color =
        R"({"fr":30,"ip":0,"op":60,"layers":[{"ty":4,"ip":0,"op":60,"shapes":[{"ty":"fl","c":{"a":0,"k":[1,0]}}]}]})";
    CHECK(error_of(bad_color) == ErrorCode::StructuralError);
    CHECK(starts_with(error_path(bad_color), "/layers/0/shapes/0/c"));

    const std::string unordered =
        R"({"fr":30,"ip":0,"op":60,"layers":[{"ty":4,"ip":0,"op":60,"shapes":[{"ty":"fl","c":{"a":1,"k":[{"t":10,"s":[1,0,0,1]},{"t":5,"s":[0,1,0,1]}]}}]}]})";
    CHECK(error_of(unordered) == ErrorCode::StructuralError);
    CHECK(starts_with(error_path(unordered), "/layers/0/shapes/0/c/k/1"));
}

TEST_CASE("corpus fixtures are preserved field for field") {
    for (const auto& name : corpus_names()) {
        CAPTURE(name);
        const Json input = Json::parse(read_fixture(name));
        const LottieDocument doc = parse_document(read_fixture(name));
        CHECK(json_diff(input, to_json(doc)).empty());
        const LottieDocument again = parse_document(serialize_document(doc));
        CHECK(document_diff(doc, again, 1e-9).empty());
    }
}

TEST_CASE("unsupported layers survive verbatim") {
    const Json input = Json::parse(read_fixture("unsupported_layer.json"));
    const Json output = Json::parse(serialize_document(parse_document(read_fixture("unsupported_layer.json"))));
    for (std::size_t i : {0u, 1u, 2u}) CHECK(output["layers"][i] == input["layers"][i]);
    CHECK(output["assets"] == input["assets"]);
    CHECK(output["fonts"] == input["fonts"]);
    const auto doc = parse_document(read_fixture("unsupported_layer.json"));
    CHECK(doc.layers[0].type == LayerType::unsupported);
    CHECK(doc.layers[2].type == LayerType::precomposition);
}

TEST_CASE("an edited fill is the only difference") {
    const Json input = Json::parse(read_fixture("static_fill.json"));
    const auto doc = parse_document(read_fixture("static_fill.json"));
    const auto edited = apply_set_rgb(doc, {0, 0, 1, 1}, {1, 0, 0, 1}).document;
    const auto diff = json_diff(input, Json::parse(serialize_document(edited)));
    REQUIRE_FALSE(diff.empty());
    for (const auto& p : diff) CHECK(starts_with(p, "/layers/0/shapes/1/c/k"));
}

TEST_CASE("resolve_address") {
    const auto doc = parse_document(read_fixture("nested_groups.json"));
    SUBCASE("two groups deep") {
        const ColorAddress dot{0, {0, 2, 0, 1}, PaintSlot::fill};
        CHECK(to_hex(resolve_address(doc, dot).value.rgba) == "#ffff66");
        CHECK(to_string(dot) == "layers/0/shapes/0/it/2/it/0/it/1");
        CHECK(address_from_json(to_json(dot)) == dot);
    }
    SUBCASE("out of range") {
        CHECK_THROWS_AS(resolve_address(doc, ColorAddress{5, {1}, PaintSlot::fill}), Error);
        try {
            resolve_address(doc, ColorAddress{5, {1}, PaintSlot::fill});
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::AddressNotFound);
        }
    }
    SUBCASE("wrong slot or non-paint item") {
        for (const ColorAddress& bad : {ColorAddress{0, {0, 1}, PaintSlot::stroke}, ColorAddress{0, {0, 0}, PaintSlot::fill},
                                        ColorAddress{0, {0, 9}, PaintSlot::fill}, ColorAddress{0, {}, PaintSlot::fill}}) {
            try {
                resolve_address(doc, bad);
                FAIL("expected AddressNotFound for " << to_string(bad));
            } catch (const Error& e) {
                CHECK(e.code() == ErrorCode::AddressNotFound);
            }
        }
    }
    SUBCASE("stable under edits elsewhere") {
        const ColorAddress plate{0, {0, 1}, PaintSlot::fill};
        const ColorAddress dot{0, {0, 2, 0, 1}, PaintSlot::fill};
        const auto edited = apply_set_rgb(doc, resolve_address(doc, plate).value.rgba, {0, 0, 0, 1}).document;
        CHECK(resolve_address(edited, dot).value == resolve_address(doc, dot).value);
    }
}

TEST_CASE("byte-scale three-channel colors") {
    const auto doc = parse_document(read_fixture("byte_scale.json"));
    const auto& navy = resolve_address(doc, {0, {1}, PaintSlot::fill});
    CHECK(navy.value.encoding.byte_scale);
    CHECK(navy.value.encoding.channels == 3);
    CHECK(to_hex(navy.value.rgba) == "#023e73");
    CHECK(navy.value.rgba.b == doctest::Approx(115.0 / 255.0).epsilon(1e-15));
    CHECK(navy.value.rgba.a == 1.0);
    // a color set from hex is written back in the file's own dialect
    const auto edited = apply_set_rgb(doc, navy.value.rgba, *parse_hex("#085ca6")).document;
    const Json out = Json::parse(serialize_document(edited));
    CHECK(out["layers"][0]["shapes"][1]["c"]["k"] == Json::array({8, 92, 166}));
}

TEST_CASE("color evaluation") {
    const auto blink = parse_document(read_fixture("keyframed_fill.json"));
    const auto& prop = resolve_address(blink, {0, {1}, PaintSlot::fill});
    CHECK(prop.animated);
    CHECK(evaluate_color(prop, 0) == Rgba{0, 0, 1, 1});
    CHECK(evaluate_color(prop, 29.5) == Rgba{0, 0, 1, 1});
    CHECK(evaluate_color(prop, 30) == Rgba{1, 0, 0, 1});
    CHECK(evaluate_color(prop, 100) == Rgba{1, 0, 0, 1});

    SUBCASE("legacy end values interpolate linearly") {
        const auto doc = parse_document(read_fixture("byte_scale.json"));
        const auto& edge = resolve_address(doc, {0, {3}, PaintSlot::stroke});
        const Rgba mid = evaluate_color(edge, 30);
        const Rgba a = *parse_hex("#d9b97e"), b = *parse_hex("#8c4265");
        CHECK(mid.r == doctest::Approx((a.r + b.r) / 2));
        CHECK(evaluate_color(edge, 120) == a);
        CHECK(keyframe_value(edge.keyframes, 2)->rgba == a);
    }
    SUBCASE("cubic easing stays between its endpoints") {
        const auto doc = parse_document(
            R"({"fr":30,"ip":0,"op":60,"layers":[{"ty":4,"ip":0,"op":60,"shapes":[{"ty":"fl","c":{"a":1,"k":[{"t":0,"s":[0,0,0,1],"o":{"x":[0.9],"y":[0]},"i":{"x":[0.1],"y":[1]}},{"t":10,"s":[1,1,1,1]}]}}]}]})");
        const auto& p = resolve_address(doc, {0, {0}, PaintSlot::fill});
        double prev = 0.0;
        for (int f = 0; f <= 10; ++f) {
            const double v = evaluate_color(p, f).r;
            CHECK(v >= prev - 1e-12);
            prev = v;
        }
        CHECK(evaluate_color(p, 2).r < 0.2);  // slow start
    }
}

TEST_CASE("random documents round trip") {
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        CAPTURE(seed);
        Gen gen(seed);
        RandomDocOptions options;
        options.linear_keys = true;
        const Json input = random_document(gen, options);
        const auto doc = parse_document(input.dump());
        CHECK(json_diff(input, to_json(doc)).empty());
        CHECK(document_diff(doc, parse_document(serialize_document(doc))).empty());
    }
}

TEST_CASE("document colors in first-use order") {
    const auto doc = parse_document(read_fixture("shared_color.json"));
    const auto colors = document_colors(doc);
    REQUIRE(colors.size() == 2);
    CHECK(to_hex(colors[0]) == "#ff0000");
    CHECK(to_hex(colors[1]) == "#0080ff");
}
