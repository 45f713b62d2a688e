#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mgcolor/colorspace.hpp"
#include "mgcolor/geometry.hpp"

namespace mgcolor {

// Insertion-ordered so serialized documents keep their original key order.
using Json = nlohmann::ordered_json;

// Model of the subset of the Lottie (bodymovin) format the engine analyses.
//
// Every object keeps the JSON it was parsed from in `raw`. Serialization
// starts from `raw` and overwrites only the keys the model owns and may have
// changed (layer lists, group children and paint colors), so fields the model
// does not understand survive an edit untouched.

template <class T>
struct Keyframe {
    double frame = 0.0;
    std::optional<T> start;  // "s"
    std::optional<T> end;    // "e", legacy exporters only
    Json raw = Json::object();
};

template <class T>
struct Property {
    bool animated = false;
    T value{};  // meaningful when !animated
    std::vector<Keyframe<T>> keyframes;
};

// How a color was written in the source file, so an edited value is written
// back in the same dialect.
struct ColorEncoding {
    int channels = 4;         // 3 or 4
    bool byte_scale = false;  // 0-255 instead of 0-1

    friend bool operator==(const ColorEncoding&, const ColorEncoding&) = default;
};

struct ColorValue {
    Rgba rgba;
    ColorEncoding encoding;

    friend bool operator==(const ColorValue&, const ColorValue&) = default;
};

struct ColorProperty : Property<ColorValue> {
    Json raw = Json::object();
};

// Read-only views of transform channels. Percent units follow the format
// (scale 100 = identity, opacity 100 = opaque).
struct Transform2D {
    Property<Vec2> anchor;
    Property<Vec2> position;
    Property<Vec2> scale{false, {100.0, 100.0}, {}};
    Property<double> rotation;
    Property<double> opacity{false, 100.0, {}};

    Affine matrix_at(double frame) const;
};

enum class PaintSlot { fill, stroke };

struct Paint {
    PaintSlot slot = PaintSlot::fill;
    ColorProperty color;
    Property<double> opacity{false, 100.0, {}};  // percent
};

enum class ShapeKind { group, path, rect, ellipse, fill, stroke, transform, unsupported };

struct ShapeItem {
    ShapeKind kind = ShapeKind::unsupported;
    std::string name;
    bool hidden = false;
    std::vector<ShapeItem> children;    // groups only
    std::optional<BezierPath> path;     // path/rect/ellipse; first keyframe if animated
    std::optional<Paint> paint;         // fill/stroke only
    std::optional<Transform2D> transform;  // transform items only
    Json raw = Json::object();
};

enum class LayerType { shape, precomposition, unsupported };

struct Layer {
    std::string name;
    std::optional<long long> index;   // "ind"
    std::optional<long long> parent;  // "parent" refers to another layer's "ind"
    double in_point = 0.0;
    double out_point = 0.0;
    LayerType type = LayerType::unsupported;
    Transform2D transform;
    std::vector<ShapeItem> shapes;  // shape layers only
    Json raw = Json::object();
};

struct LottieDocument {
    double frame_rate = 0.0;
    double in_point = 0.0;
    double out_point = 0.0;
    double width = 0.0;
    double height = 0.0;
    std::vector<Layer> layers;
    Json raw = Json::object();
};

// Stable handle to one fill or stroke: layer position in the layer list, then
// child positions through nested groups down to the paint item.
struct ColorAddress {
    std::size_t layer_index = 0;
    std::vector<std::size_t> shape_path;
    PaintSlot slot = PaintSlot::fill;

    friend bool operator==(const ColorAddress&, const ColorAddress&) = default;
    friend auto operator<=>(const ColorAddress&, const ColorAddress&) = default;
};

// "layers/0/shapes/2/it/1" style pointer relative to the document root.
std::string to_string(const ColorAddress& addr);
std::string_view to_string(PaintSlot slot);
Json to_json(const ColorAddress& addr);
ColorAddress address_from_json(const Json& j);

LottieDocument parse_document(std::string_view text);
LottieDocument parse_document_json(const Json& root);

Json to_json(const LottieDocument& doc);
std::string serialize_document(const LottieDocument& doc, int indent = -1);

const ColorProperty& resolve_address(const LottieDocument& doc, const ColorAddress& addr);
ColorProperty& resolve_address(LottieDocument& doc, const ColorAddress& addr);
const ShapeItem& resolve_item(const LottieDocument& doc, const ColorAddress& addr);

// Every fill/stroke in document order, depth first.
std::vector<ColorAddress> paint_addresses(const LottieDocument& doc);

// Distinct colors used by any paint value (static or keyframe) in first-use
// order.
std::vector<Rgba> document_colors(const LottieDocument& doc);

// Color of a paint at `frame`, following the format's interpolation rules:
// hold keyframes, cubic-bezier easing from "o"/"i", linear RGBA blending.
Rgba evaluate_color(const ColorProperty& prop, double frame);

// Value a keyframe contributes at its own frame; falls back to the previous
// keyframe's end value when the exporter omitted "s".
std::optional<ColorValue> keyframe_value(const std::vector<Keyframe<ColorValue>>& keys,
                                         std::size_t i);

template <class T>
T evaluate_held(const Property<T>& prop, double frame) {
    if (!prop.animated || prop.keyframes.empty()) return prop.value;
    const Keyframe<T>* active = &prop.keyframes.front();
    for (const auto& kf : prop.keyframes) {
        if (kf.frame <= frame && kf.start) active = &kf;
    }
    return active->start ? *active->start : prop.value;
}

}  // namespace mgcolor
