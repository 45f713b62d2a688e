#include "mgcolor/lottie_doc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "mgcolor/error.hpp"

namespace mgcolor {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedJson: return "MalformedJson";
        case ErrorCode::UnsupportedDocument: return "UnsupportedDocument";
        case ErrorCode::StructuralError: return "StructuralError";
        case ErrorCode::AddressNotFound: return "AddressNotFound";
        case ErrorCode::ZeroWeightDocument: return "ZeroWeightDocument";
        case ErrorCode::EmptyDocument: return "EmptyDocument";
        case ErrorCode::UnknownColor: return "UnknownColor";
        case ErrorCode::EmptyGroup: return "EmptyGroup";
        case ErrorCode::RgbOnGroup: return "RgbOnGroup";
        case ErrorCode::FrameOutOfRange: return "FrameOutOfRange";
        case ErrorCode::OutOfBounds: return "OutOfBounds";
        case ErrorCode::EmptyLog: return "EmptyLog";
        case ErrorCode::NothingToRedo: return "NothingToRedo";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

namespace {

[[noreturn]] void structural(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::StructuralError, what + " at " + (path.empty() ? "/" : path), path);
}

double number_at(const Json& j, const std::string& path) {
    if (!j.is_number()) structural(path, "expected a number");
    return j.get<double>();
}

std::optional<long long> optional_integer(const Json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_number()) return std::nullopt;
    return static_cast<long long>(std::llround(it->get<double>()));
}

double decode_scalar(const Json& j, const std::string& path) {
    if (j.is_array()) {
        if (j.empty()) structural(path, "empty value array");
        return number_at(j[0], path + "/0");
    }
    return number_at(j, path);
}

Vec2 decode_vec2(const Json& j, const std::string& path) {
    if (j.is_number()) {
        const double v = j.get<double>();
        return {v, v};
    }
    if (!j.is_array() || j.size() < 2) structural(path, "expected a 2D vector");
    return {number_at(j[0], path + "/0"), number_at(j[1], path + "/1")};
}

// Channels are kept in the file's scale here; normalize_colors() rescales once
// the whole document has been seen.
ColorValue decode_color(const Json& j, const std::string& path) {
    if (!j.is_array() || j.size() < 3 || j.size() > 4) {
        structural(path, "expected a color array of 3 or 4 numbers");
    }
    ColorValue cv;
    cv.encoding.channels = static_cast<int>(j.size());
    cv.rgba.r = number_at(j[0], path + "/0");
    cv.rgba.g = number_at(j[1], path + "/1");
    cv.rgba.b = number_at(j[2], path + "/2");
    cv.rgba.a = j.size() == 4 ? number_at(j[3], path + "/3") : 1.0;
    return cv;
}

bool looks_animated(const Json& prop) {
    auto k = prop.find("k");
    if (k == prop.end()) return false;
    if (k->is_array() && !k->empty() && (*k)[0].is_object()) return true;
    auto a = prop.find("a");
    return a != prop.end() && a->is_number() && a->get<double>() != 0.0 && k->is_array() &&
           (k->empty() || (*k)[0].is_object());
}

template <class T, class Decode>
Property<T> parse_property(const Json& j, const std::string& path, Decode decode, T fallback) {
    Property<T> prop;
    prop.value = fallback;
    if (!j.is_object()) structural(path, "expected a property object");
    auto k = j.find("k");
    if (k == j.end()) structural(path, "property without \"k\"");
    if (!looks_animated(j)) {
        prop.value = decode(*k, path + "/k");
        return prop;
    }
    prop.animated = true;
    for (std::size_t i = 0; i < k->size(); ++i) {
        const Json& kj = (*k)[i];
        const std::string kp = path + "/k/" + std::to_string(i);
        if (!kj.is_object()) structural(kp, "expected a keyframe object");
        auto t = kj.find("t");
        if (t == kj.end()) structural(kp, "keyframe without \"t\"");
        Keyframe<T> kf;
        kf.frame = number_at(*t, kp + "/t");
        if (auto s = kj.find("s"); s != kj.end()) kf.start = decode(*s, kp + "/s");
        if (auto e = kj.find("e"); e != kj.end()) kf.end = decode(*e, kp + "/e");
        if (!prop.keyframes.empty() && kf.frame <= prop.keyframes.back().frame) {
            structural(kp + "/t", "keyframe frames must be strictly increasing");
        }
        kf.raw = kj;
        prop.keyframes.push_back(std::move(kf));
    }
    if (prop.keyframes.empty()) {
        prop.animated = false;
    } else if (prop.keyframes.front().start) {
        prop.value = *prop.keyframes.front().start;
    }
    return prop;
}

// Transform channels are only read, never written, so a channel the model
// cannot decode (expressions, exotic exporter output) falls back to identity.
template <class T, class Decode>
Property<T> tolerant_property(const Json& obj, const char* key, const std::string& path,
                              Decode decode, T fallback) {
    auto it = obj.find(key);
    if (it == obj.end()) return Property<T>{false, fallback, {}};
    try {
        return parse_property<T>(*it, path + "/" + key, decode, fallback);
    } catch (const Error&) {
        return Property<T>{false, fallback, {}};
    }
}

Property<Vec2> parse_position(const Json& ks, const std::string& path) {
    auto p = ks.find("p");
    if (p != ks.end() && p->is_object() && p->value("s", false)) {
        auto x = tolerant_property<double>(*p, "x", path + "/p", decode_scalar, 0.0);
        auto y = tolerant_property<double>(*p, "y", path + "/p", decode_scalar, 0.0);
        Property<Vec2> out{false, {x.value, y.value}, {}};
        if (x.animated || y.animated) {
            std::set<double> frames;
            for (const auto& kf : x.keyframes) frames.insert(kf.frame);
            for (const auto& kf : y.keyframes) frames.insert(kf.frame);
            out.animated = true;
            for (double f : frames) {
                Keyframe<Vec2> kf;
                kf.frame = f;
                kf.start = Vec2{evaluate_held(x, f), evaluate_held(y, f)};
                out.keyframes.push_back(std::move(kf));
            }
        }
        return out;
    }
    return tolerant_property<Vec2>(ks, "p", path, decode_vec2, Vec2{});
}

Transform2D parse_transform(const Json& ks, const std::string& path) {
    Transform2D t;
    if (!ks.is_object()) return t;
    t.anchor = tolerant_property<Vec2>(ks, "a", path, decode_vec2, Vec2{});
    t.position = parse_position(ks, path);
    t.scale = tolerant_property<Vec2>(ks, "s", path, decode_vec2, Vec2{100.0, 100.0});
    t.rotation = tolerant_property<double>(ks, "r", path, decode_scalar, 0.0);
    t.opacity = tolerant_property<double>(ks, "o", path, decode_scalar, 100.0);
    return t;
}

std::vector<Vec2> decode_points(const Json& obj, const char* key, const std::string& path) {
    std::vector<Vec2> out;
    auto it = obj.find(key);
    if (it == obj.end()) return out;
    if (!it->is_array()) structural(path + "/" + key, "expected a point list");
    out.reserve(it->size());
    for (std::size_t i = 0; i < it->size(); ++i) {
        out.push_back(decode_vec2((*it)[i], path + "/" + key + "/" + std::to_string(i)));
    }
    return out;
}

BezierPath decode_bezier(const Json& j, const std::string& path) {
    // animated shapes wrap the path in a one-element array
    if (j.is_array()) {
        if (j.empty()) structural(path, "empty shape value");
        return decode_bezier(j[0], path + "/0");
    }
    if (!j.is_object()) structural(path, "expected a bezier path object");
    BezierPath p;
    p.vertices = decode_points(j, "v", path);
    p.in_tangents = decode_points(j, "i", path);
    p.out_tangents = decode_points(j, "o", path);
    p.closed = j.value("c", false);
    if (p.in_tangents.empty()) p.in_tangents.assign(p.vertices.size(), {});
    if (p.out_tangents.empty()) p.out_tangents.assign(p.vertices.size(), {});
    if (p.in_tangents.size() != p.vertices.size() || p.out_tangents.size() != p.vertices.size()) {
        structural(path, "vertex and tangent lists differ in length");
    }
    return p;
}

template <class T>
T first_value(const Property<T>& prop) {
    if (prop.animated && !prop.keyframes.empty() && prop.keyframes.front().start) {
        return *prop.keyframes.front().start;
    }
    return prop.value;
}

ShapeKind kind_of(const Json& item) {
    auto ty = item.find("ty");
    if (ty == item.end() || !ty->is_string()) return ShapeKind::unsupported;
    const std::string& t = ty->get_ref<const std::string&>();
    if (t == "gr") return ShapeKind::group;
    if (t == "sh") return ShapeKind::path;
    if (t == "rc") return ShapeKind::rect;
    if (t == "el") return ShapeKind::ellipse;
    if (t == "fl") return ShapeKind::fill;
    if (t == "st") return ShapeKind::stroke;
    if (t == "tr") return ShapeKind::transform;
    return ShapeKind::unsupported;
}

ShapeItem parse_shape(const Json& j, const std::string& path) {
    if (!j.is_object()) structural(path, "expected a shape object");
    ShapeItem item;
    item.raw = j;
    item.kind = kind_of(j);
    if (auto nm = j.find("nm"); nm != j.end() && nm->is_string()) item.name = nm->get<std::string>();
    if (auto hd = j.find("hd"); hd != j.end() && hd->is_boolean()) item.hidden = hd->get<bool>();

    switch (item.kind) {
        case ShapeKind::group: {
            auto it = j.find("it");
            if (it == j.end()) break;
            if (!it->is_array()) structural(path + "/it", "expected a shape list");
            item.children.reserve(it->size());
            for (std::size_t i = 0; i < it->size(); ++i) {
                item.children.push_back(parse_shape((*it)[i], path + "/it/" + std::to_string(i)));
            }
            break;
        }
        case ShapeKind::path: {
            auto ks = j.find("ks");
            if (ks == j.end()) structural(path, "path without \"ks\"");
            item.path = first_value(parse_property<BezierPath>(*ks, path + "/ks", decode_bezier, {}));
            break;
        }
        case ShapeKind::rect:
        case ShapeKind::ellipse: {
            const Vec2 center = first_value(tolerant_property<Vec2>(j, "p", path, decode_vec2, {}));
            const Vec2 size = first_value(tolerant_property<Vec2>(j, "s", path, decode_vec2, {}));
            item.path = item.kind == ShapeKind::rect ? BezierPath::rectangle(center, size)
                                                     : BezierPath::ellipse(center, size);
            break;
        }
        case ShapeKind::fill:
        case ShapeKind::stroke: {
            auto c = j.find("c");
            if (c == j.end()) {
                // Some exporters emit paints without a color; nothing to analyse.
                item.kind = ShapeKind::unsupported;
                break;
            }
            Paint paint;
            paint.slot = item.kind == ShapeKind::fill ? PaintSlot::fill : PaintSlot::stroke;
            static_cast<Property<ColorValue>&>(paint.color) =
                parse_property<ColorValue>(*c, path + "/c", decode_color, ColorValue{});
            paint.color.raw = *c;
            paint.opacity = tolerant_property<double>(j, "o", path, decode_scalar, 100.0);
            item.paint = std::move(paint);
            break;
        }
        case ShapeKind::transform:
            item.transform = parse_transform(j, path);
            break;
        case ShapeKind::unsupported:
            break;
    }
    return item;
}

Layer parse_layer(const Json& j, const std::string& path, const LottieDocument& doc) {
    if (!j.is_object()) structural(path, "expected a layer object");
    Layer layer;
    layer.raw = j;
    if (auto nm = j.find("nm"); nm != j.end() && nm->is_string()) layer.name = nm->get<std::string>();
    layer.index = optional_integer(j, "ind");
    layer.parent = optional_integer(j, "parent");
    layer.in_point = j.contains("ip") ? number_at(j["ip"], path + "/ip") : doc.in_point;
    layer.out_point = j.contains("op") ? number_at(j["op"], path + "/op") : doc.out_point;
    if (layer.in_point > layer.out_point) structural(path + "/op", "layer ends before it starts");
    if (auto ty = optional_integer(j, "ty")) {
        layer.type = *ty == 4 ? LayerType::shape
                   : *ty == 0 ? LayerType::precomposition
                              : LayerType::unsupported;
    }
    if (auto ks = j.find("ks"); ks != j.end()) layer.transform = parse_transform(*ks, path + "/ks");
    if (layer.type == LayerType::shape) {
        if (auto shapes = j.find("shapes"); shapes != j.end()) {
            if (!shapes->is_array()) structural(path + "/shapes", "expected a shape list");
            layer.shapes.reserve(shapes->size());
            for (std::size_t i = 0; i < shapes->size(); ++i) {
                layer.shapes.push_back(
                    parse_shape((*shapes)[i], path + "/shapes/" + std::to_string(i)));
            }
        }
    }
    return layer;
}

void for_each_item(std::vector<ShapeItem>& items, const std::function<void(ShapeItem&)>& fn) {
    for (auto& item : items) {
        fn(item);
        for_each_item(item.children, fn);
    }
}

void for_each_color_value(LottieDocument& doc, const std::function<void(ColorValue&)>& fn) {
    for (auto& layer : doc.layers) {
        for_each_item(layer.shapes, [&](ShapeItem& item) {
            if (!item.paint) return;
            auto& prop = item.paint->color;
            fn(prop.value);
            for (auto& kf : prop.keyframes) {
                if (kf.start) fn(*kf.start);
                if (kf.end) fn(*kf.end);
            }
        });
    }
}

// One scale per document: a single channel above 1 means the exporter wrote
// 0-255 values throughout. Deciding per value would misread dark byte colors
// such as [1,0,0] as bright red.
void normalize_colors(LottieDocument& doc) {
    bool byte_scale = false;
    for_each_color_value(doc, [&](ColorValue& cv) {
        const Rgba& c = cv.rgba;
        if (c.r > 1.0 || c.g > 1.0 || c.b > 1.0 || c.a > 1.0) byte_scale = true;
    });
    for_each_color_value(doc, [&](ColorValue& cv) {
        if (byte_scale) {
            cv.encoding.byte_scale = true;
            cv.rgba.r /= 255.0;
            cv.rgba.g /= 255.0;
            cv.rgba.b /= 255.0;
            if (cv.encoding.channels == 4) cv.rgba.a /= 255.0;
        }
        cv.rgba = clamped(cv.rgba);
    });
}

// Integral values are written as JSON integers so untouched byte-scale files
// come back out the way they went in.
Json encode_number(double v) {
    const double rounded = std::round(v);
    if (std::abs(v - rounded) < 1e-9 && std::abs(rounded) < 9.0e15) {
        return static_cast<long long>(rounded);
    }
    return v;
}

Json encode_color(const ColorValue& cv) {
    const double scale = cv.encoding.byte_scale ? 255.0 : 1.0;
    Json out = Json::array();
    out.push_back(encode_number(cv.rgba.r * scale));
    out.push_back(encode_number(cv.rgba.g * scale));
    out.push_back(encode_number(cv.rgba.b * scale));
    if (cv.encoding.channels == 4) out.push_back(encode_number(cv.rgba.a * scale));
    return out;
}

Json color_property_json(const ColorProperty& prop) {
    Json out = prop.raw.is_object() ? prop.raw : Json::object();
    if (prop.animated) {
        out["a"] = 1;
        Json keys = Json::array();
        for (const auto& kf : prop.keyframes) {
            Json k = kf.raw.is_object() ? kf.raw : Json::object();
            auto t = k.find("t");
            if (t == k.end() || !t->is_number() || t->get<double>() != kf.frame) {
                k["t"] = encode_number(kf.frame);
            }
            if (kf.start) k["s"] = encode_color(*kf.start);
            else k.erase("s");
            if (kf.end) k["e"] = encode_color(*kf.end);
            else k.erase("e");
            keys.push_back(std::move(k));
        }
        out["k"] = std::move(keys);
    } else {
        if (out.contains("a")) out["a"] = 0;
        out["k"] = encode_color(prop.value);
    }
    return out;
}

Json shape_json(const ShapeItem& item) {
    Json out = item.raw;
    if (item.kind == ShapeKind::group && (out.contains("it") || !item.children.empty())) {
        Json children = Json::array();
        for (const auto& child : item.children) children.push_back(shape_json(child));
        out["it"] = std::move(children);
    }
    if (item.paint) out["c"] = color_property_json(item.paint->color);
    return out;
}

Json layer_json(const Layer& layer) {
    Json out = layer.raw;
    if (layer.type == LayerType::shape && (out.contains("shapes") || !layer.shapes.empty())) {
        Json shapes = Json::array();
        for (const auto& item : layer.shapes) shapes.push_back(shape_json(item));
        out["shapes"] = std::move(shapes);
    }
    return out;
}

template <class Doc, class Item>
Item& resolve_item_impl(Doc& doc, const ColorAddress& addr) {
    auto not_found = [&](const std::string& why) -> Error {
        return Error(ErrorCode::AddressNotFound, "address " + to_string(addr) + ": " + why,
                     "/" + to_string(addr));
    };
    if (addr.layer_index >= doc.layers.size()) throw not_found("layer index out of range");
    auto& layer = doc.layers[addr.layer_index];
    if (layer.type != LayerType::shape) throw not_found("not a shape layer");
    if (addr.shape_path.empty()) throw not_found("empty shape path");
    auto* items = &layer.shapes;
    Item* item = nullptr;
    for (std::size_t depth = 0; depth < addr.shape_path.size(); ++depth) {
        const std::size_t i = addr.shape_path[depth];
        if (i >= items->size()) throw not_found("child index out of range");
        item = &(*items)[i];
        if (depth + 1 < addr.shape_path.size()) {
            if (item->kind != ShapeKind::group) throw not_found("descends into a non-group item");
            items = &item->children;
        }
    }
    const ShapeKind expected = addr.slot == PaintSlot::fill ? ShapeKind::fill : ShapeKind::stroke;
    if (item->kind != expected || !item->paint) throw not_found("item is not a " + std::string(to_string(addr.slot)));
    return *item;
}

void collect_addresses(const std::vector<ShapeItem>& items, ColorAddress& prefix,
                       std::vector<ColorAddress>& out) {
    for (std::size_t i = 0; i < items.size(); ++i) {
        const auto& item = items[i];
        prefix.shape_path.push_back(i);
        if (item.paint) {
            prefix.slot = item.paint->slot;
            out.push_back(prefix);
        }
        collect_addresses(item.children, prefix, out);
        prefix.shape_path.pop_back();
    }
}

// Solves the CSS-style timing curve through (0,0), (x1,y1), (x2,y2), (1,1).
double bezier_ease(double x1, double y1, double x2, double y2, double progress) {
    auto curve = [](double p1, double p2, double t) {
        const double u = 1.0 - t;
        return 3.0 * u * u * t * p1 + 3.0 * u * t * t * p2 + t * t * t;
    };
    double lo = 0.0;
    double hi = 1.0;
    double t = progress;
    for (int iter = 0; iter < 64; ++iter) {
        const double x = curve(x1, x2, t);
        if (std::abs(x - progress) < 1e-12) break;
        if (x < progress) lo = t;
        else hi = t;
        t = (lo + hi) / 2.0;
    }
    return curve(y1, y2, t);
}

std::optional<double> first_number(const Json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) return std::nullopt;
    if (it->is_number()) return it->get<double>();
    if (it->is_array() && !it->empty() && (*it)[0].is_number()) return (*it)[0].get<double>();
    return std::nullopt;
}

double eased_progress(const Json& kf, double progress) {
    auto o = kf.find("o");
    auto i = kf.find("i");
    if (o == kf.end() || i == kf.end() || !o->is_object() || !i->is_object()) return progress;
    auto x1 = first_number(*o, "x");
    auto y1 = first_number(*o, "y");
    auto x2 = first_number(*i, "x");
    auto y2 = first_number(*i, "y");
    if (!x1 || !y1 || !x2 || !y2) return progress;
    return bezier_ease(std::clamp(*x1, 0.0, 1.0), *y1, std::clamp(*x2, 0.0, 1.0), *y2, progress);
}

bool is_hold(const Json& kf) {
    auto h = kf.find("h");
    return h != kf.end() && h->is_number() && h->get<double>() == 1.0;
}

Rgba lerp(const Rgba& a, const Rgba& b, double t) {
    return clamped({a.r + (b.r - a.r) * t, a.g + (b.g - a.g) * t, a.b + (b.b - a.b) * t,
                    a.a + (b.a - a.a) * t});
}

}  // namespace

Affine Transform2D::matrix_at(double frame) const {
    const Vec2 a = evaluate_held(anchor, frame);
    const Vec2 p = evaluate_held(position, frame);
    const Vec2 s = evaluate_held(scale, frame);
    const double r = evaluate_held(rotation, frame);
    return Affine::translation(p) * Affine::rotation(r) * Affine::scaling({s.x / 100.0, s.y / 100.0}) *
           Affine::translation({-a.x, -a.y});
}

std::string_view to_string(PaintSlot slot) {
    return slot == PaintSlot::fill ? "fill" : "stroke";
}

std::string to_string(const ColorAddress& addr) {
    std::string out = "layers/" + std::to_string(addr.layer_index);
    for (std::size_t depth = 0; depth < addr.shape_path.size(); ++depth) {
        out += depth == 0 ? "/shapes/" : "/it/";
        out += std::to_string(addr.shape_path[depth]);
    }
    return out;
}

Json to_json(const ColorAddress& addr) {
    return Json{{"layer", addr.layer_index},
                {"shape_path", addr.shape_path},
                {"slot", std::string(to_string(addr.slot))},
                {"pointer", "/" + to_string(addr)}};
}

ColorAddress address_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("layer") || !j.contains("shape_path")) {
        throw Error(ErrorCode::InvalidArgument, "address needs \"layer\" and \"shape_path\"");
    }
    ColorAddress addr;
    try {
        addr.layer_index = j.at("layer").get<std::size_t>();
        addr.shape_path = j.at("shape_path").get<std::vector<std::size_t>>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("bad address: ") + e.what());
    }
    const std::string slot = j.value("slot", std::string("fill"));
    if (slot != "fill" && slot != "stroke") {
        throw Error(ErrorCode::InvalidArgument, "slot must be \"fill\" or \"stroke\"");
    }
    addr.slot = slot == "fill" ? PaintSlot::fill : PaintSlot::stroke;
    return addr;
}

LottieDocument parse_document(std::string_view text) {
    Json root;
    try {
        root = Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::MalformedJson, std::string("not valid JSON: ") + e.what());
    }
    return parse_document_json(root);
}

LottieDocument parse_document_json(const Json& root) {
    if (!root.is_object()) {
        throw Error(ErrorCode::UnsupportedDocument, "document root must be an object", "");
    }
    LottieDocument doc;
    doc.raw = root;
    for (const char* key : {"fr", "ip", "op"}) {
        auto it = root.find(key);
        if (it == root.end() || !it->is_number()) {
            throw Error(ErrorCode::UnsupportedDocument,
                        std::string("missing numeric \"") + key + "\"", std::string("/") + key);
        }
    }
    doc.frame_rate = root["fr"].get<double>();
    doc.in_point = root["ip"].get<double>();
    doc.out_point = root["op"].get<double>();
    if (!(doc.frame_rate > 0.0)) {
        throw Error(ErrorCode::UnsupportedDocument, "frame rate must be positive", "/fr");
    }
    if (!(doc.in_point < doc.out_point)) {
        throw Error(ErrorCode::UnsupportedDocument, "in point must precede out point", "/op");
    }
    if (auto w = root.find("w"); w != root.end()) doc.width = number_at(*w, "/w");
    if (auto h = root.find("h"); h != root.end()) doc.height = number_at(*h, "/h");
    if (auto layers = root.find("layers"); layers != root.end()) {
        if (!layers->is_array()) structural("/layers", "expected a layer list");
        doc.layers.reserve(layers->size());
        for (std::size_t i = 0; i < layers->size(); ++i) {
            doc.layers.push_back(parse_layer((*layers)[i], "/layers/" + std::to_string(i), doc));
        }
    }
    normalize_colors(doc);
    return doc;
}

Json to_json(const LottieDocument& doc) {
    Json out = doc.raw;
    if (out.contains("layers") || !doc.layers.empty()) {
        Json layers = Json::array();
        for (const auto& layer : doc.layers) layers.push_back(layer_json(layer));
        out["layers"] = std::move(layers);
    }
    return out;
}

std::string serialize_document(const LottieDocument& doc, int indent) {
    return to_json(doc).dump(indent);
}

const ShapeItem& resolve_item(const LottieDocument& doc, const ColorAddress& addr) {
    return resolve_item_impl<const LottieDocument, const ShapeItem>(doc, addr);
}

const ColorProperty& resolve_address(const LottieDocument& doc, const ColorAddress& addr) {
    return resolve_item(doc, addr).paint->color;
}

ColorProperty& resolve_address(LottieDocument& doc, const ColorAddress& addr) {
    return resolve_item_impl<LottieDocument, ShapeItem>(doc, addr).paint->color;
}

std::vector<ColorAddress> paint_addresses(const LottieDocument& doc) {
    std::vector<ColorAddress> out;
    for (std::size_t li = 0; li < doc.layers.size(); ++li) {
        if (doc.layers[li].type != LayerType::shape) continue;
        ColorAddress prefix;
        prefix.layer_index = li;
        collect_addresses(doc.layers[li].shapes, prefix, out);
    }
    return out;
}

std::vector<Rgba> document_colors(const LottieDocument& doc) {
    std::vector<Rgba> out;
    std::set<Rgba> seen;
    auto add = [&](const Rgba& c) {
        if (seen.insert(c).second) out.push_back(c);
    };
    for (const auto& addr : paint_addresses(doc)) {
        const auto& prop = resolve_address(doc, addr);
        if (!prop.animated) {
            add(prop.value.rgba);
            continue;
        }
        for (const auto& kf : prop.keyframes) {
            if (kf.start) add(kf.start->rgba);
            if (kf.end) add(kf.end->rgba);
        }
    }
    return out;
}

std::optional<ColorValue> keyframe_value(const std::vector<Keyframe<ColorValue>>& keys,
                                         std::size_t i) {
    if (keys[i].start) return keys[i].start;
    if (i > 0 && keys[i - 1].end) return keys[i - 1].end;
    return std::nullopt;
}

Rgba evaluate_color(const ColorProperty& prop, double frame) {
    if (!prop.animated || prop.keyframes.empty()) return prop.value.rgba;
    const auto& keys = prop.keyframes;
    auto value_or_base = [&](std::size_t i) {
        auto v = keyframe_value(keys, i);
        return v ? v->rgba : prop.value.rgba;
    };
    if (frame <= keys.front().frame) return value_or_base(0);
    std::size_t i = 0;
    while (i + 1 < keys.size() && keys[i + 1].frame <= frame) ++i;
    if (i + 1 == keys.size()) {
        // Past the last keyframe the final value holds; legacy files encode it
        // only as the previous keyframe's end value.
        return value_or_base(i);
    }
    const Rgba from = value_or_base(i);
    if (is_hold(keys[i].raw)) return from;
    const Rgba to = keys[i].end ? keys[i].end->rgba : value_or_base(i + 1);
    const double progress = (frame - keys[i].frame) / (keys[i + 1].frame - keys[i].frame);
    if (progress <= 0.0) return from;
    return lerp(from, to, eased_progress(keys[i].raw, progress));
}

}  // namespace mgcolor
