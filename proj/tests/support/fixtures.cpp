#include "fixtures.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mgcolor/colorspace.hpp"

#ifndef MGCOLOR_FIXTURE_DIR
#error "MGCOLOR_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace testsupport {

namespace fs = std::filesystem;

std::string fixture_path(std::string_view name) {
    return (fs::path(MGCOLOR_FIXTURE_DIR) / std::string(name)).string();
}

std::string read_fixture(std::string_view name) {
    std::ifstream in(fixture_path(name), std::ios::binary);
    if (!in) throw std::runtime_error("missing fixture " + std::string(name));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> corpus_names() {
    std::vector<std::string> out;
    for (const auto& entry : fs::directory_iterator(MGCOLOR_FIXTURE_DIR)) {
        if (entry.path().extension() == ".json") out.push_back(entry.path().filename().string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

Json color_json(const Rgba& c) { return Json::array({c.r, c.g, c.b, c.a}); }

Json static_value(Json value) { return Json{{"a", 0}, {"k", std::move(value)}}; }

Json layer_ks(double x, double y, double scale) {
    return Json{{"o", static_value(100)},
                {"r", static_value(0)},
                {"p", static_value(Json::array({x, y, 0}))},
                {"a", static_value(Json::array({0, 0, 0}))},
                {"s", static_value(Json::array({scale, scale, 100}))}};
}

Json group_tr(double x, double y, double scale) {
    return Json{{"ty", "tr"},
                {"p", static_value(Json::array({x, y}))},
                {"a", static_value(Json::array({0, 0}))},
                {"s", static_value(Json::array({scale, scale}))},
                {"r", static_value(0)},
                {"o", static_value(100)}};
}

Json rect_item(double cx, double cy, double w, double h) {
    return Json{{"ty", "rc"},
                {"d", 1},
                {"p", static_value(Json::array({cx, cy}))},
                {"s", static_value(Json::array({w, h}))},
                {"r", static_value(0)}};
}

Json box_path(double x0, double y0, double x1, double y1) {
    Json zero = Json::array({Json::array({0, 0}), Json::array({0, 0}), Json::array({0, 0}),
                             Json::array({0, 0})});
    Json shape{{"i", zero},
               {"o", zero},
               {"v", Json::array({Json::array({x0, y0}), Json::array({x1, y0}),
                                  Json::array({x1, y1}), Json::array({x0, y1})})},
               {"c", true}};
    return Json{{"ty", "sh"}, {"ks", static_value(std::move(shape))}};
}

Json fill_item(const Rgba& c, double opacity) {
    return Json{{"ty", "fl"}, {"c", static_value(color_json(c))}, {"o", static_value(opacity)}, {"r", 1}};
}

Json stroke_item(const Rgba& c) {
    return Json{{"ty", "st"},
                {"c", static_value(color_json(c))},
                {"o", static_value(100)},
                {"w", static_value(2)},
                {"lc", 2},
                {"lj", 2}};
}

Json keyed_paint(const std::vector<Key>& keys, bool stroke) {
    Json k = Json::array();
    for (const auto& key : keys) {
        Json kf{{"t", key.frame}, {"s", color_json(key.color)}};
        if (key.hold) {
            kf["h"] = 1;
        } else {
            kf["i"] = Json{{"x", Json::array({1})}, {"y", Json::array({1})}};
            kf["o"] = Json{{"x", Json::array({0})}, {"y", Json::array({0})}};
        }
        k.push_back(std::move(kf));
    }
    Json item{{"ty", stroke ? "st" : "fl"}, {"c", Json{{"a", 1}, {"k", std::move(k)}}}, {"o", static_value(100)}};
    if (stroke) item["w"] = static_value(2);
    return item;
}

Json group_item(std::string name, std::vector<Json> items) {
    Json it = Json::array();
    for (auto& i : items) it.push_back(std::move(i));
    it.push_back(group_tr());
    return Json{{"ty", "gr"}, {"nm", std::move(name)}, {"it", std::move(it)}};
}

Json shape_layer(std::string name, int ind, double ip, double op, std::vector<Json> shapes, Json ks) {
    Json s = Json::array();
    for (auto& i : shapes) s.push_back(std::move(i));
    return Json{{"ddd", 0}, {"ind", ind}, {"ty", 4}, {"nm", std::move(name)}, {"sr", 1},
                {"ks", std::move(ks)}, {"ao", 0}, {"ip", ip}, {"op", op}, {"st", 0},
                {"bm", 0}, {"shapes", std::move(s)}};
}

Json document(double fr, double ip, double op, std::vector<Json> layers, double w, double h) {
    Json l = Json::array();
    for (auto& layer : layers) l.push_back(std::move(layer));
    return Json{{"v", "5.7.4"}, {"fr", fr}, {"ip", ip}, {"op", op}, {"w", w}, {"h", h},
                {"nm", "generated"}, {"ddd", 0}, {"assets", Json::array()}, {"layers", std::move(l)}};
}

namespace {

Json random_paint(Gen& gen, const std::vector<Rgba>& pool, double ip, double op,
                  const RandomDocOptions& options) {
    const bool stroke = gen.chance(0.3);
    if (!gen.chance(options.keyframe_chance) || op - ip < 4) {
        return stroke ? stroke_item(gen.pick(pool)) : fill_item(gen.pick(pool), gen.chance(0.8) ? 100 : 50);
    }
    std::vector<Key> keys;
    const int count = gen.between(2, 4);
    double frame = ip + std::floor(gen.uniform(0, (op - ip) / 3));
    for (int i = 0; i < count && frame < op; ++i) {
        keys.push_back({frame, gen.pick(pool), !options.linear_keys || gen.chance(0.5)});
        frame += std::max(1.0, std::floor(gen.uniform(1, (op - ip) / 2)));
    }
    return keyed_paint(keys, stroke);
}

Json random_geometry(Gen& gen) {
    const double x = gen.uniform(-50, 150), y = gen.uniform(-50, 150);
    if (gen.chance(0.5)) return rect_item(x, y, gen.uniform(1, 60), gen.uniform(1, 60));
    return box_path(x, y, x + gen.uniform(1, 40), y + gen.uniform(1, 40));
}

std::vector<Json> random_items(Gen& gen, const std::vector<Rgba>& pool, double ip, double op,
                               const RandomDocOptions& options, int depth) {
    std::vector<Json> items;
    const int count = gen.between(1, 3);
    for (int i = 0; i < count; ++i) {
        if (depth < 2 && gen.chance(0.35)) {
            items.push_back(group_item("g" + std::to_string(depth) + "_" + std::to_string(i),
                                       random_items(gen, pool, ip, op, options, depth + 1)));
        } else {
            items.push_back(random_geometry(gen));
            if (gen.chance(0.3)) items.push_back(random_geometry(gen));
            items.push_back(random_paint(gen, pool, ip, op, options));
        }
    }
    return items;
}

}  // namespace

Json random_document(Gen& gen, const RandomDocOptions& options) {
    std::vector<Rgba> pool;
    for (int i = 0; i < options.palette_size; ++i) pool.push_back(gen.byte_color());
    const double op = static_cast<double>(gen.between(30, 120));
    std::vector<Json> layers;
    const int n = gen.between(1, options.max_layers);
    for (int l = 0; l < n; ++l) {
        const double ip = std::floor(gen.uniform(0, op / 2));
        const double lop = std::min(op + 10, ip + std::floor(gen.uniform(5, op)));
        layers.push_back(shape_layer("L" + std::to_string(l), l + 1, ip, lop,
                                     random_items(gen, pool, ip, lop, options, 0),
                                     layer_ks(gen.uniform(0, 100), gen.uniform(0, 100),
                                              gen.chance(0.5) ? 100 : gen.uniform(50, 200))));
    }
    return document(30, 0, op, std::move(layers), 200, 200);
}

FourSceneFixture four_scene_fixture() {
    using mgcolor::Hsl;
    FourSceneFixture fx;
    for (const char* hex : {"#023E73", "#085CA6", "#8C4265", "#D9B97E"}) {
        fx.targets.push_back(*mgcolor::parse_hex(hex));
    }
    fx.rotations = {150.0, 100.0, 200.0, -90.0};
    // base, lighter, desaturated-darker
    const double dl[3] = {0.0, 0.02, -0.015};
    const double ds[3] = {0.0, 0.0, -0.05};
    const double scale[4] = {1.0, 0.9, 0.8, 0.7};

    std::vector<Json> layers;
    int ind = 1;
    for (int scene = 0; scene < 4; ++scene) {
        const Hsl t = mgcolor::rgb_to_hsl(fx.targets[scene]);
        std::vector<Rgba> family;
        for (int v = 0; v < 3; ++v) {
            const Hsl h{mgcolor::wrap_hue(t.h + fx.rotations[scene]), std::clamp(t.s + ds[v], 0.0, 1.0),
                        std::clamp(t.l + dl[v], 0.0, 1.0)};
            family.push_back(mgcolor::hsl_to_rgb(h));
        }
        fx.rotated_bases.push_back(family[0]);
        const double ip = 60.0 * scene, op = ip + 60.0;
        const double k = std::sqrt(scale[scene]);
        layers.push_back(shape_layer("Scene " + std::to_string(scene + 1) + " backdrop", ind++, ip, op,
                                     {rect_item(200, 150, 120 * k, 80 * k), fill_item(family[0])}));
        std::vector<Json> props{
            group_item("Prop A", {rect_item(60, 60, 40 * k, 40 * k), fill_item(family[1])}),
            group_item("Prop B", {rect_item(320, 60, 30 * k, 30 * k),
                                  keyed_paint({{ip, family[2]}, {ip + 30, family[1]}, {ip + 45, family[2]}})}),
        };
        layers.push_back(shape_layer("Scene " + std::to_string(scene + 1) + " props", ind++, ip, op,
                                     std::move(props)));
    }
    layers.push_back(shape_layer("Caption", ind++, 0, 240,
                                 {rect_item(200, 280, 100, 4), fill_item({0.93, 0.93, 0.93, 1.0})}));
    fx.document = document(30, 0, 240, std::move(layers), 400, 300);
    return fx;
}

Json performance_document(int shapes, double seconds, double fps) {
    Gen gen(2024);
    std::vector<Rgba> pool;
    for (int i = 0; i < 150; ++i) pool.push_back(gen.byte_color());
    const double op = seconds * fps;
    const int layer_count = 20;
    const int per_layer = (shapes + layer_count - 1) / layer_count;
    std::vector<Json> layers;
    int made = 0;
    for (int l = 0; l < layer_count && made < shapes; ++l) {
        std::vector<Json> groups;
        for (int g = 0; g < per_layer && made < shapes; ++g, ++made) {
            Json paint;
            if (made % 4 == 0) {
                std::vector<Key> keys;
                for (double f = 0; f < op; f += 150) keys.push_back({f, gen.pick(pool), true});
                paint = keyed_paint(keys, made % 8 == 0);
            } else {
                paint = fill_item(gen.pick(pool));
            }
            groups.push_back(group_item("shape " + std::to_string(made),
                                        {rect_item(gen.uniform(0, 1920), gen.uniform(0, 1080),
                                                   gen.uniform(10, 300), gen.uniform(10, 300)),
                                         std::move(paint)}));
        }
        const double ip = l < 10 ? 0.0 : std::floor(gen.uniform(0, op / 2));
        layers.push_back(shape_layer("layer " + std::to_string(l), l + 1, ip, op, std::move(groups)));
    }
    return document(fps, 0, op, std::move(layers), 1920, 1080);
}

}  // namespace testsupport
