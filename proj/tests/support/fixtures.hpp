#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gen.hpp"
#include "mgcolor/lottie_doc.hpp"

namespace testsupport {

using mgcolor::Json;
using mgcolor::Rgba;

std::string fixture_path(std::string_view name);
std::string read_fixture(std::string_view name);
// Every *.json in the fixture directory, sorted.
std::vector<std::string> corpus_names();

// Builders for the bodymovin subset, independent of the library's writer.
Json color_json(const Rgba& c);
Json static_value(Json value);
Json layer_ks(double x = 0.0, double y = 0.0, double scale = 100.0);
Json group_tr(double x = 0.0, double y = 0.0, double scale = 100.0);
Json rect_item(double cx, double cy, double w, double h);
Json box_path(double x0, double y0, double x1, double y1);
Json fill_item(const Rgba& c, double opacity = 100.0);
Json stroke_item(const Rgba& c);

struct Key {
    double frame;
    Rgba color;
    bool hold = true;
};
Json keyed_paint(const std::vector<Key>& keys, bool stroke = false);
Json group_item(std::string name, std::vector<Json> items);
Json shape_layer(std::string name, int ind, double ip, double op, std::vector<Json> shapes,
                 Json ks = layer_ks());
Json document(double fr, double ip, double op, std::vector<Json> layers, double w = 512,
              double h = 512);

struct RandomDocOptions {
    int max_layers = 4;
    int palette_size = 6;         // colors drawn from a small pool so values repeat
    double keyframe_chance = 0.3;
    bool linear_keys = false;     // allow linearly interpolated keyframes
};
Json random_document(Gen& gen, const RandomDocOptions& options = {});

// Four 60-frame scenes; each scene is dominated by one color family whose
// base is a target theme color rotated in hue. A small neutral caption runs
// through all scenes.
struct FourSceneFixture {
    Json document;
    std::vector<Rgba> targets;        // final theme colors
    std::vector<Rgba> rotated_bases;  // current dominant color of each family
    std::vector<double> rotations;    // hue offset applied to each family
};
FourSceneFixture four_scene_fixture();
inline constexpr double kFourSceneThreshold = 8.0;

// `shapes` paints spread over 20 layers, `seconds` long at `fps`; every
// fourth paint is keyframed.
Json performance_document(int shapes = 200, double seconds = 60.0, double fps = 30.0);

}  // namespace testsupport
