#pragma once

#include <string>
#include <vector>

#include "mgcolor/lottie_doc.hpp"

namespace mgcolor {

// Half-open frame interval [start, end).
struct FrameInterval {
    double start = 0.0;
    double end = 0.0;

    double duration() const { return end - start; }
    bool contains(double frame) const { return start <= frame && frame < end; }

    friend bool operator==(const FrameInterval&, const FrameInterval&) = default;
};

// One use of one color by one paint over one stretch of time.
struct ColorOccurrence {
    ColorAddress address;
    Rgba color;
    double opacity = 1.0;  // paint opacity at interval start, [0,1]
    double area = 0.0;     // bounding-box area in composition pixels
    FrameInterval interval;
    std::string element_id;
    bool animated = false;

    double weight() const { return area * interval.duration(); }
};

struct ExtractionWarning {
    std::string pointer;
    std::string message;
};

struct OccurrenceSet {
    std::vector<ColorOccurrence> occurrences;
    double total_weight = 0.0;
    std::vector<ExtractionWarning> warnings;
};

struct ColorWeight {
    Rgba color;
    double weight = 0.0;
};

// "{name}#{ind}", or "Layer {position}" pieces when the layer is unnamed.
std::string element_id(const Layer& layer, std::size_t position);
std::string display_name(const Layer& layer, std::size_t position);

// World transform of a layer at `frame`, parent chain included.
Affine layer_matrix(const LottieDocument& doc, std::size_t layer_index, double frame);

OccurrenceSet extract_occurrences(const LottieDocument& doc);

// Weight share of one exact RGBA value. Throws ZeroWeightDocument when the set
// carries no weight at all.
double proportion(const OccurrenceSet& set, const Rgba& color);

// Distinct colors with their summed weights, in first-occurrence order.
std::vector<ColorWeight> color_weights(const OccurrenceSet& set);

// Distinct colors in first-occurrence order.
std::vector<Rgba> distinct_colors(const OccurrenceSet& set);

}  // namespace mgcolor
