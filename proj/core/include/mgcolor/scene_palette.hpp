#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "mgcolor/occurrences.hpp"

namespace mgcolor {

struct ColorBlock {
    Rgba color;
    double height = 0.0;                    // alpha * sqrt(merged_area)
    std::vector<ColorAddress> occurrences;  // contributing paints, document order
    std::vector<double> areas;              // area of each contributing paint
    double sort_key = 0.0;                  // DeltaE from black at load time
    double merged_area = 0.0;
    std::size_t rank = 0;                   // position in the frozen order
};

struct PaletteColumn {
    double frame = 0.0;
    std::vector<ColorBlock> blocks;  // ascending rank
};

struct RankEntry {
    std::size_t rank = 0;
    double key = 0.0;
};

// Color -> rank captured once when a document is loaded. Edits re-key
// entries to the new colors but never re-rank them.
using FrozenOrder = std::map<Rgba, RankEntry>;

struct PaletteBounds {
    double in_point = 0.0;
    double out_point = 0.0;
    double frame_rate = 30.0;
};

struct ZoomRange {
    double alpha_min = 0.2;
    double alpha_max = 4.0;
};

struct ScenePalette {
    std::vector<PaletteColumn> columns;
    double alpha = 1.0;
    double step = 1.0;
    PaletteBounds bounds;
    FrozenOrder sort_order;
};

// Ranks by DeltaE from L*a*b* (0,0,0) ascending, ties by lowercase hex.
FrozenOrder compute_sort_order(std::span<const Rgba> colors);

// Two columns per second, never less than one frame apart.
double default_step(double frame_rate);

double zoom_to_alpha(double zoom_percent, const ZoomRange& range = {});

// With `frozen`, block ranks come from it (colors it lacks are ranked after
// it); otherwise the order is computed from the set's distinct colors.
ScenePalette build_palette(const OccurrenceSet& set, const PaletteBounds& bounds, double step,
                           double alpha, const FrozenOrder* frozen = nullptr);

ScenePalette rezoom(ScenePalette palette, double zoom_percent, const ZoomRange& range = {});

// Replaces block colors without re-ranking. Blocks that end up with the same
// color in one column merge under the better rank.
ScenePalette recolor_blocks(ScenePalette palette, const ColorMapping& mapping);

// Column sampled at the largest grid frame <= frame.
const PaletteColumn& column_at_frame(const ScenePalette& palette, double frame);

// Static mosaic: one rect per block, columns left to right, stacked by rank.
std::string palette_to_svg(const ScenePalette& palette, double column_width = 12.0);

}  // namespace mgcolor
