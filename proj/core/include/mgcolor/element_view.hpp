#pragma once

#include <set>
#include <string>
#include <vector>

#include "mgcolor/occurrences.hpp"

namespace mgcolor {

struct ColorBubble {
    Rgba color;
    ColorAddress address;
    double area = 0.0;
};

// A shape layer, or a group inside one. Colors are the paints owned directly
// by this entry; paints inside sub-groups live in `children`.
struct ElementEntry {
    std::string element_id;
    std::string display_name;
    std::vector<ColorBubble> colors;  // descending area, document order on ties
    std::vector<ElementEntry> children;
};

std::vector<ElementEntry> build_element_list(const LottieDocument& doc, const OccurrenceSet& set);

// Ids of top-level entries whose subtree holds one of `colors`, document order.
std::vector<std::string> elements_with_color(const std::vector<ElementEntry>& entries,
                                             const std::set<Rgba>& colors);

}  // namespace mgcolor
