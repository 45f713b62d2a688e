#include "mgcolor/element_view.hpp"

#include <algorithm>
#include <map>

namespace mgcolor {

namespace {

using BubbleIndex = std::map<ColorAddress, std::vector<ColorBubble>>;

void fill_entry(ElementEntry& entry, const std::vector<ShapeItem>& items, ColorAddress& addr,
                const BubbleIndex& bubbles) {
    std::size_t group_ordinal = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const ShapeItem& item = items[i];
        addr.shape_path.push_back(i);
        if (item.paint) {
            addr.slot = item.paint->slot;
            if (auto it = bubbles.find(addr); it != bubbles.end()) {
                entry.colors.insert(entry.colors.end(), it->second.begin(), it->second.end());
            }
        } else if (item.kind == ShapeKind::group) {
            ++group_ordinal;
            ElementEntry child;
            child.display_name =
                item.name.empty() ? "Group " + std::to_string(group_ordinal) : item.name;
            child.element_id = entry.element_id + "/" + std::to_string(i);
            fill_entry(child, item.children, addr, bubbles);
            entry.children.push_back(std::move(child));
        }
        addr.shape_path.pop_back();
    }
    std::stable_sort(entry.colors.begin(), entry.colors.end(),
                     [](const ColorBubble& x, const ColorBubble& y) { return x.area > y.area; });
}

bool entry_has(const ElementEntry& entry, const std::set<Rgba>& colors) {
    for (const auto& bubble : entry.colors) {
        if (colors.contains(bubble.color)) return true;
    }
    return std::any_of(entry.children.begin(), entry.children.end(),
                       [&](const ElementEntry& child) { return entry_has(child, colors); });
}

}  // namespace

std::vector<ElementEntry> build_element_list(const LottieDocument& doc, const OccurrenceSet& set) {
    // one bubble per distinct (paint, color) pair
    BubbleIndex bubbles;
    for (const auto& occ : set.occurrences) {
        auto& list = bubbles[occ.address];
        const bool seen = std::any_of(list.begin(), list.end(),
                                      [&](const ColorBubble& b) { return b.color == occ.color; });
        if (!seen) list.push_back({occ.color, occ.address, occ.area});
    }

    std::vector<ElementEntry> entries;
    for (std::size_t li = 0; li < doc.layers.size(); ++li) {
        const Layer& layer = doc.layers[li];
        if (layer.type != LayerType::shape) continue;
        ElementEntry entry;
        entry.element_id = element_id(layer, li);
        entry.display_name = display_name(layer, li);
        ColorAddress addr;
        addr.layer_index = li;
        fill_entry(entry, layer.shapes, addr, bubbles);
        entries.push_back(std::move(entry));
    }
    return entries;
}

std::vector<std::string> elements_with_color(const std::vector<ElementEntry>& entries,
                                             const std::set<Rgba>& colors) {
    std::vector<std::string> ids;
    if (colors.empty()) return ids;
    for (const auto& entry : entries) {
        if (entry_has(entry, colors)) ids.push_back(entry.element_id);
    }
    return ids;
}

}  // namespace mgcolor
