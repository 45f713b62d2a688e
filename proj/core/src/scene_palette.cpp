#include "mgcolor/scene_palette.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mgcolor/error.hpp"

namespace mgcolor {

namespace {

void finish_block(ColorBlock& block, double alpha) {
    std::vector<std::size_t> order(block.occurrences.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return block.occurrences[x] < block.occurrences[y];
    });
    std::vector<ColorAddress> addrs;
    std::vector<double> areas;
    block.merged_area = 0.0;
    for (std::size_t i : order) {
        addrs.push_back(block.occurrences[i]);
        areas.push_back(block.areas[i]);
        block.merged_area += block.areas[i];
    }
    block.occurrences = std::move(addrs);
    block.areas = std::move(areas);
    block.height = alpha * std::sqrt(block.merged_area);
}

void sort_blocks(std::vector<ColorBlock>& blocks) {
    std::sort(blocks.begin(), blocks.end(), [](const ColorBlock& x, const ColorBlock& y) {
        if (x.rank != y.rank) return x.rank < y.rank;
        return to_hex(x.color) < to_hex(y.color);
    });
}

}  // namespace

FrozenOrder compute_sort_order(std::span<const Rgba> colors) {
    struct Keyed {
        Rgba color;
        double key;
        std::string hex;
    };
    std::vector<Keyed> keyed;
    for (const auto& c : colors) keyed.push_back({c, darkness_key(c), to_hex(c)});
    std::sort(keyed.begin(), keyed.end(), [](const Keyed& x, const Keyed& y) {
        if (x.key != y.key) return x.key < y.key;
        if (x.hex != y.hex) return x.hex < y.hex;
        return x.color < y.color;
    });
    FrozenOrder order;
    for (const auto& k : keyed) {
        order.try_emplace(k.color, RankEntry{order.size(), k.key});
    }
    return order;
}

double default_step(double frame_rate) {
    return std::max(1.0, frame_rate / 2.0);
}

double zoom_to_alpha(double zoom_percent, const ZoomRange& range) {
    if (!(zoom_percent >= 0.0 && zoom_percent <= 100.0)) {
        throw Error(ErrorCode::InvalidArgument, "zoom must lie in [0,100]");
    }
    return range.alpha_min + (zoom_percent / 100.0) * (range.alpha_max - range.alpha_min);
}

ScenePalette build_palette(const OccurrenceSet& set, const PaletteBounds& bounds, double step,
                           double alpha, const FrozenOrder* frozen) {
    if (!(step >= 1.0)) throw Error(ErrorCode::InvalidArgument, "column step must be >= 1 frame");
    if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be positive");

    ScenePalette palette;
    palette.alpha = alpha;
    palette.step = step;
    palette.bounds = bounds;

    const std::vector<Rgba> colors = distinct_colors(set);
    if (frozen) {
        palette.sort_order = *frozen;
        std::vector<Rgba> unseen;
        for (const auto& c : colors) {
            if (!palette.sort_order.contains(c)) unseen.push_back(c);
        }
        std::size_t next = 0;
        for (const auto& [color, entry] : palette.sort_order) next = std::max(next, entry.rank + 1);
        for (auto [color, entry] : compute_sort_order(unseen)) {
            entry.rank += next;
            palette.sort_order.emplace(color, entry);
        }
    } else {
        palette.sort_order = compute_sort_order(colors);
    }

    for (std::size_t i = 0;; ++i) {
        const double frame = bounds.in_point + static_cast<double>(i) * step;
        if (!(frame < bounds.out_point)) break;
        PaletteColumn column;
        column.frame = frame;
        std::map<Rgba, std::size_t> slot;
        for (const auto& occ : set.occurrences) {
            if (!occ.interval.contains(frame)) continue;
            auto [it, inserted] = slot.try_emplace(occ.color, column.blocks.size());
            if (inserted) {
                const RankEntry& entry = palette.sort_order.at(occ.color);
                ColorBlock block;
                block.color = occ.color;
                block.rank = entry.rank;
                block.sort_key = entry.key;
                column.blocks.push_back(std::move(block));
            }
            ColorBlock& block = column.blocks[it->second];
            block.occurrences.push_back(occ.address);
            block.areas.push_back(occ.area);
        }
        for (auto& block : column.blocks) finish_block(block, alpha);
        sort_blocks(column.blocks);
        palette.columns.push_back(std::move(column));
    }
    return palette;
}

ScenePalette rezoom(ScenePalette palette, double zoom_percent, const ZoomRange& range) {
    palette.alpha = zoom_to_alpha(zoom_percent, range);
    for (auto& column : palette.columns) {
        for (auto& block : column.blocks) block.height = palette.alpha * std::sqrt(block.merged_area);
    }
    return palette;
}

ScenePalette recolor_blocks(ScenePalette palette, const ColorMapping& mapping) {
    std::map<Rgba, Rgba> lookup;
    for (const auto& change : mapping) {
        if (!palette.sort_order.contains(change.from)) {
            throw Error(ErrorCode::UnknownColor, "palette has no color " + to_hex(change.from));
        }
        lookup[change.from] = change.to;
    }
    auto target = [&](const Rgba& c) {
        auto it = lookup.find(c);
        return it == lookup.end() ? c : it->second;
    };

    FrozenOrder rekeyed;
    for (const auto& [color, entry] : palette.sort_order) {
        auto [it, inserted] = rekeyed.try_emplace(target(color), entry);
        if (!inserted && entry.rank < it->second.rank) it->second = entry;
    }
    palette.sort_order = std::move(rekeyed);

    for (auto& column : palette.columns) {
        std::vector<ColorBlock> merged;
        std::map<Rgba, std::size_t> slot;
        for (auto& block : column.blocks) {
            block.color = target(block.color);
            auto [it, inserted] = slot.try_emplace(block.color, merged.size());
            if (inserted) {
                merged.push_back(std::move(block));
                continue;
            }
            ColorBlock& keep = merged[it->second];
            keep.occurrences.insert(keep.occurrences.end(), block.occurrences.begin(),
                                    block.occurrences.end());
            keep.areas.insert(keep.areas.end(), block.areas.begin(), block.areas.end());
        }
        for (auto& block : merged) {
            const RankEntry& entry = palette.sort_order.at(block.color);
            block.rank = entry.rank;
            block.sort_key = entry.key;
            finish_block(block, palette.alpha);
        }
        sort_blocks(merged);
        column.blocks = std::move(merged);
    }
    return palette;
}

const PaletteColumn& column_at_frame(const ScenePalette& palette, double frame) {
    if (!(frame >= palette.bounds.in_point && frame < palette.bounds.out_point) ||
        palette.columns.empty()) {
        throw Error(ErrorCode::OutOfBounds, "frame " + std::to_string(frame) + " outside the document");
    }
    auto index = static_cast<std::size_t>(std::floor((frame - palette.bounds.in_point) / palette.step));
    index = std::min(index, palette.columns.size() - 1);
    return palette.columns[index];
}

std::string palette_to_svg(const ScenePalette& palette, double column_width) {
    double tallest = 0.0;
    for (const auto& column : palette.columns) {
        double h = 0.0;
        for (const auto& block : column.blocks) h += block.height;
        tallest = std::max(tallest, h);
    }
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
        << column_width * static_cast<double>(palette.columns.size()) << "\" height=\"" << tallest
        << "\">\n";
    for (std::size_t i = 0; i < palette.columns.size(); ++i) {
        const auto& column = palette.columns[i];
        double y = 0.0;
        for (const auto& block : column.blocks) {
            svg << "  <rect x=\"" << column_width * static_cast<double>(i) << "\" y=\"" << y
                << "\" width=\"" << column_width << "\" height=\"" << block.height << "\" fill=\""
                << to_hex(block.color) << "\" data-frame=\"" << column.frame << "\" data-rank=\""
                << block.rank << "\"/>\n";
            y += block.height;
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace mgcolor
