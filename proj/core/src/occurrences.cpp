#include "mgcolor/occurrences.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mgcolor/error.hpp"

namespace mgcolor {

namespace {

struct Walker {
    const LottieDocument& doc;
    std::size_t layer_index;
    FrameInterval visible;
    std::string element;
    OccurrenceSet& out;

    // `items` is one group's item list; `to_world` maps that group's local
    // space into composition space.
    void walk(const std::vector<ShapeItem>& items, const Affine& to_world, ColorAddress& addr) {
        Affine local = to_world;
        for (const auto& item : items) {
            if (item.kind == ShapeKind::transform && item.transform) {
                local = to_world * item.transform->matrix_at(visible.start);
            }
        }
        for (std::size_t i = 0; i < items.size(); ++i) {
            const ShapeItem& item = items[i];
            addr.shape_path.push_back(i);
            if (item.kind == ShapeKind::group && !item.hidden) {
                walk(item.children, local, addr);
            } else if (item.paint && !item.hidden) {
                addr.slot = item.paint->slot;
                emit(item, painted_area(items, i, local, addr), addr);
            } else if (item.kind == ShapeKind::unsupported) {
                const std::string ty = item.raw.value("ty", std::string("?"));
                if (ty == "gf" || ty == "gs") {
                    out.warnings.push_back({"/" + to_string(addr), "gradient paint skipped"});
                }
            }
            addr.shape_path.pop_back();
        }
    }

    // A paint covers every geometry item listed before it in the same group.
    double painted_area(const std::vector<ShapeItem>& items, std::size_t paint_index,
                        const Affine& transform, ColorAddress geom_addr) {
        double area = 0.0;
        for (std::size_t j = 0; j < paint_index; ++j) {
            const ShapeItem& geom = items[j];
            if (!geom.path || geom.hidden) continue;
            if (geom.path->vertices.empty()) {
                geom_addr.shape_path.back() = j;
                out.warnings.push_back({"/" + to_string(geom_addr), "empty path contributes no area"});
                continue;
            }
            area += bounding_box_area(*geom.path, transform);
        }
        return area;
    }

    void emit(const ShapeItem& item, double area, const ColorAddress& addr) {
        const Paint& paint = *item.paint;
        const ColorProperty& prop = paint.color;
        auto push = [&](const Rgba& color, FrameInterval iv, bool animated) {
            iv.start = std::max(iv.start, visible.start);
            iv.end = std::min(iv.end, visible.end);
            if (!(iv.start < iv.end)) return;
            // consecutive segments holding the same color read as one block
            if (!out.occurrences.empty()) {
                ColorOccurrence& last = out.occurrences.back();
                if (last.address == addr && last.color == color && last.interval.end == iv.start) {
                    last.interval.end = iv.end;
                    return;
                }
            }
            ColorOccurrence occ;
            occ.address = addr;
            occ.color = color;
            occ.opacity = std::clamp(evaluate_held(paint.opacity, iv.start) / 100.0, 0.0, 1.0);
            occ.area = area;
            occ.interval = iv;
            occ.element_id = element;
            occ.animated = animated;
            out.occurrences.push_back(std::move(occ));
        };

        const std::size_t before = out.occurrences.size();
        if (!prop.animated || prop.keyframes.empty()) {
            push(prop.value.rgba, visible, false);
        } else {
            const auto& keys = prop.keyframes;
            // Colors are attributed to the keyframe that starts a segment; the
            // blend inside the segment is not a color of its own.
            const auto first = keyframe_value(keys, 0);
            if (first) push(first->rgba, {visible.start, keys.front().frame}, true);
            for (std::size_t k = 0; k < keys.size(); ++k) {
                const auto value = keyframe_value(keys, k);
                if (!value) continue;
                const double end = k + 1 < keys.size() ? keys[k + 1].frame : visible.end;
                push(value->rgba, {keys[k].frame, end}, true);
            }
        }
        if (out.occurrences.size() == before) {
            out.warnings.push_back({"/" + to_string(addr), "paint is never visible"});
        }
    }
};

}  // namespace

std::string display_name(const Layer& layer, std::size_t position) {
    if (!layer.name.empty()) return layer.name;
    return "Layer " + std::to_string(layer.index ? *layer.index : static_cast<long long>(position));
}

std::string element_id(const Layer& layer, std::size_t position) {
    return display_name(layer, position) + "#" +
           std::to_string(layer.index ? *layer.index : static_cast<long long>(position));
}

Affine layer_matrix(const LottieDocument& doc, std::size_t layer_index, double frame) {
    Affine m = doc.layers[layer_index].transform.matrix_at(frame);
    std::set<std::size_t> visited{layer_index};
    std::optional<long long> parent = doc.layers[layer_index].parent;
    while (parent) {
        auto it = std::find_if(doc.layers.begin(), doc.layers.end(),
                               [&](const Layer& l) { return l.index == parent; });
        if (it == doc.layers.end()) break;
        const auto pos = static_cast<std::size_t>(it - doc.layers.begin());
        if (!visited.insert(pos).second) break;  // cyclic parenting
        m = it->transform.matrix_at(frame) * m;
        parent = it->parent;
    }
    return m;
}

OccurrenceSet extract_occurrences(const LottieDocument& doc) {
    OccurrenceSet set;
    for (std::size_t li = 0; li < doc.layers.size(); ++li) {
        const Layer& layer = doc.layers[li];
        if (layer.type != LayerType::shape) continue;
        if (layer.raw.value("hd", false)) continue;
        FrameInterval visible{std::max(layer.in_point, doc.in_point),
                              std::min(layer.out_point, doc.out_point)};
        Walker walker{doc, li, visible, element_id(layer, li), set};
        ColorAddress addr;
        addr.layer_index = li;
        if (!(visible.start < visible.end)) {
            walker.visible = {doc.in_point, doc.in_point};
        }
        walker.walk(layer.shapes, layer_matrix(doc, li, walker.visible.start), addr);
    }
    for (const auto& occ : set.occurrences) set.total_weight += occ.weight();
    return set;
}

std::vector<ColorWeight> color_weights(const OccurrenceSet& set) {
    std::vector<ColorWeight> out;
    std::map<Rgba, std::size_t> index;
    for (const auto& occ : set.occurrences) {
        auto [it, inserted] = index.try_emplace(occ.color, out.size());
        if (inserted) out.push_back({occ.color, 0.0});
        out[it->second].weight += occ.weight();
    }
    return out;
}

std::vector<Rgba> distinct_colors(const OccurrenceSet& set) {
    std::vector<Rgba> out;
    for (const auto& cw : color_weights(set)) out.push_back(cw.color);
    return out;
}

double proportion(const OccurrenceSet& set, const Rgba& color) {
    if (!(set.total_weight > 0.0)) {
        throw Error(ErrorCode::ZeroWeightDocument, "document has no weighted color area");
    }
    double weight = 0.0;
    for (const auto& occ : set.occurrences) {
        if (occ.color == color) weight += occ.weight();
    }
    return weight / set.total_weight;
}

}  // namespace mgcolor
