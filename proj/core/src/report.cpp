#include "mgcolor/report.hpp"

namespace mgcolor {

Json occurrences_json(const OccurrenceSet& set) {
    std::map<Rgba, double> weight;
    for (const auto& cw : color_weights(set)) weight[cw.color] = cw.weight;
    Json records = Json::array();
    for (const auto& occ : set.occurrences) {
        records.push_back({
            {"address", to_json(occ.address)},
            {"element", occ.element_id},
            {"color", to_hex(occ.color)},
            {"alpha", occ.color.a},
            {"opacity", occ.opacity},
            {"area", occ.area},
            {"interval", Json::array({occ.interval.start, occ.interval.end})},
            {"animated", occ.animated},
            {"proportion", set.total_weight > 0.0 ? weight[occ.color] / set.total_weight : 0.0},
        });
    }
    Json warnings = Json::array();
    for (const auto& w : set.warnings) warnings.push_back({{"pointer", w.pointer}, {"message", w.message}});
    return Json{{"total_weight", set.total_weight},
                {"occurrences", std::move(records)},
                {"warnings", std::move(warnings)}};
}

Json theme_json(const std::vector<ThemeSwatch>& swatches) {
    Json out = Json::array();
    for (const auto& s : swatches) {
        Json members = Json::array();
        for (const auto& m : s.cluster_members) {
            members.push_back({{"color", to_hex(m.color)}, {"proportion", m.proportion}});
        }
        out.push_back({{"color", to_hex(s.color)},
                       {"proportion", s.proportion},
                       {"color_proportion", s.color_proportion},
                       {"member_count", s.cluster_members.size()},
                       {"members", std::move(members)}});
    }
    return out;
}

Json palette_json(const ScenePalette& palette) {
    Json columns = Json::array();
    for (const auto& column : palette.columns) {
        Json blocks = Json::array();
        for (const auto& block : column.blocks) {
            Json addrs = Json::array();
            for (const auto& a : block.occurrences) addrs.push_back("/" + to_string(a));
            blocks.push_back({{"color", to_hex(block.color)},
                              {"height", block.height},
                              {"merged_area", block.merged_area},
                              {"sort_key", block.sort_key},
                              {"rank", block.rank},
                              {"occurrences", std::move(addrs)}});
        }
        columns.push_back({{"frame", column.frame}, {"blocks", std::move(blocks)}});
    }
    return Json{{"alpha", palette.alpha},
                {"step", palette.step},
                {"in_point", palette.bounds.in_point},
                {"out_point", palette.bounds.out_point},
                {"columns", std::move(columns)}};
}

namespace {

Json entry_json(const ElementEntry& entry) {
    Json colors = Json::array();
    for (const auto& b : entry.colors) {
        colors.push_back({{"color", to_hex(b.color)}, {"address", "/" + to_string(b.address)}, {"area", b.area}});
    }
    Json children = Json::array();
    for (const auto& child : entry.children) children.push_back(entry_json(child));
    return Json{{"id", entry.element_id},
                {"name", entry.display_name},
                {"colors", std::move(colors)},
                {"children", std::move(children)}};
}

}  // namespace

Json elements_json(const std::vector<ElementEntry>& entries) {
    Json out = Json::array();
    for (const auto& e : entries) out.push_back(entry_json(e));
    return out;
}

Json group_json(const ColorGroup& group) {
    Json members = Json::array();
    for (const auto& m : group.members) members.push_back(to_hex(m));
    Json out{{"members", std::move(members)}, {"origin", group.automatic ? "auto" : "manual"}};
    if (group.automatic) {
        out["theme"] = to_hex(group.theme);
        out["threshold"] = group.threshold;
    }
    return out;
}

Json mapping_json(const ColorMapping& mapping) {
    Json out = Json::array();
    for (const auto& c : mapping) out.push_back({{"from", to_hex(c.from)}, {"to", to_hex(c.to)}});
    return out;
}

Json addresses_json(const std::vector<ColorAddress>& addresses) {
    Json out = Json::array();
    for (const auto& a : addresses) out.push_back(to_json(a));
    return out;
}

}  // namespace mgcolor
