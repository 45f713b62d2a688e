#include "mgcolor/recolor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "mgcolor/error.hpp"
#include "mgcolor/theme.hpp"

namespace mgcolor {

namespace {

bool contains(std::span<const Rgba> colors, const Rgba& c) {
    return std::find(colors.begin(), colors.end(), c) != colors.end();
}

void require_in_document(const LottieDocument& doc, std::span<const Rgba> colors) {
    const std::vector<Rgba> present = document_colors(doc);
    for (const auto& c : colors) {
        if (!contains(present, c)) {
            throw Error(ErrorCode::UnknownColor, "document has no color " + to_hex(c));
        }
    }
}

// Rewrites every paint value found in `lookup`, static values and keyframes
// alike, and records the untouched property of each paint it changes.
EditOutcome rewrite_colors(const LottieDocument& doc, const std::map<Rgba, Rgba>& lookup) {
    EditOutcome out;
    out.document = doc;
    for (const auto& [from, to] : lookup) {
        if (!(from == to)) out.mapping.push_back({from, to});
    }
    if (out.mapping.empty()) return out;

    auto remap = [&](ColorValue& cv) {
        auto it = lookup.find(cv.rgba);
        if (it == lookup.end() || it->second == cv.rgba) return false;
        cv.rgba = it->second;
        return true;
    };
    for (const auto& addr : paint_addresses(doc)) {
        ColorProperty& prop = resolve_address(out.document, addr);
        ColorProperty before = prop;
        bool changed = false;
        if (!prop.animated) {
            changed = remap(prop.value);
        } else {
            // the static slot mirrors the first keyframe and is not written
            remap(prop.value);
            for (auto& kf : prop.keyframes) {
                if (kf.start) changed |= remap(*kf.start);
                if (kf.end) changed |= remap(*kf.end);
            }
        }
        if (changed) {
            out.changed.push_back(addr);
            out.prior.push_back({addr, std::move(before)});
        } else {
            prop = std::move(before);
        }
    }
    return out;
}

Json linear_easing() {
    return Json{{"o", {{"x", Json::array({0})}, {"y", Json::array({0})}}},
                {"i", {{"x", Json::array({1})}, {"y", Json::array({1})}}}};
}

Json rgba_json(const Rgba& c) {
    return Json::array({c.r, c.g, c.b, c.a});
}

Rgba rgba_from_json(const Json& j) {
    if (j.is_string()) {
        auto c = parse_hex(j.get<std::string>());
        if (!c) throw Error(ErrorCode::InvalidArgument, "bad hex color " + j.get<std::string>());
        return *c;
    }
    if (!j.is_array() || j.size() < 3 || j.size() > 4) {
        throw Error(ErrorCode::InvalidArgument, "color must be hex or [r,g,b(,a)]");
    }
    for (const auto& v : j) {
        if (!v.is_number()) throw Error(ErrorCode::InvalidArgument, "color channels must be numbers");
    }
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
            j.size() == 4 ? j[3].get<double>() : 1.0};
}

std::string_view channel_name(HslChannel c) {
    switch (c) {
        case HslChannel::hue: return "hue";
        case HslChannel::saturation: return "saturation";
        case HslChannel::lightness: return "lightness";
    }
    return "hue";
}

HslChannel channel_from(const std::string& name) {
    if (name == "hue" || name == "h") return HslChannel::hue;
    if (name == "saturation" || name == "sat" || name == "s") return HslChannel::saturation;
    if (name == "lightness" || name == "light" || name == "l") return HslChannel::lightness;
    throw Error(ErrorCode::InvalidArgument, "unknown HSL channel " + name);
}

}  // namespace

ColorGroup group_auto(const Rgba& theme, const OccurrenceSet& set, double threshold) {
    const std::vector<Rgba> colors = distinct_colors(set);
    ColorGroup group;
    group.members = similar_colors(theme, colors, threshold);
    group.automatic = true;
    group.theme = theme;
    group.threshold = threshold;
    if (group.members.empty()) {
        throw Error(ErrorCode::EmptyGroup,
                    "no document color within DeltaE " + std::to_string(threshold) + " of " + to_hex(theme));
    }
    return group;
}

ColorGroup group_manual(std::span<const Rgba> colors, const OccurrenceSet& set) {
    return group_edit_members(ColorGroup{}, colors, {}, set);
}

ColorGroup group_edit_members(ColorGroup group, std::span<const Rgba> add,
                              std::span<const Rgba> remove, const OccurrenceSet& set) {
    const std::vector<Rgba> present = distinct_colors(set);
    for (const auto& c : add) {
        if (!contains(present, c)) {
            throw Error(ErrorCode::UnknownColor, "document has no color " + to_hex(c));
        }
        if (!contains(group.members, c)) group.members.push_back(c);
    }
    std::erase_if(group.members, [&](const Rgba& c) { return contains(remove, c); });
    if (group.members.empty()) throw Error(ErrorCode::EmptyGroup, "group would be empty");
    return group;
}

Rgba shift_color(const Rgba& c, const HslShift& shift) {
    const Hsl before = rgb_to_hsl(c);
    Hsl after = before;
    switch (shift.channel) {
        case HslChannel::hue: {
            if (before.s == 0.0) return c;
            const double delta = wrap_hue(shift.delta);
            if (delta == 0.0) return c;
            after.h = wrap_hue(before.h + delta);
            break;
        }
        case HslChannel::saturation:
            after.s = std::clamp(before.s + shift.delta, 0.0, 1.0);
            break;
        case HslChannel::lightness:
            after.l = std::clamp(before.l + shift.delta, 0.0, 1.0);
            break;
    }
    if (after.h == before.h && after.s == before.s && after.l == before.l) return c;
    return hsl_to_rgb(after, c.a);
}

EditOutcome apply_set_rgb(const LottieDocument& doc, const Rgba& from, const Rgba& to) {
    require_in_document(doc, std::span<const Rgba>(&from, 1));
    return rewrite_colors(doc, {{from, clamped(to)}});
}

EditOutcome apply_group_set_rgb(const LottieDocument& doc, const ColorGroup& group, const Rgba& to) {
    if (group.members.empty()) throw Error(ErrorCode::EmptyGroup, "group is empty");
    if (group.members.size() > 1) {
        throw Error(ErrorCode::RgbOnGroup, "RGB edits apply to a single color; use an HSL shift for groups");
    }
    return apply_set_rgb(doc, group.members.front(), to);
}

EditOutcome apply_group_shift(const LottieDocument& doc, const ColorGroup& group,
                              const HslShift& shift) {
    if (group.members.empty()) throw Error(ErrorCode::EmptyGroup, "group is empty");
    if (std::isnan(shift.delta)) throw Error(ErrorCode::InvalidArgument, "shift delta is NaN");
    require_in_document(doc, group.members);
    std::map<Rgba, Rgba> lookup;
    for (const auto& m : group.members) lookup[m] = shift_color(m, shift);
    return rewrite_colors(doc, lookup);
}

EditOutcome apply_frame_isolated(const LottieDocument& doc, const ColorAddress& address,
                                 double frame, const Rgba& color, double ramp) {
    if (!(ramp > 0.0)) throw Error(ErrorCode::InvalidArgument, "ramp must be positive");
    const ColorProperty& original = resolve_address(doc, address);
    const Layer& layer = doc.layers[address.layer_index];
    const double first = std::max(layer.in_point, doc.in_point);
    const double last = std::min(layer.out_point, doc.out_point);
    if (!(frame >= first && frame < last)) {
        throw Error(ErrorCode::FrameOutOfRange, "frame " + std::to_string(frame) +
                                                    " outside the layer's visible frames");
    }

    const double lo = std::max(frame - ramp, first);
    const double hi = std::min(frame + ramp, last);
    const ColorEncoding encoding = original.animated && !original.keyframes.empty() &&
                                           original.keyframes.front().start
                                       ? original.keyframes.front().start->encoding
                                       : original.value.encoding;
    const Rgba before = evaluate_color(original, lo);
    const Rgba after = evaluate_color(original, hi);

    ColorProperty prop = original;
    std::vector<Keyframe<ColorValue>> keys;
    const Keyframe<ColorValue>* active_at_hi = nullptr;
    if (original.animated) {
        for (const auto& kf : original.keyframes) {
            if (kf.frame <= hi) active_at_hi = &kf;
            if (kf.frame < lo) keys.push_back(kf);
        }
        // a legacy end value would still point at the old next keyframe
        if (!keys.empty() && keys.back().end) keys.back().end = ColorValue{before, encoding};
    }
    auto make = [&](double t, const Rgba& c, Json raw) {
        Keyframe<ColorValue> kf;
        kf.frame = t;
        kf.start = ColorValue{c, encoding};
        kf.raw = std::move(raw);
        kf.raw["t"] = t;
        return kf;
    };
    if (lo < frame) keys.push_back(make(lo, before, linear_easing()));
    keys.push_back(make(frame, clamped(color), linear_easing()));
    if (hi > frame) {
        Json raw = Json::object();
        if (active_at_hi) {
            for (const char* key : {"o", "i", "h"}) {
                if (active_at_hi->raw.contains(key)) raw[key] = active_at_hi->raw[key];
            }
        }
        auto tail = make(hi, after, raw.empty() ? linear_easing() : raw);
        if (active_at_hi && active_at_hi->end) tail.end = active_at_hi->end;
        keys.push_back(std::move(tail));
    }
    if (original.animated) {
        for (const auto& kf : original.keyframes) {
            if (kf.frame > hi) keys.push_back(kf);
        }
    }
    prop.animated = true;
    prop.keyframes = std::move(keys);
    prop.value = *prop.keyframes.front().start;

    EditOutcome out;
    out.document = doc;
    resolve_address(out.document, address) = std::move(prop);
    out.changed.push_back(address);
    out.prior.push_back({address, original});
    return out;
}

LottieDocument restore(LottieDocument doc, const std::vector<PriorPaint>& prior) {
    for (auto it = prior.rbegin(); it != prior.rend(); ++it) {
        resolve_address(doc, it->address) = it->property;
    }
    return doc;
}

EditOutcome apply_command(const LottieDocument& doc, const EditCommand& command) {
    return std::visit(
        [&](const auto& cmd) -> EditOutcome {
            using T = std::decay_t<decltype(cmd)>;
            if constexpr (std::is_same_v<T, SetRgbCommand>) {
                return apply_set_rgb(doc, cmd.from, cmd.to);
            } else if constexpr (std::is_same_v<T, GroupShiftCommand>) {
                return apply_group_shift(doc, cmd.group, cmd.shift);
            } else {
                return apply_frame_isolated(doc, cmd.address, cmd.frame, cmd.color, cmd.ramp);
            }
        },
        command);
}

Rgba document_color_by_hex(const LottieDocument& doc, std::string_view hex) {
    const auto parsed = parse_hex(hex);
    if (!parsed) throw Error(ErrorCode::InvalidArgument, "bad hex color " + std::string(hex));
    const std::string wanted = to_hex(*parsed);
    for (const auto& c : document_colors(doc)) {
        if (to_hex(c) == wanted) return c;
    }
    throw Error(ErrorCode::UnknownColor, "document has no color " + wanted);
}

SetRgbCommand make_set_rgb(const Rgba& from, const Rgba& to) {
    Rgba target = clamped(to);
    target.a = from.a;
    if (to_hex(target) == to_hex(from)) target = from;
    return SetRgbCommand{from, target};
}

Json to_json(const EditCommand& command) {
    return std::visit(
        [](const auto& cmd) -> Json {
            using T = std::decay_t<decltype(cmd)>;
            if constexpr (std::is_same_v<T, SetRgbCommand>) {
                return Json{{"kind", "set_rgb"}, {"from", rgba_json(cmd.from)}, {"to", rgba_json(cmd.to)}};
            } else if constexpr (std::is_same_v<T, GroupShiftCommand>) {
                Json members = Json::array();
                for (const auto& m : cmd.group.members) members.push_back(rgba_json(m));
                return Json{{"kind", "group_shift"},
                            {"members", members},
                            {"channel", std::string(channel_name(cmd.shift.channel))},
                            {"delta", cmd.shift.delta}};
            } else {
                return Json{{"kind", "frame_isolated"},
                            {"address", to_json(cmd.address)},
                            {"frame", cmd.frame},
                            {"color", rgba_json(cmd.color)},
                            {"ramp", cmd.ramp}};
            }
        },
        command);
}

EditCommand command_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        throw Error(ErrorCode::InvalidArgument, "edit command needs a \"kind\"");
    }
    const std::string kind = j["kind"].get<std::string>();
    auto need = [&](const char* key) -> const Json& {
        if (!j.contains(key)) {
            throw Error(ErrorCode::InvalidArgument, kind + " command needs \"" + key + "\"");
        }
        return j[key];
    };
    auto number = [&](const char* key) {
        const Json& v = need(key);
        if (!v.is_number()) throw Error(ErrorCode::InvalidArgument, std::string(key) + " must be a number");
        return v.get<double>();
    };
    if (kind == "set_rgb") {
        return SetRgbCommand{rgba_from_json(need("from")), rgba_from_json(need("to"))};
    }
    if (kind == "group_shift") {
        GroupShiftCommand cmd;
        const Json& members = need("members");
        if (!members.is_array()) throw Error(ErrorCode::InvalidArgument, "members must be a list");
        for (const auto& m : members) cmd.group.members.push_back(rgba_from_json(m));
        const Json& channel = need("channel");
        if (!channel.is_string()) throw Error(ErrorCode::InvalidArgument, "channel must be a string");
        cmd.shift = {channel_from(channel.get<std::string>()), number("delta")};
        return cmd;
    }
    if (kind == "frame_isolated") {
        FrameIsolatedCommand cmd;
        cmd.address = address_from_json(need("address"));
        cmd.frame = number("frame");
        cmd.color = rgba_from_json(need("color"));
        cmd.ramp = j.contains("ramp") ? number("ramp") : kDefaultRamp;
        return cmd;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown edit kind " + kind);
}

EditOutcome EditLog::apply(const LottieDocument& doc, EditCommand command) {
    EditOutcome out = apply_command(doc, command);
    applied_.push_back({std::move(command), out.prior});
    redo_.reset();
    return out;
}

LottieDocument EditLog::undo(const LottieDocument& doc) {
    if (applied_.empty()) throw Error(ErrorCode::EmptyLog, "nothing to undo");
    Entry entry = std::move(applied_.back());
    applied_.pop_back();
    redo_ = std::move(entry.command);
    return restore(doc, entry.prior);
}

EditOutcome EditLog::redo(const LottieDocument& doc) {
    if (!redo_) throw Error(ErrorCode::NothingToRedo, "redo is only available right after undo");
    EditCommand command = std::move(*redo_);
    redo_.reset();
    EditOutcome out = apply_command(doc, command);
    applied_.push_back({std::move(command), out.prior});
    return out;
}

}  // namespace mgcolor
