#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "mgcolor/occurrences.hpp"

namespace mgcolor {

enum class HslChannel { hue, saturation, lightness };

// One channel per shift. Hue deltas are degrees; saturation and lightness
// deltas are fractions in [-1,1].
struct HslShift {
    HslChannel channel = HslChannel::hue;
    double delta = 0.0;
};

struct ColorGroup {
    std::vector<Rgba> members;  // distinct document colors
    bool automatic = false;
    Rgba theme;                 // automatic groups only
    double threshold = 0.0;     // automatic groups only
};

// Document colors within `threshold` DeltaE of `theme`.
ColorGroup group_auto(const Rgba& theme, const OccurrenceSet& set, double threshold);
ColorGroup group_manual(std::span<const Rgba> colors, const OccurrenceSet& set);
// (members + add) - remove. Colors in `add` must appear in `set`.
ColorGroup group_edit_members(ColorGroup group, std::span<const Rgba> add,
                              std::span<const Rgba> remove, const OccurrenceSet& set);

// Hue wraps modulo 360; saturation and lightness clamp to [0,1]. A shift that
// leaves the HSL triple unchanged returns `c` bit for bit, and hue shifts leave
// achromatic colors alone.
Rgba shift_color(const Rgba& c, const HslShift& shift);

struct PriorPaint {
    ColorAddress address;
    ColorProperty property;
};

struct EditOutcome {
    LottieDocument document;
    ColorMapping mapping;                // old -> new, for patching palettes
    std::vector<ColorAddress> changed;   // paints whose color property changed
    std::vector<PriorPaint> prior;       // what undo needs
};

EditOutcome apply_set_rgb(const LottieDocument& doc, const Rgba& from, const Rgba& to);
// RGB edits are for single colors only; a group with more than one member is
// refused with RgbOnGroup.
EditOutcome apply_group_set_rgb(const LottieDocument& doc, const ColorGroup& group, const Rgba& to);
EditOutcome apply_group_shift(const LottieDocument& doc, const ColorGroup& group,
                              const HslShift& shift);

inline constexpr double kDefaultRamp = 6.0;

// Keyframes the paint at `address` so it blends linearly from its current
// color at frame-ramp to `color` at `frame` and back by frame+ramp.
EditOutcome apply_frame_isolated(const LottieDocument& doc, const ColorAddress& address,
                                 double frame, const Rgba& color, double ramp = kDefaultRamp);

LottieDocument restore(LottieDocument doc, const std::vector<PriorPaint>& prior);

struct SetRgbCommand {
    Rgba from;
    Rgba to;
};

struct GroupShiftCommand {
    ColorGroup group;
    HslShift shift;
};

struct FrameIsolatedCommand {
    ColorAddress address;
    double frame = 0.0;
    Rgba color;
    double ramp = kDefaultRamp;
};

using EditCommand = std::variant<SetRgbCommand, GroupShiftCommand, FrameIsolatedCommand>;

EditOutcome apply_command(const LottieDocument& doc, const EditCommand& command);

// First document color (any paint value) whose hex equals `hex`; UnknownColor
// when there is none. Hex input is 8-bit, so this is how user input names an
// exact document color.
Rgba document_color_by_hex(const LottieDocument& doc, std::string_view hex);

// set_rgb from a user-picked target: `from`'s alpha is kept, and a target with
// `from`'s own hex leaves the color bit-identical.
SetRgbCommand make_set_rgb(const Rgba& from, const Rgba& to);

// Exact (channel arrays, not hex) so a replayed log reproduces the document.
Json to_json(const EditCommand& command);
EditCommand command_from_json(const Json& j);

class EditLog {
public:
    // Applies `command`, records it and clears any pending redo.
    EditOutcome apply(const LottieDocument& doc, EditCommand command);
    // Throws EmptyLog when nothing has been applied.
    LottieDocument undo(const LottieDocument& doc);
    // Only valid directly after undo(); throws NothingToRedo otherwise.
    EditOutcome redo(const LottieDocument& doc);

    std::size_t size() const { return applied_.size(); }
    bool empty() const { return applied_.empty(); }
    bool can_redo() const { return redo_.has_value(); }
    const EditCommand& command(std::size_t i) const { return applied_[i].command; }

private:
    struct Entry {
        EditCommand command;
        std::vector<PriorPaint> prior;
    };
    std::vector<Entry> applied_;
    std::optional<EditCommand> redo_;
};

}  // namespace mgcolor
