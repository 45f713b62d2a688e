#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace mgcolor {

// sRGB color with straight alpha, every channel in [0,1].
struct Rgba {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;
    double a = 1.0;

    friend bool operator==(const Rgba&, const Rgba&) = default;
    // Lexicographic by channel; only used to key ordered containers.
    friend auto operator<=>(const Rgba&, const Rgba&) = default;
};

struct Hsl {
    double h = 0.0;  // degrees, [0,360)
    double s = 0.0;
    double l = 0.0;
};

// CIE L*a*b* under D65.
struct Lab {
    double l = 0.0;
    double a = 0.0;
    double b = 0.0;
};

Rgba clamped(Rgba c);

Lab rgb_to_lab(const Rgba& c);
// Alpha of the result is 1; out-of-gamut channels are clamped.
Rgba lab_to_rgb(const Lab& c);

Hsl rgb_to_hsl(const Rgba& c);
Rgba hsl_to_rgb(const Hsl& c, double alpha = 1.0);

// Wraps any real angle into [0,360).
double wrap_hue(double degrees);

// CIE76: Euclidean distance in L*a*b*.
double delta_e(const Lab& x, const Lab& y);
double delta_e(const Rgba& x, const Rgba& y);

// "#rrggbb", lowercase; alpha is not encoded.
std::string to_hex(const Rgba& c);
// Accepts "#RRGGBB" or "RRGGBB" in any case. Alpha of the result is 1.
std::optional<Rgba> parse_hex(std::string_view text);

// Distance from L*a*b* (0,0,0); the scene palette ranks colors by it.
double darkness_key(const Rgba& c);

}  // namespace mgcolor

#include <vector>

namespace mgcolor {

// One entry of an old -> new recolor mapping. Mappings are applied
// simultaneously, never chained.
struct ColorChange {
    Rgba from;
    Rgba to;

    friend bool operator==(const ColorChange&, const ColorChange&) = default;
};

using ColorMapping = std::vector<ColorChange>;

}  // namespace mgcolor
