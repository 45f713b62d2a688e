#include "mgcolor/colorspace.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>

namespace mgcolor {

namespace {

// linear sRGB -> XYZ, D65 (IEC 61966-2-1 primaries).
constexpr std::array<std::array<double, 3>, 3> kRgbToXyz{{
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
}};

using Matrix3 = std::array<std::array<double, 3>, 3>;

constexpr Matrix3 inverse(const Matrix3& m) {
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    Matrix3 r{};
    r[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
    r[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
    r[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
    r[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
    r[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
    r[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
    r[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
    r[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
    r[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
    return r;
}

constexpr Matrix3 kXyzToRgb = inverse(kRgbToXyz);

// Reference white is the image of RGB (1,1,1) so that white lands exactly on
// the neutral axis.
struct WhitePoint {
    double x, y, z;
};

constexpr WhitePoint kWhite{
    kRgbToXyz[0][0] + kRgbToXyz[0][1] + kRgbToXyz[0][2],
    kRgbToXyz[1][0] + kRgbToXyz[1][1] + kRgbToXyz[1][2],
    kRgbToXyz[2][0] + kRgbToXyz[2][1] + kRgbToXyz[2][2],
};

constexpr double kEpsilon = 216.0 / 24389.0;
constexpr double kKappa = 24389.0 / 27.0;

double srgb_to_linear(double c) {
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double linear_to_srgb(double c) {
    return c <= 0.0031308 ? c * 12.92 : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
}

double lab_f(double t) {
    return t > kEpsilon ? std::cbrt(t) : (kKappa * t + 16.0) / 116.0;
}

double lab_f_inv(double f) {
    double cube = f * f * f;
    return cube > kEpsilon ? cube : (116.0 * f - 16.0) / kKappa;
}

double clamp01(double v) {
    if (std::isnan(v)) return 0.0;
    return std::clamp(v, 0.0, 1.0);
}

double hue_to_channel(double p, double q, double t) {
    if (t < 0.0) t += 1.0;
    if (t > 1.0) t -= 1.0;
    if (t < 1.0 / 6.0) return p + (q - p) * 6.0 * t;
    if (t < 0.5) return q;
    if (t < 2.0 / 3.0) return p + (q - p) * (2.0 / 3.0 - t) * 6.0;
    return p;
}

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
}

}  // namespace

Rgba clamped(Rgba c) {
    return {clamp01(c.r), clamp01(c.g), clamp01(c.b), clamp01(c.a)};
}

Lab rgb_to_lab(const Rgba& c) {
    const double lin[3] = {srgb_to_linear(c.r), srgb_to_linear(c.g), srgb_to_linear(c.b)};
    double xyz[3];
    for (int i = 0; i < 3; ++i) {
        xyz[i] = kRgbToXyz[i][0] * lin[0] + kRgbToXyz[i][1] * lin[1] + kRgbToXyz[i][2] * lin[2];
    }
    const double fx = lab_f(xyz[0] / kWhite.x);
    const double fy = lab_f(xyz[1] / kWhite.y);
    const double fz = lab_f(xyz[2] / kWhite.z);
    return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

Rgba lab_to_rgb(const Lab& c) {
    const double fy = (c.l + 16.0) / 116.0;
    const double fx = fy + c.a / 500.0;
    const double fz = fy - c.b / 200.0;
    const double xyz[3] = {lab_f_inv(fx) * kWhite.x, lab_f_inv(fy) * kWhite.y,
                           lab_f_inv(fz) * kWhite.z};
    double rgb[3];
    for (int i = 0; i < 3; ++i) {
        const double lin =
            kXyzToRgb[i][0] * xyz[0] + kXyzToRgb[i][1] * xyz[1] + kXyzToRgb[i][2] * xyz[2];
        rgb[i] = clamp01(linear_to_srgb(std::max(lin, 0.0)));
    }
    return {rgb[0], rgb[1], rgb[2], 1.0};
}

Hsl rgb_to_hsl(const Rgba& c) {
    const double hi = std::max({c.r, c.g, c.b});
    const double lo = std::min({c.r, c.g, c.b});
    Hsl out;
    out.l = (hi + lo) / 2.0;
    if (hi == lo) {
        return out;  // achromatic: h and s are 0 by convention
    }
    const double d = hi - lo;
    out.s = out.l > 0.5 ? d / (2.0 - hi - lo) : d / (hi + lo);
    double h;
    if (hi == c.r) {
        h = (c.g - c.b) / d + (c.g < c.b ? 6.0 : 0.0);
    } else if (hi == c.g) {
        h = (c.b - c.r) / d + 2.0;
    } else {
        h = (c.r - c.g) / d + 4.0;
    }
    out.h = wrap_hue(h * 60.0);
    return out;
}

Rgba hsl_to_rgb(const Hsl& c, double alpha) {
    const double s = clamp01(c.s);
    const double l = clamp01(c.l);
    if (s == 0.0) {
        return {l, l, l, alpha};
    }
    const double h = wrap_hue(c.h) / 360.0;
    const double q = l < 0.5 ? l * (1.0 + s) : l + s - l * s;
    const double p = 2.0 * l - q;
    return clamped({hue_to_channel(p, q, h + 1.0 / 3.0), hue_to_channel(p, q, h),
                    hue_to_channel(p, q, h - 1.0 / 3.0), alpha});
}

double wrap_hue(double degrees) {
    double h = std::fmod(degrees, 360.0);
    if (h < 0.0) h += 360.0;
    // fmod of a tiny negative value can round up to exactly 360
    if (h >= 360.0) h = 0.0;
    return h;
}

double delta_e(const Lab& x, const Lab& y) {
    const double dl = x.l - y.l;
    const double da = x.a - y.a;
    const double db = x.b - y.b;
    return std::sqrt(dl * dl + da * da + db * db);
}

double delta_e(const Rgba& x, const Rgba& y) {
    return delta_e(rgb_to_lab(x), rgb_to_lab(y));
}

std::string to_hex(const Rgba& c) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out = "#";
    for (double v : {c.r, c.g, c.b}) {
        const int byte = static_cast<int>(std::lround(clamp01(v) * 255.0));
        out.push_back(kDigits[byte >> 4]);
        out.push_back(kDigits[byte & 0xf]);
    }
    return out;
}

std::optional<Rgba> parse_hex(std::string_view text) {
    if (!text.empty() && text.front() == '#') text.remove_prefix(1);
    if (text.size() != 6) return std::nullopt;
    double channels[3];
    for (int i = 0; i < 3; ++i) {
        const int hi = hex_digit(text[2 * i]);
        const int lo = hex_digit(text[2 * i + 1]);
        if (hi < 0 || lo < 0) return std::nullopt;
        channels[i] = (hi * 16 + lo) / 255.0;
    }
    return Rgba{channels[0], channels[1], channels[2], 1.0};
}

double darkness_key(const Rgba& c) {
    return delta_e(rgb_to_lab(c), Lab{0.0, 0.0, 0.0});
}

}  // namespace mgcolor
