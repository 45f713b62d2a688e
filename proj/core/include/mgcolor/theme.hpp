#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mgcolor/colorspace.hpp"
#include "mgcolor/occurrences.hpp"

namespace mgcolor {

struct ThemeConfig {
    std::size_t k = 5;
    std::uint64_t seed = 42;
    int max_iterations = 100;
    double convergence_epsilon = 1e-6;  // largest centroid move, in DeltaE
    int restarts = 20;                  // k-means++ seedings; the lowest inertia wins
};

struct ThemeMember {
    Rgba color;
    double proportion = 0.0;
};

struct ThemeSwatch {
    Rgba color;                  // an actual document color, never a centroid
    double proportion = 0.0;     // share of the whole cluster
    double color_proportion = 0.0;  // share of `color` alone
    std::vector<ThemeMember> cluster_members;  // by descending proportion
};

struct Clustering {
    std::vector<std::size_t> labels;
    std::vector<Lab> centroids;
    double inertia = 0.0;               // sum of weight * DeltaE^2 to own centroid
    std::vector<double> inertia_trace;  // per Lloyd iteration of the winning run
};

// Weighted Lloyd iterations seeded with weighted k-means++. Points with zero
// weight are allowed but never chosen as seeds. Requires k >= 1 and at least
// k points.
Clustering weighted_kmeans(std::span<const Lab> points, std::span<const double> weights,
                           const ThemeConfig& cfg);

struct ThemeResult {
    std::vector<Rgba> colors;       // clustered colors in canonical order
    std::vector<double> weights;    // their proportions
    Clustering clustering;
    std::vector<ThemeSwatch> swatches;
};

ThemeResult extract_theme_detailed(const OccurrenceSet& set, const ThemeConfig& cfg = {});
std::vector<ThemeSwatch> extract_theme(const OccurrenceSet& set, const ThemeConfig& cfg = {});

// Candidates within `threshold` DeltaE of `theme`, input order kept.
std::vector<Rgba> similar_colors(const Rgba& theme, std::span<const Rgba> candidates,
                                 double threshold);

inline constexpr double kDefaultSimilarityThreshold = 20.0;

}  // namespace mgcolor
