#include "mgcolor/theme.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "mgcolor/error.hpp"

namespace mgcolor {

namespace {

double squared_distance(const Lab& x, const Lab& y) {
    const double dl = x.l - y.l;
    const double da = x.a - y.a;
    const double db = x.b - y.b;
    return dl * dl + da * da + db * db;
}

// std::uniform_real_distribution is implementation defined; this is not.
double unit_draw(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t weighted_pick(std::span<const double> mass, std::mt19937_64& rng) {
    const double total = std::accumulate(mass.begin(), mass.end(), 0.0);
    double target = unit_draw(rng) * total;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < mass.size(); ++i) {
        if (mass[i] <= 0.0) continue;
        last_positive = i;
        if (target < mass[i]) return i;
        target -= mass[i];
    }
    return last_positive;
}

std::vector<Lab> seed_plus_plus(std::span<const Lab> points, std::span<const double> weights,
                                std::size_t k, std::mt19937_64& rng) {
    std::vector<Lab> centers;
    centers.reserve(k);
    const bool any_weight = std::any_of(weights.begin(), weights.end(), [](double w) { return w > 0; });
    std::vector<double> mass(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) mass[i] = any_weight ? weights[i] : 1.0;
    centers.push_back(points[weighted_pick(mass, rng)]);

    std::vector<double> nearest(points.size(), std::numeric_limits<double>::infinity());
    while (centers.size() < k) {
        for (std::size_t i = 0; i < points.size(); ++i) {
            nearest[i] = std::min(nearest[i], squared_distance(points[i], centers.back()));
            mass[i] = (any_weight ? weights[i] : 1.0) * nearest[i];
        }
        if (std::all_of(mass.begin(), mass.end(), [](double m) { return m <= 0.0; })) {
            // every weighted point already sits on a center; take any unused point
            for (std::size_t i = 0; i < points.size(); ++i) {
                mass[i] = nearest[i] > 0.0 ? 1.0 : 0.0;
            }
        }
        centers.push_back(points[weighted_pick(mass, rng)]);
    }
    return centers;
}

double assign(std::span<const Lab> points, std::span<const double> weights,
              const std::vector<Lab>& centers, std::vector<std::size_t>& labels) {
    double inertia = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::size_t best = 0;
        double best_d = squared_distance(points[i], centers[0]);
        for (std::size_t c = 1; c < centers.size(); ++c) {
            const double d = squared_distance(points[i], centers[c]);
            if (d < best_d) {
                best_d = d;
                best = c;
            }
        }
        labels[i] = best;
        inertia += weights[i] * best_d;
    }
    return inertia;
}

double inertia_of(std::span<const Lab> points, std::span<const double> weights,
                  const std::vector<Lab>& centers, const std::vector<std::size_t>& labels) {
    double inertia = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        inertia += weights[i] * squared_distance(points[i], centers[labels[i]]);
    }
    return inertia;
}

// Moves centers to the weighted means of their members. A cluster that lost
// all its weight takes over the point with the largest weighted error.
void update(std::span<const Lab> points, std::span<const double> weights,
            std::vector<Lab>& centers, std::vector<std::size_t>& labels) {
    const std::size_t k = centers.size();
    for (int guard = 0; guard <= static_cast<int>(k); ++guard) {
        std::vector<double> mass(k, 0.0);
        std::vector<std::size_t> count(k, 0);
        std::vector<Lab> sum(k);
        for (std::size_t i = 0; i < points.size(); ++i) {
            const std::size_t c = labels[i];
            mass[c] += weights[i];
            ++count[c];
            sum[c].l += weights[i] * points[i].l;
            sum[c].a += weights[i] * points[i].a;
            sum[c].b += weights[i] * points[i].b;
        }
        std::size_t empty = k;
        for (std::size_t c = 0; c < k; ++c) {
            if (mass[c] > 0.0) {
                centers[c] = {sum[c].l / mass[c], sum[c].a / mass[c], sum[c].b / mass[c]};
            } else if (count[c] == 0 && empty == k) {
                empty = c;
            }
        }
        if (empty == k) return;
        std::size_t worst = points.size();
        double worst_cost = -1.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (count[labels[i]] < 2) continue;
            const double cost = weights[i] * squared_distance(points[i], centers[labels[i]]);
            if (cost > worst_cost) {
                worst_cost = cost;
                worst = i;
            }
        }
        if (worst == points.size()) return;
        labels[worst] = empty;
        centers[empty] = points[worst];
    }
}

// Single-point transfers scored with the centroid moves they cause. A Lloyd
// fixed point can still admit such a move; taking it strictly lowers inertia.
bool transfer_pass(std::span<const Lab> points, std::span<const double> weights,
                   std::vector<Lab>& centers, std::vector<std::size_t>& labels) {
    const std::size_t k = centers.size();
    std::vector<double> mass(k, 0.0);
    std::vector<Lab> sum(k);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const std::size_t c = labels[i];
        mass[c] += weights[i];
        sum[c].l += weights[i] * points[i].l;
        sum[c].a += weights[i] * points[i].a;
        sum[c].b += weights[i] * points[i].b;
    }
    auto recenter = [&](std::size_t c) {
        if (mass[c] > 0.0) centers[c] = {sum[c].l / mass[c], sum[c].a / mass[c], sum[c].b / mass[c]};
    };
    for (std::size_t c = 0; c < k; ++c) recenter(c);

    bool moved = false;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double w = weights[i];
        const std::size_t from = labels[i];
        if (w <= 0.0 || mass[from] - w <= 0.0) continue;
        const double saved = mass[from] * w / (mass[from] - w) * squared_distance(points[i], centers[from]);
        std::size_t to = from;
        double cost = saved;
        for (std::size_t c = 0; c < k; ++c) {
            if (c == from) continue;
            const double added = mass[c] > 0.0
                                     ? mass[c] * w / (mass[c] + w) * squared_distance(points[i], centers[c])
                                     : 0.0;
            if (added < cost) {
                cost = added;
                to = c;
            }
        }
        if (to == from || !(cost < saved * (1.0 - 1e-12))) continue;
        mass[from] -= w;
        sum[from].l -= w * points[i].l;
        sum[from].a -= w * points[i].a;
        sum[from].b -= w * points[i].b;
        mass[to] += w;
        sum[to].l += w * points[i].l;
        sum[to].a += w * points[i].a;
        sum[to].b += w * points[i].b;
        labels[i] = to;
        recenter(from);
        recenter(to);
        moved = true;
    }
    return moved;
}

void lloyd_until_stable(std::span<const Lab> points, std::span<const double> weights,
                        std::vector<Lab>& centers, Clustering& run, const ThemeConfig& cfg) {
    for (int iter = 0; iter < std::max(cfg.max_iterations, 1); ++iter) {
        const std::vector<Lab> previous = centers;
        update(points, weights, centers, run.labels);
        run.inertia_trace.push_back(inertia_of(points, weights, centers, run.labels));
        const std::vector<std::size_t> old_labels = run.labels;
        assign(points, weights, centers, run.labels);
        double shift = 0.0;
        for (std::size_t c = 0; c < centers.size(); ++c) {
            shift = std::max(shift, delta_e(previous[c], centers[c]));
        }
        if (run.labels == old_labels && shift < cfg.convergence_epsilon) break;
    }
    update(points, weights, centers, run.labels);
}

Clustering lloyd(std::span<const Lab> points, std::span<const double> weights,
                 std::vector<Lab> centers, const ThemeConfig& cfg) {
    Clustering run;
    run.labels.assign(points.size(), 0);
    assign(points, weights, centers, run.labels);
    lloyd_until_stable(points, weights, centers, run, cfg);
    for (int round = 0; round < std::max(cfg.max_iterations, 1); ++round) {
        if (!transfer_pass(points, weights, centers, run.labels)) break;
        run.inertia_trace.push_back(inertia_of(points, weights, centers, run.labels));
        lloyd_until_stable(points, weights, centers, run, cfg);
    }
    run.centroids = std::move(centers);
    run.inertia = inertia_of(points, weights, run.centroids, run.labels);
    run.inertia_trace.push_back(run.inertia);
    return run;
}

}  // namespace

Clustering weighted_kmeans(std::span<const Lab> points, std::span<const double> weights,
                           const ThemeConfig& cfg) {
    if (cfg.k == 0) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
    if (points.size() < cfg.k) throw Error(ErrorCode::InvalidArgument, "fewer points than clusters");
    std::mt19937_64 rng(cfg.seed);
    Clustering best;
    bool have_best = false;
    for (int r = 0; r < std::max(cfg.restarts, 1); ++r) {
        Clustering run = lloyd(points, weights, seed_plus_plus(points, weights, cfg.k, rng), cfg);
        if (!have_best || run.inertia < best.inertia) {
            best = std::move(run);
            have_best = true;
        }
    }
    return best;
}

ThemeResult extract_theme_detailed(const OccurrenceSet& set, const ThemeConfig& cfg) {
    if (cfg.k == 0) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
    if (set.occurrences.empty() || !(set.total_weight > 0.0)) {
        throw Error(ErrorCode::EmptyDocument, "no weighted colors to extract a theme from");
    }
    std::vector<ColorWeight> weighted;
    for (const auto& cw : color_weights(set)) {
        if (cw.weight > 0.0) weighted.push_back(cw);
    }
    // canonical order makes the result independent of document order
    std::sort(weighted.begin(), weighted.end(),
              [](const ColorWeight& x, const ColorWeight& y) { return x.color < y.color; });

    ThemeResult result;
    std::vector<Lab> points;
    for (const auto& cw : weighted) {
        result.colors.push_back(cw.color);
        result.weights.push_back(cw.weight / set.total_weight);
        points.push_back(rgb_to_lab(cw.color));
    }

    const std::size_t n = points.size();
    if (n <= cfg.k) {
        result.clustering.labels.resize(n);
        std::iota(result.clustering.labels.begin(), result.clustering.labels.end(), 0);
        result.clustering.centroids = points;
    } else {
        result.clustering = weighted_kmeans(points, result.weights, cfg);
    }

    const auto& centroids = result.clustering.centroids;
    for (std::size_t c = 0; c < centroids.size(); ++c) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < n; ++i) {
            if (result.clustering.labels[i] == c) members.push_back(i);
        }
        if (members.empty()) continue;
        auto before = [&](std::size_t x, std::size_t y) {
            if (result.weights[x] != result.weights[y]) return result.weights[x] > result.weights[y];
            const double dx = delta_e(points[x], centroids[c]);
            const double dy = delta_e(points[y], centroids[c]);
            if (dx != dy) return dx < dy;
            const std::string hx = to_hex(result.colors[x]);
            const std::string hy = to_hex(result.colors[y]);
            if (hx != hy) return hx < hy;
            return result.colors[x] < result.colors[y];
        };
        std::sort(members.begin(), members.end(), before);
        ThemeSwatch swatch;
        swatch.color = result.colors[members.front()];
        swatch.color_proportion = result.weights[members.front()];
        for (std::size_t i : members) {
            swatch.proportion += result.weights[i];
            swatch.cluster_members.push_back({result.colors[i], result.weights[i]});
        }
        result.swatches.push_back(std::move(swatch));
    }
    std::sort(result.swatches.begin(), result.swatches.end(),
              [](const ThemeSwatch& x, const ThemeSwatch& y) {
                  if (x.proportion != y.proportion) return x.proportion > y.proportion;
                  return x.color < y.color;
              });
    return result;
}

std::vector<ThemeSwatch> extract_theme(const OccurrenceSet& set, const ThemeConfig& cfg) {
    return extract_theme_detailed(set, cfg).swatches;
}

std::vector<Rgba> similar_colors(const Rgba& theme, std::span<const Rgba> candidates,
                                 double threshold) {
    if (threshold < 0.0 || std::isnan(threshold)) {
        throw Error(ErrorCode::InvalidArgument, "similarity threshold must be non-negative");
    }
    const Lab anchor = rgb_to_lab(theme);
    std::vector<Rgba> out;
    for (const auto& c : candidates) {
        if (c == theme || delta_e(anchor, rgb_to_lab(c)) <= threshold) out.push_back(c);
    }
    return out;
}

}  // namespace mgcolor
