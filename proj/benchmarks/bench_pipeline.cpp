#include <benchmark/benchmark.h>

#include <map>
#include <string>

#include "fixtures.hpp"
#include "mgcolor/element_view.hpp"
#include "mgcolor/recolor.hpp"
#include "mgcolor/scene_palette.hpp"
#include "mgcolor/theme.hpp"

using namespace mgcolor;

namespace {

// Range argument: number of shapes in a 60 s, 30 fps document.
const std::string& document_text(int shapes) {
    static std::map<int, std::string> cache;
    auto it = cache.find(shapes);
    if (it == cache.end()) it = cache.emplace(shapes, testsupport::performance_document(shapes).dump()).first;
    return it->second;
}

PaletteBounds bounds_of(const LottieDocument& doc) { return {doc.in_point, doc.out_point, doc.frame_rate}; }

void BM_Parse(benchmark::State& state) {
    const std::string& text = document_text(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(parse_document(text));
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}

void BM_Extract(benchmark::State& state) {
    const LottieDocument doc = parse_document(document_text(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(extract_occurrences(doc));
}

void BM_Theme(benchmark::State& state) {
    const OccurrenceSet set = extract_occurrences(parse_document(document_text(static_cast<int>(state.range(0)))));
    for (auto _ : state) benchmark::DoNotOptimize(extract_theme(set));
}

void BM_Palette(benchmark::State& state) {
    const LottieDocument doc = parse_document(document_text(static_cast<int>(state.range(0))));
    const OccurrenceSet set = extract_occurrences(doc);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_palette(set, bounds_of(doc), default_step(doc.frame_rate), zoom_to_alpha(50.0)));
    }
}

void BM_ElementList(benchmark::State& state) {
    const LottieDocument doc = parse_document(document_text(static_cast<int>(state.range(0))));
    const OccurrenceSet set = extract_occurrences(doc);
    for (auto _ : state) benchmark::DoNotOptimize(build_element_list(doc, set));
}

void BM_FullPipeline(benchmark::State& state) {
    const std::string& text = document_text(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        const LottieDocument doc = parse_document(text);
        const OccurrenceSet set = extract_occurrences(doc);
        benchmark::DoNotOptimize(extract_theme(set));
        benchmark::DoNotOptimize(build_palette(set, bounds_of(doc), default_step(doc.frame_rate), zoom_to_alpha(50.0)));
    }
}

// Group edit plus palette patch, the work behind one interactive slider step.
void BM_GroupEdit(benchmark::State& state) {
    const LottieDocument doc = parse_document(document_text(static_cast<int>(state.range(0))));
    const OccurrenceSet set = extract_occurrences(doc);
    const ScenePalette palette = build_palette(set, bounds_of(doc), default_step(doc.frame_rate), 1.0);
    const ColorGroup group = group_auto(extract_theme(set).front().color, set, kDefaultSimilarityThreshold);
    for (auto _ : state) {
        const EditOutcome out = apply_group_shift(doc, group, {HslChannel::hue, 10.0});
        benchmark::DoNotOptimize(recolor_blocks(palette, out.mapping));
    }
}

}  // namespace

BENCHMARK(BM_Parse)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Extract)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Theme)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Palette)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ElementList)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FullPipeline)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GroupEdit)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
