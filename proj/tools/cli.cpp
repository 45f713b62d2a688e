#include "cli.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "mgcolor/element_view.hpp"
#include "mgcolor/error.hpp"
#include "mgcolor/http_service.hpp"
#include "mgcolor/recolor.hpp"
#include "mgcolor/report.hpp"
#include "mgcolor/scene_palette.hpp"
#include "mgcolor/session.hpp"
#include "mgcolor/theme.hpp"

namespace mgcolor::cli {

namespace {

namespace fs = std::filesystem;

// Failure outside the library's error taxonomy (usage, file system).
struct CliFailure {
    std::string code;
    std::string message;
};

struct Options {
    std::string input;
    std::string output;
    std::size_t k = 5;
    std::uint64_t seed = 42;
    double threshold = kDefaultSimilarityThreshold;
    std::optional<double> step;
    double zoom = 50.0;
    std::string format = "json";

    std::string match;
    std::optional<double> hue;
    std::optional<double> sat;
    std::optional<double> light;
    std::string from;
    std::string to;

    std::string bind = "127.0.0.1";
    int port = 8080;
    double ttl = 7200.0;
    std::string persist;
    std::string ui_dir;
};

const CLI::Validator kHex(
    [](std::string& value) -> std::string {
        return parse_hex(value) ? std::string() : "not a #RRGGBB color: " + value;
    },
    "HEX");

void emit_error(std::ostream& err, std::string_view code, std::string_view message,
                std::string_view path = {}) {
    Json record{{"error", code}, {"message", message}};
    if (!path.empty()) record["path"] = path;
    err << record.dump() << '\n';
}

std::string read_input(const std::string& name, std::istream& in) {
    std::ostringstream ss;
    if (name == "-") {
        ss << in.rdbuf();
        return ss.str();
    }
    std::ifstream file(name, std::ios::binary);
    if (!file) throw CliFailure{"IoError", "cannot read " + name};
    ss << file.rdbuf();
    return ss.str();
}

// Writes through a sibling temp file so a failed run never leaves a partial
// output behind.
void write_output(const std::string& name, const std::string& data, std::ostream& out) {
    if (name.empty() || name == "-") {
        out << data;
        out.flush();
        return;
    }
    const fs::path target(name);
    std::random_device rd;
    fs::path tmp = target;
    tmp += ".tmp" + std::to_string(rd());
    {
        std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
        if (!file) throw CliFailure{"IoError", "cannot write " + name};
        file << data;
        if (!file.flush()) {
            std::error_code ignored;
            fs::remove(tmp, ignored);
            throw CliFailure{"IoError", "cannot write " + name};
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw CliFailure{"IoError", "cannot write " + name};
    }
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

std::string analyze(const Options& o, std::istream& in) {
    const LottieDocument doc = parse_document(read_input(o.input, in));
    return json_text(occurrences_json(extract_occurrences(doc)));
}

std::string theme(const Options& o, std::istream& in) {
    const LottieDocument doc = parse_document(read_input(o.input, in));
    ThemeConfig cfg;
    cfg.k = o.k;
    cfg.seed = o.seed;
    return json_text(theme_json(extract_theme(extract_occurrences(doc), cfg)));
}

std::string palette(const Options& o, std::istream& in) {
    const LottieDocument doc = parse_document(read_input(o.input, in));
    const double step = o.step ? *o.step : default_step(doc.frame_rate);
    const ScenePalette p = build_palette(extract_occurrences(doc),
                                         {doc.in_point, doc.out_point, doc.frame_rate}, step,
                                         zoom_to_alpha(o.zoom));
    return o.format == "svg" ? palette_to_svg(p) : json_text(palette_json(p));
}

std::string elements(const Options& o, std::istream& in) {
    const LottieDocument doc = parse_document(read_input(o.input, in));
    return json_text(elements_json(build_element_list(doc, extract_occurrences(doc))));
}

std::string recolor(const Options& o, std::istream& in) {
    const LottieDocument doc = parse_document(read_input(o.input, in));
    EditOutcome outcome;
    if (!o.from.empty()) {
        const Rgba from = document_color_by_hex(doc, o.from);
        outcome = apply_command(doc, make_set_rgb(from, *parse_hex(o.to)));
    } else {
        HslShift shift;
        if (o.hue) shift = {HslChannel::hue, *o.hue};
        if (o.sat) shift = {HslChannel::saturation, *o.sat};
        if (o.light) shift = {HslChannel::lightness, *o.light};
        const ColorGroup group = group_auto(*parse_hex(o.match), extract_occurrences(doc), o.threshold);
        outcome = apply_command(doc, GroupShiftCommand{group, shift});
    }
    return serialize_document(outcome.document);
}

int serve(const Options& o, std::ostream& out) {
    SessionConfig config;
    config.theme.k = o.k;
    config.theme.seed = o.seed;
    config.threshold = o.threshold;
    config.step = o.step;
    config.zoom = o.zoom;
    config.ttl = std::chrono::seconds(static_cast<long long>(o.ttl));
    if (!o.persist.empty()) config.persist_dir = fs::path(o.persist);

    ServiceOptions service_options;
    service_options.host = o.bind;
    service_options.port = o.port;
    if (!o.ui_dir.empty()) service_options.ui_dir = fs::path(o.ui_dir);

    // Signals are taken synchronously by a watcher thread, which also sweeps
    // idle sessions once a minute.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    SessionStore store(config);
    HttpService service(store, service_options);
    const int port = service.bind();
    out << Json{{"listening", "http://" + o.bind + ":" + std::to_string(port)}}.dump() << std::endl;

    std::thread watcher([&] {
        const timespec minute{60, 0};
        for (;;) {
            if (sigtimedwait(&signals, nullptr, &minute) > 0) break;
            store.expire_idle();
        }
        service.stop();
    });
    service.listen();
    if (watcher.joinable()) {
        // listen() can also return on its own (socket failure); wake the watcher.
        kill(getpid(), SIGTERM);
        watcher.join();
    }
    return 0;
}

void add_input(CLI::App* cmd, Options& o) {
    cmd->add_option("input", o.input, "Lottie JSON file, or - for stdin")->required();
    cmd->add_option("-o,--output", o.output, "Write here instead of stdout");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
    Options o;
    CLI::App app{"Color analysis and recoloring for Lottie motion graphics", "mgcolor"};
    app.require_subcommand(1);

    auto* analyze_cmd = app.add_subcommand("analyze", "Per-paint color occurrences as JSON");
    add_input(analyze_cmd, o);

    auto* theme_cmd = app.add_subcommand("extract-theme", "Dominant theme colors by weighted k-means");
    add_input(theme_cmd, o);
    theme_cmd->add_option("--k", o.k, "Number of theme colors")->check(CLI::Range(1, 64));
    theme_cmd->add_option("--seed", o.seed, "Clustering seed");

    auto* palette_cmd = app.add_subcommand("palette", "Scene palette as JSON or an SVG mosaic");
    add_input(palette_cmd, o);
    palette_cmd->add_option("--step", o.step, "Frames per column (default: half a second)")
        ->check(CLI::PositiveNumber);
    palette_cmd->add_option("--zoom", o.zoom, "Zoom percent")->check(CLI::Range(0.0, 100.0));
    palette_cmd->add_option("--format", o.format, "json or svg")
        ->check(CLI::IsMember({"json", "svg"}));

    auto* elements_cmd = app.add_subcommand("list-elements", "Element tree with color bubbles");
    add_input(elements_cmd, o);

    auto* recolor_cmd = app.add_subcommand("recolor", "Shift a color group or replace one color");
    add_input(recolor_cmd, o);
    auto* match = recolor_cmd->add_option("--match", o.match, "Theme color of the auto group")->check(kHex);
    auto* threshold = recolor_cmd->add_option("--threshold", o.threshold, "Group radius in DeltaE")
                          ->check(CLI::NonNegativeNumber);
    auto* hue = recolor_cmd->add_option("--hue", o.hue, "Hue shift in degrees");
    auto* sat = recolor_cmd->add_option("--sat", o.sat, "Saturation shift in [-1,1]")
                    ->check(CLI::Range(-1.0, 1.0));
    auto* light = recolor_cmd->add_option("--light", o.light, "Lightness shift in [-1,1]")
                      ->check(CLI::Range(-1.0, 1.0));
    auto* from = recolor_cmd->add_option("--from", o.from, "Document color to replace")->check(kHex);
    auto* to = recolor_cmd->add_option("--to", o.to, "Replacement color")->check(kHex);
    hue->excludes(sat)->excludes(light);
    sat->excludes(light);
    from->needs(to)->excludes(match)->excludes(threshold)->excludes(hue)->excludes(sat)->excludes(light);
    to->needs(from);
    recolor_cmd->callback([&] {
        const bool shift = o.hue || o.sat || o.light;
        if (o.from.empty() && (o.match.empty() || !shift)) {
            throw CLI::ValidationError(
                "recolor needs --match with one of --hue/--sat/--light, or --from with --to");
        }
        if (!o.from.empty() && shift) throw CLI::ValidationError("--from/--to cannot shift");
        if (!o.match.empty() && !shift) throw CLI::ValidationError("--match needs a shift");
        if (o.hue && !std::isfinite(*o.hue)) throw CLI::ValidationError("--hue must be finite");
    });

    // flags win over MGCOLOR_* environment variables
    auto* serve_cmd = app.add_subcommand("serve", "Run the editing session service");
    serve_cmd->add_option("--bind", o.bind, "Listen address")->envname("MGCOLOR_BIND");
    serve_cmd->add_option("--port", o.port, "Listen port, 0 for any")->check(CLI::Range(0, 65535))->envname("MGCOLOR_PORT");
    serve_cmd->add_option("--ttl", o.ttl, "Idle session lifetime in seconds")
        ->check(CLI::PositiveNumber)
        ->envname("MGCOLOR_TTL");
    serve_cmd->add_option("--persist", o.persist, "Directory for uploads and edit logs")->envname("MGCOLOR_PERSIST");
    serve_cmd->add_option("--k", o.k, "Theme size")->check(CLI::Range(1, 64))->envname("MGCOLOR_K");
    serve_cmd->add_option("--seed", o.seed, "Clustering seed");
    serve_cmd->add_option("--threshold", o.threshold, "Similarity threshold in DeltaE")
        ->check(CLI::NonNegativeNumber)
        ->envname("MGCOLOR_THRESHOLD");
    serve_cmd->add_option("--step", o.step, "Frames per palette column")
        ->check(CLI::PositiveNumber)
        ->envname("MGCOLOR_STEP");
    serve_cmd->add_option("--zoom", o.zoom, "Initial palette zoom percent")->check(CLI::Range(0.0, 100.0));
    serve_cmd->add_option("--with-ui", o.ui_dir, "Static studio bundle to serve at /")
        ->check(CLI::ExistingDirectory);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        emit_error(err, "UsageError", e.what());
        return 1;
    }

    try {
        std::string data;
        if (analyze_cmd->parsed()) data = analyze(o, in);
        else if (theme_cmd->parsed()) data = theme(o, in);
        else if (palette_cmd->parsed()) data = palette(o, in);
        else if (elements_cmd->parsed()) data = elements(o, in);
        else if (recolor_cmd->parsed()) data = recolor(o, in);
        else return serve(o, out);
        write_output(o.output, data, out);
        return 0;
    } catch (const Error& e) {
        emit_error(err, to_string(e.code()), e.what(), e.path());
        return e.is_domain_error() ? 2 : 1;
    } catch (const CliFailure& e) {
        emit_error(err, e.code, e.message);
        return 1;
    } catch (const std::exception& e) {
        emit_error(err, "IoError", e.what());
        return 1;
    }
}

}  // namespace mgcolor::cli
