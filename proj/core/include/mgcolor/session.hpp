#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "mgcolor/element_view.hpp"
#include "mgcolor/recolor.hpp"
#include "mgcolor/scene_palette.hpp"
#include "mgcolor/theme.hpp"

namespace mgcolor {

struct SessionConfig {
    ThemeConfig theme;
    double threshold = kDefaultSimilarityThreshold;
    std::optional<double> step;  // frames per palette column; frame_rate/2 when unset
    double zoom = 50.0;          // initial palette zoom, percent
    ZoomRange zoom_range;
    double ramp = kDefaultRamp;
    std::chrono::seconds ttl{2 * 60 * 60};
    std::optional<std::filesystem::path> persist_dir;
};

// Everything a client can see of one session at one point in time. Snapshots
// are immutable; an edit publishes a new one.
struct SessionSnapshot {
    LottieDocument document;
    OccurrenceSet occurrences;
    std::vector<ThemeSwatch> theme;
    ScenePalette palette;
    std::vector<ElementEntry> elements;
    std::optional<ColorGroup> selection;
    double playhead = 0.0;
    std::size_t log_size = 0;
};

// Transport-independent result of one request.
struct Response {
    int status = 200;
    Json body;
    std::optional<std::string> text;  // raw payload (document export)

    std::string payload() const { return text ? *text : body.dump(); }
};

// In-memory store of editing sessions with optional directory persistence
// (upload + edit log, replayed on start-up). Requests for different sessions
// run concurrently; commands on one session are serialized.
class SessionStore {
public:
    using Clock = std::chrono::steady_clock;

    explicit SessionStore(SessionConfig config = {},
                          std::function<Clock::time_point()> now = &Clock::now);
    ~SessionStore();

    SessionStore(const SessionStore&) = delete;
    SessionStore& operator=(const SessionStore&) = delete;

    Response create(std::string_view upload);
    Response state(const std::string& id, std::optional<double> zoom = std::nullopt,
                   std::optional<double> step = std::nullopt);
    Response select(const std::string& id, const Json& body);
    Response edit(const std::string& id, const Json& body);
    Response undo(const std::string& id);
    Response export_document(const std::string& id);

    // Drops sessions idle longer than the TTL; returns how many.
    std::size_t expire_idle();
    std::size_t size() const;

    // Current snapshot, or nullptr for unknown/expired ids.
    std::shared_ptr<const SessionSnapshot> snapshot(const std::string& id);

    const SessionConfig& config() const { return config_; }

    // The JSON the state endpoint returns for `snap`.
    static Json state_json(const std::string& id, const SessionSnapshot& snap,
                           const SessionConfig& config, std::optional<double> zoom,
                           std::optional<double> step);

    // Derived views of `doc` as a fresh session computes them; `frozen`
    // carries the palette order over from an earlier snapshot.
    static SessionSnapshot derive(LottieDocument doc, const SessionConfig& config,
                                  const FrozenOrder* frozen = nullptr);

private:
    struct Session;

    // derive() without the palette, for edits that patch the previous one.
    static SessionSnapshot derive_views(LottieDocument doc, const SessionConfig& config);

    std::shared_ptr<Session> find(const std::string& id, Response& error);
    std::string new_id();
    void persist_create(const Session& s);
    void persist_append(const Session& s, const Json& record);
    void load_persisted();

    void apply_edit(Session& s, const EditCommand& command, EditOutcome& outcome);
    void apply_undo(Session& s);

    SessionConfig config_;
    std::function<Clock::time_point()> now_;
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::set<std::string> expired_;
};

}  // namespace mgcolor
