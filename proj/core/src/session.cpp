#include "mgcolor/session.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "mgcolor/error.hpp"
#include "mgcolor/report.hpp"

namespace mgcolor {

struct SessionStore::Session {
    std::string id;
    std::string upload;
    std::chrono::system_clock::time_point created_at;
    Clock::time_point last_access;

    std::mutex write_mutex;  // one command at a time
    EditLog log;
    struct Undoable {
        FrozenOrder order_before;
        ColorMapping mapping;
    };
    std::vector<Undoable> history;

    mutable std::mutex snap_mutex;
    std::shared_ptr<const SessionSnapshot> snap;

    std::shared_ptr<const SessionSnapshot> current() const {
        std::lock_guard lock(snap_mutex);
        return snap;
    }
    void publish(std::shared_ptr<const SessionSnapshot> next) {
        std::lock_guard lock(snap_mutex);
        snap = std::move(next);
    }
};

namespace {

int status_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::MalformedJson:
        case ErrorCode::UnsupportedDocument:
        case ErrorCode::StructuralError:
        case ErrorCode::InvalidArgument:
        case ErrorCode::FrameOutOfRange:
        case ErrorCode::OutOfBounds:
            return 400;
        case ErrorCode::AddressNotFound:
        case ErrorCode::UnknownColor:
            return 404;
        case ErrorCode::EmptyGroup:
        case ErrorCode::RgbOnGroup:
        case ErrorCode::EmptyLog:
        case ErrorCode::NothingToRedo:
        case ErrorCode::ZeroWeightDocument:
        case ErrorCode::EmptyDocument:
            return 409;
    }
    return 500;
}

Response error_response(int status, std::string_view code, const std::string& message,
                        const std::string& path = {}) {
    Json body{{"error", code}, {"message", message}};
    if (!path.empty()) body["path"] = path;
    return Response{status, std::move(body), std::nullopt};
}

Response error_response(const Error& e) {
    return error_response(status_for(e.code()), to_string(e.code()), e.what(), e.path());
}

// Hex from a client names the document color it renders as; unknown hex
// values are UnknownColor.
Rgba document_color(const OccurrenceSet& set, const Json& value) {
    if (!value.is_string()) throw Error(ErrorCode::InvalidArgument, "colors are hex strings");
    const std::string hex = value.get<std::string>();
    const auto parsed = parse_hex(hex);
    if (!parsed) throw Error(ErrorCode::InvalidArgument, "bad hex color " + hex);
    const std::string wanted = to_hex(*parsed);
    for (const auto& c : distinct_colors(set)) {
        if (to_hex(c) == wanted) return c;
    }
    throw Error(ErrorCode::UnknownColor, "document has no color " + wanted);
}

std::vector<Rgba> document_colors_of(const OccurrenceSet& set, const Json& list, const char* what) {
    if (!list.is_array()) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be a list");
    std::vector<Rgba> out;
    for (const auto& v : list) out.push_back(document_color(set, v));
    return out;
}

Rgba parse_color(const Json& value) {
    if (!value.is_string()) throw Error(ErrorCode::InvalidArgument, "colors are hex strings");
    const auto c = parse_hex(value.get<std::string>());
    if (!c) throw Error(ErrorCode::InvalidArgument, "bad hex color " + value.get<std::string>());
    return *c;
}

double number_field(const Json& body, const char* key) {
    if (!body.contains(key) || !body[key].is_number()) {
        throw Error(ErrorCode::InvalidArgument, std::string("\"") + key + "\" must be a number");
    }
    return body[key].get<double>();
}

std::string system_time_string(std::chrono::system_clock::time_point t) {
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(t.time_since_epoch()).count();
    return std::to_string(secs);
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::optional<ColorGroup> carry_selection(const std::optional<ColorGroup>& selection,
                                          const ColorMapping& mapping, bool inverse,
                                          const OccurrenceSet& set) {
    if (!selection) return std::nullopt;
    ColorGroup group = *selection;
    for (auto& m : group.members) {
        for (const auto& change : mapping) {
            if ((inverse ? change.to : change.from) == m) {
                m = inverse ? change.from : change.to;
                break;
            }
        }
    }
    const std::vector<Rgba> present = distinct_colors(set);
    std::vector<Rgba> kept;
    for (const auto& m : group.members) {
        if (std::find(present.begin(), present.end(), m) != present.end() &&
            std::find(kept.begin(), kept.end(), m) == kept.end()) {
            kept.push_back(m);
        }
    }
    if (kept.empty()) return std::nullopt;
    group.members = std::move(kept);
    return group;
}

}  // namespace

SessionStore::SessionStore(SessionConfig config, std::function<Clock::time_point()> now)
    : config_(std::move(config)), now_(std::move(now)) {
    if (config_.persist_dir) {
        std::filesystem::create_directories(*config_.persist_dir);
        load_persisted();
    }
}

SessionStore::~SessionStore() = default;

SessionSnapshot SessionStore::derive_views(LottieDocument doc, const SessionConfig& config) {
    SessionSnapshot snap;
    snap.occurrences = extract_occurrences(doc);
    if (snap.occurrences.total_weight > 0.0) snap.theme = extract_theme(snap.occurrences, config.theme);
    snap.elements = build_element_list(doc, snap.occurrences);
    snap.playhead = doc.in_point;
    snap.document = std::move(doc);
    return snap;
}

SessionSnapshot SessionStore::derive(LottieDocument doc, const SessionConfig& config,
                                     const FrozenOrder* frozen) {
    SessionSnapshot snap = derive_views(std::move(doc), config);
    const PaletteBounds bounds{snap.document.in_point, snap.document.out_point, snap.document.frame_rate};
    const double step = config.step ? *config.step : default_step(snap.document.frame_rate);
    snap.palette = build_palette(snap.occurrences, bounds, step,
                                 zoom_to_alpha(config.zoom, config.zoom_range), frozen);
    return snap;
}

Json SessionStore::state_json(const std::string& id, const SessionSnapshot& snap,
                              const SessionConfig& config, std::optional<double> zoom,
                              std::optional<double> step) {
    ScenePalette palette;
    if (step && *step != snap.palette.step) {
        palette = build_palette(snap.occurrences, snap.palette.bounds, *step, snap.palette.alpha,
                                &snap.palette.sort_order);
    } else {
        palette = snap.palette;
    }
    if (zoom) palette = rezoom(std::move(palette), *zoom, config.zoom_range);

    Json selection = nullptr;
    Json highlighted = Json::array();
    Json elements = Json::array();
    if (snap.selection) {
        selection = group_json(*snap.selection);
        const std::set<Rgba> members(snap.selection->members.begin(), snap.selection->members.end());
        for (const auto& id_ : elements_with_color(snap.elements, members)) elements.push_back(id_);
        for (const auto& m : snap.selection->members) highlighted.push_back(to_hex(m));
    }
    return Json{{"id", id},
                {"frame_rate", snap.document.frame_rate},
                {"in_point", snap.document.in_point},
                {"out_point", snap.document.out_point},
                {"playhead", snap.playhead},
                {"log_size", snap.log_size},
                {"theme", theme_json(snap.theme)},
                {"palette", palette_json(palette)},
                {"elements", elements_json(snap.elements)},
                {"selection", selection},
                {"highlighted", highlighted},
                {"highlighted_elements", elements}};
}

std::string SessionStore::new_id() {
    static std::mutex rng_mutex;
    static std::mt19937_64 rng{std::random_device{}()};
    std::lock_guard lock(rng_mutex);
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string id;
    std::uint64_t bits = rng();
    for (int i = 0; i < 16; ++i, bits >>= 4) id.push_back(kDigits[bits & 0xf]);
    return id;
}

Response SessionStore::create(std::string_view upload) {
    std::shared_ptr<Session> session;
    try {
        LottieDocument doc = parse_document(upload);
        session = std::make_shared<Session>();
        session->upload = std::string(upload);
        session->created_at = std::chrono::system_clock::now();
        session->last_access = now_();
        session->snap = std::make_shared<const SessionSnapshot>(derive(std::move(doc), config_));
    } catch (const Error& e) {
        return error_response(e);
    }
    {
        std::lock_guard lock(mutex_);
        do {
            session->id = new_id();
        } while (sessions_.contains(session->id) || expired_.contains(session->id));
        sessions_[session->id] = session;
    }
    persist_create(*session);

    const auto snap = session->current();
    return Response{200,
                    Json{{"id", session->id},
                         {"frame_rate", snap->document.frame_rate},
                         {"in_point", snap->document.in_point},
                         {"out_point", snap->document.out_point},
                         {"layer_count", snap->document.layers.size()},
                         {"occurrence_count", snap->occurrences.occurrences.size()},
                         {"color_count", distinct_colors(snap->occurrences).size()},
                         {"theme", theme_json(snap->theme)}},
                    std::nullopt};
}

std::shared_ptr<SessionStore::Session> SessionStore::find(const std::string& id, Response& error) {
    std::lock_guard lock(mutex_);
    if (expired_.contains(id)) {
        error = error_response(410, "SessionExpired", "session " + id + " expired");
        return nullptr;
    }
    auto it = sessions_.find(id);
    if (it == sessions_.end()) {
        error = error_response(404, "UnknownSession", "no session " + id);
        return nullptr;
    }
    const auto now = now_();
    if (now - it->second->last_access > config_.ttl) {
        if (config_.persist_dir) {
            std::error_code ec;
            std::filesystem::remove_all(*config_.persist_dir / id, ec);
        }
        sessions_.erase(it);
        expired_.insert(id);
        error = error_response(410, "SessionExpired", "session " + id + " expired");
        return nullptr;
    }
    it->second->last_access = now;
    return it->second;
}

std::size_t SessionStore::expire_idle() {
    std::lock_guard lock(mutex_);
    const auto now = now_();
    std::size_t dropped = 0;
    for (auto it = sessions_.begin(); it != sessions_.end();) {
        if (now - it->second->last_access > config_.ttl) {
            if (config_.persist_dir) {
                std::error_code ec;
                std::filesystem::remove_all(*config_.persist_dir / it->first, ec);
            }
            expired_.insert(it->first);
            it = sessions_.erase(it);
            ++dropped;
        } else {
            ++it;
        }
    }
    return dropped;
}

std::size_t SessionStore::size() const {
    std::lock_guard lock(mutex_);
    return sessions_.size();
}

std::shared_ptr<const SessionSnapshot> SessionStore::snapshot(const std::string& id) {
    Response ignored;
    auto s = find(id, ignored);
    return s ? s->current() : nullptr;
}

Response SessionStore::state(const std::string& id, std::optional<double> zoom,
                             std::optional<double> step) {
    Response error;
    auto s = find(id, error);
    if (!s) return error;
    try {
        return Response{200, state_json(id, *s->current(), config_, zoom, step), std::nullopt};
    } catch (const Error& e) {
        return error_response(e);
    }
}

Response SessionStore::select(const std::string& id, const Json& body) {
    Response error;
    auto s = find(id, error);
    if (!s) return error;
    std::lock_guard write(s->write_mutex);
    const auto snap = s->current();
    try {
        if (!body.is_object()) throw Error(ErrorCode::InvalidArgument, "selection body must be an object");
        std::optional<ColorGroup> next;
        const OccurrenceSet& set = snap->occurrences;
        if (body.contains("auto")) {
            const Json& a = body["auto"];
            if (!a.is_object() || !a.contains("theme")) {
                throw Error(ErrorCode::InvalidArgument, "auto selection needs a \"theme\" color");
            }
            Rgba theme = parse_color(a["theme"]);
            try {
                theme = document_color(set, a["theme"]);
            } catch (const Error&) {
                // a theme color need not be a document color
            }
            const double threshold = a.contains("threshold") ? number_field(a, "threshold") : config_.threshold;
            next = group_auto(theme, set, threshold);
        } else if (body.contains("manual")) {
            next = group_manual(document_colors_of(set, body["manual"], "manual"), set);
        } else if (body.contains("edit")) {
            const Json& e = body["edit"];
            if (!snap->selection) throw Error(ErrorCode::EmptyGroup, "no selection to edit");
            if (!e.is_object()) throw Error(ErrorCode::InvalidArgument, "edit must be an object");
            const auto add = e.contains("add") ? document_colors_of(set, e["add"], "add") : std::vector<Rgba>{};
            const auto remove = e.contains("remove") ? document_colors_of(set, e["remove"], "remove") : std::vector<Rgba>{};
            next = group_edit_members(*snap->selection, add, remove, set);
        } else if (!body.contains("clear")) {
            throw Error(ErrorCode::InvalidArgument, "expected one of auto, manual, edit, clear");
        }
        auto updated = std::make_shared<SessionSnapshot>(*snap);
        updated->selection = next;
        s->publish(updated);

        Json highlighted = Json::array();
        Json elements = Json::array();
        if (next) {
            for (const auto& m : next->members) highlighted.push_back(to_hex(m));
            const std::set<Rgba> members(next->members.begin(), next->members.end());
            for (const auto& eid : elements_with_color(snap->elements, members)) elements.push_back(eid);
        }
        return Response{200,
                        Json{{"selection", next ? group_json(*next) : Json(nullptr)},
                             {"highlighted", highlighted},
                             {"elements", elements}},
                        std::nullopt};
    } catch (const Error& e) {
        return error_response(e);
    }
}

void SessionStore::apply_edit(Session& s, const EditCommand& command, EditOutcome& outcome) {
    const auto snap = s.current();
    outcome = s.log.apply(snap->document, command);
    const bool recolor_only = !std::holds_alternative<FrameIsolatedCommand>(command);

    std::shared_ptr<SessionSnapshot> next;
    if (recolor_only) {
        // patch in place: same columns, same ranks, new colors
        next = std::make_shared<SessionSnapshot>(derive_views(std::move(outcome.document), config_));
        next->palette = recolor_blocks(snap->palette, outcome.mapping);
    } else {
        next = std::make_shared<SessionSnapshot>(derive(std::move(outcome.document), config_, &snap->palette.sort_order));
    }
    next->selection = carry_selection(snap->selection, outcome.mapping, false, next->occurrences);
    next->playhead = snap->playhead;
    next->log_size = s.log.size();
    s.history.push_back({snap->palette.sort_order, outcome.mapping});
    s.publish(std::move(next));
}

void SessionStore::apply_undo(Session& s) {
    const auto snap = s.current();
    LottieDocument doc = s.log.undo(snap->document);
    Session::Undoable undone = std::move(s.history.back());
    s.history.pop_back();
    auto next = std::make_shared<SessionSnapshot>(derive(std::move(doc), config_, &undone.order_before));
    next->selection = carry_selection(snap->selection, undone.mapping, true, next->occurrences);
    next->playhead = snap->playhead;
    next->log_size = s.log.size();
    s.publish(std::move(next));
}

Response SessionStore::edit(const std::string& id, const Json& body) {
    Response error;
    auto s = find(id, error);
    if (!s) return error;
    std::lock_guard write(s->write_mutex);
    const auto snap = s->current();
    try {
        if (!body.is_object() || !body.contains("kind") || !body["kind"].is_string()) {
            throw Error(ErrorCode::InvalidArgument, "edit needs a \"kind\"");
        }
        const std::string kind = body["kind"].get<std::string>();
        const OccurrenceSet& set = snap->occurrences;
        EditCommand command;
        if (kind == "set_rgb") {
            if (!body.contains("to")) throw Error(ErrorCode::InvalidArgument, "set_rgb needs \"to\"");
            Rgba from;
            if (body.contains("from")) {
                from = document_color(set, body["from"]);
            } else {
                if (!snap->selection) throw Error(ErrorCode::EmptyGroup, "nothing selected");
                if (snap->selection->members.size() > 1) {
                    throw Error(ErrorCode::RgbOnGroup,
                                "RGB edits apply to a single color; use an HSL shift for groups");
                }
                from = snap->selection->members.front();
            }
            command = make_set_rgb(from, parse_color(body["to"]));
        } else if (kind == "group_shift") {
            GroupShiftCommand cmd;
            if (body.contains("members")) {
                cmd.group = group_manual(document_colors_of(set, body["members"], "members"), set);
            } else if (snap->selection) {
                cmd.group = *snap->selection;
            } else {
                throw Error(ErrorCode::EmptyGroup, "nothing selected");
            }
            const Json& channel = body.value("channel", Json("hue"));
            if (!channel.is_string()) throw Error(ErrorCode::InvalidArgument, "channel must be a string");
            Json probe{{"kind", "group_shift"}, {"members", Json::array()},
                       {"channel", channel}, {"delta", number_field(body, "delta")}};
            cmd.shift = std::get<GroupShiftCommand>(command_from_json(probe)).shift;
            command = std::move(cmd);
        } else if (kind == "frame_isolated") {
            FrameIsolatedCommand cmd;
            if (!body.contains("address")) throw Error(ErrorCode::InvalidArgument, "frame_isolated needs \"address\"");
            Json addr = body["address"];
            if (addr.is_object() && !addr.contains("slot")) {
                // infer the slot from whatever paint lives there
                ColorAddress probe = address_from_json(addr);
                probe.slot = PaintSlot::stroke;
                try {
                    resolve_item(snap->document, probe);
                    addr["slot"] = "stroke";
                } catch (const Error&) {
                    addr["slot"] = "fill";
                }
            }
            cmd.address = address_from_json(addr);
            cmd.frame = number_field(body, "frame");
            if (!body.contains("color")) throw Error(ErrorCode::InvalidArgument, "frame_isolated needs \"color\"");
            cmd.color = parse_color(body["color"]);
            cmd.ramp = body.contains("ramp") ? number_field(body, "ramp") : config_.ramp;
            command = cmd;
        } else {
            throw Error(ErrorCode::InvalidArgument, "unknown edit kind " + kind);
        }

        EditOutcome outcome;
        apply_edit(*s, command, outcome);
        persist_append(*s, Json{{"op", "edit"}, {"command", to_json(command)}});

        const auto after = s->current();
        return Response{200,
                        Json{{"mapping", mapping_json(outcome.mapping)},
                             {"changed_addresses", addresses_json(outcome.changed)},
                             {"selection", after->selection ? group_json(*after->selection) : Json(nullptr)},
                             {"log_size", after->log_size}},
                        std::nullopt};
    } catch (const Error& e) {
        return error_response(e);
    }
}

Response SessionStore::undo(const std::string& id) {
    Response error;
    auto s = find(id, error);
    if (!s) return error;
    std::lock_guard write(s->write_mutex);
    try {
        apply_undo(*s);
        persist_append(*s, Json{{"op", "undo"}});
        const auto snap = s->current();
        return Response{200, state_json(id, *snap, config_, std::nullopt, std::nullopt), std::nullopt};
    } catch (const Error& e) {
        return error_response(e);
    }
}

Response SessionStore::export_document(const std::string& id) {
    Response error;
    auto s = find(id, error);
    if (!s) return error;
    return Response{200, nullptr, serialize_document(s->current()->document)};
}

void SessionStore::persist_create(const Session& s) {
    if (!config_.persist_dir) return;
    const auto dir = *config_.persist_dir / s.id;
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "upload.json", std::ios::binary) << s.upload;
    std::ofstream(dir / "meta.json") << Json{{"id", s.id}, {"created_at", system_time_string(s.created_at)}}.dump();
    std::ofstream(dir / "log.jsonl", std::ios::trunc);
}

void SessionStore::persist_append(const Session& s, const Json& record) {
    if (!config_.persist_dir) return;
    std::ofstream(*config_.persist_dir / s.id / "log.jsonl", std::ios::app) << record.dump() << '\n';
}

void SessionStore::load_persisted() {
    for (const auto& entry : std::filesystem::directory_iterator(*config_.persist_dir)) {
        if (!entry.is_directory()) continue;
        const auto dir = entry.path();
        if (!std::filesystem::exists(dir / "upload.json")) continue;
        auto session = std::make_shared<Session>();
        session->id = dir.filename().string();
        session->upload = read_file(dir / "upload.json");
        session->created_at = std::chrono::system_clock::now();
        session->last_access = now_();
        try {
            session->snap = std::make_shared<const SessionSnapshot>(
                derive(parse_document(session->upload), config_));
            std::ifstream log(dir / "log.jsonl");
            std::string line;
            while (std::getline(log, line)) {
                if (line.empty()) continue;
                const Json record = Json::parse(line);
                if (record.value("op", "") == "undo") {
                    apply_undo(*session);
                } else {
                    EditOutcome ignored;
                    apply_edit(*session, command_from_json(record.at("command")), ignored);
                }
            }
        } catch (const std::exception&) {
            continue;  // a damaged session directory is skipped, not fatal
        }
        sessions_[session->id] = std::move(session);
    }
}

}  // namespace mgcolor
