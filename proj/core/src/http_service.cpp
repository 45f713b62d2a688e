#include "mgcolor/http_service.hpp"

#include <stdexcept>

#include "httplib.h"

namespace mgcolor {

struct HttpService::Impl {
    Impl(SessionStore& s, ServiceOptions o) : store(s), options(std::move(o)) {}

    SessionStore& store;
    ServiceOptions options;
    httplib::Server server;
};

namespace {

void reply(httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.payload(), "application/json");
}

std::optional<double> query_number(const httplib::Request& req, const char* key) {
    if (!req.has_param(key)) return std::nullopt;
    try {
        return std::stod(req.get_param_value(key));
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

Response bad_request(const std::string& message) {
    return Response{400, Json{{"error", "InvalidArgument"}, {"message", message}}, std::nullopt};
}

template <class Handler>
void with_json_body(const httplib::Request& req, httplib::Response& res, Handler handler) {
    Json body;
    try {
        body = req.body.empty() ? Json::object() : Json::parse(req.body);
    } catch (const nlohmann::json::parse_error& e) {
        reply(res, Response{400, Json{{"error", "MalformedJson"}, {"message", e.what()}}, std::nullopt});
        return;
    }
    reply(res, handler(body));
}

}  // namespace

HttpService::HttpService(SessionStore& store, ServiceOptions options)
    : impl_(std::make_unique<Impl>(store, std::move(options))) {
    auto& srv = impl_->server;
    SessionStore& st = impl_->store;

    srv.Post("/sessions", [&st](const httplib::Request& req, httplib::Response& res) {
        reply(res, st.create(req.body));
    });
    srv.Get(R"(/sessions/([0-9a-zA-Z]+)/state)", [&st](const httplib::Request& req, httplib::Response& res) {
        const auto zoom = query_number(req, "zoom");
        const auto step = query_number(req, "step");
        if ((req.has_param("zoom") && !zoom) || (req.has_param("step") && !step)) {
            reply(res, bad_request("zoom and step must be numbers"));
            return;
        }
        reply(res, st.state(req.matches[1], zoom, step));
    });
    srv.Post(R"(/sessions/([0-9a-zA-Z]+)/selection)", [&st](const httplib::Request& req, httplib::Response& res) {
        with_json_body(req, res, [&](const Json& body) { return st.select(req.matches[1], body); });
    });
    srv.Post(R"(/sessions/([0-9a-zA-Z]+)/edits)", [&st](const httplib::Request& req, httplib::Response& res) {
        with_json_body(req, res, [&](const Json& body) { return st.edit(req.matches[1], body); });
    });
    srv.Post(R"(/sessions/([0-9a-zA-Z]+)/undo)", [&st](const httplib::Request& req, httplib::Response& res) {
        reply(res, st.undo(req.matches[1]));
    });
    srv.Get(R"(/sessions/([0-9a-zA-Z]+)/export)", [&st](const httplib::Request& req, httplib::Response& res) {
        reply(res, st.export_document(req.matches[1]));
    });
    if (impl_->options.ui_dir) {
        srv.set_mount_point("/", impl_->options.ui_dir->string());
    }
}

HttpService::~HttpService() {
    stop();
}

int HttpService::bind() {
    auto& srv = impl_->server;
    if (impl_->options.port == 0) {
        const int port = srv.bind_to_any_port(impl_->options.host);
        if (port < 0) throw std::runtime_error("cannot bind " + impl_->options.host);
        impl_->options.port = port;
        return port;
    }
    if (!srv.bind_to_port(impl_->options.host, impl_->options.port)) {
        throw std::runtime_error("cannot bind " + impl_->options.host + ":" +
                                 std::to_string(impl_->options.port));
    }
    return impl_->options.port;
}

void HttpService::listen() {
    impl_->server.listen_after_bind();
}

void HttpService::stop() {
    if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace mgcolor
