#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "mgcolor/session.hpp"

namespace mgcolor {

struct ServiceOptions {
    std::string host = "127.0.0.1";
    int port = 8080;  // 0 picks a free port
    std::optional<std::filesystem::path> ui_dir;  // static studio bundle mounted at /
};

// HTTP/JSON front end over a SessionStore:
//   POST /sessions                  upload a Lottie document
//   GET  /sessions/{id}/state       ?zoom=P&step=N
//   POST /sessions/{id}/selection
//   POST /sessions/{id}/edits
//   POST /sessions/{id}/undo
//   GET  /sessions/{id}/export
class HttpService {
public:
    HttpService(SessionStore& store, ServiceOptions options);
    ~HttpService();

    HttpService(const HttpService&) = delete;
    HttpService& operator=(const HttpService&) = delete;

    // Binds and returns the bound port; throws std::runtime_error on failure.
    int bind();
    // Serves until stop(); call bind() first.
    void listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace mgcolor
