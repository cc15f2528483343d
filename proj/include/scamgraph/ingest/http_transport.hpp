#pragma once

#include <memory>
#include <string>

#include <httplib.h>

#include "scamgraph/ingest/client.hpp"

namespace scamgraph {

/// Live transport over cpp-httplib. The base URL is split into scheme+host and
/// path; HTTPS needs the library built with OpenSSL support.
class HttpTransport final : public Transport {
public:
  explicit HttpTransport(const std::string& base_url, int timeout_seconds = 30) {
    auto scheme_end = base_url.find("://");
    if (scheme_end == std::string::npos) throw Error(ErrorCode::InvalidConfig, "base_url needs a scheme: " + base_url);
    auto path_start = base_url.find('/', scheme_end + 3);
    host_ = base_url.substr(0, path_start);
    path_ = path_start == std::string::npos ? "/" : base_url.substr(path_start);
    client_ = std::make_unique<httplib::Client>(host_);
    client_->set_connection_timeout(timeout_seconds);
    client_->set_read_timeout(timeout_seconds);
    client_->set_follow_location(true);
  }

  HttpResponse get(const std::string& query) override {
    auto res = client_->Get(path_ + query);
    if (!res) throw Error(ErrorCode::Transport, "request to " + host_ + " failed: " + httplib::to_string(res.error()));
    return {res->status, res->body};
  }

private:
  std::string host_, path_;
  std::unique_ptr<httplib::Client> client_;
};

}  // namespace scamgraph
