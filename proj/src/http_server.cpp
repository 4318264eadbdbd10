// Copyright 2026 The ASE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <httplib.h>

#include "ase/app.hpp"
#include "ase/error.hpp"

namespace ase {

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(App& app) : impl_(std::make_unique<Impl>()) {
  auto forward = [&app](const httplib::Request& req, httplib::Response& res) {
    HttpRequest request;
    request.method = req.method;
    request.path = req.path;
    for (const auto& [key, value] : req.params) request.query[key] = value;
    request.body = req.body;
    HttpResponse response = app.handle(request);
    res.status = response.status;
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_content(response.body, "application/json");
  };
  const std::string any = ".*";
  auto& server = impl_->server;
  server.Get(any, forward);
  server.Post(any, forward);
  server.Options(any, [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                        : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) {
    throw Error(ErrorCode::kIo, "cannot bind " + host + ":" + std::to_string(port));
  }
  return bound;
}

void HttpServer::run() {
  if (!impl_->server.listen_after_bind()) {
    throw Error(ErrorCode::kIo, "HTTP server stopped with an error");
  }
}

void HttpServer::stop() { impl_->server.stop(); }

void serve(App& app, const std::string& host, int port) {
  HttpServer server(app);
  server.bind(host, port);
  server.run();
}

}  // namespace ase
