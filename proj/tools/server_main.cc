// Copyright 2026 The boop-co Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// boop-server: local human-vs-agent play over the JSON API.

#include <cstdio>
#include <filesystem>

#include "CLI11.hpp"
#include "boop/http_api.h"
#include "boop/service.h"

int main(int argc, char** argv) {
  CLI::App app{"boop. play service"};
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string webui;
  std::string records;
  app.add_option("--host", host, "bind address");
  app.add_option("--port", port, "listen port")->check(CLI::Range(1, 65535));
  app.add_option("--webui", webui, "directory of static browser client files")
      ->check(CLI::ExistingDirectory);
  app.add_option("--records", records, "directory for finished game records");
  CLI11_PARSE(app, argc, argv);

  boop::SessionManager sessions(records.empty()
                                    ? std::nullopt
                                    : std::optional<std::filesystem::path>(records));
  httplib::Server server;
  boop::MountApi(server, sessions);
  if (!webui.empty()) server.set_mount_point("/", webui);

  std::fprintf(stderr, "listening on http://%s:%d\n", host.c_str(), port);
  if (!server.listen(host, port)) {
    std::fprintf(stderr, "cannot listen on %s:%d\n", host.c_str(), port);
    return 1;
  }
  return 0;
}
