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

#ifndef BOOP_HTTP_API_H_
#define BOOP_HTTP_API_H_

#include "boop/service.h"
#include "httplib.h"

namespace boop {

// Registers the JSON API on `server`:
//   POST /sessions                    create; body per SessionManager
//   GET  /sessions/{id}[?wait_ms=N]   public view; optional long poll
//   POST /sessions/{id}/move          {"move": "S@c3"}
//   POST /sessions/{id}/decision      {"decision": "remove:a1,b1,c1"}
//   GET  /sessions/{id}/record        game record document
// Errors are {"error": "..."} with 400, 404, 409 (not your turn) or
// 422 (illegal action).
void MountApi(httplib::Server& server, SessionManager& sessions);

}  // namespace boop

#endif  // BOOP_HTTP_API_H_
