/*
 * Copyright 2026 The ALTL Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ALTL_HTTP_API_HPP_
#define ALTL_HTTP_API_HPP_

// JSON over HTTP front end for SessionManager. Routes live under /v1;
// errors are {"error": {"code", "message"}} with a matching status.

#include <memory>
#include <string>

#include "altl/error.hpp"
#include "altl/service.hpp"

namespace altl {

int http_status(ErrorCode code);

class HttpApi {
 public:
  explicit HttpApi(SessionManager& manager);
  ~HttpApi();

  HttpApi(const HttpApi&) = delete;
  HttpApi& operator=(const HttpApi&) = delete;

  // Returns the bound port, or -1.
  int bind_to_any_port(const std::string& host);
  bool bind(const std::string& host, int port);
  // Serves until stop(); call after a successful bind.
  bool listen_after_bind();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace altl

#endif  // ALTL_HTTP_API_HPP_
