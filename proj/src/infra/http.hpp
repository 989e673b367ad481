// Copyright 2026 The Litpipe Authors
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

#pragma once

#include <map>
#include <memory>
#include <string>

namespace litpipe::infra {

struct HttpRequest {
  std::string method = "GET";
  std::string url;
  std::map<std::string, std::string> headers;
  std::string body;
  std::string content_type;
};

struct HttpResponse {
  int status = 0;
  std::string body;
};

// Network transport seam. Implementations throw Error(kTransient) for
// connection-level failures; HTTP status codes are returned, not thrown.
class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpResponse Send(const HttpRequest& request) = 0;
};

std::unique_ptr<HttpTransport> MakeHttplibTransport(double timeout_seconds = 30.0);

// Maps a non-2xx status onto the error taxonomy: 429 -> kRateLimited,
// 5xx/408 -> kTransient, everything else -> kProtocol.
void ThrowForStatus(const HttpResponse& response, const std::string& what);

std::string UrlEncode(const std::string& s);

}  // namespace litpipe::infra
