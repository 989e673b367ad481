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

#include "infra/http.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <cctype>

#include <fmt/format.h>

#include "common/error.hpp"

namespace litpipe::infra {
namespace {

class HttplibTransport final : public HttpTransport {
 public:
  explicit HttplibTransport(double timeout) : timeout_(timeout) {}

  HttpResponse Send(const HttpRequest& request) override {
    // Split "scheme://host[:port]/path?query" into client base + path.
    auto scheme_end = request.url.find("://");
    if (scheme_end == std::string::npos) {
      Fail(ErrorCode::kInvalidInput, "url without scheme: " + request.url);
    }
    auto path_start = request.url.find('/', scheme_end + 3);
    std::string base = request.url.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/" : request.url.substr(path_start);

    httplib::Client client(base);
    auto secs = static_cast<time_t>(timeout_);
    client.set_connection_timeout(secs, 0);
    client.set_read_timeout(secs, 0);
    client.set_follow_location(true);
    httplib::Headers headers(request.headers.begin(), request.headers.end());

    httplib::Result result =
        request.method == "POST"
            ? client.Post(path, headers, request.body,
                          request.content_type.empty() ? "application/json"
                                                       : request.content_type)
            : client.Get(path, headers);
    if (!result) {
      Fail(ErrorCode::kTransient,
           fmt::format("{} {} failed: {}", request.method, request.url,
                       httplib::to_string(result.error())));
    }
    return {result->status, result->body};
  }

 private:
  double timeout_;
};

}  // namespace

std::unique_ptr<HttpTransport> MakeHttplibTransport(double timeout_seconds) {
  return std::make_unique<HttplibTransport>(timeout_seconds);
}

void ThrowForStatus(const HttpResponse& response, const std::string& what) {
  if (response.status >= 200 && response.status < 300) return;
  auto msg = fmt::format("{}: HTTP {}", what, response.status);
  if (response.status == 429) Fail(ErrorCode::kRateLimited, msg);
  if (response.status >= 500 || response.status == 408) Fail(ErrorCode::kTransient, msg);
  Fail(ErrorCode::kProtocol, msg);
}

std::string UrlEncode(const std::string& s) {
  std::string out;
  for (unsigned char c : s) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out += fmt::format("%{:02X}", c);
    }
  }
  return out;
}

}  // namespace litpipe::infra
