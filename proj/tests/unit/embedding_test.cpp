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

#include <doctest.h>

#include <cmath>
#include <cstring>

#include <json.hpp>

#include "common/error.hpp"
#include "common/sha256.hpp"
#include "embedding/cache.hpp"
#include "embedding/embed_corpus.hpp"
#include "embedding/provider.hpp"
#include "embedding/types.hpp"
#include "infra/http.hpp"
#include "support/support.hpp"

namespace {

using namespace litpipe;
using namespace litpipe::embedding;
using testing_support::MakePaper;

// Wraps the mock provider, recording every batch it receives.
class CountingProvider : public EmbeddingProvider {
 public:
  std::string model_id() const override { return inner.model_id(); }
  std::vector<EmbeddingVector> EmbedRaw(std::span<const std::string> texts) override {
    batch_sizes.push_back(texts.size());
    if (fail) Fail(ErrorCode::kTransient, "provider down");
    return inner.EmbedRaw(texts);
  }
  MockEmbeddingProvider inner{7};
  std::vector<std::size_t> batch_sizes;
  bool fail = false;
  std::size_t texts() const {
    std::size_t n = 0;
    for (auto b : batch_sizes) n += b;
    return n;
  }
};

class ShortVectorProvider : public EmbeddingProvider {
 public:
  std::string model_id() const override { return "short"; }
  std::vector<EmbeddingVector> EmbedRaw(std::span<const std::string> texts) override {
    // A 383-long reply can only arrive over the wire; emulate the parser.
    nlohmann::json row = std::vector<float>(383, 0.5f);
    nlohmann::json body = {{"vectors", nlohmann::json::array()}};
    for (std::size_t i = 0; i < texts.size(); ++i) body["vectors"].push_back(row);
    return ParseEmbedResponse(body.dump(), texts.size());
  }
};

// In-process stand-in for the embedding sidecar's HTTP contract.
class FakeSidecar : public infra::HttpTransport {
 public:
  infra::HttpResponse Send(const infra::HttpRequest& request) override {
    ++calls;
    if (request.url.ends_with("/healthz")) {
      return {200, nlohmann::json{{"status", "ok"}, {"dim", dim}}.dump()};
    }
    auto body = nlohmann::json::parse(request.body);
    auto texts = body.at("texts").get<std::vector<std::string>>();
    if (texts.empty()) return {400, "{}"};
    nlohmann::json out = {{"model_id", model}, {"dim", dim}, {"vectors", nlohmann::json::array()}};
    for (const auto& t : texts) {
      auto v = mock.EmbedOne(t);
      out["vectors"].push_back(std::vector<float>(v.begin(), v.begin() + dim));
    }
    return {200, out.dump()};
  }
  MockEmbeddingProvider mock{1};
  std::string model = kDefaultRemoteModel;
  int dim = 384;
  int calls = 0;
};

std::vector<acquisition::Paper> Papers(std::size_t n) {
  std::vector<acquisition::Paper> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(MakePaper("p" + std::to_string(i), "Paper " + std::to_string(i) + " on agents",
                            {"A"}, 2024));
  }
  return out;
}

}  // namespace

TEST_SUITE("embedding") {
  TEST_CASE("paper text is title then abstract") {
    auto p = MakePaper("x", "A", {"Z"}, 2024, 0, "B");
    CHECK(PaperText(p) == "A B");
    p.abstract.clear();
    CHECK(PaperText(p) == "A");
    auto prot = MakePaper("y", "ProtAgents: protein discovery via LLM multi-agent collaboration",
                          {"Z"}, 2024);
    CHECK(PaperText(prot).rfind(prot.title, 0) == 0);
  }

  TEST_CASE("mock provider is deterministic and normalized") {
    MockEmbeddingProvider a(3), b(3), c(4);
    auto v1 = a.EmbedOne("planning with language model agents");
    auto v2 = b.EmbedOne("planning with language model agents");
    CHECK(std::memcmp(v1.data(), v2.data(), sizeof(float) * kEmbeddingDim) == 0);
    CHECK(L2Norm(v1) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(c.EmbedOne("planning with language model agents") != v1);
    // Shared words pull vectors together.
    auto near = a.EmbedOne("planning language model agents tools");
    auto far = a.EmbedOne("protein folding chemistry");
    double dn = 0, df = 0;
    for (std::size_t d = 0; d < kEmbeddingDim; ++d) {
      dn += v1[d] * near[d];
      df += v1[d] * far[d];
    }
    CHECK(dn > df);
  }

  TEST_CASE("100 texts in batches of 32: four provider calls") {
    CountingProvider provider;
    std::vector<std::string> texts;
    for (int i = 0; i < 100; ++i) texts.push_back("text " + std::to_string(i));
    auto out = EmbedBatch(provider, texts);
    CHECK(out.size() == 100);
    CHECK(provider.batch_sizes == std::vector<std::size_t>{32, 32, 32, 4});
    CHECK_THROWS_AS(EmbedBatch(provider, {}), Error);
  }

  TEST_CASE("a 383-long vector is a protocol error") {
    ShortVectorProvider provider;
    try {
      EmbedBatch(provider, {"one"});
      FAIL("expected protocol error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kProtocol);
    }
  }

  TEST_CASE("non-finite entries are rejected") {
    EmbeddingVector v{};
    v[5] = NAN;
    CHECK_THROWS_AS(CheckFinite(v), Error);
  }

  TEST_CASE("cache hit accounting: 90 papers with 30 cached sends 60") {
    auto papers = Papers(90);
    EmbeddingCache cache(std::nullopt);
    CountingProvider provider;
    std::vector<acquisition::Paper> first(papers.begin(), papers.begin() + 30);
    EmbedCorpus(first, provider, &cache, nullptr);
    provider.batch_sizes.clear();

    EmbedStats stats;
    auto m = EmbedCorpus(papers, provider, &cache, nullptr, {}, &stats);
    CHECK(provider.texts() == 60);
    CHECK(stats.cache_hits == 30);
    CHECK(stats.texts_sent == 60);
    CHECK(m.vectors.size() == 90);

    provider.batch_sizes.clear();
    EmbedCorpus(papers, provider, &cache, nullptr, {}, &stats);
    CHECK(provider.batch_sizes.empty());
    CHECK(stats.cache_hits == 90);
  }

  TEST_CASE("corpus matrix invariants") {
    auto papers = Papers(40);
    papers.push_back(papers[3]);
    papers.back().id = "copy";
    CountingProvider provider;
    auto m = EmbedCorpus(papers, provider, nullptr, nullptr, {3});
    REQUIRE(m.vectors.size() == papers.size());
    CHECK(provider.texts() == 40);  // the repeated text is sent once
    CHECK(m.normalized);
    CHECK(m.model_id == "mock-hash-384");
    for (std::size_t i = 0; i < papers.size(); ++i) {
      CHECK(m.paper_ids[i] == papers[i].id);
      CHECK(L2Norm(m.vectors[i]) == doctest::Approx(1.0).epsilon(1e-6));
    }
    CHECK(m.vectors[3] == m.vectors.back());
  }

  TEST_CASE("provider failure lists the missing papers") {
    CountingProvider provider;
    provider.fail = true;
    try {
      EmbedCorpus(Papers(3), provider, nullptr, nullptr);
      FAIL("expected failure");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kEmbeddingIncomplete);
      std::string msg = e.what();
      CHECK(msg.find("p0, p1, p2") != std::string::npos);
    }
  }

  TEST_CASE("persistent cache survives reopening") {
    testing_support::TempDir dir;
    MockEmbeddingProvider mock(5);
    auto v = mock.EmbedOne("hello agents");
    auto h = Sha256("hello agents");
    {
      EmbeddingCache cache(dir.path());
      cache.Put("m", h, v);
      CHECK(cache.Size("m") == 1);
    }
    EmbeddingCache reopened(dir.path());
    auto got = reopened.Get("m", h);
    REQUIRE(got);
    CHECK(*got == v);
    CHECK_FALSE(reopened.Get("other-model", h));
    CHECK(std::filesystem::file_size(dir / "m.rec") == EmbeddingCache::kRecordBytes);
  }

  TEST_CASE("later record for the same hash wins") {
    testing_support::TempDir dir;
    MockEmbeddingProvider mock(5);
    auto h = Sha256("key");
    {
      EmbeddingCache cache(dir.path());
      cache.Put("m", h, mock.EmbedOne("first"));
      cache.Put("m", h, mock.EmbedOne("second"));
    }
    EmbeddingCache reopened(dir.path());
    CHECK(*reopened.Get("m", h) == mock.EmbedOne("second"));
  }

  TEST_CASE("vector encoding round trip") {
    MockEmbeddingProvider mock(2);
    auto v = mock.EmbedOne("round trip");
    auto bytes = EncodeVector(v);
    CHECK(bytes.size() == kEmbeddingDim * 4);
    CHECK(DecodeVector(bytes) == v);
  }

  TEST_CASE("matrix serialization round trip and corruption") {
    CountingProvider provider;
    auto m = EmbedCorpus(Papers(5), provider, nullptr, nullptr);
    auto bytes = SerializeMatrix(m);
    CHECK(DeserializeMatrix(bytes) == m);
    CHECK_THROWS_AS(DeserializeMatrix(bytes.substr(0, bytes.size() - 1)), Error);
    CHECK_THROWS_AS(DeserializeMatrix(bytes + "x"), Error);
    CHECK_THROWS_AS(DeserializeMatrix("garbage!"), Error);
  }

  TEST_CASE("sidecar client: contract, order and health") {
    FakeSidecar sidecar;
    SidecarEmbeddingProvider client("http://127.0.0.1:8765/", sidecar);
    client.CheckHealth();
    std::vector<std::string> texts;
    for (int i = 0; i < 100; ++i) texts.push_back("text number " + std::to_string(i));
    texts[50] = texts[10];
    auto out = EmbedBatch(client, texts);
    REQUIRE(out.size() == 100);
    CHECK(sidecar.calls == 1 + 4);
    for (std::size_t i = 0; i < texts.size(); ++i) CHECK(out[i] == sidecar.mock.EmbedOne(texts[i]));
    CHECK(out[50] == out[10]);
  }

  TEST_CASE("sidecar client rejects a wrong model or dimension") {
    FakeSidecar sidecar;
    sidecar.model = "some-other-model";
    SidecarEmbeddingProvider client("http://127.0.0.1:8765", sidecar);
    CHECK_THROWS_AS(client.EmbedRaw(std::vector<std::string>{"a"}), Error);

    FakeSidecar narrow;
    narrow.dim = 383;
    SidecarEmbeddingProvider narrow_client("http://127.0.0.1:8765", narrow);
    try {
      narrow_client.CheckHealth();
      FAIL("expected unhealthy");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kProtocol);
    }
    try {
      narrow_client.EmbedRaw(std::vector<std::string>{"a"});
      FAIL("expected protocol error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kProtocol);
    }
  }

  TEST_CASE("sidecar corpus embedding satisfies the matrix invariants") {
    FakeSidecar sidecar;
    SidecarEmbeddingProvider client("http://127.0.0.1:8765", sidecar);
    auto papers = Papers(70);
    auto m = EmbedCorpus(papers, client, nullptr, nullptr, {1});
    CHECK(m.model_id == kDefaultRemoteModel);
    REQUIRE(m.vectors.size() == 70);
    for (std::size_t i = 0; i < papers.size(); ++i) {
      CHECK(m.paper_ids[i] == papers[i].id);
      CHECK(L2Norm(m.vectors[i]) == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
}
