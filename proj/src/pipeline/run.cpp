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

#include "pipeline/run.hpp"

#include <chrono>
#include <memory>
#include <optional>
#include <set>

#include "acquisition/acquire.hpp"
#include "acquisition/corpus_io.hpp"
#include "acquisition/sources.hpp"
#include "clustering/cluster.hpp"
#include "clustering/report.hpp"
#include "common/clock.hpp"
#include "common/error.hpp"
#include "common/files.hpp"
#include "common/sha256.hpp"
#include "embedding/cache.hpp"
#include "embedding/embed_corpus.hpp"
#include "embedding/provider.hpp"
#include "evaluator/evaluate.hpp"
#include "evaluator/report.hpp"
#include "infra/api_cache.hpp"
#include "infra/backoff.hpp"
#include "infra/checkpoint.hpp"
#include "infra/http.hpp"
#include "infra/rate_manager.hpp"
#include "infra/text_generator.hpp"
#include "writer/survey.hpp"
#include "writer/word_count.hpp"

namespace litpipe::pipeline {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

// Files each stage produces, relative to the run directory.
const std::vector<std::vector<std::pair<std::string, std::string>>>& StageArtifacts() {
  static const std::vector<std::vector<std::pair<std::string, std::string>>> kArtifacts = {
      {{"corpus", kCorpusFile}},
      {{"embeddings", kEmbeddingsFile}},
      {{"clusters", kClustersFile}, {"clustering_report", kClusterReportFile}},
      {{"survey", kSurveyFile}},
      {{"evaluation", kEvaluationFile}, {"evaluation_digest", kDigestFile}},
  };
  return kArtifacts;
}

infra::Stage CheckpointStage(StageId id) { return static_cast<infra::Stage>(static_cast<int>(id)); }

json ParseJsonFile(const fs::path& path) {
  auto text = files::ReadFile(path);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, path.filename().string() + ": " + e.what());
  }
}

acquisition::Corpus LoadCorpus(const fs::path& dir) {
  return acquisition::CorpusFromJson(ParseJsonFile(dir / kCorpusFile));
}

clustering::ClusteringResult LoadClusters(const fs::path& dir) {
  return clustering::ClusteringFromJson(ParseJsonFile(dir / kClustersFile));
}

class Runner {
 public:
  Runner(const PipelineConfig& config, std::string timestamp)
      : config_(config),
        dir_(config.out_dir),
        timestamp_(std::move(timestamp)),
        now_(ParseUtc(timestamp_)),
        uniform_(config.seed),
        rate_(clock_, uniform_) {}

  ojson RunStage(StageId stage) {
    switch (stage) {
      case StageId::kAcquire:
        return AcquireStage();
      case StageId::kEmbed:
        return EmbedStage();
      case StageId::kCluster:
        return ClusterStage();
      case StageId::kWrite:
        return WriteStage();
      case StageId::kEvaluate:
        return EvaluateStage();
    }
    Fail(ErrorCode::kInternalConsistency, "unknown stage");
  }

 private:
  std::shared_ptr<infra::HttpTransport> Transport() {
    if (!transport_) transport_ = infra::MakeHttplibTransport(60.0);
    return transport_;
  }

  std::unique_ptr<infra::TextGenerator> Generator(GenerationChoice choice) {
    if (choice == GenerationChoice::kMock) {
      infra::MockGeneratorOptions options;
      options.seed = config_.seed;
      return std::make_unique<infra::MockTextGenerator>(options);
    }
    return infra::MakeHttpTextGenerator(*config_.endpoints.generation, Transport());
  }

  ojson AcquireStage() {
    std::vector<std::unique_ptr<acquisition::PaperSource>> owned;
    if (config_.providers.search_fixture) {
      auto fixture = ParseJsonFile(*config_.providers.search_fixture);
      owned.push_back(acquisition::MakeFixtureSource(acquisition::Source::kSemanticScholar, fixture));
      owned.push_back(acquisition::MakeFixtureSource(acquisition::Source::kArxiv, fixture));
    } else {
      const auto& key = config_.endpoints.semantic_scholar_key;
      owned.push_back(acquisition::MakeSemanticScholarSource(Transport(), key));
      owned.push_back(acquisition::MakeArxivSource(Transport()));
      rate_.SetMinInterval("semantic-scholar", Seconds(key ? 1.0 : 3.0));
      rate_.SetMinInterval("arxiv", Seconds(3.0));
    }
    infra::ApiCache cache(config_.CacheRoot() / "api");
    auto generator = Generator(config_.providers.generation);

    acquisition::AcquisitionContext context;
    for (auto& s : owned) context.sources.push_back(s.get());
    context.rate = &rate_;
    context.cache = &cache;
    context.query_generator = generator.get();
    context.now = now_;
    auto acq = config_.acquisition;
    acq.max_concurrency = config_.max_concurrency;

    auto result = acquisition::Acquire(config_.topic, acq, context);
    files::WriteFileAtomic(dir_ / kCorpusFile, acquisition::SerializeCorpus(result.corpus));

    const auto& stats = result.corpus.stats;
    ojson counts;
    counts["queries"] = result.corpus.queries.queries.size();
    counts["fetched"] = stats.fetched;
    counts["deduplicated"] = stats.deduplicated;
    counts["filtered"] = stats.filtered;
    counts["papers"] = stats.final;
    counts["degraded"] = result.corpus.degraded;
    auto& sources = counts["sources"] = ojson::object();
    for (const auto& [name, s] : result.report.sources) {
      sources[name] = {{"calls", s.calls},           {"failures", s.failures},
                       {"cache_hits", s.cache_hits}, {"stale_hits", s.stale_hits},
                       {"retries", s.retries},       {"available", s.available}};
    }
    counts["rejected"] = {{"no_title", result.report.rejected_no_title},
                          {"no_year", result.report.rejected_no_year},
                          {"parse_errors", result.report.parse_errors},
                          {"year", result.report.filter_rejections.year},
                          {"abstract", result.report.filter_rejections.abstract},
                          {"citations", result.report.filter_rejections.citations}};
    counts["warnings"] = result.report.warnings;
    return counts;
  }

  ojson EmbedStage() {
    auto corpus = LoadCorpus(dir_);
    std::unique_ptr<embedding::EmbeddingProvider> provider;
    if (config_.providers.embedding == EmbeddingChoice::kMock) {
      provider = std::make_unique<embedding::MockEmbeddingProvider>(config_.seed);
    } else {
      auto sidecar = std::make_unique<embedding::SidecarEmbeddingProvider>(
          *config_.endpoints.embedding, *Transport(), config_.endpoints.embedding_model);
      sidecar->CheckHealth();
      provider = std::move(sidecar);
    }
    embedding::EmbeddingCache cache(config_.CacheRoot() / "embeddings");
    embedding::EmbedOptions options;
    options.max_concurrency = config_.max_concurrency;
    embedding::EmbedStats stats;
    auto matrix = embedding::EmbedCorpus(corpus.papers, *provider, &cache, &rate_, options, &stats);
    files::WriteFileAtomic(dir_ / kEmbeddingsFile, embedding::SerializeMatrix(matrix));

    ojson counts;
    counts["papers"] = matrix.vectors.size();
    counts["model_id"] = matrix.model_id;
    counts["cache_hits"] = stats.cache_hits;
    counts["texts_sent"] = stats.texts_sent;
    counts["provider_calls"] = stats.provider_calls;
    return counts;
  }

  ojson ClusterStage() {
    auto corpus = LoadCorpus(dir_);
    auto matrix = embedding::DeserializeMatrix(files::ReadFile(dir_ / kEmbeddingsFile));
    clustering::ClusterOptions options;
    options.k_min = config_.k_min;
    options.k_max = config_.k_max;
    options.seed = config_.seed;
    options.parallel = config_.max_concurrency > 1;
    auto namer = Generator(config_.providers.generation);
    auto result = clustering::ClusterCorpus(corpus, matrix, options, namer.get());

    files::WriteFileAtomic(dir_ / kClustersFile, clustering::ClusteringToJson(result).dump(2) + "\n");
    files::WriteFileAtomic(dir_ / kClusterReportFile,
                           clustering::RenderClusterReport(result, corpus.papers, timestamp_));

    ojson counts;
    counts["papers"] = result.paper_ids.size();
    counts["clusters"] = result.assignment.k;
    counts["k_range"] = {result.selection.range.lo, result.selection.range.hi};
    counts["silhouette"] = clustering::NumberJson(result.diagnostics.silhouette);
    counts["warnings"] = result.warnings;
    return counts;
  }

  ojson WriteStage() {
    auto corpus_bytes = files::ReadFile(dir_ / kCorpusFile);
    auto clusters_bytes = files::ReadFile(dir_ / kClustersFile);
    auto corpus = LoadCorpus(dir_);
    auto clusters = LoadClusters(dir_);

    writer::SurveyInputs inputs;
    inputs.corpus = &corpus;
    inputs.clusters = &clusters;
    inputs.corpus_sha256 = Sha256Hex(corpus_bytes);
    inputs.clusters_sha256 = Sha256Hex(clusters_bytes);
    inputs.timestamp = timestamp_;
    writer::WriterOptions options;
    options.word_budget = config_.word_budget;
    options.coverage_min = config_.coverage_min;
    options.coverage_target = config_.coverage_target;
    options.max_concurrency = config_.max_concurrency;
    options.seed = config_.seed;
    auto generator = Generator(config_.providers.generation);
    auto doc = writer::WriteSurvey(inputs, options, *generator, &rate_);
    files::WriteFileAtomic(dir_ / kSurveyFile, doc.markdown);

    std::size_t failed = 0;
    for (const auto& s : doc.sections) failed += s.failed ? 1 : 0;
    ojson counts;
    counts["papers"] = corpus.papers.size();
    counts["sections"] = doc.sections.size();
    counts["failed_sections"] = failed;
    counts["word_count"] = doc.word_count;
    counts["cited_papers"] = doc.resolution.cited_ids.size();
    counts["coverage"] = doc.coverage;
    counts["coverage_history"] = doc.coverage_history;
    counts["augmentation_requests"] = doc.augmentation_requests;
    counts["unresolved_citations"] = doc.resolution.unresolved.size();
    counts["warnings"] = doc.warnings;
    return counts;
  }

  ojson EvaluateStage() {
    auto survey = files::ReadFile(dir_ / kSurveyFile);
    auto corpus = LoadCorpus(dir_);
    auto clusters = LoadClusters(dir_);
    evaluator::EvaluatorOptions options;
    options.coverage_min = config_.coverage_min;
    options.coverage_target = config_.coverage_target;
    options.max_concurrency = config_.max_concurrency;
    options.seed = config_.seed;
    auto judge = Generator(config_.providers.judge);
    auto report =
        evaluator::EvaluateSurvey(survey, corpus, clusters, options, *judge, &rate_, timestamp_);
    files::WriteFileAtomic(dir_ / kEvaluationFile, evaluator::ReportToJson(report).dump(2) + "\n");
    files::WriteFileAtomic(dir_ / kDigestFile, evaluator::RenderDigest(report));

    ojson counts;
    counts["papers"] = corpus.papers.size();
    counts["complete"] = report.complete();
    counts["overall"] = report.scores ? ojson(evaluator::Round2(report.scores->overall)) : ojson();
    counts["missing_dimensions"] = report.missing_dimensions;
    counts["citation_coverage"] = report.metrics.citation_coverage;
    return counts;
  }

  const PipelineConfig& config_;
  fs::path dir_;
  std::string timestamp_;
  TimePoint now_;
  SystemClock clock_;
  infra::SeededUniform uniform_;
  infra::RateManager rate_;
  std::shared_ptr<infra::HttpTransport> transport_;
};

// Degradation is read back from the artifacts so that resumed runs report
// the same flags as uninterrupted ones.
std::vector<std::string> DegradedFlags(const fs::path& dir) {
  std::vector<std::string> flags;
  try {
    if (fs::exists(dir / kCorpusFile) && LoadCorpus(dir).degraded) {
      flags.push_back("acquisition_degraded");
    }
    if (fs::exists(dir / kClustersFile) && !LoadClusters(dir).warnings.empty()) {
      flags.push_back("clustering_warnings");
    }
    if (fs::exists(dir / kSurveyFile) &&
        files::ReadFile(dir / kSurveyFile).find("<!-- section-failed") != std::string::npos) {
      flags.push_back("survey_sections_failed");
    }
    if (fs::exists(dir / kEvaluationFile)) {
      auto j = ParseJsonFile(dir / kEvaluationFile);
      if (!j.value("complete", false)) flags.push_back("evaluation_incomplete");
      const auto& m = j.at("deterministic_metrics");
      if (!m.value("coverage_min_met", true)) flags.push_back("coverage_below_minimum");
    }
  } catch (const std::exception& e) {
    flags.push_back(std::string("unreadable_artifact: ") + e.what());
  }
  return flags;
}

ojson ProcessingMetrics(const fs::path& dir, const std::vector<StageReport>& stages,
                        double total_ms) {
  ojson m;
  m["papers_processed"] = nullptr;
  m["queries_generated"] = nullptr;
  m["cluster_count"] = nullptr;
  m["clusters_cited"] = nullptr;
  m["survey_length_chars"] = nullptr;
  m["survey_length_words"] = nullptr;
  try {
    if (fs::exists(dir / kCorpusFile)) {
      auto corpus = LoadCorpus(dir);
      m["papers_processed"] = corpus.papers.size();
      m["queries_generated"] = corpus.queries.queries.size();
    }
    if (fs::exists(dir / kClustersFile)) m["cluster_count"] = LoadClusters(dir).assignment.k;
    if (fs::exists(dir / kSurveyFile)) {
      auto survey = files::ReadFile(dir / kSurveyFile);
      m["survey_length_chars"] = survey.size();
      m["survey_length_words"] = writer::WordCount(survey);
    }
    if (fs::exists(dir / kEvaluationFile)) {
      auto j = ParseJsonFile(dir / kEvaluationFile);
      std::size_t cited = 0;
      for (const auto& c : j.at("deterministic_metrics").at("citations_per_cluster")) {
        if (c.value("cited", 0) > 0) ++cited;
      }
      m["clusters_cited"] = cited;
    }
  } catch (const std::exception&) {
    // Metrics are best effort; degraded_flags reports unreadable artifacts.
  }
  auto duration = [&](StageId id) {
    const auto& s = stages[static_cast<int>(id)];
    return s.status == StageStatus::kCompleted ? ojson(s.duration_ms) : ojson();
  };
  m["acquisition_time_ms"] = duration(StageId::kAcquire);
  m["embedding_time_ms"] = duration(StageId::kEmbed);
  m["clustering_time_ms"] = duration(StageId::kCluster);
  m["survey_generation_time_ms"] = duration(StageId::kWrite);
  m["evaluation_time_ms"] = duration(StageId::kEvaluate);
  m["total_processing_time_ms"] = total_ms;
  return m;
}

double ElapsedMs(std::chrono::steady_clock::time_point since) {
  auto d = std::chrono::steady_clock::now() - since;
  return static_cast<double>(std::chrono::duration_cast<std::chrono::microseconds>(d).count()) /
         1000.0;
}

std::string Summarize(const PipelineConfig& config, const std::string& timestamp,
                      const RunResult& result, const std::optional<StageId>& failed_stage,
                      double total_ms) {
  ojson j;
  j["schema"] = 1;
  j["topic"] = config.topic;
  j["seed"] = config.seed;
  j["providers"] = ProviderSpecString(config.providers);
  j["timestamp"] = timestamp;
  j["exit_code"] = result.exit_code;
  j["status"] = result.exit_code == kExitSuccess ? "success" : "failed";
  if (result.exit_code != kExitSuccess) {
    j["failure"] = {{"stage", failed_stage ? ojson(StageIdName(*failed_stage)) : ojson("resume")},
                    {"error", result.error}};
  } else {
    j["failure"] = nullptr;
  }
  auto& stages = j["stages"] = ojson::array();
  for (const auto& s : result.stages) {
    ojson entry;
    entry["name"] = StageIdName(s.stage);
    entry["status"] = StageStatusName(s.status);
    entry["duration_ms"] = s.duration_ms;
    entry["counts"] = s.counts;
    if (!s.note.empty()) entry["note"] = s.note;
    stages.push_back(std::move(entry));
  }
  auto& outputs = j["outputs"] = ojson::object();
  for (const auto& stage : StageArtifacts()) {
    for (const auto& [name, rel] : stage) {
      if (fs::exists(config.out_dir / rel)) outputs[name] = rel;
    }
  }
  outputs["summary"] = kSummaryFile;
  outputs["run_state"] = infra::kCheckpointFile;
  j["degraded_flags"] = result.degraded_flags;
  j["processing_metrics"] = ProcessingMetrics(config.out_dir, result.stages, total_ms);
  auto& warnings = j["warnings"] = ojson::array();
  for (const auto& d : result.validation.diagnostics) {
    if (d.severity == Severity::kWarning) warnings.push_back(d.message);
  }
  return j.dump(2) + "\n";
}

}  // namespace

std::string_view StageStatusName(StageStatus status) {
  switch (status) {
    case StageStatus::kCompleted:
      return "completed";
    case StageStatus::kSkipped:
      return "skipped";
    case StageStatus::kFailed:
      return "failed";
    case StageStatus::kNotRun:
      return "not_run";
  }
  return "not_run";
}

RunResult Run(const PipelineConfig& config, const RunHooks& hooks) {
  RunResult result;
  ValidateOptions vopts;
  vopts.check_network = false;
  result.validation = Validate(config, vopts);
  if (result.validation.fatal()) {
    result.exit_code = kExitConfigError;
    for (const auto& d : result.validation.diagnostics) {
      if (d.severity != Severity::kFatal) continue;
      if (!result.error.empty()) result.error += "; ";
      result.error += d.message;
    }
    return result;
  }

  const auto started = std::chrono::steady_clock::now();
  const fs::path& dir = config.out_dir;
  for (int i = 0; i < kStageCount; ++i) {
    StageReport report;
    report.stage = static_cast<StageId>(i);
    result.stages.push_back(std::move(report));
  }

  std::optional<infra::RunDirLock> lock;
  try {
    lock.emplace(dir);
  } catch (const Error& e) {
    result.exit_code = kExitConfigError;
    result.error = e.what();
    return result;
  }

  std::string timestamp;
  std::optional<infra::Checkpoint> checkpoint;
  std::optional<StageId> failed_stage;
  auto fail_before_stages = [&](int exit_code, const std::string& error) {
    result.exit_code = exit_code;
    result.error = error;
    for (auto& s : result.stages) s.note = "resume refused";
  };

  try {
    timestamp = ResolveTimestamp(config.timestamp);
    checkpoint = infra::LoadCheckpoint(dir);
    auto fingerprint = Fingerprint(config);
    if (checkpoint) {
      auto stored = ParseJsonFile(dir / kRunConfigFile);
      if (json::parse(fingerprint.dump()) != stored.at("fingerprint")) {
        result.exit_code = kExitConfigError;
        result.error = "output directory holds a run with a different configuration; "
                       "use a fresh directory";
        return result;
      }
      // A resumed run keeps the original run's timestamp.
      timestamp = stored.at("timestamp").get<std::string>();
    } else {
      ojson run_config;
      run_config["fingerprint"] = fingerprint;
      run_config["timestamp"] = timestamp;
      files::WriteFileAtomic(dir / kRunConfigFile, run_config.dump(2) + "\n");
    }
  } catch (const std::exception& e) {
    fail_before_stages(kExitStageFailure, e.what());
  }

  if (result.exit_code == kExitSuccess) {
    std::set<StageId> selected;
    if (config.stages.empty()) {
      int first = checkpoint ? static_cast<int>(checkpoint->stage) + 1 : 0;
      for (int i = first; i < kStageCount; ++i) selected.insert(static_cast<StageId>(i));
    } else {
      selected.insert(config.stages.begin(), config.stages.end());
    }

    Runner runner(config, timestamp);
    for (int i = 0; i < kStageCount; ++i) {
      auto id = static_cast<StageId>(i);
      auto& report = result.stages[i];
      if (failed_stage) {
        report.status = StageStatus::kNotRun;
        report.note = "earlier stage failed";
        continue;
      }
      if (!selected.count(id)) {
        report.status = StageStatus::kSkipped;
        report.note = checkpoint && static_cast<int>(checkpoint->stage) >= i ? "checkpointed"
                                                                              : "not selected";
        continue;
      }
      auto stage_start = std::chrono::steady_clock::now();
      try {
        report.counts = runner.RunStage(id);

        std::vector<std::pair<std::string, std::string>> artifacts = {{"run_config",
                                                                       kRunConfigFile}};
        for (int j = 0; j <= i; ++j) {
          for (const auto& a : StageArtifacts()[j]) {
            if (fs::exists(dir / a.second)) artifacts.push_back(a);
          }
        }
        infra::Checkpoint cp;
        cp.stage = CheckpointStage(id);
        cp.artifacts = infra::HashArtifacts(dir, artifacts);
        cp.timestamp = timestamp;
        infra::SaveCheckpoint(dir, cp);
        report.status = StageStatus::kCompleted;
        report.duration_ms = ElapsedMs(stage_start);
        if (hooks.after_checkpoint) hooks.after_checkpoint(id);
      } catch (const std::exception& e) {
        report.status = StageStatus::kFailed;
        report.duration_ms = ElapsedMs(stage_start);
        report.note = e.what();
        failed_stage = id;
        result.exit_code = kExitStageFailure;
        result.error = std::string(StageIdName(id)) + ": " + e.what();
      }
    }
  }

  result.degraded_flags = DegradedFlags(dir);
  double total_ms = ElapsedMs(started);
  result.summary_json = Summarize(config, timestamp, result, failed_stage, total_ms);
  try {
    files::WriteFileAtomic(dir / kSummaryFile, result.summary_json);
  } catch (const std::exception& e) {
    if (result.exit_code == kExitSuccess) result.exit_code = kExitStageFailure;
    result.error += std::string(result.error.empty() ? "" : "; ") + e.what();
  }
  return result;
}

}  // namespace litpipe::pipeline
