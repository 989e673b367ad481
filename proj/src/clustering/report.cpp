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

#include "clustering/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "common/error.hpp"
#include "common/text.hpp"

namespace litpipe::clustering {
namespace {

std::string Plural(std::size_t n, const char* one, const char* many) {
  return fmt::format("{} {}", n, n == 1 ? one : many);
}

void CheckConsistent(const ClusteringResult& r, const std::vector<acquisition::Paper>& papers) {
  const int k = r.assignment.k;
  bool ok = r.assignment.labels.size() == papers.size() &&
            r.profiles.size() == static_cast<std::size_t>(k) &&
            r.assignment.centroids.rows() == static_cast<std::size_t>(k) && k >= 1;
  std::size_t total = 0;
  for (std::size_t j = 0; ok && j < r.profiles.size(); ++j) {
    ok = r.profiles[j].index == static_cast<int>(j) &&
         r.profiles[j].size == r.profiles[j].member_ids.size() && r.profiles[j].size >= 1;
    total += r.profiles[j].size;
  }
  for (int l : r.assignment.labels) ok = ok && l >= 0 && l < k;
  if (!ok || total != papers.size()) {
    Fail(ErrorCode::kInternalConsistency, "clustering result does not match the corpus");
  }
}

double Percent(std::size_t part, std::size_t whole) {
  return 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

}  // namespace

nlohmann::ordered_json NumberJson(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
  return v;
}

double NumberFromJson(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "Infinity") return std::numeric_limits<double>::infinity();
    if (s == "-Infinity") return -std::numeric_limits<double>::infinity();
    if (s == "NaN") return std::numeric_limits<double>::quiet_NaN();
  }
  Fail(ErrorCode::kParse, "expected a number, got " + j.dump());
}

std::string RenderClusterReport(const ClusteringResult& r,
                                const std::vector<acquisition::Paper>& papers,
                                const std::string& generated_at) {
  CheckConsistent(r, papers);
  const std::size_t n = papers.size();
  const int k = r.assignment.k;
  const auto& d = r.diagnostics;
  std::string md;
  auto line = [&md](const std::string& s) {
    md += s;
    md += '\n';
  };

  line(fmt::format("# {} - Clustering Report", r.topic));
  line("");
  line("Generated: " + generated_at);
  line("");
  line("## Summary Statistics");
  line("");
  line(fmt::format("- **Total Papers**: {}", n));
  line(fmt::format("- **Number of Clusters**: {}", k));
  line(fmt::format("- **Clustering Method**: K-means (k-means++ seeding, best of 10 restarts, "
                   "seed {}) on {} embeddings",
                   r.assignment.seed, r.model_id));
  line(fmt::format("- **Average Cluster Size**: {:.1f}",
                   static_cast<double>(n) / static_cast<double>(k)));
  line("");
  line("## Clustering Quality Metrics");
  line("");
  line(fmt::format("- **Silhouette Score**: {:.3f} (range: -1 to 1, higher is better)",
                   d.silhouette));
  line(fmt::format("- **Calinski-Harabasz Score**: {:.1f} (higher is better)",
                   d.calinski_harabasz));
  line(fmt::format("- **Davies-Bouldin Score**: {:.3f} (lower is better)", d.davies_bouldin));
  line("");
  if (!r.selection.scores.empty()) {
    line("## K Selection");
    line("");
    line(fmt::format("Silhouette by K over [{}, {}]:", r.selection.range.lo,
                     r.selection.range.hi));
    line("");
    for (const auto& [kk, s] : r.selection.scores) {
      line(fmt::format("- K={}: {:.3f}{}", kk, s, kk == r.selection.k_star ? " (selected)" : ""));
    }
    line("");
  }
  line("## Cluster Size Distribution");
  line("");
  for (const auto& p : r.profiles) {
    line(fmt::format("- **{}**: {} ({:.1f}%)", p.name, Plural(p.size, "paper", "papers"),
                     Percent(p.size, n)));
  }
  line("");
  line("## Detailed Cluster Analysis");

  std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < n; ++i) {
    members[static_cast<std::size_t>(r.assignment.labels[i])].push_back(i);
  }
  for (const auto& p : r.profiles) {
    line("");
    line(fmt::format("### Cluster {}: {}", p.index, p.name));
    line("");
    line("*Statistics:*");
    line("");
    line(fmt::format("- Papers: {}", p.size));
    line(fmt::format("- Average Year: {}", std::lround(p.avg_year)));
    line(fmt::format("- Average Citations: {:.1f}", p.avg_citations));
    line(fmt::format("- Cluster Confidence: {:.1f}%", 100.0 * p.mean_confidence));
    line("");
    line("*Key Terms:* " + text::Join(p.key_terms, ", "));
    line("");
    line("*Sample Papers in Cluster:*");
    line("");
    auto m = members[static_cast<std::size_t>(p.index)];
    std::stable_sort(m.begin(), m.end(), [&](std::size_t a, std::size_t b) {
      return papers[a].citation_count > papers[b].citation_count;
    });
    for (std::size_t s = 0; s < std::min<std::size_t>(5, m.size()); ++s) {
      line(fmt::format("{}. {} ({})", s + 1, papers[m[s]].title, papers[m[s]].year));
    }
  }
  line("");
  line("## Inter-Cluster Relationships");
  line("");
  if (r.relationships.empty()) line("- Single cluster; no relationships.");
  for (const auto& rel : r.relationships) {
    line(fmt::format("- **{}** <-> **{}**: {} (strength: {:.3f})",
                     r.profiles[static_cast<std::size_t>(rel.a)].name,
                     r.profiles[static_cast<std::size_t>(rel.b)].name,
                     RelationshipLabelName(rel.label), rel.strength));
  }
  line("");
  line("## Key Insights");
  line("");
  std::vector<std::size_t> order(r.profiles.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return r.profiles[a].size > r.profiles[b].size;
  });
  line(fmt::format("Largest themes in {}:", r.topic));
  line("");
  for (std::size_t s = 0; s < std::min<std::size_t>(3, order.size()); ++s) {
    const auto& p = r.profiles[order[s]];
    std::vector<std::string> focus(p.key_terms.begin(),
                                   p.key_terms.begin() +
                                       static_cast<std::ptrdiff_t>(std::min<std::size_t>(3, p.key_terms.size())));
    line(fmt::format("{}. **{}** ({:.1f}% of papers): Focus on {}", s + 1, p.name,
                     Percent(p.size, n), text::Join(focus, ", ")));
  }
  if (!r.relationships.empty()) {
    std::size_t overlapping = 0;
    for (const auto& rel : r.relationships) {
      overlapping += rel.label == RelationshipLabel::kOverlapping;
    }
    const auto& top = r.relationships.front();
    const auto& bottom = r.relationships.back();
    line("");
    line(fmt::format(
        "{} of {} cluster pairs overlap (strength >= {:.2f}). Closest pair: {} and {} ({:.3f}). "
        "Most separate pair: {} and {} ({:.3f}).",
        overlapping, r.relationships.size(), kOverlappingThreshold,
        r.profiles[static_cast<std::size_t>(top.a)].name,
        r.profiles[static_cast<std::size_t>(top.b)].name, top.strength,
        r.profiles[static_cast<std::size_t>(bottom.a)].name,
        r.profiles[static_cast<std::size_t>(bottom.b)].name, bottom.strength));
  }
  return md;
}

nlohmann::ordered_json ClusteringToJson(const ClusteringResult& r) {
  using J = nlohmann::ordered_json;
  J j;
  j["schema"] = kClustersSchema;
  j["topic"] = r.topic;
  j["model_id"] = r.model_id;
  j["K"] = r.assignment.k;
  j["seed"] = r.assignment.seed;
  j["iterations_run"] = r.assignment.iterations_run;
  j["converged"] = r.assignment.converged;
  j["inertia"] = NumberJson(r.assignment.inertia);
  j["paper_ids"] = r.paper_ids;
  j["labels"] = r.assignment.labels;
  j["confidences"] = r.confidences;
  auto& cents = j["centroids"] = J::array();
  for (std::size_t c = 0; c < r.assignment.centroids.rows(); ++c) {
    auto row = r.assignment.centroids.Row(c);
    cents.push_back(std::vector<double>(row.begin(), row.end()));
  }
  const auto& d = r.diagnostics;
  j["diagnostics"] = {{"silhouette", NumberJson(d.silhouette)},
                      {"calinski_harabasz", NumberJson(d.calinski_harabasz)},
                      {"davies_bouldin", NumberJson(d.davies_bouldin)},
                      {"per_point_silhouette", d.per_point_silhouette},
                      {"per_point_a", d.per_point_a},
                      {"per_point_b", J::array()},
                      {"warnings", d.warnings}};
  for (double b : d.per_point_b) j["diagnostics"]["per_point_b"].push_back(NumberJson(b));
  J scores = J::object();
  for (const auto& [kk, s] : r.selection.scores) scores[std::to_string(kk)] = NumberJson(s);
  j["k_selection"] = {{"k_star", r.selection.k_star},
                      {"range", {r.selection.range.lo, r.selection.range.hi}},
                      {"scores", scores}};
  auto& profiles = j["profiles"] = J::array();
  for (std::size_t c = 0; c < r.profiles.size(); ++c) {
    const auto& p = r.profiles[c];
    J terms = J::array();
    if (c < r.terms.size()) {
      for (const auto& t : r.terms[c]) {
        terms.push_back({{"term", t.term}, {"tf", t.tf}, {"score", t.score}});
      }
    }
    profiles.push_back({{"index", p.index},
                        {"name", p.name},
                        {"key_terms", p.key_terms},
                        {"term_scores", terms},
                        {"size", p.size},
                        {"avg_year", p.avg_year},
                        {"avg_citations", p.avg_citations},
                        {"mean_confidence", p.mean_confidence},
                        {"member_ids", p.member_ids}});
  }
  auto& rels = j["relationships"] = J::array();
  for (const auto& rel : r.relationships) {
    rels.push_back({{"pair", {rel.a, rel.b}},
                    {"strength", rel.strength},
                    {"label", RelationshipLabelName(rel.label)}});
  }
  j["warnings"] = r.warnings;
  return j;
}

ClusteringResult ClusteringFromJson(const nlohmann::json& j) {
  try {
    if (j.at("schema").get<int>() != kClustersSchema) {
      Fail(ErrorCode::kParse, "unsupported clusters.json schema");
    }
    ClusteringResult r;
    r.topic = j.at("topic").get<std::string>();
    r.model_id = j.at("model_id").get<std::string>();
    r.paper_ids = j.at("paper_ids").get<std::vector<std::string>>();
    auto& a = r.assignment;
    a.k = j.at("K").get<int>();
    a.seed = j.at("seed").get<std::uint64_t>();
    a.iterations_run = j.at("iterations_run").get<int>();
    a.converged = j.at("converged").get<bool>();
    a.inertia = NumberFromJson(j.at("inertia"));
    a.labels = j.at("labels").get<std::vector<int>>();
    r.confidences = j.at("confidences").get<std::vector<double>>();
    a.centroids = FromRows(j.at("centroids").get<std::vector<std::vector<double>>>());
    const auto& d = j.at("diagnostics");
    r.diagnostics.silhouette = NumberFromJson(d.at("silhouette"));
    r.diagnostics.calinski_harabasz = NumberFromJson(d.at("calinski_harabasz"));
    r.diagnostics.davies_bouldin = NumberFromJson(d.at("davies_bouldin"));
    r.diagnostics.per_point_silhouette = d.at("per_point_silhouette").get<std::vector<double>>();
    r.diagnostics.per_point_a = d.at("per_point_a").get<std::vector<double>>();
    for (const auto& b : d.at("per_point_b")) r.diagnostics.per_point_b.push_back(NumberFromJson(b));
    r.diagnostics.warnings = d.at("warnings").get<std::vector<std::string>>();
    const auto& ks = j.at("k_selection");
    r.selection.k_star = ks.at("k_star").get<int>();
    r.selection.range = {ks.at("range").at(0).get<int>(), ks.at("range").at(1).get<int>()};
    for (const auto& [key, v] : ks.at("scores").items()) {
      r.selection.scores[std::stoi(key)] = NumberFromJson(v);
    }
    r.selection.best = a;
    for (const auto& pj : j.at("profiles")) {
      ClusterProfile p;
      p.index = pj.at("index").get<int>();
      p.name = pj.at("name").get<std::string>();
      p.key_terms = pj.at("key_terms").get<std::vector<std::string>>();
      p.size = pj.at("size").get<std::size_t>();
      p.avg_year = pj.at("avg_year").get<double>();
      p.avg_citations = pj.at("avg_citations").get<double>();
      p.mean_confidence = pj.at("mean_confidence").get<double>();
      p.member_ids = pj.at("member_ids").get<std::vector<std::string>>();
      std::vector<TermScore> terms;
      for (const auto& t : pj.at("term_scores")) {
        terms.push_back({t.at("term").get<std::string>(), t.at("tf").get<long>(),
                         t.at("score").get<double>()});
      }
      r.terms.push_back(std::move(terms));
      r.profiles.push_back(std::move(p));
    }
    for (const auto& rj : j.at("relationships")) {
      ClusterRelationship rel;
      rel.a = rj.at("pair").at(0).get<int>();
      rel.b = rj.at("pair").at(1).get<int>();
      rel.strength = rj.at("strength").get<double>();
      rel.label = LabelStrength(rel.strength);
      r.relationships.push_back(rel);
    }
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    if (a.labels.size() != r.paper_ids.size() || r.profiles.size() != static_cast<std::size_t>(a.k)) {
      Fail(ErrorCode::kParse, "clusters.json is internally inconsistent");
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParse, std::string("malformed clusters.json: ") + e.what());
  }
}

}  // namespace litpipe::clustering
