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

#include "infra/checkpoint.hpp"

#include <fcntl.h>
#include <signal.h>
#include <unistd.h>

#include <array>
#include <cerrno>
#include <json.hpp>

#include "common/error.hpp"
#include "common/files.hpp"
#include "common/sha256.hpp"

namespace litpipe::infra {
namespace {

constexpr std::array<std::string_view, 5> kStageNames = {"acquired", "embedded", "clustered",
                                                         "written", "evaluated"};

// A lock left behind by a process that no longer exists (a crashed run)
// does not block a resume.
bool LockHolderGone(const std::filesystem::path& lock) {
  std::string text;
  try {
    text = files::ReadFile(lock);
  } catch (const Error&) {
    return false;
  }
  long pid = 0;
  try {
    pid = std::stol(text);
  } catch (const std::exception&) {
    return false;
  }
  if (pid <= 0) return false;
  return ::kill(static_cast<pid_t>(pid), 0) != 0 && errno == ESRCH;
}

}  // namespace

std::string_view StageName(Stage stage) { return kStageNames[static_cast<int>(stage)]; }

std::optional<Stage> StageFromName(std::string_view name) {
  for (std::size_t i = 0; i < kStageNames.size(); ++i) {
    if (kStageNames[i] == name) return static_cast<Stage>(i);
  }
  return std::nullopt;
}

RunDirLock::RunDirLock(const std::filesystem::path& dir) : path_(dir / ".litpipe.lock") {
  std::filesystem::create_directories(dir);
  int fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
  if (fd < 0 && errno == EEXIST && LockHolderGone(path_)) {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
    fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
  }
  if (fd < 0) {
    Fail(ErrorCode::kIo, "run directory " + dir.string() + " is locked by another run (" +
                             path_.string() + ")");
  }
  auto pid = std::to_string(::getpid());
  [[maybe_unused]] auto n = ::write(fd, pid.data(), pid.size());
  ::close(fd);
}

RunDirLock::~RunDirLock() {
  std::error_code ec;
  std::filesystem::remove(path_, ec);
}

std::vector<ArtifactRecord> HashArtifacts(
    const std::filesystem::path& dir,
    const std::vector<std::pair<std::string, std::string>>& name_and_path) {
  std::vector<ArtifactRecord> out;
  out.reserve(name_and_path.size());
  for (const auto& [name, rel] : name_and_path) {
    out.push_back({name, rel, Sha256Hex(files::ReadFile(dir / rel))});
  }
  return out;
}

void SaveCheckpoint(const std::filesystem::path& dir, const Checkpoint& checkpoint) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["stage"] = StageName(checkpoint.stage);
  j["timestamp"] = checkpoint.timestamp;
  auto& arts = j["artifacts"] = nlohmann::ordered_json::array();
  for (const auto& a : checkpoint.artifacts) {
    arts.push_back({{"name", a.name}, {"path", a.path}, {"sha256", a.sha256}});
  }
  files::WriteFileAtomic(dir / kCheckpointFile, j.dump(2) + "\n");
}

std::optional<Checkpoint> LoadCheckpoint(const std::filesystem::path& dir) {
  auto path = dir / kCheckpointFile;
  if (!std::filesystem::exists(path)) return std::nullopt;
  Checkpoint cp;
  try {
    auto j = nlohmann::json::parse(files::ReadFile(path));
    auto stage = StageFromName(j.at("stage").get<std::string>());
    if (!stage) Fail(ErrorCode::kCorruptCheckpoint, "unknown stage in " + path.string());
    cp.stage = *stage;
    cp.timestamp = j.value("timestamp", "");
    for (const auto& a : j.at("artifacts")) {
      cp.artifacts.push_back({a.at("name").get<std::string>(), a.at("path").get<std::string>(),
                              a.at("sha256").get<std::string>()});
    }
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kCorruptCheckpoint, "unreadable checkpoint " + path.string() + ": " + e.what());
  }
  for (const auto& a : cp.artifacts) {
    auto file = dir / a.path;
    if (!std::filesystem::exists(file)) {
      Fail(ErrorCode::kCorruptCheckpoint,
           "checkpoint artifact missing: " + a.path + "; start a fresh run");
    }
    if (Sha256Hex(files::ReadFile(file)) != a.sha256) {
      Fail(ErrorCode::kCorruptCheckpoint,
           "checkpoint artifact hash mismatch: " + a.path + "; start a fresh run");
    }
  }
  return cp;
}

}  // namespace litpipe::infra
