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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace litpipe::infra {

enum class Stage { kAcquired = 0, kEmbedded, kClustered, kWritten, kEvaluated };

std::string_view StageName(Stage stage);
std::optional<Stage> StageFromName(std::string_view name);

struct ArtifactRecord {
  std::string name;
  // Relative to the run directory.
  std::string path;
  std::string sha256;
};

struct Checkpoint {
  Stage stage = Stage::kAcquired;
  // Every artifact produced by this stage and all earlier ones.
  std::vector<ArtifactRecord> artifacts;
  std::string timestamp;
};

inline constexpr const char* kCheckpointFile = "run_state.json";

// Exclusive per-directory lock (lock file created with O_EXCL). Throws
// Error(kIo) when another run holds the directory.
class RunDirLock {
 public:
  explicit RunDirLock(const std::filesystem::path& dir);
  ~RunDirLock();
  RunDirLock(const RunDirLock&) = delete;
  RunDirLock& operator=(const RunDirLock&) = delete;

 private:
  std::filesystem::path path_;
};

// Hashes the named artifacts (paths relative to dir) into a record list.
std::vector<ArtifactRecord> HashArtifacts(
    const std::filesystem::path& dir,
    const std::vector<std::pair<std::string, std::string>>& name_and_path);

// Atomic write-temp-then-rename of run_state.json.
void SaveCheckpoint(const std::filesystem::path& dir, const Checkpoint& checkpoint);

// nullopt for a directory without run_state.json. Throws
// Error(kCorruptCheckpoint) if the file is unreadable or any artifact hash no
// longer matches.
std::optional<Checkpoint> LoadCheckpoint(const std::filesystem::path& dir);

}  // namespace litpipe::infra
