// Copyright 2026 The fairtest-sym Authors
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

// Client for a model living in a child process.
//
// Wire protocol, newline-delimited JSON over the child's stdin/stdout:
//
//   engine -> {"op":"hello","version":1}
//   model  <- {"ok":true,"classes":2}
//   engine -> {"op":"predict","features":[3,0]}
//   model  <- {"class":1}
//
// A batch is sent as consecutive predict lines; replies are matched to
// requests by order. Any reply without an integer "class" in {0,1} is a
// ProtocolError.

#ifndef FAIRTEST_EXTERNAL_MODEL_H_
#define FAIRTEST_EXTERNAL_MODEL_H_

#include <sys/types.h>

#include <chrono>
#include <mutex>
#include <string>
#include <vector>

#include "fairtest/model.h"

namespace fairtest {

struct ExternalModelConfig {
  // Run through /bin/sh -c.
  std::string command;
  std::chrono::milliseconds timeout{5000};
};

class ExternalModel : public PredictionModel {
 public:
  // Spawns the child and performs the handshake. Throws ProtocolError,
  // TimeoutError or ChildExited.
  explicit ExternalModel(ExternalModelConfig config);
  ~ExternalModel() override;

  ExternalModel(const ExternalModel&) = delete;
  ExternalModel& operator=(const ExternalModel&) = delete;

  int Predict(const Instance& x) const override;
  std::vector<int> PredictBatch(std::span<const Instance> xs) const override;

  const ExternalModelConfig& config() const { return config_; }

 private:
  void Spawn();
  void Handshake();
  void WriteAll(const std::string& bytes) const;
  std::string ReadLine() const;
  void Shutdown() noexcept;

  ExternalModelConfig config_;
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  // Requests are serialized; const methods mutate the stream state.
  mutable std::mutex mu_;
  mutable std::string read_buffer_;
};

// Parses one predict reply. Exposed for tests.
int ParsePredictReply(const std::string& line);

}  // namespace fairtest

#endif  // FAIRTEST_EXTERNAL_MODEL_H_
