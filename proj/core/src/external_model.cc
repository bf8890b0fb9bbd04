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

#include "fairtest/external_model.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <mutex>
#include <thread>

#include "fairtest/errors.h"
#include "json.hpp"

namespace fairtest {

namespace {

using nlohmann::json;

// Keeps replies well under the pipe buffer so the child never blocks on
// stdout while we are still writing its stdin.
constexpr std::size_t kMaxInFlight = 256;

std::string PredictRequest(const Instance& x) {
  json req;
  req["op"] = "predict";
  req["features"] = x.values;
  return req.dump() + "\n";
}

void IgnoreSigpipeOnce() {
  static std::once_flag flag;
  std::call_once(flag, [] { ::signal(SIGPIPE, SIG_IGN); });
}

}  // namespace

int ParsePredictReply(const std::string& line) {
  json reply;
  try {
    reply = json::parse(line);
  } catch (const json::exception&) {
    throw ProtocolError("model reply is not JSON: " + line);
  }
  if (!reply.is_object() || !reply.contains("class") ||
      !reply["class"].is_number_integer()) {
    throw ProtocolError("model reply lacks integer \"class\": " + line);
  }
  const auto cls = reply["class"].get<long long>();
  if (cls != 0 && cls != 1) {
    throw ProtocolError("model reply class out of range: " + line);
  }
  return static_cast<int>(cls);
}

ExternalModel::ExternalModel(ExternalModelConfig config)
    : config_(std::move(config)) {
  if (config_.timeout.count() <= 0) {
    throw PreconditionError("external model timeout must be positive");
  }
  if (config_.command.empty()) {
    throw PreconditionError("external model command is empty");
  }
  IgnoreSigpipeOnce();
  Spawn();
  try {
    Handshake();
  } catch (...) {
    Shutdown();
    throw;
  }
}

ExternalModel::~ExternalModel() { Shutdown(); }

void ExternalModel::Spawn() {
  int in_pipe[2];
  int out_pipe[2];
  if (::pipe2(in_pipe, O_CLOEXEC) != 0) {
    throw ChildExited(std::string("pipe: ") + std::strerror(errno));
  }
  if (::pipe2(out_pipe, O_CLOEXEC) != 0) {
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    throw ChildExited(std::string("pipe: ") + std::strerror(errno));
  }
  pid_ = ::fork();
  if (pid_ < 0) {
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) {
      ::close(fd);
    }
    throw ChildExited(std::string("fork: ") + std::strerror(errno));
  }
  if (pid_ == 0) {
    // Own process group, so a kill also reaches whatever the shell spawned.
    ::setpgid(0, 0);
    ::dup2(in_pipe[0], STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) {
      ::close(fd);
    }
    ::execl("/bin/sh", "sh", "-c", config_.command.c_str(),
            static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
}

void ExternalModel::Handshake() {
  WriteAll(json{{"op", "hello"}, {"version", 1}}.dump() + "\n");
  const std::string line = ReadLine();
  json reply;
  try {
    reply = json::parse(line);
  } catch (const json::exception&) {
    throw ProtocolError("handshake reply is not JSON: " + line);
  }
  if (!reply.is_object() || reply.value("ok", false) != true) {
    throw ProtocolError("handshake rejected: " + line);
  }
  if (reply.contains("classes") && reply["classes"] != 2) {
    throw ProtocolError("model is not binary: " + line);
  }
}

void ExternalModel::WriteAll(const std::string& bytes) const {
  std::size_t off = 0;
  while (off < bytes.size()) {
    const ssize_t n = ::write(to_child_, bytes.data() + off, bytes.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw ChildExited(std::string("writing to model: ") +
                        std::strerror(errno));
    }
    off += static_cast<std::size_t>(n);
  }
}

std::string ExternalModel::ReadLine() const {
  const auto deadline = std::chrono::steady_clock::now() + config_.timeout;
  while (true) {
    const std::size_t nl = read_buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = read_buffer_.substr(0, nl);
      read_buffer_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (remaining.count() <= 0) {
      throw TimeoutError("model did not reply within " +
                         std::to_string(config_.timeout.count()) + " ms");
    }
    pollfd pfd{from_child_, POLLIN, 0};
    const int rc = ::poll(&pfd, 1, static_cast<int>(remaining.count()));
    if (rc < 0) {
      if (errno == EINTR) continue;
      throw ChildExited(std::string("poll: ") + std::strerror(errno));
    }
    if (rc == 0) continue;
    char buf[4096];
    const ssize_t n = ::read(from_child_, buf, sizeof(buf));
    if (n < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      throw ChildExited(std::string("reading from model: ") +
                        std::strerror(errno));
    }
    if (n == 0) throw ChildExited("model process closed its output");
    read_buffer_.append(buf, static_cast<std::size_t>(n));
  }
}

int ExternalModel::Predict(const Instance& x) const {
  std::lock_guard<std::mutex> lock(mu_);
  WriteAll(PredictRequest(x));
  return ParsePredictReply(ReadLine());
}

std::vector<int> ExternalModel::PredictBatch(
    std::span<const Instance> xs) const {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<int> out;
  out.reserve(xs.size());
  for (std::size_t start = 0; start < xs.size(); start += kMaxInFlight) {
    const std::size_t end = std::min(xs.size(), start + kMaxInFlight);
    std::string requests;
    for (std::size_t i = start; i < end; ++i) requests += PredictRequest(xs[i]);
    WriteAll(requests);
    for (std::size_t i = start; i < end; ++i) {
      out.push_back(ParsePredictReply(ReadLine()));
    }
  }
  return out;
}

void ExternalModel::Shutdown() noexcept {
  if (to_child_ >= 0) {
    ::close(to_child_);
    to_child_ = -1;
  }
  if (from_child_ >= 0) {
    ::close(from_child_);
    from_child_ = -1;
  }
  if (pid_ > 0) {
    // Closing stdin asks the child to exit; give it a moment, then kill the
    // group so stragglers do not outlive us.
    bool reaped = false;
    for (int i = 0; i < 50 && !reaped; ++i) {
      reaped = ::waitpid(pid_, nullptr, WNOHANG) == pid_;
      if (!reaped) std::this_thread::sleep_for(std::chrono::milliseconds(2));
    }
    ::kill(-pid_, SIGKILL);
    if (!reaped) {
      ::kill(pid_, SIGKILL);
      ::waitpid(pid_, nullptr, 0);
    }
    pid_ = -1;
  }
}

}  // namespace fairtest
