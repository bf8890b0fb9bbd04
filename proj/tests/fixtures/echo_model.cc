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

// Test model speaking the line protocol. Replies features[index] mod 2
// (index 0 unless --feature N). Misbehaviour switches:
//   --malformed      answer every predict with "{]"
//   --bad-handshake  reject the hello
//   --hang           never answer a predict
//   --exit           exit on the first predict
//   --class N        always answer N

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include "json.hpp"

int main(int argc, char** argv) {
  std::string mode = "echo";
  std::size_t feature = 0;
  long long fixed_class = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--feature" && i + 1 < argc) {
      feature = std::stoul(argv[++i]);
    } else if (arg == "--class" && i + 1 < argc) {
      mode = "class";
      fixed_class = std::stoll(argv[++i]);
    } else {
      mode = arg.substr(2);
    }
  }
  std::string line;
  while (std::getline(std::cin, line)) {
    const auto req = nlohmann::json::parse(line);
    if (req.at("op") == "hello") {
      if (mode == "bad-handshake") {
        std::cout << R"({"ok":false})" << std::endl;
      } else {
        std::cout << R"({"ok":true,"classes":2})" << std::endl;
      }
      continue;
    }
    if (mode == "malformed") {
      std::cout << "{]" << std::endl;
    } else if (mode == "hang") {
      std::this_thread::sleep_for(std::chrono::seconds(30));
    } else if (mode == "exit") {
      return 0;
    } else if (mode == "class") {
      std::cout << nlohmann::json{{"class", fixed_class}}.dump() << std::endl;
    } else {
      const int v = req.at("features").at(feature).get<int>();
      std::cout << nlohmann::json{{"class", ((v % 2) + 2) % 2}}.dump()
                << std::endl;
    }
  }
  return 0;
}
