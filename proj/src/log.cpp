#include "pcover/log.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <mutex>

namespace pcover::log {
namespace {

Level from_env() {
  const char* raw = std::getenv("PCOVER_LOG");
  if (raw == nullptr) return Level::kOff;
  if (std::strcmp(raw, "debug") == 0) return Level::kDebug;
  if (std::strcmp(raw, "info") == 0) return Level::kInfo;
  return Level::kOff;
}

std::atomic<int>& current() {
  static std::atomic<int> value{static_cast<int>(from_env())};
  return value;
}

void emit(const char* tag, const std::string& message) {
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  std::cerr << "[pcover " << tag << "] " << message << '\n';
}

}  // namespace

Level level() { return static_cast<Level>(current().load()); }

void set_level(Level value) { current().store(static_cast<int>(value)); }

void info(const std::string& message) {
  if (level() >= Level::kInfo) emit("info", message);
}

void debug(const std::string& message) {
  if (level() >= Level::kDebug) emit("debug", message);
}

}  // namespace pcover::log
