#include "mre/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

namespace mre::log {

namespace {

Level from_env() {
  const char* raw = std::getenv("MRE_LOG");
  if (raw == nullptr) return Level::Off;
  const std::string v(raw);
  if (v == "debug") return Level::Debug;
  if (v == "info") return Level::Info;
  return Level::Off;
}

std::atomic<Level>& current() {
  static std::atomic<Level> level{from_env()};
  return level;
}

}  // namespace

Level level() { return current().load(std::memory_order_relaxed); }

void set_level(Level level) { current().store(level, std::memory_order_relaxed); }

void write(Level level, std::string_view message) {
  static std::mutex mu;
  std::lock_guard lock(mu);
  std::cerr << (level == Level::Debug ? "[debug] " : "[info] ") << message << '\n';
}

}  // namespace mre::log
