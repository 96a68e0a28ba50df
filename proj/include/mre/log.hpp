#pragma once

#include <sstream>
#include <string_view>

namespace mre::log {

enum class Level { Off = 0, Info = 1, Debug = 2 };

/// Read once from MRE_LOG (off | info | debug); defaults to off.
Level level();
void set_level(Level level);
void write(Level level, std::string_view message);

template <typename... Args>
void info(const Args&... args) {
  if (level() < Level::Info) return;
  std::ostringstream os;
  (os << ... << args);
  write(Level::Info, os.str());
}

template <typename... Args>
void debug(const Args&... args) {
  if (level() < Level::Debug) return;
  std::ostringstream os;
  (os << ... << args);
  write(Level::Debug, os.str());
}

}  // namespace mre::log
