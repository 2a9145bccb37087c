#pragma once

#include <string>

namespace pcover::log {

enum class Level { kOff = 0, kInfo = 1, kDebug = 2 };

// Read once from PCOVER_LOG (off | info | debug); defaults to off.
Level level();
void set_level(Level level);

void info(const std::string& message);
void debug(const std::string& message);

}  // namespace pcover::log
