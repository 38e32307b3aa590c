#pragma once

#include <string>

namespace skewsiep {

// Log level is read once from the SKEW_SIEP_LOG environment variable
// (quiet | info | debug, default quiet so stderr stays parseable).
enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };

LogLevel log_level();
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

}  // namespace skewsiep
