#ifndef SPECDELAY_LOG_HPP
#define SPECDELAY_LOG_HPP

#include <cstdio>
#include <cstdlib>
#include <string>

namespace specdelay {

/// Verbosity from SPECDELAY_LOG (0 = silent, 1 = warnings, 2 = info).
inline int log_verbosity() {
  static const int level = [] {
    const char* env = std::getenv("SPECDELAY_LOG");
    return env ? std::atoi(env) : 0;
  }();
  return level;
}

inline void log_warn(const std::string& msg) {
  if (log_verbosity() >= 1)
    std::fprintf(stderr, "[specdelay] warning: %s\n", msg.c_str());
}

inline void log_info(const std::string& msg) {
  if (log_verbosity() >= 2)
    std::fprintf(stderr, "[specdelay] %s\n", msg.c_str());
}

}  // namespace specdelay

#endif  // SPECDELAY_LOG_HPP
