#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace mccfr {

// Thrown on contract violations (bad arguments, malformed files, broken state).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {
[[noreturn]] inline void check_failed(const char* expr, const char* file, int line,
                                      const std::string& msg) {
  std::ostringstream os;
  os << "check failed: " << expr << " at " << file << ":" << line;
  if (!msg.empty()) os << " (" << msg << ")";
  throw Error(os.str());
}
}  // namespace detail

}  // namespace mccfr

#define MCCFR_CHECK(cond)                                              \
  do {                                                                 \
    if (!(cond)) ::mccfr::detail::check_failed(#cond, __FILE__, __LINE__, ""); \
  } while (0)

#define MCCFR_CHECK_MSG(cond, msg)                                     \
  do {                                                                 \
    if (!(cond)) {                                                     \
      std::ostringstream os_;                                          \
      os_ << msg;                                                      \
      ::mccfr::detail::check_failed(#cond, __FILE__, __LINE__, os_.str()); \
    }                                                                  \
  } while (0)
