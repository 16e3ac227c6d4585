#ifndef CNB_ERROR_HPP
#define CNB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cnb {

enum class ErrorCode {
  usage,
  not_found,
  io,
  parse,
  format,
  version_mismatch,
  truncated,
  checksum,
  empty,
  limit,
  absent_word,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace cnb

#endif
