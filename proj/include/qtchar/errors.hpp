#ifndef QTCHAR_ERRORS_HPP
#define QTCHAR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qtchar {

// Every failure carries a stable machine-readable code ("NotCartan",
// "SmallS", ...) next to the human message; the CLI forwards the code.
class QtError : public std::runtime_error {
public:
  QtError(std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

private:
  std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& msg) {
  throw QtError(std::move(code), msg);
}

} // namespace qtchar

#endif
