#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace whcube {

/// Error raised by library operations. `code()` is module-qualified, e.g.
/// "cube_complex.dangling_face" or "cover.boundary_touched".
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace whcube
