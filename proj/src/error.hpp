#pragma once

#include <stdexcept>
#include <string>

namespace mdl {

enum class ErrorCode {
  InvalidArgument,  // unparseable input, degenerate maps, bad nodes
  InvalidSpec,      // a SystemSpec violates its standing assumptions
  Domain,           // point outside the domain, pole inside an interval
  NotNormalizable,  // density has infinite mass on the requested domain
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mdl
