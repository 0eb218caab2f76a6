#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace spinlab {

/// Domain error with a machine-readable kind, suitable for structured
/// error output ({error_kind, message, context}).
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message, std::string context = {})
      : std::runtime_error(message), kind_(std::move(kind)), context_(std::move(context)) {}

  const std::string& kind() const noexcept { return kind_; }
  const std::string& context() const noexcept { return context_; }

 private:
  std::string kind_;
  std::string context_;
};

}  // namespace spinlab
