#pragma once

#include <stdexcept>
#include <string>

namespace lstreg {

// Every library failure carries a short machine-readable kind, which the CLI
// forwards verbatim in its error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error("invalid-argument", what) {}
};

class SingularDesign : public Error {
 public:
  explicit SingularDesign(const std::string& what) : Error("singular-design", what) {}
};

class PathTruncated : public Error {
 public:
  explicit PathTruncated(const std::string& what) : Error("path-truncated", what) {}
};

class UndefinedMetric : public Error {
 public:
  explicit UndefinedMetric(const std::string& what) : Error("undefined-metric", what) {}
};

class NoValidStart : public Error {
 public:
  explicit NoValidStart(const std::string& what) : Error("no-valid-start", what) {}
};

class InputError : public Error {
 public:
  InputError(std::string kind, const std::string& what) : Error(std::move(kind), what) {}
};

}  // namespace lstreg
