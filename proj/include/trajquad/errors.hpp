#pragma once

#include <stdexcept>
#include <string>

namespace trajquad {

// Exit-code family a failure belongs to when surfaced through the CLI.
enum class ErrorKind { config = 1, method = 2, tolerance = 3 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), kind_(kind), name_(std::move(name)) {}
  ErrorKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

 private:
  ErrorKind kind_;
  std::string name_;
};

#define TRAJQUAD_ERROR(Name, Kind)                                       \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& what) : Error(Kind, #Name, what) {} \
  };

TRAJQUAD_ERROR(ConfigError, ErrorKind::config)
TRAJQUAD_ERROR(ParseError, ErrorKind::config)
TRAJQUAD_ERROR(VariableMismatch, ErrorKind::config)
TRAJQUAD_ERROR(InvalidPotential, ErrorKind::config)
TRAJQUAD_ERROR(DegenerateMinimum, ErrorKind::config)
TRAJQUAD_ERROR(LogSingularity, ErrorKind::method)
TRAJQUAD_ERROR(HierarchyBreakdown, ErrorKind::method)
TRAJQUAD_ERROR(DivergentAtOrigin, ErrorKind::method)
TRAJQUAD_ERROR(TailDivergence, ErrorKind::method)
TRAJQUAD_ERROR(DegenerateProfile, ErrorKind::method)
TRAJQUAD_ERROR(DomainTooSmall, ErrorKind::tolerance)
TRAJQUAD_ERROR(ExtractionFailure, ErrorKind::tolerance)
TRAJQUAD_ERROR(ToleranceFailure, ErrorKind::tolerance)

#undef TRAJQUAD_ERROR

}  // namespace trajquad
