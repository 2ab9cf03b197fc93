#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace harmap {

/// Base of every typed failure raised by the library.  `kind()` is the stable
/// name echoed by the CLI in its error JSON.
class Error : public std::runtime_error {
 public:
  Error(std::string_view kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  std::string_view kind() const noexcept { return kind_; }

 private:
  std::string_view kind_;
};

#define HARMAP_DEFINE_ERROR(Name)                                        \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& what) : Error(#Name, what) {}       \
  }

HARMAP_DEFINE_ERROR(PreconditionError);
HARMAP_DEFINE_ERROR(DivisionByZero);
HARMAP_DEFINE_ERROR(NotAMap);
HARMAP_DEFINE_ERROR(NotFull);
HARMAP_DEFINE_ERROR(NotCoprime);
HARMAP_DEFINE_ERROR(SingularMatrix);
HARMAP_DEFINE_ERROR(NearSingular);
HARMAP_DEFINE_ERROR(IntegrationFailure);
HARMAP_DEFINE_ERROR(SamplingFailure);
HARMAP_DEFINE_ERROR(IndeterminateRank);
HARMAP_DEFINE_ERROR(PathFailure);
HARMAP_DEFINE_ERROR(ParseError);

#undef HARMAP_DEFINE_ERROR

}  // namespace harmap
