#pragma once

#include <stdexcept>
#include <string>

namespace indexlab {

/// Base of every error raised by the library. `kind()` is the stable name
/// used in reports and CLI diagnostics.
class error : public std::runtime_error {
 public:
  error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define INDEXLAB_DEFINE_ERROR(Name)                                   \
  class Name : public error {                                         \
   public:                                                            \
    explicit Name(const std::string& what) : error(#Name, what) {}    \
  };

INDEXLAB_DEFINE_ERROR(NotInvertible)
INDEXLAB_DEFINE_ERROR(GradeMismatch)
INDEXLAB_DEFINE_ERROR(ShapeError)
INDEXLAB_DEFINE_ERROR(NotTraceClass)
INDEXLAB_DEFINE_ERROR(SymbolNotElliptic)
INDEXLAB_DEFINE_ERROR(UnsupportedSymbol)
INDEXLAB_DEFINE_ERROR(AlgebraViolation)
INDEXLAB_DEFINE_ERROR(BadParameter)
INDEXLAB_DEFINE_ERROR(GapClosed)
INDEXLAB_DEFINE_ERROR(BadIdempotent)
INDEXLAB_DEFINE_ERROR(TooLarge)
INDEXLAB_DEFINE_ERROR(DegreeError)
INDEXLAB_DEFINE_ERROR(UsageError)
INDEXLAB_DEFINE_ERROR(IoError)
INDEXLAB_DEFINE_ERROR(ParseError)

#undef INDEXLAB_DEFINE_ERROR

}  // namespace indexlab
