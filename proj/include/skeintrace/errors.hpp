#pragma once

#include <stdexcept>
#include <string>

namespace skeintrace {

class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string &what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string &kind() const { return kind_; }

private:
  std::string kind_;
};

#define SKEINTRACE_ERROR(Name)                                                 \
  struct Name : Error {                                                        \
    explicit Name(const std::string &w) : Error(#Name, w) {}                   \
  };

SKEINTRACE_ERROR(ParseError)
SKEINTRACE_ERROR(Overflow)
SKEINTRACE_ERROR(ConstraintViolation)
SKEINTRACE_ERROR(RankMismatch)
SKEINTRACE_ERROR(TorusMismatch)
SKEINTRACE_ERROR(DependentRelations)
SKEINTRACE_ERROR(NonCommutingRelations)
SKEINTRACE_ERROR(NotInvertible)
SKEINTRACE_ERROR(Malformed)
SKEINTRACE_ERROR(OrientationClash)
SKEINTRACE_ERROR(HasBoundary)
SKEINTRACE_ERROR(BoundaryEdge)
SKEINTRACE_ERROR(SelfGlued)
SKEINTRACE_ERROR(SelfAdjacentFace)
SKEINTRACE_ERROR(UnknownId)
SKEINTRACE_ERROR(InvalidPresentation)
SKEINTRACE_ERROR(NonLaurentImage)
SKEINTRACE_ERROR(NotEven)
SKEINTRACE_ERROR(UnresolvedState)
SKEINTRACE_ERROR(OutOfDomain)
SKEINTRACE_ERROR(NoAngles)
SKEINTRACE_ERROR(DegreeMismatch)
SKEINTRACE_ERROR(NotAPachnerPair)

#undef SKEINTRACE_ERROR

} // namespace skeintrace
