#ifndef GRPEXT_ERRORS_HPP
#define GRPEXT_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace grpext {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DomainMismatch : Error {
  using Error::Error;
};
struct CompositionMismatch : Error {
  using Error::Error;
};
struct UnknownObject : Error {
  using Error::Error;
};
struct InvalidCover : Error {
  using Error::Error;
};
struct SizeCapExceeded : Error {
  using Error::Error;
};
struct CapExceeded : Error {
  using Error::Error;
};
struct DegreeMismatch : Error {
  using Error::Error;
};
struct NotACocycle : Error {
  using Error::Error;
};
struct NotABand : Error {
  using Error::Error;
};
struct BandMismatch : Error {
  using Error::Error;
};
struct ShapeMismatch : Error {
  using Error::Error;
};
struct NotAProductBundle : Error {
  using Error::Error;
};
struct PreActionNotAutomorphism : Error {
  using Error::Error;
};
struct CocycleViolation : Error {
  using Error::Error;
};
struct NoNaturalTransformation : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
struct UnknownCommand : Error {
  using Error::Error;
};

/// Thrown by trivialization when the obstruction class is nonzero.
/// Carries the class coordinates with respect to the H^3 generators.
struct ObstructionNonzero : Error {
  std::vector<long long> coordinates;
  ObstructionNonzero(const std::string& what, std::vector<long long> coords)
      : Error(what), coordinates(std::move(coords)) {}
};

}  // namespace grpext

#endif
