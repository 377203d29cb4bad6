#ifndef TOEPLITZ_CHAINS_TYPES_HPP
#define TOEPLITZ_CHAINS_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace toeplitz_chains {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Error taxonomy. Each failure mode raised by the library derives from
// SpecError so callers (and the CLI) can distinguish validation problems
// from genuine numeric trouble.
struct SpecError : std::runtime_error {
  explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroOnUnitCircle : SpecError {
  using SpecError::SpecError;
};
struct ConjugationViolation : SpecError {
  using SpecError::SpecError;
};
struct BadPhase : SpecError {
  using SpecError::SpecError;
};
struct UnitCircleRoot : SpecError {
  using SpecError::SpecError;
};
struct OddMultiplicity : SpecError {
  using SpecError::SpecError;
};
struct SubsetExplosion : SpecError {
  using SpecError::SpecError;
};
struct DegenerateRoots : SpecError {
  using SpecError::SpecError;
};
struct ExtrapolationUnstable : SpecError {
  using SpecError::SpecError;
};
struct NonGenericNeedsLimit : SpecError {
  using SpecError::SpecError;
};
struct OddWindingUnsupported : SpecError {
  using SpecError::SpecError;
};
struct NotStronglyGeneric : SpecError {
  using SpecError::SpecError;
};
struct StructureViolation : SpecError {
  using SpecError::SpecError;
};
struct SingularM0 : SpecError {
  using SpecError::SpecError;
};
struct DegenerateQuartic : SpecError {
  using SpecError::SpecError;
};
struct UsageError : SpecError {
  using SpecError::SpecError;
};

}  // namespace toeplitz_chains

#endif
