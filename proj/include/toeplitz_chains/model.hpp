#ifndef TOEPLITZ_CHAINS_MODEL_HPP
#define TOEPLITZ_CHAINS_MODEL_HPP

#include <map>
#include <utility>
#include <vector>

#include "toeplitz_chains/types.hpp"

namespace toeplitz_chains {

enum class SymmetryClass { BDI, AIII };

/// A gapped chain in factored form: f(z) = sigma * z^{-n_P} *
/// prod_j (z - z_j)^mult * prod_k (z - Z_k)^mult with |z_j| < 1 < |Z_k|.
/// Inside zeros are sorted by descending modulus, outside zeros by ascending
/// modulus (closest to the unit circle first). Immutable after construction.
struct ModelSpec {
  SymmetryClass cls = SymmetryClass::BDI;
  cplx sigma_phase{1.0, 0.0};  // +-1 for BDI, e^{i theta} for AIII
  int n_P = 0;
  std::vector<cplx> zeros_inside;
  std::vector<cplx> zeros_outside;
  int multiplicity = 2;  // 1 only as input to the approximation module

  int n_z() const { return static_cast<int>(zeros_inside.size()); }
  int n_Z() const { return static_cast<int>(zeros_outside.size()); }
  bool is_bdi() const { return cls == SymmetryClass::BDI; }
  double sigma() const { return sigma_phase.real() >= 0 ? 1.0 : -1.0; }

  /// f evaluated anywhere off the poles.
  cplx eval(cplx z) const;
};

struct GenericityReport {
  bool generic = false;
  bool strongly_generic = false;
  std::vector<std::pair<int, int>> colliding_pairs;      // indices into the joint value set
  std::vector<std::pair<int, int>> mutually_inverse_pairs;  // (inside index, outside index)
};

/// Finite-support coupling map alpha -> t_alpha.
struct CouplingList {
  std::map<int, cplx> couplings;

  int range() const;  // max |alpha| with t_alpha != 0
};

/// Validate and normalize a raw model (sorting, conjugation checks).
ModelSpec validate_model(ModelSpec m);

int winding_number(const ModelSpec& m);

/// Pairwise-distinct check on {z, z^-1, Z, Z^-1} (conjugated variants for
/// AIII) plus the subset-product condition on |R(m_z, m_Z)|.
GenericityReport classify_genericity(const ModelSpec& m, double tol = 1e-9);

/// Expand the factored form into couplings.
CouplingList coefficients(const ModelSpec& m);

/// Root-find the coupling polynomial and rebuild a factored model.
ModelSpec from_coefficients(const CouplingList& c, SymmetryClass cls = SymmetryClass::BDI);

/// The chain for f(1/z): zeros inverted, n_P -> 2 mult (n_z + n_Z) - n_P.
ModelSpec invert_model(const ModelSpec& m);

/// Remove mutually inverse zero pairs (same ground state), shifting n_P to
/// keep the winding number.
ModelSpec strip_inverse_pairs(const ModelSpec& m, double tol = 1e-12);

}  // namespace toeplitz_chains

#endif
