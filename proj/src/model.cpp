#include "toeplitz_chains/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "toeplitz_chains/poly.hpp"

namespace toeplitz_chains {
namespace {

constexpr double kCircleTol = 1e-8;
constexpr double kConjTol = 1e-9;  // absolute, on imaginary parts
constexpr int kSubsetCap = 20;

bool is_conjugate_closed(std::vector<cplx> zeros) {
  while (!zeros.empty()) {
    const cplx z = zeros.back();
    zeros.pop_back();
    if (std::abs(z.imag()) <= kConjTol) continue;
    auto match = std::find_if(zeros.begin(), zeros.end(), [&](const cplx& w) {
      return std::abs(w - std::conj(z)) <= kConjTol * (1.0 + std::abs(z));
    });
    if (match == zeros.end()) return false;
    zeros.erase(match);
  }
  return true;
}

void snap_near_real(std::vector<cplx>& zeros) {
  for (cplx& z : zeros)
    if (z.imag() != 0.0 && std::abs(z.imag()) <= kConjTol * (1.0 + std::abs(z))) z = cplx(z.real(), 0.0);
}

}  // namespace

cplx ModelSpec::eval(cplx z) const {
  cplx f = sigma_phase * std::pow(z, -n_P);
  for (const cplx& zj : zeros_inside)
    for (int m = 0; m < multiplicity; ++m) f *= (z - zj);
  for (const cplx& Zk : zeros_outside)
    for (int m = 0; m < multiplicity; ++m) f *= (z - Zk);
  return f;
}

int CouplingList::range() const {
  int r = 0;
  for (const auto& [alpha, t] : couplings)
    if (std::abs(t) > 0.0) r = std::max(r, std::abs(alpha));
  return r;
}

ModelSpec validate_model(ModelSpec m) {
  if (m.multiplicity != 1 && m.multiplicity != 2)
    throw SpecError("multiplicity must be 1 or 2");
  const double sp = std::abs(m.sigma_phase);
  if (!(std::abs(sp - 1.0) <= 1e-9)) throw BadPhase("sigma/theta must have unit modulus");
  if (m.is_bdi()) {
    if (std::abs(m.sigma_phase.imag()) > 1e-9) throw BadPhase("BDI requires sigma = +-1");
    m.sigma_phase = cplx(m.sigma_phase.real() >= 0 ? 1.0 : -1.0, 0.0);
  }

  snap_near_real(m.zeros_inside);
  snap_near_real(m.zeros_outside);
  for (const cplx& z : m.zeros_inside) {
    if (std::abs(z) >= 1.0 - kCircleTol)
      throw ZeroOnUnitCircle("inside zero too close to the unit circle");
    if (std::abs(z) == 0.0) throw SpecError("zeros at the origin belong in n_P");
  }
  for (const cplx& Z : m.zeros_outside)
    if (std::abs(Z) <= 1.0 + kCircleTol)
      throw ZeroOnUnitCircle("outside zero too close to the unit circle");

  if (m.is_bdi()) {
    if (!is_conjugate_closed(m.zeros_inside) || !is_conjugate_closed(m.zeros_outside))
      throw ConjugationViolation("BDI zeros must be closed under complex conjugation");
  }

  // Sort by proximity to the unit circle.
  auto by_mod = [](const cplx& a, const cplx& b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma < mb;
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  };
  std::sort(m.zeros_inside.begin(), m.zeros_inside.end(),
            [&](const cplx& a, const cplx& b) { return by_mod(b, a); });
  std::sort(m.zeros_outside.begin(), m.zeros_outside.end(), by_mod);
  return m;
}

int winding_number(const ModelSpec& m) {
  return m.multiplicity * m.n_z() - m.n_P;
}

namespace {

// Canonical conjugation-class key of a zero subset: multiset of values with
// each value replaced by the lexicographically smaller of {v, conj(v)}.
std::vector<cplx> conj_class_key(const std::vector<cplx>& values, std::uint32_t mask) {
  std::vector<cplx> key;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(mask & (1u << i))) continue;
    cplx v = values[i];
    cplx c = std::conj(v);
    key.push_back((c.real() < v.real() || (c.real() == v.real() && c.imag() < v.imag())) ? c : v);
  }
  std::sort(key.begin(), key.end(), [](const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return key;
}

bool same_key(const std::vector<cplx>& a, const std::vector<cplx>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol * (1.0 + std::abs(a[i]))) return false;
  return true;
}

}  // namespace

GenericityReport classify_genericity(const ModelSpec& m, double tol) {
  GenericityReport rep;
  const int nz = m.n_z(), nZ = m.n_Z();
  if (nz + nZ > kSubsetCap)
    throw SubsetExplosion("n_z + n_Z exceeds the subset enumeration cap of 20");

  const bool conj_poles = !m.is_bdi();
  // Joint value set {z_j, zbar_j^-1 or z_j^-1, Z_k, Zbar_k^-1 or Z_k^-1}.
  std::vector<cplx> values;
  for (const cplx& z : m.zeros_inside) values.push_back(z);
  for (const cplx& z : m.zeros_inside) values.push_back(1.0 / (conj_poles ? std::conj(z) : z));
  for (const cplx& Z : m.zeros_outside) values.push_back(Z);
  for (const cplx& Z : m.zeros_outside) values.push_back(1.0 / (conj_poles ? std::conj(Z) : Z));

  rep.generic = true;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      if (std::abs(values[i] - values[j]) <= tol * (1.0 + std::abs(values[i]))) {
        rep.generic = false;
        rep.colliding_pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
        // z_j against the inverse (conjugate) of Z_k means a mutually inverse pair.
        const bool i_is_inside = i < static_cast<std::size_t>(nz);
        const bool j_is_outside_inv = j >= static_cast<std::size_t>(2 * nz + nZ);
        if (i_is_inside && j_is_outside_inv)
          rep.mutually_inverse_pairs.emplace_back(static_cast<int>(i),
                                                  static_cast<int>(j - 2 * nz - nZ));
      }
    }
  }

  // Strongly generic: subset-product moduli collide only between
  // conjugation-related subsets.
  rep.strongly_generic = rep.generic;
  if (rep.strongly_generic) {
    struct Entry {
      double abs_r;
      std::uint32_t mz, mZ;
    };
    std::vector<Entry> entries;
    entries.reserve(std::size_t(1) << (nz + nZ));
    for (std::uint32_t mz = 0; mz < (1u << nz); ++mz) {
      double lz = 0.0;
      for (int j = 0; j < nz; ++j)
        if (mz & (1u << j)) lz += std::log(std::abs(m.zeros_inside[j]));
      for (std::uint32_t mZ = 0; mZ < (1u << nZ); ++mZ) {
        double l = lz;
        for (int k = 0; k < nZ; ++k)
          if (mZ & (1u << k)) l -= std::log(std::abs(m.zeros_outside[k]));
        entries.push_back({l, mz, mZ});
      }
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.abs_r < b.abs_r; });
    for (std::size_t i = 0; i + 1 < entries.size() && rep.strongly_generic; ++i) {
      for (std::size_t j = i + 1; j < entries.size(); ++j) {
        if (entries[j].abs_r - entries[i].abs_r > tol * 8.0) break;
        const bool swap_related =
            same_key(conj_class_key(m.zeros_inside, entries[i].mz),
                     conj_class_key(m.zeros_inside, entries[j].mz), tol) &&
            same_key(conj_class_key(m.zeros_outside, entries[i].mZ),
                     conj_class_key(m.zeros_outside, entries[j].mZ), tol);
        if (!swap_related) {
          rep.strongly_generic = false;
          break;
        }
      }
    }
  }
  return rep;
}

CouplingList coefficients(const ModelSpec& m) {
  std::vector<cplx> roots;
  for (const cplx& z : m.zeros_inside)
    for (int k = 0; k < m.multiplicity; ++k) roots.push_back(z);
  for (const cplx& Z : m.zeros_outside)
    for (int k = 0; k < m.multiplicity; ++k) roots.push_back(Z);
  std::vector<cplx> poly = poly_from_roots(roots);

  CouplingList out;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    cplx t = m.sigma_phase * poly[k];
    if (m.is_bdi()) t = cplx(t.real(), 0.0);  // imaginary dust from conjugate pairs
    if (std::abs(t) > 1e-14) out.couplings[static_cast<int>(k) - m.n_P] = t;
  }
  return out;
}

ModelSpec from_coefficients(const CouplingList& c, SymmetryClass cls) {
  if (c.couplings.empty()) throw SpecError("empty coupling list");
  const int alpha_min = c.couplings.begin()->first;
  const int alpha_max = c.couplings.rbegin()->first;
  std::vector<cplx> poly(static_cast<std::size_t>(alpha_max - alpha_min) + 1, cplx(0));
  for (const auto& [alpha, t] : c.couplings) poly[static_cast<std::size_t>(alpha - alpha_min)] = t;

  std::vector<cplx> roots = poly_roots(poly);
  const double scale = std::accumulate(roots.begin(), roots.end(), 0.0,
                                       [](double s, const cplx& r) { return s + std::abs(r); }) /
                       std::max<std::size_t>(roots.size(), 1);
  for (const cplx& r : roots)
    if (std::abs(std::abs(r) - 1.0) <= 1e-6) throw UnitCircleRoot("coupling polynomial has a root on the unit circle");

  // Cluster into double roots where possible. Companion eigenvalues of a
  // double root split by O(sqrt(eps)), so the pairing tolerance is loose and
  // paired roots are re-polished on the derivative.
  const double pair_tol = 1e-4 * (1.0 + scale);
  std::vector<bool> used(roots.size(), false);
  std::vector<cplx> paired, single;
  const auto dpoly = poly_derivative(poly);
  const auto d2poly = poly_derivative(dpoly);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    std::size_t best = i;
    double bestd = pair_tol;
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(roots[i] - roots[j]);
      if (d < bestd) {
        bestd = d;
        best = j;
      }
    }
    if (best != i) {
      used[i] = used[best] = true;
      cplx r = 0.5 * (roots[i] + roots[best]);
      for (int it = 0; it < 3; ++it) {
        const cplx fp = poly_eval(dpoly, r), fpp = poly_eval(d2poly, r);
        if (std::abs(fpp) < 1e-14) break;
        r -= fp / fpp;
      }
      paired.push_back(r);
    } else {
      used[i] = true;
      single.push_back(roots[i]);
    }
  }

  ModelSpec m;
  m.cls = cls;
  const cplx lead = c.couplings.rbegin()->second;
  if (cls == SymmetryClass::BDI) {
    if (std::abs(lead.imag()) > 1e-9 * std::abs(lead))
      throw ConjugationViolation("BDI couplings must be real");
    m.sigma_phase = cplx(lead.real() >= 0 ? 1.0 : -1.0, 0.0);
  } else {
    m.sigma_phase = lead / std::abs(lead);
  }
  m.n_P = -alpha_min;

  if (single.empty() && !paired.empty()) {
    m.multiplicity = 2;
    for (const cplx& r : paired)
      (std::abs(r) < 1.0 ? m.zeros_inside : m.zeros_outside).push_back(r);
  } else {
    // Odd multiplicities present: accept as a multiplicity-1 model.
    m.multiplicity = 1;
    for (const cplx& r : paired) {
      (std::abs(r) < 1.0 ? m.zeros_inside : m.zeros_outside).push_back(r);
      (std::abs(r) < 1.0 ? m.zeros_inside : m.zeros_outside).push_back(r);
    }
    for (const cplx& r : single)
      (std::abs(r) < 1.0 ? m.zeros_inside : m.zeros_outside).push_back(r);
  }
  return validate_model(m);
}

ModelSpec invert_model(const ModelSpec& m) {
  ModelSpec out = m;
  out.zeros_inside.clear();
  out.zeros_outside.clear();
  for (const cplx& Z : m.zeros_outside) out.zeros_inside.push_back(1.0 / Z);
  for (const cplx& z : m.zeros_inside) out.zeros_outside.push_back(1.0 / z);
  out.n_P = m.multiplicity * (m.n_z() + m.n_Z()) - m.n_P;
  return validate_model(out);
}

ModelSpec strip_inverse_pairs(const ModelSpec& m, double tol) {
  ModelSpec out = m;
  bool removed = true;
  while (removed) {
    removed = false;
    for (std::size_t j = 0; j < out.zeros_inside.size() && !removed; ++j) {
      for (std::size_t k = 0; k < out.zeros_outside.size() && !removed; ++k) {
        const cplx Zi = out.is_bdi() ? out.zeros_outside[k] : std::conj(out.zeros_outside[k]);
        if (std::abs(out.zeros_inside[j] - 1.0 / Zi) <= tol * (1.0 + std::abs(out.zeros_inside[j]))) {
          out.zeros_inside.erase(out.zeros_inside.begin() + static_cast<long>(j));
          out.zeros_outside.erase(out.zeros_outside.begin() + static_cast<long>(k));
          out.n_P -= out.multiplicity;  // keeps the winding number fixed
          removed = true;
        }
      }
    }
  }
  return out;
}

}  // namespace toeplitz_chains
