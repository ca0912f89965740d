#pragma once

// Named algebras and cocycles: super-Minkowski and super-Poincare CE algebras,
// the brane cocycles mu_{p+2}, the M2 extension, the M5 cocycle, the
// resolution by (h3, g4), the lift through the 4-sphere model and the family
// of 7-cocycles with Lorentz traces.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fda/clifford.hpp"
#include "fda/dgca.hpp"
#include "fda/linalg.hpp"
#include "fda/report.hpp"

namespace fda {

struct CatalogAlgebra {
  std::string tag; ///< superMink, m2brane, resolvedMink, superPoincare, resolvedPoincare, s4, coefficientLine
  DGCAPtr algebra;
  std::map<std::string, std::string> provenance;
};

/// Generators e0..e{d-1} (1,even) and psi0..psi{N-1} (1,odd) with
/// d psi = 0, d e^a = sum (C Gamma^a)_{ab} psi^a psi^b. Throws Errc::rep_mismatch.
CatalogAlgebra super_minkowski(int d, const CliffordRep& rep);

/// sum_{ab} M_ab psi^a psi^b in `sig` (only the symmetric part of M survives).
Element spinor_bilinear(const SignaturePtr& sig, const IntMatrix& m);

/// mu_{p+2}: sum over ordered index tuples of (C Gamma^{a1..ap})_{ab} psi^a
/// psi^b e_{a1}...e_{ap}, indices lowered with eta. Throws Errc::zero_cocycle
/// when every pairing of rank p is antisymmetric.
Element brane_cocycle(const CatalogAlgebra& mink, const CliffordRep& rep, int p);

/// Weight grading e -> 2, psi -> 1, omega -> 0 preserved by the differentials
/// of the super-Minkowski and super-Poincare algebras.
std::vector<int> spinor_weights(const AlgebraSignature& sig);

/// pass iff lhs = c * rhs for a single rational c (pinned as "c").
Report verify_proportional(const Element& lhs, const Element& rhs, const std::string& name);

/// d mu7 = c mu4 mu4 in d = 11, cross-checked against the Fierz fast path.
Report verify_m5_relation(const CatalogAlgebra& mink, const CliffordRep& rep, const Element& mu4, const Element& mu7);

/// Rational c from a passing relation report.
Rational pinned_c(const Report& relation);

/// Adjoins h3 with d h3 = -mu4.
CatalogAlgebra m2brane(const CatalogAlgebra& mink, const Element& mu4);

struct M5Cocycle {
  Element element; ///< h3 mu4 + (1/c) mu7 in the m2brane algebra
  Report report;
};
M5Cocycle m5_cocycle(const CatalogAlgebra& m2, const Element& mu4, const Element& mu7, const Rational& c);

struct Resolution {
  CatalogAlgebra algebra;  ///< source plus g4, h3 with d h3 = g4 - mu4
  DGCAMorphism p;          ///< algebra -> source: h3 -> 0, g4 -> mu4
  DGCAMorphism iota;       ///< source -> algebra
  ChainHomotopy s;         ///< between id and iota o p: g4 -> h3
  Report report;
};

/// Throws Errc::not_closed if mu4 is not closed in the source.
Resolution resolve(const CatalogAlgebra& source, const Element& mu4, const std::string& tag);

struct Lift {
  DGCAMorphism morphism;
  Report report;
};

/// s4 -> resolved algebra: g4 -> g4, g7 -> h3 (g4 + mu4) + (1/c) mu7.
/// With an m2brane algebra the report also checks the composite through
/// g4 -> 0 against the M5 cocycle.
Lift equivariant_lift(const Resolution& res, const CatalogAlgebra& s4, const Element& mu4, const Element& mu7,
                      const Rational& c, const CatalogAlgebra* m2 = nullptr, const Element* m5 = nullptr);

/// Adds omega_a_b (a < b, (1,even)) with
///   d psi = 1/4 omega_{ab} Gamma^{ab} psi,
///   d e^a = omega^a_b e^b + psibar Gamma^a psi,
///   d omega_{ab} = omega_{ac} eta^{cc} omega_{cb}.
CatalogAlgebra super_poincare(const CatalogAlgebra& mink, const CliffordRep& rep);

/// tr(omega^k) = sum over closed index walks of omega^{a1}_{a2}...omega^{ak}_{a1}.
Element lorentz_trace_element(const CatalogAlgebra& poincare, const CliffordRep& rep, int k);

struct LorentzTrace {
  Element element;
  Report report;
};

/// tr(omega^k) with its closure and the vanishing of tr(omega^{2m}) for
/// 2m <= k + 1. Throws Errc::unsupported unless k is 3 or 7.
LorentzTrace lorentz_trace(const CatalogAlgebra& poincare, const CliffordRep& rep, int k);

struct FamilyCocycle {
  DGCAMorphism morphism;
  Report report;
};

/// s4 -> resolvedPoincare: g7 -> (h3 + alpha tr3)(g4 + mu4) + (1/c) mu7 + beta tr7.
/// `trace7` is required when beta != 0. When `lift` is given, the report also
/// checks that setting omega to zero recovers it.
FamilyCocycle family_seven_cocycle(const Resolution& rp, const CatalogAlgebra& s4, const Element& mu4,
                                   const Element& mu7, const Rational& c, const Rational& alpha,
                                   const Rational& beta, const Element& trace3, const Element* trace7,
                                   const Lift* lift = nullptr);

enum class Triviality { yes, no, capped, not_applicable };
std::string to_string(Triviality t);

struct BraneScanEntry {
  int d = 0;
  int n = 0;
  int p = 0;
  bool closed = false;
  Triviality nontrivial = Triviality::not_applicable;
  std::string note;
  Report report;
};

/// Closure of mu_{p+2} and, when closed, its (non)exactness by an exact
/// coboundary solve. Throws Errc::unsupported for other (d, N).
BraneScanEntry verify_brane_scan_entry(int d, int n, int p, std::size_t cap = default_basis_cap);

/// Lazily built objects shared by the verification tasks.
class Catalog {
public:
  explicit Catalog(std::size_t cap = default_basis_cap) : cap_(cap) {}

  const CliffordRep& rep(int d);
  const CatalogAlgebra& mink(int d);
  const Element& mu(int d, int p);
  const Report& m5_relation();
  const Rational& c();
  const CatalogAlgebra& m2();
  const M5Cocycle& m5();
  const Resolution& resolution();
  const CatalogAlgebra& s4();
  const Lift& lift();
  const CatalogAlgebra& poincare();
  const Resolution& resolved_poincare();
  const LorentzTrace& trace(int k);
  /// mu in the super-Poincare signature.
  const Element& poincare_mu(int p);
  [[nodiscard]] std::size_t cap() const noexcept { return cap_; }

private:
  std::size_t cap_;
  std::map<int, CliffordRep> reps_;
  std::map<int, CatalogAlgebra> minks_;
  std::map<std::pair<int, int>, Element> mus_;
  std::map<int, Element> poincare_mus_;
  std::optional<Report> relation_;
  std::optional<Rational> c_;
  std::optional<CatalogAlgebra> m2_;
  std::optional<M5Cocycle> m5_;
  std::optional<Resolution> resolution_;
  std::optional<CatalogAlgebra> s4_;
  std::optional<Lift> lift_;
  std::optional<CatalogAlgebra> poincare_;
  std::optional<Resolution> resolved_poincare_;
  std::map<int, LorentzTrace> traces_;
};

} // namespace fda
