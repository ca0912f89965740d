#pragma once

// Sullivan models of spheres, the Hopf fiber sequence of the 4-sphere model,
// polynomial de Rham complexes and flat forms with values in a semifree
// algebra.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fda/dgca.hpp"
#include "fda/linalg.hpp"
#include "fda/serialize.hpp"

namespace fda {

struct SphereModel {
  int n = 0;
  DGCAPtr algebra;
};

/// n odd: g_n with d g_n = 0. n even: g_n, g_{2n-1} with d g_{2n-1} = g_n^2.
/// Cohomology is checked up to degree 3n; throws std::logic_error otherwise.
SphereModel sphere_model(int n);

/// 1 in degrees 0 and n, 0 elsewhere.
std::vector<std::int64_t> sphere_cohomology(int n, int max_degree);

/// Killing g4 in the 4-sphere model leaves R[g7] with zero differential, and
/// R[g4] -> s4 (g4 -> g4) is a chain map whose composite with the kill map
/// sends g4 to 0.
Report hopf_sequence_check();

struct PolyDeRham {
  int n = 0;
  DGCAPtr algebra; ///< x1..xn at (0,even), dx1..dxn at (1,even)
};

PolyDeRham poly_de_rham(int n);

/// Radial contraction: H(x^I dx_{j1}...dx_{jk}) = sum_i (-1)^{i-1} x^I x_{ji}
/// dx_{J without ji} / (k + |I|). dH + Hd = id away from constants.
Element radial_homotopy(const PolyDeRham& target, const Element& form);

/// For a closed form of positive degree, exhibits H(form) as a primitive.
Report poincare_lemma_check(const PolyDeRham& target, const Element& form);

struct FlatGForm {
  DGCAPtr model;
  PolyDeRham target;
  DGCAMorphism assignment;
};

struct FlatFormResult {
  std::optional<FlatGForm> form;
  Report report;
};

/// Validates images (generator name -> form) as a morphism model -> target.
/// Failures (chain-map violations, ill-typed images) come back as a failing
/// report carrying the residual.
FlatFormResult flat_form_check(const DGCAPtr& model, const PolyDeRham& target,
                               const std::map<std::string, Element>& images);

/// Same, with images written in the expression grammar over x_i, dx_i.
FlatFormResult flat_form_check(const DGCAPtr& model, const PolyDeRham& target,
                               const std::map<std::string, std::string>& images);

/// {"model": "s4" | dgca-json, "n": 8, "images": {"g4": "dx1*dx2*dx3*dx4", ...}}
FlatFormResult flat_form_check_json(const json& input);

/// On seeded random samples: projections of flat s4-valued forms are closed
/// 4-forms, and (0, w7) is flat exactly when w7 is closed.
Report forms_fiber_check(const PolyDeRham& target, int samples = 64, std::uint64_t seed = 20240611);

} // namespace fda
