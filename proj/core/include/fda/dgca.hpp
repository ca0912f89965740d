#pragma once

// Semifree differential bigraded commutative algebras, their morphisms and
// chain homotopies. The differential has bidegree (1, even) and is extended
// from generators by the graded Leibniz rule
//   d(ab) = d(a) b + (-1)^{deg a} a d(b).

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fda/errors.hpp"
#include "fda/graded.hpp"
#include "fda/report.hpp"

namespace fda {

class SemifreeDGCA;
using DGCAPtr = std::shared_ptr<const SemifreeDGCA>;

class SemifreeDGCA {
public:
  [[nodiscard]] const SignaturePtr& signature() const noexcept { return sig_; }
  [[nodiscard]] const std::string& label() const noexcept { return label_; }
  [[nodiscard]] std::size_t size() const noexcept { return images_.size(); }
  [[nodiscard]] const Element& differential(GenId g) const { return images_.at(g); }
  [[nodiscard]] const Element& differential(std::string_view name) const { return images_.at(sig_->id(name)); }
  [[nodiscard]] Element generator(std::string_view name) const { return Element::generator(sig_, name); }

  /// Same generators and the same differential; labels are ignored.
  friend bool operator==(const SemifreeDGCA& a, const SemifreeDGCA& b);

private:
  friend DGCAPtr make_dgca(SignaturePtr, const std::map<std::string, Element>&, std::string);
  SignaturePtr sig_;
  std::vector<Element> images_;
  std::string label_;
};

/// Generators missing from `images` get zero differential. Images may be given
/// in any signature containing the generators they use. Throws
/// Errc::inhomogeneous_image, Errc::bidegree_mismatch, Errc::unknown_generator.
DGCAPtr make_dgca(SignaturePtr sig, const std::map<std::string, Element>& images, std::string label = {});

/// Leibniz extension of the differential. Throws Errc::signature_mismatch.
Element apply_d(const SemifreeDGCA& a, const Element& x);

/// pass iff d(d(g)) = 0 on every generator; a failure carries the residual.
Report check_d_squared(const SemifreeDGCA& a);

class ChainMapViolation : public Error {
public:
  ChainMapViolation(std::string generator, Element residual);
  [[nodiscard]] const std::string& generator() const noexcept { return generator_; }
  [[nodiscard]] const Element& residual() const noexcept { return residual_; }

private:
  std::string generator_;
  Element residual_;
};

enum class Validation { eager, lazy };

/// Algebra map determined by generator images (images live in the target).
class DGCAMorphism {
public:
  [[nodiscard]] const DGCAPtr& source() const noexcept { return source_; }
  [[nodiscard]] const DGCAPtr& target() const noexcept { return target_; }
  [[nodiscard]] const Element& image(GenId g) const { return images_.at(g); }
  [[nodiscard]] const Element& image(std::string_view name) const;
  [[nodiscard]] std::span<const Element> images() const noexcept { return images_; }

  /// Multiplicative extension to arbitrary elements of the source.
  [[nodiscard]] Element apply(const Element& x) const;

  friend bool operator==(const DGCAMorphism& a, const DGCAMorphism& b);

private:
  friend DGCAMorphism make_morphism(DGCAPtr, DGCAPtr, const std::map<std::string, Element>&, Validation);
  DGCAPtr source_;
  DGCAPtr target_;
  std::vector<Element> images_;
};

/// Source generators not listed in `images` go to the target generator of the
/// same name (which must exist with the same bidegree). With eager
/// validation, throws ChainMapViolation if d(f(x)) != f(d(x)) for some
/// generator x. Throws Errc::bidegree_mismatch for ill-typed images.
DGCAMorphism make_morphism(DGCAPtr source, DGCAPtr target, const std::map<std::string, Element>& images,
                           Validation validation = Validation::eager);

/// pass iff d(f(x)) = f(d(x)) on every generator.
Report check_chain_map(const DGCAMorphism& f);

DGCAMorphism identity(const DGCAPtr& a);

/// g after f: x -> g(f(x)). Requires f.target == g.source (structurally).
DGCAMorphism compose(const DGCAMorphism& f, const DGCAMorphism& g);

/// Degree (-1, even) map s with s(ab) = s(a) g(b) + (-1)^{deg a} f(a) s(b).
struct ChainHomotopy {
  DGCAMorphism f;
  DGCAMorphism g;
  std::vector<Element> images; ///< indexed by source generator, in the target
};

/// Generators not listed map to zero. Throws Errc::bidegree_mismatch,
/// Errc::signature_mismatch when f and g are not parallel.
ChainHomotopy make_homotopy(const DGCAMorphism& f, const DGCAMorphism& g,
                            const std::map<std::string, Element>& images);

Element apply_homotopy(const ChainHomotopy& s, const Element& x);

/// pass iff f(x) - g(x) = d s(x) + s d(x) for every generator x.
Report check_homotopy(const DGCAMorphism& f, const DGCAMorphism& g, const ChainHomotopy& s);

/// Adds `gen` with d(gen) = lambda * d_image. d_image must be closed in `a`
/// and of bidegree (deg gen + 1, par gen). Throws Errc::not_closed,
/// Errc::bidegree_mismatch.
DGCAPtr adjoin_generator(const DGCAPtr& a, GeneratorDecl gen, const Element& d_image, const Rational& lambda = 1,
                         std::string label = {});

/// Quotient by the generators in `killed`: they are removed and every
/// differential is substituted with them set to zero.
DGCAPtr set_generators_to_zero(const DGCAPtr& a, const std::set<std::string>& killed, std::string label = {});

/// Sends the listed generators to zero and every other generator to the
/// target generator of the same name.
DGCAMorphism kill_map(const DGCAPtr& source, const DGCAPtr& target, const std::set<std::string>& killed,
                      Validation validation = Validation::eager);

/// Generator-by-name inclusion of `source` into `target`.
DGCAMorphism inclusion(const DGCAPtr& source, const DGCAPtr& target, Validation validation = Validation::eager);

/// A (x) B on the disjoint union of generators. Throws Errc::duplicate_name.
DGCAPtr tensor_product(const DGCAPtr& a, const DGCAPtr& b, std::string label = {});

} // namespace fda
