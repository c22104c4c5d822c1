#pragma once

#include <map>
#include <optional>
#include <vector>

#include "f1kgw/finsupp.hpp"
#include "f1kgw/modcat.hpp"

namespace f1kgw {

/// (A, sigma, epsilon): monoid with involution and a compatible central
/// unit, the twisting datum for symmetric forms.
struct DualityDatum {
  PointedMonoid monoid;
  MonoidInvolution sigma;
  MonoidElement epsilon;

  static DualityDatum standard(PointedMonoid m);
  static DualityDatum make(PointedMonoid m, MonoidInvolution sigma, MonoidElement epsilon);
};

/// Symmetric form: unit-valued permutation matrix psi with
/// psi_ij = epsilon * sigma(psi_ji); the support permutation is forced to
/// be an involution.
class SymForm {
 public:
  static SymForm make(DualityDatum d, MonomialMatrix psi);
  static SymForm diagonal(const DualityDatum& d, const std::vector<MonoidElement>& xi);
  static SymForm hyperbolic(const DualityDatum& d, size_t n);  // H(A^n), rank 2n

  const DualityDatum& datum() const { return datum_; }
  const MonomialMatrix& matrix() const { return psi_; }
  size_t rank() const { return psi_.rows(); }

  SymForm direct_sum(const SymForm& other) const;
  /// P(g) o psi o g for an isomorphism g (congruence transform).
  SymForm congruence(const MonomialMatrix& g) const;

 private:
  SymForm(DualityDatum d, MonomialMatrix psi) : datum_(std::move(d)), psi_(std::move(psi)) {}
  DualityDatum datum_;
  MonomialMatrix psi_;
};

/// Orbit set SPic(A) = {xi in A^x : xi = eps sigma(xi)} / (u . xi = u xi sigma(u))
/// with per-orbit stabilizers I(xi). Finite unit groups are enumerated;
/// infinite abelian ones are handled as a quotient group via SNF.
class SPicSet {
 public:
  bool is_empty() const;
  bool finite() const { return finite_; }

  struct Orbit {
    std::vector<MonoidElement> elements;
    MonoidElement rep;
    Vec key;
    Int stabilizer_order;
  };
  const std::vector<Orbit>& orbits() const;  // finite only

  /// Canonical key of the orbit of xi (finite: index key; infinite:
  /// canonical coordinates in the quotient group).
  Vec orbit_key(const MonoidElement& xi) const;
  MonoidElement rep_of_key(const Vec& key) const;
  /// u with to = u * from * sigma(u), when the orbits match.
  std::optional<MonoidElement> twist_witness(const MonoidElement& from,
                                             const MonoidElement& to) const;
  Int stabilizer_order(const Vec& key) const;  // |I(xi)|; finite units only
  const FgAbGroup& quotient() const { return quotient_; }

  IndexDescriptor descriptor() const;
  std::optional<size_t> orbit_count() const;

 private:
  friend SPicSet spic(const DualityDatum& d);
  DualityDatum datum_{PointedMonoid(), MonoidInvolution::identity(PointedMonoid()),
                      MonoidElement::zero()};
  bool finite_ = true;
  bool empty_ = false;
  std::vector<Orbit> orbits_;
  // infinite abelian data: units group U, s = units involution,
  // base point xi0 with xi0 = eps sigma(xi0)
  FgAbGroup units_;
  AbHom s_;
  Vec xi0_;
  FgAbGroup quotient_;      // ker(1 - s) / im(1 + s)
  AbHom ker_incl_;          // ker(1 - s) -> units
  IntMatrix quot_proj_;     // ker coords -> quotient coords
  IntMatrix quot_sect_;     // quotient coords -> ker coords
  Int stab_order_ = 0;      // |ker(1 + s)| (or -1 when infinite)
};

SPicSet spic(const DualityDatum& d);

/// Isometry class (h, {m_xi}) of a symmetric form.
struct FormClass {
  Int hyperbolic_count = 0;
  std::map<Vec, Int, VecLess> multiplicities;  // orbit key -> multiplicity

  Int total_rank() const;
  bool operator==(const FormClass& other) const {
    return hyperbolic_count == other.hyperbolic_count && multiplicities == other.multiplicities;
  }
};

struct ClassifyResult {
  FormClass cls;
  MonomialMatrix witness;  // g with P(g) psi g = normal_form
  SymForm normal_form;
};

ClassifyResult classify(const SymForm& psi, const SPicSet& sp);
ClassifyResult classify(const SymForm& psi);  // computes SPic internally

struct IsometryResult {
  bool isometric = false;
  std::optional<MonomialMatrix> witness;  // g with P(g) psi2 g = psi1
};

IsometryResult is_isometric(const SymForm& psi1, const SymForm& psi2);

/// |Aut(psi_{h, {m_xi}})| = (2 |A^x|)^h h! prod_xi |I(xi)|^{m_xi} m_xi!
Int isometry_group_order(const DualityDatum& d, const SPicSet& sp, const FormClass& c);

/// Lagrangian index set when the form is metabolic (iff the support
/// involution is fixed-point free), otherwise nullopt.
std::optional<std::vector<size_t>> is_metabolic(const SymForm& psi);

/// Reduction psi // S at an isotropic index set: the restriction to the
/// indices outside S and its image under the support involution.
SymForm reduce_isotropic(const SymForm& psi, const std::vector<size_t>& s);

/// pi_0-level Grothendieck-Witt data: a free abelian group split into a
/// symmetric part and a hyperbolic part, elements as finitely supported
/// maps. Monoid level: sym over SPic(A), hyp over a single index.
struct GW0Element {
  FinSuppMap sym;
  FinSuppMap hyp;

  GW0Element add(const GW0Element& o) const { return {sym.add(o.sym), hyp.add(o.hyp)}; }
  GW0Element negate() const { return {sym.negate(), hyp.negate()}; }
  bool equal(const GW0Element& o) const { return sym.equal(o.sym) && hyp.equal(o.hyp); }
  bool is_zero() const { return sym.is_zero() && hyp.is_zero(); }
};

struct GW0Group {
  IndexDescriptor sym_index;
  IndexDescriptor hyp_index;

  GW0Element zero() const { return {FinSuppMap(sym_index), FinSuppMap(hyp_index)}; }
  GW0Element sym_basis(const Vec& key) const {
    return {FinSuppMap::basis(sym_index, key), FinSuppMap(hyp_index)};
  }
  GW0Element hyp_basis(const Vec& key) const {
    return {FinSuppMap(sym_index), FinSuppMap::basis(hyp_index, key)};
  }
  std::string to_string() const;
};

struct W0Group {
  IndexDescriptor index;
  std::string to_string() const;
};

struct MonoidGW0 {
  SPicSet spic;
  GW0Group group;

  /// Group-completed class of a form: h at the hyperbolic index, the
  /// multiplicities on SPic.
  GW0Element class_of(const FormClass& c) const;
  /// The hyperbolic map H: K0(A) = Z -> GW0, 1 -> (1, 0).
  GW0Element hyperbolic_image(const Int& k0_class) const;
};

MonoidGW0 gw0_monoid(const DualityDatum& d);
W0Group w0_monoid(const DualityDatum& d);

}  // namespace f1kgw
