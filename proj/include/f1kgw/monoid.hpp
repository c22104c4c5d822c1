#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "f1kgw/abgroup.hpp"
#include "f1kgw/ints.hpp"

namespace f1kgw {

enum class Backend { FiniteTable, Exponent, Wedge };

/// Element of a pointed monoid, tagged by backend representation.
/// Exponent elements carry canonical ambient-group coordinates; Wedge
/// elements carry a component index (kUnitComponent for shared units).
struct MonoidElement {
  enum class Tag { Zero, Table, Exp, Wedge };
  static constexpr size_t kUnitComponent = static_cast<size_t>(-1);

  Tag tag = Tag::Zero;
  size_t index = 0;  // Table element index, or Wedge component
  Vec coords;        // Exp / Wedge coordinates in the ambient group

  static MonoidElement zero() { return MonoidElement{}; }
  static MonoidElement table(size_t idx) { return MonoidElement{Tag::Table, idx, {}}; }
  static MonoidElement exp(Vec coords) { return MonoidElement{Tag::Exp, 0, std::move(coords)}; }
  static MonoidElement wedge(size_t comp, Vec coords) {
    return MonoidElement{Tag::Wedge, comp, std::move(coords)};
  }

  bool is_zero() const { return tag == Tag::Zero; }
  bool operator==(const MonoidElement& other) const {
    return tag == other.tag && index == other.index && coords == other.coords;
  }
  bool operator<(const MonoidElement& other) const;
};

struct PropertyReport {
  bool cancellative = false;
  bool pc = false;
  bool rpc = false;
  bool lpc = false;
  bool right_reversible = false;
  bool reversible = false;
  std::optional<bool> right_noetherian;  // decided for finite tables only
};

/// Prime ideal, stored by backend:
///  - FiniteTable: explicit element index subset;
///  - Exponent: the generator subset T spanning the complementary face plus
///    a certifying rational functional (phi >= 0 on generators, zero set T);
///  - Wedge: the component carrying the face (kUnitComponent for the
///    maximal ideal) plus the face data within that component.
struct PrimeIdeal {
  Backend backend = Backend::Exponent;
  std::vector<size_t> table_elements;     // FiniteTable: indices in the ideal
  std::vector<size_t> face_generators;    // Exponent/Wedge: generator indices with phi = 0
  std::vector<Rat> functional;            // on ambient free coordinates
  size_t component = MonoidElement::kUnitComponent;  // Wedge only

  bool operator==(const PrimeIdeal& other) const {
    return backend == other.backend && table_elements == other.table_elements &&
           face_generators == other.face_generators && component == other.component;
  }
};

class PointedMonoid;

/// Unit group of a pointed monoid. Abelian units expose an abstract
/// FgAbGroup together with element/coordinate translation; finite
/// non-abelian units (FiniteTable only) expose the element list.
class UnitsGroup {
 public:
  bool abelian() const { return abelian_; }
  const FgAbGroup& group() const;
  bool finite() const;
  Int order() const;
  const std::vector<MonoidElement>& elements() const;  // finite only
  MonoidElement element_of(const Vec& coords) const;   // abelian only
  std::optional<Vec> coords_of(const MonoidElement& u) const;
  bool is_unit(const MonoidElement& u) const { return coords_of(u).has_value() || index_of(u).has_value(); }
  std::optional<size_t> index_of(const MonoidElement& u) const;  // finite only

 private:
  friend class PointedMonoid;
  bool abelian_ = true;
  FgAbGroup group_;
  Subgroup sub_;  // Exponent/Wedge: unit subgroup of the ambient group
  bool use_sub_ = false;
  std::vector<MonoidElement> elements_;         // finite enumeration
  std::map<Vec, size_t, VecLess> coord_index_;  // abelian finite: coords -> position
  std::vector<Vec> element_coords_;             // abelian finite: position -> coords
};

struct LocalizationResult;

/// Commutative-or-finite pointed monoid in one of three decidable backends.
/// Values have shared-state semantics: copies are cheap and share caches.
class PointedMonoid {
 public:
  PointedMonoid() : PointedMonoid(f1()) {}

  // -- constructors ---------------------------------------------------------
  /// table[i][j] = index of product; index 0 is the zero, index 1 the one
  /// (a one-element table encodes the terminal monoid {0}).
  static PointedMonoid finite_table(std::vector<std::vector<size_t>> table,
                                    std::vector<std::string> names = {});
  static PointedMonoid exponent(FgAbGroup ambient, std::vector<Vec> generators,
                                std::vector<std::string> names = {});
  static PointedMonoid wedge(FgAbGroup ambient, std::vector<Vec> unit_gens,
                             std::vector<std::vector<Vec>> component_gens,
                             std::vector<std::string> names = {});

  // -- built-ins ------------------------------------------------------------
  static PointedMonoid f1();                       // {0, 1}
  static PointedMonoid terminal();                 // {0}
  static PointedMonoid free_monoid(size_t n);      // F1[T1..Tn]
  static PointedMonoid laurent(size_t n);          // F1[T1^,...,Tn^] (all inverted)
  static PointedMonoid group_monoid(const FgAbGroup& g);          // F1[G]
  static PointedMonoid truncated_poly(size_t n);                  // F1[t]/<t^n = 0>
  static PointedMonoid stabilized_poly(size_t n, size_t d);       // F1[t]/<t^n = t^d>
  static PointedMonoid ts_wedge();                 // F1[t,s]/<ts = 0>

  // -- structure ------------------------------------------------------------
  Backend backend() const;
  bool commutative() const;
  std::optional<size_t> size() const;  // finite table size
  const FgAbGroup& ambient() const;    // Exponent/Wedge
  const std::vector<Vec>& exp_generators() const;  // Exponent: generator coords
  size_t wedge_component_count() const;
  const std::vector<Vec>& wedge_all_generators() const;  // units then components, flattened
  const std::vector<size_t>& wedge_component_of_gen() const;  // kUnitComponent for units
  /// Exponent monoid of one wedge component (units plus that component).
  PointedMonoid component_monoid(size_t c) const;
  const std::vector<std::string>& generator_names() const;

  MonoidElement zero_elem() const { return MonoidElement::zero(); }
  MonoidElement one_elem() const;
  MonoidElement mul(const MonoidElement& a, const MonoidElement& b) const;
  MonoidElement pow(const MonoidElement& a, const Int& n) const;  // n >= 0, or unit with n < 0
  bool equal(const MonoidElement& a, const MonoidElement& b) const;
  MonoidElement normalize(const MonoidElement& a) const;
  /// Generator i as an element (backend generators; table backends expose
  /// every element as its own index).
  MonoidElement generator(size_t i) const;
  size_t generator_count() const;

  /// Membership of an ambient-coordinate vector in an Exponent monoid
  /// (decided exactly by bounded search in the unit quotient).
  bool exp_member(const Vec& coords) const;
  bool contains(const MonoidElement& e) const;

  // -- the operations of the module ------------------------------------------
  const UnitsGroup& units() const;
  std::vector<MonoidElement> idempotents() const;
  const PropertyReport& properties() const;
  LocalizationResult localize(const std::vector<MonoidElement>& s) const;
  const std::vector<PrimeIdeal>& primes() const;
  /// Group completion of a cancellative monoid, as a subgroup of the
  /// ambient group (Exponent) or the full unit group (finite cancellative).
  Subgroup fraction_group() const;

  // prime-ideal queries
  bool prime_contains(const PrimeIdeal& p, const MonoidElement& e) const;
  bool prime_subset(const PrimeIdeal& p, const PrimeIdeal& q) const;  // p contained in q
  /// Complement of a prime, as a generating element list for localization.
  std::vector<MonoidElement> prime_complement_generators(const PrimeIdeal& p) const;
  std::string prime_to_string(const PrimeIdeal& p) const;

  std::string element_to_string(const MonoidElement& e) const;
  std::string to_string() const;

  bool same_object(const PointedMonoid& other) const { return impl_ == other.impl_; }
  /// Structural equality of presentations (same backend and data).
  bool same_as(const PointedMonoid& other) const;

  // FiniteTable access
  size_t table_mul(size_t i, size_t j) const;

 private:
  struct Impl;
  explicit PointedMonoid(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
};

/// Monoid homomorphism with enough structure to push elements and unit
/// groups forward: an index map for finite tables, a linear ambient map for
/// Exponent sources, or a per-component rule for Wedge sources.
class MonoidHom {
 public:
  static MonoidHom table_map(PointedMonoid dom, PointedMonoid cod, std::vector<size_t> images);
  static MonoidHom exp_linear(PointedMonoid dom, PointedMonoid cod, IntMatrix ambient_map);
  /// Wedge source: unit part maps linearly; each component either maps
  /// linearly into the codomain ambient or is killed to zero.
  static MonoidHom wedge_map(PointedMonoid dom, PointedMonoid cod, IntMatrix unit_map,
                             std::vector<std::optional<IntMatrix>> component_maps);
  /// Everything maps to zero (= one); codomain is the terminal monoid.
  static MonoidHom collapse(PointedMonoid dom, PointedMonoid cod);

  const PointedMonoid& domain() const { return dom_; }
  const PointedMonoid& codomain() const { return cod_; }

  MonoidElement apply(const MonoidElement& e) const;
  /// Induced homomorphism on abelian unit groups (abstract coordinates).
  AbHom units_hom() const;

 private:
  MonoidHom(PointedMonoid dom, PointedMonoid cod) : dom_(std::move(dom)), cod_(std::move(cod)) {}
  PointedMonoid dom_, cod_;
  enum class Kind { Table, ExpLinear, Wedge, Collapse } kind_ = Kind::ExpLinear;
  std::vector<size_t> table_images_;
  IntMatrix linear_;
  std::vector<std::optional<IntMatrix>> component_maps_;
};

struct LocalizationResult {
  PointedMonoid result;
  MonoidHom map;
  bool degenerate = false;  // result collapsed to the one-element monoid
};

}  // namespace f1kgw
