#pragma once

#include <optional>
#include <string>
#include <vector>

#include "f1kgw/int_matrix.hpp"
#include "f1kgw/ints.hpp"

namespace f1kgw {

/// Finitely generated abelian group in Smith normal form: torsion factors
/// Z/d1 x ... x Z/dk (d_i >= 2, d_i | d_{i+1}) followed by Z^free_rank.
/// Canonical coordinates list the torsion components first, each reduced
/// to [0, d_i), then the free components.
class FgAbGroup {
 public:
  FgAbGroup() = default;
  FgAbGroup(Vec torsion, size_t free_rank, std::vector<std::string> labels = {});

  static FgAbGroup free_group(size_t rank);
  static FgAbGroup trivial() { return free_group(0); }
  static FgAbGroup cyclic(const Int& n);  // n = 0 gives Z
  static FgAbGroup product(const FgAbGroup& a, const FgAbGroup& b);

  size_t dim() const { return torsion_.size() + free_rank_; }
  size_t torsion_count() const { return torsion_.size(); }
  size_t free_rank() const { return free_rank_; }
  const Vec& torsion() const { return torsion_; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool is_trivial() const { return dim() == 0; }
  bool is_finite() const { return free_rank_ == 0; }
  Int order() const;  // finite groups only

  Vec zero() const { return Vec(dim(), Int(0)); }
  Vec reduce(Vec x) const;
  Vec add(const Vec& a, const Vec& b) const { return reduce(vec_add(a, b)); }
  Vec sub(const Vec& a, const Vec& b) const { return reduce(vec_sub(a, b)); }
  Vec neg(const Vec& a) const { return reduce(vec_neg(a)); }
  Vec scale(const Int& c, const Vec& a) const { return reduce(vec_scale(c, a)); }
  bool is_zero(const Vec& a) const { return vec_is_zero(reduce(a)); }
  bool equal(const Vec& a, const Vec& b) const { return reduce(a) == reduce(b); }
  Vec basis_vector(size_t i) const;
  std::vector<Vec> generators() const;

  /// Relations of the canonical presentation: dim x torsion_count matrix
  /// whose columns are d_i * e_i.
  IntMatrix relation_matrix() const;

  std::vector<Vec> enumerate() const;  // finite groups only

  bool same_shape(const FgAbGroup& other) const {
    return torsion_ == other.torsion_ && free_rank_ == other.free_rank_;
  }

  std::string to_string() const;  // e.g. "Z/2 x Z/6 x Z^2", "0"

 private:
  Vec torsion_;
  size_t free_rank_ = 0;
  std::vector<std::string> labels_;
};

/// Quotient Z^n / column-lattice(relations), with the change of basis
/// carrying presentation coordinates to canonical coordinates and back.
struct Presentation {
  FgAbGroup group;
  IntMatrix projection;  // group.dim() x n, presentation coords -> canonical
  IntMatrix section;     // n x group.dim(), canonical -> a presentation lift
};

Presentation quotient_presentation(size_t n, const IntMatrix& relations);

/// Homomorphism between groups in canonical coordinates. The matrix must
/// kill torsion: d_i * (image of torsion generator i) = 0 in the codomain.
struct AbHom {
  FgAbGroup domain;
  FgAbGroup codomain;
  IntMatrix matrix;  // codomain.dim() x domain.dim()

  static AbHom identity(const FgAbGroup& g);
  static AbHom zero(const FgAbGroup& dom, const FgAbGroup& cod);

  Vec apply(const Vec& x) const { return codomain.reduce(matrix.apply(x)); }
  AbHom compose(const AbHom& inner) const;  // this after inner
  AbHom add(const AbHom& other) const;
  AbHom negate() const;
  bool is_well_defined() const;
  bool equal(const AbHom& other) const;
};

struct KernelResult {
  FgAbGroup group;
  AbHom inclusion;  // group -> domain of f
};

struct CokernelResult {
  FgAbGroup group;
  AbHom projection;  // codomain of f -> group
};

KernelResult kernel(const AbHom& f);
CokernelResult cokernel(const AbHom& f);

/// Product of groups in canonical form, with the inclusion and projection
/// homomorphisms per factor (coordinates of the product are renormalized
/// into a single SNF chain).
struct GroupProduct {
  FgAbGroup group;
  std::vector<AbHom> include;  // factor -> product
  std::vector<AbHom> project;  // product -> factor
};

GroupProduct product_group(const std::vector<FgAbGroup>& factors);

/// Some x with f(x) = target, or nullopt iff target is not in the image.
std::optional<Vec> solve(const AbHom& f, const Vec& target);

/// Subgroup of `ambient` generated by a list of elements, as an abstract
/// group with an embedding hom and a membership test.
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(const FgAbGroup& ambient, const std::vector<Vec>& generators);

  const FgAbGroup& group() const { return group_; }
  const FgAbGroup& ambient() const { return ambient_; }
  const AbHom& embedding() const { return embed_; }

  bool contains(const Vec& x) const;
  /// Abstract coordinates of an ambient element, if it lies in the subgroup.
  std::optional<Vec> coords_of(const Vec& x) const;
  Vec element_of(const Vec& coords) const { return embed_.apply(coords); }

  bool is_trivial() const { return group_.is_trivial(); }

 private:
  FgAbGroup ambient_;
  FgAbGroup group_;
  AbHom embed_;
  IntMatrix gen_matrix_;  // ambient.dim() x (number of generators)
  IntMatrix gen_to_abstract_;  // abstract coords of each original generator
};

/// x -> linear(x) + shift with (linear, shift) squaring to the identity.
struct AffineInvolution {
  FgAbGroup group;
  AbHom linear;
  Vec shift;

  static AffineInvolution shifted_negation(const FgAbGroup& g, const Vec& lambda);

  Vec apply(const Vec& x) const { return group.reduce(vec_add(linear.apply(x), shift)); }
  bool is_involution() const;
};

/// Solution set {x : inv(x) = x}, empty or particular + translations.
struct FixedSet {
  bool empty = true;
  Vec particular;
  Subgroup translations;

  bool contains(const Vec& x, const AffineInvolution& inv) const;
  bool is_finite() const { return empty || translations.group().is_finite(); }
  std::vector<Vec> enumerate(const FgAbGroup& ambient) const;  // finite only
};

/// Orbits of the whole group under the involution; fixed points are
/// singleton orbits. rep() is the canonical representative.
struct OrbitSpace {
  AffineInvolution inv;

  Vec rep(const Vec& x) const;
  bool is_rep(const Vec& x) const { return inv.group.reduce(x) == rep(x); }
  bool is_free(const Vec& x) const { return !inv.group.equal(inv.apply(x), x); }
  std::vector<Vec> enumerate_reps() const;             // finite groups only
  std::vector<Vec> enumerate_free_reps() const;        // finite groups only
};

struct InvolutionSplit {
  FixedSet fixed;
  OrbitSpace orbits;
};

InvolutionSplit involution_fixed_and_orbits(const AffineInvolution& inv);

}  // namespace f1kgw
