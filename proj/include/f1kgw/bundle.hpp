#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "f1kgw/finsupp.hpp"
#include "f1kgw/scheme.hpp"

namespace f1kgw {

/// Generalized permutation matrix over an abelian unit group in additive
/// coordinates: entry at (perm[i], i) is the unit with coordinates units[i].
struct UnitPerm {
  std::vector<size_t> perm;
  std::vector<Vec> units;

  static UnitPerm identity(size_t n, const FgAbGroup& g);
  static UnitPerm permutation(const std::vector<size_t>& p, const FgAbGroup& g);
  size_t size() const { return perm.size(); }

  UnitPerm compose(const UnitPerm& inner, const FgAbGroup& g) const;  // this after inner
  UnitPerm inverse(const FgAbGroup& g) const;
  /// Same permutation with inverted entries: the transpose of the inverse,
  /// i.e. the transition datum of the dual bundle.
  UnitPerm dual(const FgAbGroup& g) const;
  UnitPerm map_entries(const AbHom& h) const;
  UnitPerm tensor(const UnitPerm& other, const FgAbGroup& g) const;
  UnitPerm direct_sum(const UnitPerm& other) const;
  bool equal(const UnitPerm& other, const FgAbGroup& g) const;
  bool is_identity(const FgAbGroup& g) const;

  std::string to_string() const;
};

/// Rank-n locally free sheaf as a cocycle of unit-valued permutation
/// matrices over the nonempty overlaps of the cover.
class CechBundle {
 public:
  CechBundle() = default;
  static CechBundle trivial(MonoidScheme x, size_t rank);
  /// transitions keyed by ordered pairs (i, j) with i < j; entries over
  /// units(O_ij) in abstract coordinates
  static CechBundle make(MonoidScheme x, size_t rank,
                         std::map<std::pair<size_t, size_t>, UnitPerm> transitions);

  const MonoidScheme& scheme() const { return scheme_; }
  size_t rank() const { return rank_; }
  /// phi_ij for any ordered pair with nonempty overlap (phi_ji = phi_ij^{-1}).
  UnitPerm transition(size_t i, size_t j) const;
  const std::map<std::pair<size_t, size_t>, UnitPerm>& stored_transitions() const {
    return transitions_;
  }

 private:
  MonoidScheme scheme_;
  size_t rank_ = 0;
  std::map<std::pair<size_t, size_t>, UnitPerm> transitions_;
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> violations;
};

/// Checks inverse-pair consistency and the triple cocycle identity
/// phi_ik = phi_jk . phi_ij after restriction to each nonempty triple.
ValidationReport validate(const CechBundle& b);

/// Pic(X) = ker(d1) / im(d0) on the Cech complex of units, with stored
/// cocycle representatives for the canonical generators.
class PicGroup {
 public:
  const FgAbGroup& group() const { return group_; }
  const MonoidScheme& scheme() const { return scheme_; }

  Vec class_of_cocycle(const Vec& c1_coords) const;
  Vec cocycle_of(const Vec& pic_class) const;  // a representative in C1 coords
  Vec class_of(const CechBundle& line) const;  // rank-1 bundles
  CechBundle line_bundle(const Vec& pic_class) const;

  /// Flip the generator sign so that the class of the given line bundle
  /// becomes +1 (rank-one free Pic only; used to pin O(1) on P^n).
  void orient_to(const CechBundle& line);

 private:
  friend PicGroup pic(const MonoidScheme& x);
  MonoidScheme scheme_;
  FgAbGroup group_;
  FgAbGroup kernel_group_;
  AbHom kernel_incl_;  // ker(d1) -> C1
  AbHom proj_;         // ker(d1) -> Pic
};

PicGroup pic(const MonoidScheme& x);

CechBundle tensor(const CechBundle& a, const CechBundle& b);
CechBundle direct_sum(const CechBundle& a, const CechBundle& b);
CechBundle dual(const CechBundle& b);
CechBundle twist(const CechBundle& b, const CechBundle& line);

/// Per-chart change of trivialization: phi'_ij = g_j . phi_ij . g_i^{-1}
/// with the gauge entries pushed into the overlap unit groups.
CechBundle gauge_transform(const CechBundle& b, const std::vector<UnitPerm>& gauge);

struct SplitResult {
  bool split = false;
  /// Pic classes of the line summands, sorted (multiset semantics).
  std::vector<Vec> classes;
  /// Per-chart gauge witness carrying the input to the diagonal bundle.
  std::vector<UnitPerm> gauge;
  /// The diagonal direct sum of line bundles, equal to gauge_transform(b, gauge).
  CechBundle diagonal;
  /// When obstructed: the sheet components as (chart, index) lists.
  std::vector<std::vector<std::pair<size_t, size_t>>> components;
};

/// The constructive line-bundle decomposition: sheet components of the
/// transition permutations, then a permutation gauge normalizing every
/// transition to diagonal form. Obstructed components are reported when a
/// component meets some chart in more than one sheet.
SplitResult decompose(const CechBundle& b, const PicGroup& pg);

/// K0(X) = Z[Pic(X)] for integral X, with convolution as ring structure.
struct K0Ring {
  PicGroup picard;
  IndexDescriptor index;

  FinSuppMap zero() const { return FinSuppMap(index); }
  FinSuppMap unit() const { return FinSuppMap::basis(index, picard.group().zero()); }
  FinSuppMap class_of_bundle(const CechBundle& b) const;
  FinSuppMap multiply(const FinSuppMap& a, const FinSuppMap& b) const;
};

K0Ring k0(const MonoidScheme& x);

/// O(m) on a scheme built by projective_space (transition T_j^m / T_i^m).
CechBundle projective_o_line(const MonoidScheme& x, const Int& m);

}  // namespace f1kgw
