#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "f1kgw/monoid.hpp"

namespace f1kgw {

/// Overlap data of two charts: the overlap monoid and the two localization
/// maps from the charts into it.
struct ChartOverlap {
  PointedMonoid monoid;
  MonoidHom from_first;   // A_i -> O_ij  (i < j)
  MonoidHom from_second;  // A_j -> O_ij
};

/// Triple overlap with restriction maps from the three pairwise overlaps.
struct TripleOverlap {
  PointedMonoid monoid;
  MonoidHom from_ij, from_ik, from_jk;
};

/// Cech complex of unit groups over the nerve of the cover:
/// C0 = prod_i A_i^x  ->  C1 = prod_{ij} O_ij^x  ->  C2 = prod_{ijk} O_ijk^x.
struct CechUnitsComplex {
  std::vector<std::pair<size_t, size_t>> edges;
  std::vector<std::array<size_t, 3>> triples;
  GroupProduct c0, c1, c2;
  AbHom d0, d1;

  std::optional<size_t> edge_index(size_t i, size_t j) const;
};

/// Point of the scheme: an identification class of chart-local primes.
struct SchemePoint {
  size_t id = 0;
  std::vector<std::pair<size_t, size_t>> reps;  // (chart index, prime index)
  bool closed = false;
};

/// Monoid scheme as a finite affine cover with explicit overlap data, or
/// the integral ambient model where every chart is an Exponent submonoid
/// of one group and overlaps are generated by unions.
class MonoidScheme {
 public:
  MonoidScheme() = default;

  static MonoidScheme glued(std::vector<PointedMonoid> charts,
                            std::map<std::pair<size_t, size_t>, ChartOverlap> overlaps,
                            std::map<std::array<size_t, 3>, TripleOverlap> triples);
  static MonoidScheme ambient_model(FgAbGroup ambient, std::vector<std::vector<Vec>> chart_gens,
                                    std::vector<std::string> chart_names = {});

  static MonoidScheme spec(const PointedMonoid& a);
  static MonoidScheme affine_space(size_t n);
  /// P^n over an Exponent base (including F1).
  static MonoidScheme projective_space(size_t n, const PointedMonoid& base);
  /// The union of the three coordinate lines in P^2 (a non-integral
  /// scheme with empty triple overlap).
  static MonoidScheme triangle();
  static MonoidScheme p1_x_p1();
  static MonoidScheme p1_x_gm();

  size_t chart_count() const;
  const PointedMonoid& chart(size_t i) const;
  bool has_ambient() const;
  const FgAbGroup& ambient() const;
  const std::vector<std::string>& chart_names() const;

  bool overlap_nonempty(size_t i, size_t j) const;
  const ChartOverlap& overlap(size_t i, size_t j) const;  // requires i < j nonempty
  bool triple_nonempty(size_t i, size_t j, size_t k) const;
  const TripleOverlap& triple(size_t i, size_t j, size_t k) const;

  // -- points and the specialization poset -----------------------------------
  const std::vector<SchemePoint>& points() const;
  /// x lies in the closure of y (y generizes x).
  bool specializes(size_t y, size_t x) const;
  /// Covering pairs (y, x) with x in cl{y}, x != y.
  std::vector<std::pair<size_t, size_t>> specialization_pairs() const;
  std::optional<size_t> generic_point() const;  // unique maximal, if any
  PointedMonoid stalk(size_t point_id) const;

  bool is_irreducible() const;
  bool is_pc() const;
  bool is_integral() const;

  // -- global data ------------------------------------------------------------
  /// Gamma(X): the intersection of the chart monoids (ambient model), the
  /// equalizer (finite tables), or the chart itself (one chart).
  PointedMonoid global_sections() const;
  struct GlobalUnits {
    FgAbGroup group;
    AbHom into_c0;  // embedding into the Cech degree-0 product
  };
  GlobalUnits global_units() const;

  const CechUnitsComplex& cech_units() const;

  std::string to_string() const;
  std::string poset_dot() const;

  bool same_object(const MonoidScheme& other) const { return impl_ == other.impl_; }

 private:
  struct Impl;
  explicit MonoidScheme(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<Impl> impl_;
};

}  // namespace f1kgw
