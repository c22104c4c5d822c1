#pragma once

#include "f1kgw/gw_scheme.hpp"

namespace f1kgw {

/// P(E) over an integral ambient-model base, built by monomial substitution
/// from the cocycle data of E: charts (i, k) for chart i of X and
/// homogeneous coordinate k, glued through the line decomposition of E.
class ProjBundle {
 public:
  const MonoidScheme& base() const { return base_; }
  const MonoidScheme& total() const { return total_; }
  const CechBundle& input_bundle() const { return e_; }
  size_t fibre_rank() const { return rank_ - 1; }  // fibre = P^{rank-1}
  size_t bundle_rank() const { return rank_; }

  size_t chart_of(size_t base_chart, size_t coord) const { return base_chart * rank_ + coord; }

  /// z_l(0 -> i), the frame comparison of line summand l between charts 0
  /// and i, as ambient coordinates of the base (normalized so l = 0 is 0).
  const Vec& frame(size_t summand, size_t base_chart) const {
    return frame_.at(summand).at(base_chart);
  }

  /// pi on points: the image of a total-space point in the base.
  size_t project_point(size_t total_point) const;
  /// sigma on points: the generic point of the fibre over a base point.
  size_t section_point(size_t base_point) const;

 private:
  friend ProjBundle proj_bundle(const MonoidScheme& x, const CechBundle& e);
  MonoidScheme base_, total_;
  CechBundle e_;
  size_t rank_ = 0;
  std::vector<std::vector<Vec>> frame_;  // [summand][base chart]
};

ProjBundle proj_bundle(const MonoidScheme& x, const CechBundle& e);

/// O(m) on P(E): coordinate-ratio transitions with the frame twists of E.
CechBundle o_line(const ProjBundle& pe, const Int& m);
/// pi^* of a line bundle on the base.
CechBundle pullback_pi(const ProjBundle& pe, const CechBundle& line_on_base);
/// sigma^* on Picard classes: restriction along the canonical section,
/// computed on the k = 0 chart edges.
Vec section_pullback_class(const ProjBundle& pe, const PicGroup& pic_total,
                           const PicGroup& pic_base, const CechBundle& line_on_total);

/// phi: Pic(X) x Z -> Pic(PE), (M, m) -> pi* M + m [O(1)], as a hom from the
/// normalized product group.
struct PicPbf {
  GroupProduct domain;  // Pic(X) x Z
  AbHom phi;
  bool iso_ok = false;
  bool section_ok = false;
  bool equivariance_ok = false;
};

PicPbf pic_pbf_check(const ProjBundle& pe, const PicGroup& pic_base, const PicGroup& pic_total,
                     const CechBundle& twist_on_base);

struct K0Pbf {
  bool iso_ok = false;       // phi is a group isomorphism, so Z[Pic X x Z] = K0(PE)
  bool ring_ok = false;      // [pi* M][O(1)] = [phi(M, 1)] on generators
};

K0Pbf k0_pbf_check(const ProjBundle& pe, const PicGroup& pic_base, const PicGroup& pic_total);

struct GW0Pbf {
  bool equivariance_ok = false;  // phi intertwines (P^L, -1) and P^{pi* L}
  bool fixed_match_ok = false;   // Pic(PE)^{P^{pi*L}} = phi(fixed(X) x {0})
  bool spic_match_ok = false;    // SPic(Gamma PE) = SPic(Gamma X)
  bool w0_ok = false;            // W0(X; L) = W0(PE; pi* L) through the above
};

GW0Pbf gw0_pbf_check(const ProjBundle& pe, const PicGroup& pic_base, const PicGroup& pic_total,
                     const CechBundle& twist_on_base);

/// Gamma(PE) = Gamma(X): generator-exact comparison through the padding.
bool global_sections_isomorphic(const ProjBundle& pe);

}  // namespace f1kgw
