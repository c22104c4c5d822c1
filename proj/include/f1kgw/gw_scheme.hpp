#pragma once

#include "f1kgw/bundle.hpp"
#include "f1kgw/forms.hpp"

namespace f1kgw {

/// The involution P^L on Pic(X): x -> [L] - x. The group-theoretic shape is
/// available on any scheme; the Grothendieck-Witt theorems behind it
/// require integrality, recorded in the flag.
struct PicInvolution {
  AffineInvolution involution;
  Vec twist_class;  // [L]
  bool integral = false;
};

PicInvolution pic_involution(const PicGroup& pg, const CechBundle& line);

/// GW0 of an integral monoid scheme with duality twisted by a line bundle:
///   sym part indexed by SPic(Gamma X) x Pic(X)^{P^L},
///   hyperbolic part indexed by the orbit space Pic(X)/P^L.
struct SchemeGW0 {
  SPicSet spic_gamma;     // SPic(Gamma X), sigma = id, eps = 1
  PicInvolution pic_inv;
  InvolutionSplit split;  // fixed set and orbit space of P^L
  GW0Group group;

  /// Rank-one symmetric class: a fixed Picard class M with a rank-one form
  /// twisted by the SPic key.
  GW0Element sym_line(const Vec& spic_key, const Vec& pic_fixed) const;
  /// Hyperbolic class H(M) for M in Pic(X), keyed by the orbit of M.
  GW0Element hyperbolic_class(const Vec& pic_elem) const;
  /// The hyperbolic map H: K0(X) = Z[Pic] -> GW0(X; L).
  GW0Element hyperbolic_from_k0(const FinSuppMap& k0_elem) const;
};

SchemeGW0 gw0_scheme(const MonoidScheme& x, const PicGroup& pg, const CechBundle& line);
W0Group w0_scheme(const MonoidScheme& x, const PicGroup& pg, const CechBundle& line);

/// Index bijection between GW0(X; L) and GW0(X; L ⊗ M^2): translation by
/// [M] on Pic intertwines the two involutions.
struct ParityBijection {
  Vec shift;       // [M]
  bool verified;   // inv'(x + shift) = inv(x) + shift as affine maps
};

ParityBijection twisted_parity_bijection(const PicGroup& pg, const CechBundle& l,
                                         const CechBundle& m);

}  // namespace f1kgw
