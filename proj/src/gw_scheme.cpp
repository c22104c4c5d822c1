#include "f1kgw/gw_scheme.hpp"

#include "f1kgw/errors.hpp"

namespace f1kgw {

PicInvolution pic_involution(const PicGroup& pg, const CechBundle& line) {
  Vec lambda = pg.class_of(line);
  AffineInvolution inv = AffineInvolution::shifted_negation(pg.group(), lambda);
  require(inv.is_involution(), "Internal", "shifted negation must be an involution");
  return PicInvolution{inv, lambda, pg.scheme().is_integral()};
}

SchemeGW0 gw0_scheme(const MonoidScheme& x, const PicGroup& pg, const CechBundle& line) {
  require(x.is_integral(), "NotIntegral",
          "GW0 of a scheme needs integrality (duality on the bundle category)");
  SchemeGW0 out{spic(DualityDatum::standard(x.global_sections())),
                pic_involution(pg, line),
                {},
                GW0Group{IndexDescriptor::finite_list({}), IndexDescriptor::finite_list({})}};
  out.split = involution_fixed_and_orbits(out.pic_inv.involution);
  out.group.sym_index = IndexDescriptor::product(
      {out.spic_gamma.descriptor(), IndexDescriptor::fixed_coset(out.pic_inv.involution)});
  out.group.hyp_index = IndexDescriptor::orbit_space(out.pic_inv.involution);
  return out;
}

GW0Element SchemeGW0::sym_line(const Vec& spic_key, const Vec& pic_fixed) const {
  Vec key = spic_key;
  key.insert(key.end(), pic_fixed.begin(), pic_fixed.end());
  return group.sym_basis(key);
}

GW0Element SchemeGW0::hyperbolic_class(const Vec& pic_elem) const {
  return group.hyp_basis(pic_elem);  // canonicalized to the orbit representative
}

GW0Element SchemeGW0::hyperbolic_from_k0(const FinSuppMap& k0_elem) const {
  GW0Element out = group.zero();
  for (const auto& [key, coeff] : k0_elem.terms())
    out = out.add(GW0Element{FinSuppMap(group.sym_index),
                             FinSuppMap::basis(group.hyp_index, key).scale(coeff)});
  return out;
}

W0Group w0_scheme(const MonoidScheme& x, const PicGroup& pg, const CechBundle& line) {
  // W0 = coker(H: K0 -> GW0); H surjects onto the hyperbolic part, leaving
  // exactly the symmetric part
  SchemeGW0 gw = gw0_scheme(x, pg, line);
  return W0Group{gw.group.sym_index};
}

ParityBijection twisted_parity_bijection(const PicGroup& pg, const CechBundle& l,
                                         const CechBundle& m) {
  Vec shift = pg.class_of(m);
  CechBundle l2 = twist(l, tensor(m, m));
  AffineInvolution inv = pic_involution(pg, l).involution;
  AffineInvolution inv2 = pic_involution(pg, l2).involution;
  // x + [M] intertwines: inv2(x + shift) = inv(x) + shift
  bool ok = true;
  const FgAbGroup& g = pg.group();
  for (const auto& e : g.generators())
    if (!g.equal(inv2.apply(g.add(e, shift)), g.add(inv.apply(e), shift))) ok = false;
  if (!g.equal(inv2.apply(g.add(g.zero(), shift)), g.add(inv.apply(g.zero()), shift))) ok = false;
  return ParityBijection{shift, ok};
}

}  // namespace f1kgw
