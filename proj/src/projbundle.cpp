#include "f1kgw/projbundle.hpp"

#include <algorithm>

#include "f1kgw/errors.hpp"

namespace f1kgw {

namespace {

/// hom h is an isomorphism iff kernel and cokernel vanish
bool is_isomorphism(const AbHom& h) {
  return kernel(h).group.is_trivial() && cokernel(h).group.is_trivial();
}

}  // namespace

ProjBundle proj_bundle(const MonoidScheme& x, const CechBundle& e) {
  require(x.has_ambient(), "NotIntegral", "projective bundles need the integral ambient model");
  require(x.is_integral(), "NotIntegral", "projective bundles need an integral base");
  require(e.scheme().same_object(x), "SchemeMismatch", "bundle lives on a different scheme");
  ValidationReport rep = validate(e);
  require(rep.valid, "InvalidBundle",
          rep.violations.empty() ? "invalid bundle" : rep.violations.front());

  ProjBundle pe;
  pe.base_ = x;
  pe.e_ = e;
  pe.rank_ = e.rank();
  const size_t r = e.rank();
  require(r >= 2, "InvalidBundle", "projective bundle needs rank at least 2");

  // diagonalize E: the sheet labeling is the global homogeneous coordinate
  PicGroup pg = pic(x);
  SplitResult split = decompose(e, pg);
  require(split.split, "InvalidBundle", "bundle did not decompose on an integral base");
  const CechBundle& diag = split.diagonal;

  // frame values z_l(0 -> i) as ambient coordinates, normalized by the
  // zeroth summand so that sigma^* has no twist correction
  const size_t m = x.chart_count();
  std::vector<std::vector<Vec>> raw(r, std::vector<Vec>(m, x.ambient().zero()));
  for (size_t i = 1; i < m; ++i) {
    require(x.overlap_nonempty(0, i), "Internal", "ambient model overlaps must be total");
    UnitPerm t = diag.transition(0, i);
    const UnitsGroup& u = x.overlap(0, i).monoid.units();
    for (size_t l = 0; l < r; ++l) {
      require(t.perm[l] == l, "Internal", "diagonalized bundle must have identity permutations");
      raw[l][i] = x.ambient().reduce(u.element_of(t.units[l]).coords);
    }
  }
  pe.frame_.assign(r, std::vector<Vec>(m));
  for (size_t l = 0; l < r; ++l)
    for (size_t i = 0; i < m; ++i)
      pe.frame_[l][i] = x.ambient().reduce(vec_sub(raw[l][i], raw[0][i]));

  // ambient of the total space: base ambient extended by the fibre lattice
  const FgAbGroup& gx = x.ambient();
  FgAbGroup ext(gx.torsion(), gx.free_rank() + (r - 1));
  const size_t base_dim = gx.dim();
  auto pad = [&](const Vec& v) {
    Vec out(ext.dim(), Int(0));
    for (size_t t = 0; t < base_dim; ++t) out[t] = v[t];
    return out;
  };
  auto fib = [&](size_t l) {
    Vec out(ext.dim(), Int(0));
    if (l > 0) out[base_dim + l - 1] = 1;
    return out;
  };

  std::vector<std::vector<Vec>> chart_gens(m * r);
  std::vector<std::string> names(m * r);
  for (size_t i = 0; i < m; ++i)
    for (size_t k = 0; k < r; ++k) {
      std::vector<Vec>& gens = chart_gens[pe.chart_of(i, k)];
      for (const auto& g : x.chart(i).exp_generators()) gens.push_back(pad(g));
      for (size_t l = 0; l < r; ++l) {
        if (l == k) continue;
        Vec ratio = vec_add(pad(vec_sub(pe.frame_[l][i], pe.frame_[k][i])),
                            vec_sub(fib(l), fib(k)));
        gens.push_back(ext.reduce(ratio));
      }
      names[pe.chart_of(i, k)] = x.chart_names()[i] + ",S" + std::to_string(k);
    }
  pe.total_ = MonoidScheme::ambient_model(ext, chart_gens, names);
  require(pe.total_.is_integral(), "Internal", "P(E) must be integral over an integral base");
  return pe;
}

// ---------------------------------------------------------------------------
// line bundles on the total space

namespace {

/// entry of O(m) or pi^* L on the edge between total charts (i,k), (j,k')
Vec total_edge_entry(const ProjBundle& pe, const Int& m, size_t i, size_t k, size_t j,
                     size_t kp) {
  const MonoidScheme& total = pe.total();
  const FgAbGroup& ext = total.ambient();
  const size_t base_dim = pe.base().ambient().dim();
  auto fib = [&](size_t l) {
    Vec out(ext.dim(), Int(0));
    if (l > 0) out[base_dim + l - 1] = 1;
    return out;
  };
  auto pad = [&](const Vec& v) {
    Vec out(ext.dim(), Int(0));
    for (size_t t = 0; t < base_dim; ++t) out[t] = v[t];
    return out;
  };
  // glob(l, i) = pad(z_l(0->i)) + fib(l); the transition of O(1) compares
  // the frame sections S_k^{(i)} and S_{k'}^{(j)}
  Vec glob_from = vec_add(pad(pe.frame(k, i)), fib(k));
  Vec glob_to = vec_add(pad(pe.frame(kp, j)), fib(kp));
  return ext.reduce(vec_scale(m, vec_sub(glob_to, glob_from)));
}

}  // namespace

CechBundle o_line(const ProjBundle& pe, const Int& m) {
  const MonoidScheme& total = pe.total();
  std::map<std::pair<size_t, size_t>, UnitPerm> tr;
  const size_t charts = total.chart_count();
  const size_t r = pe.bundle_rank();
  for (size_t a = 0; a < charts; ++a)
    for (size_t b = a + 1; b < charts; ++b) {
      Vec elt = total_edge_entry(pe, m, a / r, a % r, b / r, b % r);
      auto coords = total.overlap(a, b).monoid.units().coords_of(MonoidElement::exp(elt));
      require(coords.has_value(), "Internal", "O(m) entry is not a unit of the overlap");
      UnitPerm u;
      u.perm = {0};
      u.units = {*coords};
      tr.emplace(std::make_pair(a, b), std::move(u));
    }
  return CechBundle::make(total, 1, std::move(tr));
}

CechBundle pullback_pi(const ProjBundle& pe, const CechBundle& line_on_base) {
  require(line_on_base.rank() == 1, "BadInput", "pullback_pi expects a line bundle");
  require(line_on_base.scheme().same_object(pe.base()), "SchemeMismatch",
          "bundle lives on a different scheme");
  const MonoidScheme& total = pe.total();
  const MonoidScheme& x = pe.base();
  const size_t base_dim = x.ambient().dim();
  const size_t r = pe.bundle_rank();
  auto pad = [&](const Vec& v) {
    Vec out(total.ambient().dim(), Int(0));
    for (size_t t = 0; t < base_dim; ++t) out[t] = v[t];
    return out;
  };
  std::map<std::pair<size_t, size_t>, UnitPerm> tr;
  const size_t charts = total.chart_count();
  for (size_t a = 0; a < charts; ++a)
    for (size_t b = a + 1; b < charts; ++b) {
      size_t i = a / r, j = b / r;
      Vec elt(total.ambient().dim(), Int(0));
      if (i != j) {
        const UnitsGroup& u = x.overlap(std::min(i, j), std::max(i, j)).monoid.units();
        UnitPerm t = line_on_base.transition(i, j);
        elt = pad(x.ambient().reduce(u.element_of(t.units[0]).coords));
      }
      auto coords = total.overlap(a, b).monoid.units().coords_of(MonoidElement::exp(elt));
      require(coords.has_value(), "Internal", "pulled-back entry is not a unit of the overlap");
      UnitPerm up;
      up.perm = {0};
      up.units = {*coords};
      tr.emplace(std::make_pair(a, b), std::move(up));
    }
  return CechBundle::make(total, 1, std::move(tr));
}

Vec section_pullback_class(const ProjBundle& pe, const PicGroup& pic_total,
                           const PicGroup& pic_base, const CechBundle& line_on_total) {
  require(line_on_total.rank() == 1, "BadInput", "section pullback expects a line bundle");
  const MonoidScheme& x = pe.base();
  const MonoidScheme& total = pe.total();
  const size_t r = pe.bundle_rank();
  const size_t base_dim = x.ambient().dim();
  (void)pic_total;
  // restrict along the k = 0 charts: units on those edges have no fibre part
  std::map<std::pair<size_t, size_t>, UnitPerm> tr;
  for (size_t i = 0; i < x.chart_count(); ++i)
    for (size_t j = i + 1; j < x.chart_count(); ++j) {
      if (!x.overlap_nonempty(i, j)) continue;
      size_t a = pe.chart_of(i, 0), b = pe.chart_of(j, 0);
      UnitPerm t = line_on_total.transition(a, b);
      Vec amb = total.ambient().reduce(
          total.overlap(a, b).monoid.units().element_of(t.units[0]).coords);
      for (size_t f = base_dim; f < total.ambient().dim(); ++f)
        require(amb[f] == 0, "Internal", "section restriction met a fibre-supported unit");
      Vec base_part(amb.begin(), amb.begin() + base_dim);
      auto coords = x.overlap(i, j).monoid.units().coords_of(MonoidElement::exp(base_part));
      require(coords.has_value(), "Internal", "restricted entry is not a unit downstairs");
      UnitPerm u;
      u.perm = {0};
      u.units = {*coords};
      tr.emplace(std::make_pair(i, j), std::move(u));
    }
  return pic_base.class_of(CechBundle::make(x, 1, std::move(tr)));
}

// ---------------------------------------------------------------------------
// points

namespace {

/// chart prime whose generator trace matches the preimage along a padded
/// inclusion of chart monoids
size_t match_point(const PointedMonoid& downstairs, const std::vector<Vec>& padded_gens,
                   const PointedMonoid& upstairs, const PrimeIdeal& p) {
  const auto& primes = downstairs.primes();
  for (size_t pi = 0; pi < primes.size(); ++pi) {
    bool match = true;
    for (size_t g = 0; g < downstairs.generator_count() && match; ++g) {
      bool in_down = downstairs.prime_contains(primes[pi], downstairs.generator(g));
      bool in_up = upstairs.prime_contains(p, MonoidElement::exp(padded_gens[g]));
      if (in_down != in_up) match = false;
    }
    if (match) return pi;
  }
  fail("Internal", "projection of a prime did not match");
}

}  // namespace

size_t ProjBundle::project_point(size_t total_point) const {
  const auto& pts = total_.points();
  require(total_point < pts.size(), "BadInput", "no such point");
  auto [tc, tp] = pts[total_point].reps.front();
  size_t i = tc / rank_;
  const PointedMonoid& down = base_.chart(i);
  // trace the padded base-chart generators through the total prime
  const size_t base_dim = base_.ambient().dim();
  std::vector<Vec> padded;
  for (const auto& g : down.exp_generators()) {
    Vec v(total_.ambient().dim(), Int(0));
    for (size_t t = 0; t < base_dim; ++t) v[t] = g[t];
    padded.push_back(v);
  }
  size_t pi = match_point(down, padded, total_.chart(tc), total_.chart(tc).primes()[tp]);
  // translate (chart i, prime pi) into a glued base point
  for (const auto& pt : base_.points())
    for (const auto& [ci, cp] : pt.reps)
      if (ci == i && cp == pi) return pt.id;
  fail("Internal", "base point lookup failed");
}

size_t ProjBundle::section_point(size_t base_point) const {
  const auto& pts = base_.points();
  require(base_point < pts.size(), "BadInput", "no such point");
  auto [ci, cp] = pts[base_point].reps.front();
  const PointedMonoid& down = base_.chart(ci);
  const PrimeIdeal& p = down.primes()[cp];
  size_t tc = chart_of(ci, 0);
  const PointedMonoid& up = total_.chart(tc);
  // the image prime: base generators keep their membership, all fibre
  // ratios lie in the face
  const auto& primes = up.primes();
  const size_t base_dim = base_.ambient().dim();
  for (size_t qi = 0; qi < primes.size(); ++qi) {
    bool match = true;
    for (size_t g = 0; g < up.generator_count() && match; ++g) {
      Vec gen = up.exp_generators()[g];
      bool fibre = false;
      for (size_t f = base_dim; f < gen.size(); ++f)
        if (gen[f] != 0) fibre = true;
      bool in_up = up.prime_contains(primes[qi], MonoidElement::exp(gen));
      if (fibre) {
        if (in_up) match = false;  // fibre coordinates stay outside the prime
      } else {
        Vec base_part(gen.begin(), gen.begin() + base_dim);
        if (in_up != down.prime_contains(p, MonoidElement::exp(base_part))) match = false;
      }
    }
    if (match) {
      for (const auto& pt : total_.points())
        for (const auto& [c, q] : pt.reps)
          if (c == tc && q == qi) return pt.id;
    }
  }
  fail("Internal", "section point lookup failed");
}

// ---------------------------------------------------------------------------
// projective bundle formulas

PicPbf pic_pbf_check(const ProjBundle& pe, const PicGroup& pic_base, const PicGroup& pic_total,
                     const CechBundle& twist_on_base) {
  PicPbf out;
  out.domain = product_group({pic_base.group(), FgAbGroup::free_group(1)});
  // phi on generators: pi^* of the Pic(X) generators, then O(1)
  IntMatrix cols(pic_total.group().dim(), out.domain.group.dim());
  std::vector<Vec> gen_classes;
  for (size_t j = 0; j < pic_base.group().dim(); ++j) {
    CechBundle rep = pic_base.line_bundle(pic_base.group().basis_vector(j));
    gen_classes.push_back(pic_total.class_of(pullback_pi(pe, rep)));
  }
  gen_classes.push_back(pic_total.class_of(o_line(pe, 1)));
  // assemble through the product coordinates
  for (size_t j = 0; j < out.domain.group.dim(); ++j) {
    // write the j-th product generator as (base part, fibre degree)
    Vec base_part = out.domain.project[0].apply(out.domain.group.basis_vector(j));
    Vec z_part = out.domain.project[1].apply(out.domain.group.basis_vector(j));
    Vec img = pic_total.group().zero();
    for (size_t g = 0; g < pic_base.group().dim(); ++g)
      img = pic_total.group().add(img, pic_total.group().scale(base_part[g], gen_classes[g]));
    img = pic_total.group().add(img, pic_total.group().scale(z_part[0], gen_classes.back()));
    for (size_t i = 0; i < pic_total.group().dim(); ++i) cols.at(i, j) = img[i];
  }
  out.phi = AbHom{out.domain.group, pic_total.group(), cols};
  out.iso_ok = is_isomorphism(out.phi);

  // section check: sigma^*(phi(M, m)) = M on generators
  out.section_ok = true;
  for (size_t j = 0; j < pic_base.group().dim(); ++j) {
    Vec m_class = pic_base.group().basis_vector(j);
    CechBundle rep = pic_base.line_bundle(m_class);
    Vec back = section_pullback_class(pe, pic_total, pic_base, pullback_pi(pe, rep));
    if (!pic_base.group().equal(back, m_class)) out.section_ok = false;
  }
  if (!pic_base.group().equal(
          section_pullback_class(pe, pic_total, pic_base, o_line(pe, 1)),
          pic_base.group().zero()))
    out.section_ok = false;

  // equivariance: phi((P^L, -1)(M, m)) = P^{pi* L}(phi(M, m)); since phi is
  // a group homomorphism this reduces to matching the shifts:
  // phi([L], 0) = [pi^* L]
  Vec l_class = pic_base.class_of(twist_on_base);
  Vec lifted = out.domain.include[0].apply(l_class);
  Vec lhs = out.phi.apply(lifted);
  Vec rhs = pic_total.class_of(pullback_pi(pe, twist_on_base));
  out.equivariance_ok = pic_total.group().equal(lhs, rhs);
  return out;
}

K0Pbf k0_pbf_check(const ProjBundle& pe, const PicGroup& pic_base, const PicGroup& pic_total) {
  K0Pbf out;
  PicPbf pbf = pic_pbf_check(pe, pic_base, pic_total,
                             pic_base.line_bundle(pic_base.group().zero()));
  out.iso_ok = pbf.iso_ok;
  // ring check on generators: [pi* M][O(1)] = [phi(M, 1)] as classes of
  // actual bundles
  out.ring_ok = true;
  IndexDescriptor idx = IndexDescriptor::group_elements(pic_total.group());
  std::vector<Vec> base_classes;
  base_classes.push_back(pic_base.group().zero());
  for (size_t j = 0; j < pic_base.group().dim(); ++j)
    base_classes.push_back(pic_base.group().basis_vector(j));
  for (const auto& m_class : base_classes) {
    CechBundle pim = pullback_pi(pe, pic_base.line_bundle(m_class));
    CechBundle prod = tensor(pim, o_line(pe, 1));
    Vec lhs = pic_total.class_of(prod);
    // phi(M, 1)
    Vec arg = pbf.domain.group.add(pbf.domain.include[0].apply(m_class),
                                   pbf.domain.include[1].apply({Int(1)}));
    Vec rhs = pbf.phi.apply(arg);
    if (!pic_total.group().equal(lhs, rhs)) out.ring_ok = false;
  }
  return out;
}

GW0Pbf gw0_pbf_check(const ProjBundle& pe, const PicGroup& pic_base, const PicGroup& pic_total,
                     const CechBundle& twist_on_base) {
  GW0Pbf out;
  PicPbf pbf = pic_pbf_check(pe, pic_base, pic_total, twist_on_base);
  out.equivariance_ok = pbf.iso_ok && pbf.equivariance_ok;

  CechBundle pil = pullback_pi(pe, twist_on_base);
  SchemeGW0 gw_base = gw0_scheme(pe.base(), pic_base, twist_on_base);
  SchemeGW0 gw_total = gw0_scheme(pe.total(), pic_total, pil);

  // fixed sets correspond through phi with fibre degree zero
  const FixedSet& fb = gw_base.split.fixed;
  const FixedSet& ft = gw_total.split.fixed;
  if (fb.empty != ft.empty) {
    out.fixed_match_ok = false;
  } else if (fb.empty) {
    out.fixed_match_ok = true;
  } else {
    bool ok = true;
    // phi(particular_base, 0) must be a fixed point upstairs
    Vec lifted = pbf.phi.apply(pbf.domain.include[0].apply(fb.particular));
    ok = ok && ft.contains(lifted, gw_total.pic_inv.involution);
    // translation subgroups match in shape, and base translations inject
    ok = ok && fb.translations.group().same_shape(ft.translations.group());
    for (size_t j = 0; j < fb.translations.group().dim(); ++j) {
      Vec t = fb.translations.element_of(fb.translations.group().basis_vector(j));
      Vec up = pbf.phi.apply(pbf.domain.include[0].apply(t));
      ok = ok && ft.translations.contains(up);
    }
    out.fixed_match_ok = ok;
  }

  // SPic(Gamma PE) = SPic(Gamma X): same quotient shape and matching count
  {
    const SPicSet& sa = gw_base.spic_gamma;
    const SPicSet& sb = gw_total.spic_gamma;
    if (sa.finite() && sb.finite())
      out.spic_match_ok = sa.orbits().size() == sb.orbits().size();
    else if (!sa.finite() && !sb.finite())
      out.spic_match_ok = sa.quotient().same_shape(sb.quotient());
    else
      out.spic_match_ok = false;
  }

  // W0(X; L) = W0(PE; pi* L): both are SPic(Gamma)[fixed]; with the two
  // matches above this is the fixed-set bijection statement
  out.w0_ok = out.fixed_match_ok && out.spic_match_ok;
  return out;
}

bool global_sections_isomorphic(const ProjBundle& pe) {
  PointedMonoid gx = pe.base().global_sections();
  PointedMonoid gt = pe.total().global_sections();
  const size_t base_dim = pe.base().ambient().dim();
  // generators upstairs must be the padded generators downstairs
  std::vector<Vec> padded;
  for (const auto& g : gx.exp_generators()) {
    Vec v(pe.total().ambient().dim(), Int(0));
    for (size_t t = 0; t < base_dim; ++t) v[t] = g[t];
    padded.push_back(v);
  }
  std::vector<Vec> up = gt.exp_generators();
  std::sort(padded.begin(), padded.end(), VecLess{});
  std::sort(up.begin(), up.end(), VecLess{});
  if (padded != up) return false;
  // and the fibre coordinates of every upstairs generator vanish
  for (const auto& g : up)
    for (size_t f = base_dim; f < g.size(); ++f)
      if (g[f] != 0) return false;
  return true;
}

}  // namespace f1kgw
