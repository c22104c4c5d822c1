#include "f1kgw/abgroup.hpp"

#include <algorithm>
#include <sstream>

#include "f1kgw/errors.hpp"

namespace f1kgw {

FgAbGroup::FgAbGroup(Vec torsion, size_t free_rank, std::vector<std::string> labels)
    : torsion_(std::move(torsion)), free_rank_(free_rank), labels_(std::move(labels)) {
  for (size_t i = 0; i < torsion_.size(); ++i) {
    require(torsion_[i] >= 2, "BadInput", "torsion factor below 2");
    if (i + 1 < torsion_.size())
      require(torsion_[i + 1] % torsion_[i] == 0, "BadInput", "torsion divisibility chain violated");
  }
}

FgAbGroup FgAbGroup::free_group(size_t rank) { return FgAbGroup({}, rank); }

FgAbGroup FgAbGroup::cyclic(const Int& n) {
  require(n >= 0, "BadInput", "cyclic order must be nonnegative");
  if (n == 0) return free_group(1);
  if (n == 1) return trivial();
  return FgAbGroup({n}, 0);
}

FgAbGroup FgAbGroup::product(const FgAbGroup& a, const FgAbGroup& b) {
  // renormalize the combined torsion list into a divisibility chain
  Vec all = a.torsion_;
  all.insert(all.end(), b.torsion_.begin(), b.torsion_.end());
  if (all.empty()) return free_group(a.free_rank_ + b.free_rank_);
  Presentation p = quotient_presentation(all.size(), IntMatrix::diagonal(all));
  return FgAbGroup(p.group.torsion(), p.group.free_rank() + a.free_rank_ + b.free_rank_);
}

Int FgAbGroup::order() const {
  require(is_finite(), "InfiniteUnits", "order of an infinite group");
  Int n = 1;
  for (const auto& d : torsion_) n *= d;
  return n;
}

Vec FgAbGroup::reduce(Vec x) const {
  require(x.size() == dim(), "BadInput", "coordinate length mismatch");
  for (size_t i = 0; i < torsion_.size(); ++i) x[i] = mod_floor(x[i], torsion_[i]);
  return x;
}

Vec FgAbGroup::basis_vector(size_t i) const {
  Vec e(dim(), Int(0));
  e[i] = 1;
  return e;
}

std::vector<Vec> FgAbGroup::generators() const {
  std::vector<Vec> g;
  for (size_t i = 0; i < dim(); ++i) g.push_back(basis_vector(i));
  return g;
}

IntMatrix FgAbGroup::relation_matrix() const {
  IntMatrix r(dim(), torsion_.size());
  for (size_t i = 0; i < torsion_.size(); ++i) r.at(i, i) = torsion_[i];
  return r;
}

std::vector<Vec> FgAbGroup::enumerate() const {
  require(is_finite(), "InfiniteUnits", "cannot enumerate an infinite group");
  std::vector<Vec> out;
  Vec cur(dim(), Int(0));
  while (true) {
    out.push_back(cur);
    size_t i = 0;
    for (; i < torsion_.size(); ++i) {
      cur[i] += 1;
      if (cur[i] < torsion_[i]) break;
      cur[i] = 0;
    }
    if (i == torsion_.size()) break;
  }
  return out;
}

std::string FgAbGroup::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& d : torsion_) {
    os << (first ? "" : " x ") << "Z/" << d.str();
    first = false;
  }
  if (free_rank_ == 1) {
    os << (first ? "" : " x ") << "Z";
  } else if (free_rank_ > 1) {
    os << (first ? "" : " x ") << "Z^" << free_rank_;
  }
  return os.str();
}

Presentation quotient_presentation(size_t n, const IntMatrix& relations) {
  IntMatrix rel = relations;
  if (rel.rows() == 0 && rel.cols() == 0) rel = IntMatrix(n, 0);
  require(rel.rows() == n, "BadInput", "relation matrix row count mismatch");
  SnfResult snf = smith_normal_form(rel);

  // kept coordinates: torsion (diagonal >= 2) then free (zero diagonal)
  std::vector<size_t> kept;
  Vec torsion;
  const size_t bound = std::min(rel.rows(), rel.cols());
  for (size_t i = 0; i < bound; ++i)
    if (snf.s.at(i, i) >= 2) {
      kept.push_back(i);
      torsion.push_back(snf.s.at(i, i));
    }
  size_t free_rank = 0;
  for (size_t i = 0; i < n; ++i)
    if (i >= bound || snf.s.at(i, i) == 0) {
      kept.push_back(i);
      ++free_rank;
    }

  Presentation p{FgAbGroup(torsion, free_rank), snf.u.submatrix_rows(kept),
                 snf.u_inv.submatrix_cols(kept)};
  return p;
}

AbHom AbHom::identity(const FgAbGroup& g) {
  return AbHom{g, g, IntMatrix::identity(g.dim())};
}

AbHom AbHom::zero(const FgAbGroup& dom, const FgAbGroup& cod) {
  return AbHom{dom, cod, IntMatrix(cod.dim(), dom.dim())};
}

AbHom AbHom::compose(const AbHom& inner) const {
  require(inner.codomain.same_shape(domain), "BadInput", "hom composition shape mismatch");
  return AbHom{inner.domain, codomain, matrix.mul(inner.matrix)};
}

AbHom AbHom::add(const AbHom& other) const {
  require(domain.same_shape(other.domain) && codomain.same_shape(other.codomain), "BadInput",
          "hom addition shape mismatch");
  IntMatrix m = matrix;
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) m.at(i, j) += other.matrix.at(i, j);
  return AbHom{domain, codomain, m};
}

AbHom AbHom::negate() const {
  IntMatrix m = matrix;
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) m.at(i, j) = -m.at(i, j);
  return AbHom{domain, codomain, m};
}

bool AbHom::is_well_defined() const {
  if (matrix.rows() != codomain.dim() || matrix.cols() != domain.dim()) return false;
  for (size_t j = 0; j < domain.torsion_count(); ++j) {
    Vec img = matrix.col(j);
    if (!codomain.is_zero(vec_scale(domain.torsion()[j], img))) return false;
  }
  return true;
}

bool AbHom::equal(const AbHom& other) const {
  if (!domain.same_shape(other.domain) || !codomain.same_shape(other.codomain)) return false;
  for (size_t j = 0; j < domain.dim(); ++j)
    if (!codomain.equal(matrix.col(j), other.matrix.col(j))) return false;
  return true;
}

KernelResult kernel(const AbHom& f) {
  const size_t gdim = f.domain.dim();
  // x lies in ker(f) iff f.matrix * x = rel_cod * y for some y
  IntMatrix w = f.matrix.hconcat(f.codomain.relation_matrix());
  IntMatrix kw = integer_kernel(w);

  std::vector<Vec> gens;
  for (size_t j = 0; j < kw.cols(); ++j) {
    Vec full = kw.col(j);
    gens.emplace_back(full.begin(), full.begin() + gdim);
  }
  // relations of the domain lie in the kernel lattice as well
  IntMatrix rel_dom = f.domain.relation_matrix();
  for (size_t j = 0; j < rel_dom.cols(); ++j) gens.push_back(rel_dom.col(j));

  IntMatrix b = gens.empty() ? IntMatrix(gdim, 0) : IntMatrix::from_cols(gens);
  IntMatrix basis = lattice_column_basis(b);

  // express domain relations in the lattice basis and quotient by them
  std::vector<Vec> rel_coords;
  for (size_t j = 0; j < rel_dom.cols(); ++j) {
    auto x = solve_linear(basis, rel_dom.col(j));
    require(x.has_value(), "Internal", "domain relations must lie in the kernel lattice");
    rel_coords.push_back(*x);
  }
  IntMatrix rel =
      rel_coords.empty() ? IntMatrix(basis.cols(), 0) : IntMatrix::from_cols(rel_coords);
  Presentation p = quotient_presentation(basis.cols(), rel);

  IntMatrix incl = basis.mul(p.section);
  AbHom inclusion{p.group, f.domain, incl};
  return KernelResult{p.group, inclusion};
}

CokernelResult cokernel(const AbHom& f) {
  IntMatrix rel = f.matrix.hconcat(f.codomain.relation_matrix());
  Presentation p = quotient_presentation(f.codomain.dim(), rel);
  AbHom projection{f.codomain, p.group, p.projection};
  return CokernelResult{p.group, projection};
}

GroupProduct product_group(const std::vector<FgAbGroup>& factors) {
  size_t total = 0;
  for (const auto& g : factors) total += g.dim();
  // block-diagonal relation matrix, then renormalize
  size_t rel_cols = 0;
  for (const auto& g : factors) rel_cols += g.torsion_count();
  IntMatrix rel(total, rel_cols);
  {
    size_t roff = 0, coff = 0;
    for (const auto& g : factors) {
      for (size_t t = 0; t < g.torsion_count(); ++t) rel.at(roff + t, coff + t) = g.torsion()[t];
      roff += g.dim();
      coff += g.torsion_count();
    }
  }
  Presentation p = quotient_presentation(total, rel);
  GroupProduct out;
  out.group = p.group;
  size_t off = 0;
  for (const auto& g : factors) {
    IntMatrix inc(total, g.dim());
    for (size_t j = 0; j < g.dim(); ++j) inc.at(off + j, j) = 1;
    out.include.push_back(AbHom{g, p.group, p.projection.mul(inc)});
    IntMatrix prj(g.dim(), total);
    for (size_t j = 0; j < g.dim(); ++j) prj.at(j, off + j) = 1;
    out.project.push_back(AbHom{p.group, g, prj.mul(p.section)});
    off += g.dim();
  }
  return out;
}

std::optional<Vec> solve(const AbHom& f, const Vec& target) {
  IntMatrix w = f.matrix.hconcat(f.codomain.relation_matrix());
  auto sol = solve_linear(w, f.codomain.reduce(target));
  if (!sol) return std::nullopt;
  Vec x(sol->begin(), sol->begin() + f.domain.dim());
  return f.domain.reduce(x);
}

Subgroup::Subgroup(const FgAbGroup& ambient, const std::vector<Vec>& generators)
    : ambient_(ambient) {
  const size_t t = generators.size();
  gen_matrix_ = t == 0 ? IntMatrix(ambient.dim(), 0) : IntMatrix::from_cols(generators);
  AbHom f{FgAbGroup::free_group(t), ambient, gen_matrix_};
  // relations among the generators = kernel of Z^t -> ambient
  IntMatrix w = gen_matrix_.hconcat(ambient.relation_matrix());
  IntMatrix kw = integer_kernel(w);
  std::vector<Vec> rel_cols;
  for (size_t j = 0; j < kw.cols(); ++j) {
    Vec full = kw.col(j);
    rel_cols.emplace_back(full.begin(), full.begin() + t);
  }
  IntMatrix rel = rel_cols.empty() ? IntMatrix(t, 0) : IntMatrix::from_cols(rel_cols);
  Presentation p = quotient_presentation(t, rel);
  group_ = p.group;
  IntMatrix embed_mat(ambient.dim(), group_.dim());
  {
    IntMatrix lift = gen_matrix_.mul(p.section);
    for (size_t i = 0; i < embed_mat.rows(); ++i)
      for (size_t j = 0; j < embed_mat.cols(); ++j) embed_mat.at(i, j) = lift.at(i, j);
  }
  embed_ = AbHom{group_, ambient_, embed_mat};
  gen_to_abstract_ = p.projection;
}

bool Subgroup::contains(const Vec& x) const { return coords_of(x).has_value(); }

std::optional<Vec> Subgroup::coords_of(const Vec& x) const {
  IntMatrix w = gen_matrix_.hconcat(ambient_.relation_matrix());
  auto sol = solve_linear(w, ambient_.reduce(x));
  if (!sol) return std::nullopt;
  Vec c(sol->begin(), sol->begin() + gen_matrix_.cols());
  return group_.reduce(gen_to_abstract_.apply(c));
}

AffineInvolution AffineInvolution::shifted_negation(const FgAbGroup& g, const Vec& lambda) {
  IntMatrix m = IntMatrix::identity(g.dim());
  for (size_t i = 0; i < m.rows(); ++i) m.at(i, i) = -1;
  return AffineInvolution{g, AbHom{g, g, m}, g.reduce(lambda)};
}

bool AffineInvolution::is_involution() const {
  for (const auto& e : group.generators())
    if (!group.equal(apply(apply(e)), e)) return false;
  return group.equal(apply(apply(group.zero())), group.zero());
}

bool FixedSet::contains(const Vec& x, const AffineInvolution& inv) const {
  if (empty) return false;
  return inv.group.equal(inv.apply(x), x);
}

std::vector<Vec> FixedSet::enumerate(const FgAbGroup& ambient) const {
  std::vector<Vec> out;
  if (empty) return out;
  require(translations.group().is_finite(), "InfiniteUnits", "fixed set is infinite");
  for (const auto& t : translations.group().enumerate())
    out.push_back(ambient.add(particular, translations.element_of(t)));
  std::sort(out.begin(), out.end(), VecLess{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Vec OrbitSpace::rep(const Vec& x) const {
  Vec a = inv.group.reduce(x);
  Vec b = inv.apply(x);
  // canonical representative: the lexicographically larger point of the
  // orbit, so that on Pic(P^n) = Z the reps of k <-> d-k are k >= ceil(d/2)
  return lex_compare(a, b) >= 0 ? a : b;
}

std::vector<Vec> OrbitSpace::enumerate_reps() const {
  std::vector<Vec> out;
  for (const auto& x : inv.group.enumerate()) {
    if (rep(x) == x) out.push_back(x);
  }
  std::sort(out.begin(), out.end(), VecLess{});
  return out;
}

std::vector<Vec> OrbitSpace::enumerate_free_reps() const {
  std::vector<Vec> out;
  for (const auto& x : enumerate_reps())
    if (is_free(x)) out.push_back(x);
  return out;
}

InvolutionSplit involution_fixed_and_orbits(const AffineInvolution& inv) {
  require(inv.is_involution(), "BadInput", "not an involution");
  const FgAbGroup& g = inv.group;
  // inv(x) = x  <=>  (linear - id)(x) = -shift
  AbHom lin_minus_id = inv.linear.add(AbHom::identity(g).negate());
  auto part = solve(lin_minus_id, g.neg(inv.shift));

  InvolutionSplit split;
  split.orbits = OrbitSpace{inv};
  if (!part) {
    split.fixed.empty = true;
    return split;
  }
  split.fixed.empty = false;
  split.fixed.particular = *part;
  KernelResult k = kernel(lin_minus_id);
  std::vector<Vec> gens;
  for (size_t j = 0; j < k.group.dim(); ++j)
    gens.push_back(k.inclusion.apply(k.group.basis_vector(j)));
  split.fixed.translations = Subgroup(g, gens);
  return split;
}

}  // namespace f1kgw
