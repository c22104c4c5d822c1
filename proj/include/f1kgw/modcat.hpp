#pragma once

#include <optional>
#include <string>
#include <vector>

#include "f1kgw/monoid.hpp"

namespace f1kgw {

/// Finitely generated free module A^n with named basis.
struct FreeModule {
  PointedMonoid monoid;
  size_t rank = 0;
  std::vector<std::string> labels;

  static FreeModule make(PointedMonoid m, size_t rank, std::string stem = "s");
  FreeModule direct_sum(const FreeModule& other) const;
};

/// Projective module as a sum of principal summands A e_i.
struct ProjectiveModule {
  PointedMonoid monoid;
  std::vector<MonoidElement> idempotents;

  size_t rank() const { return idempotents.size(); }
  bool is_free() const;
};

/// Involution of a pointed monoid (sigma^2 = id), the twisting datum for
/// duality. Identity by default; a permutation for finite tables; a linear
/// ambient-group involution for Exponent backends.
class MonoidInvolution {
 public:
  static MonoidInvolution identity(PointedMonoid m);
  static MonoidInvolution table_perm(PointedMonoid m, std::vector<size_t> perm);
  static MonoidInvolution ambient_matrix(PointedMonoid m, IntMatrix mat);

  const PointedMonoid& monoid() const { return monoid_; }
  bool is_identity() const { return kind_ == Kind::Identity; }
  MonoidElement apply(const MonoidElement& e) const;
  /// Induced involution on the abelian unit group, in abstract coordinates.
  AbHom units_involution() const;

 private:
  explicit MonoidInvolution(PointedMonoid m) : monoid_(std::move(m)) {}
  PointedMonoid monoid_;
  enum class Kind { Identity, TablePerm, Ambient } kind_ = Kind::Identity;
  std::vector<size_t> perm_;
  IntMatrix mat_;
};

/// Matrix over A with at most one nonzero entry in each row and column;
/// the morphisms of the free-module category that carry the proto-exact
/// and duality structure.
class MonomialMatrix {
 public:
  MonomialMatrix() = default;
  MonomialMatrix(FreeModule dom, FreeModule cod);

  static MonomialMatrix identity(const FreeModule& m);
  static MonomialMatrix zero(FreeModule dom, FreeModule cod) {
    return MonomialMatrix(std::move(dom), std::move(cod));
  }
  /// entries as (row, col, element)
  static MonomialMatrix from_entries(
      FreeModule dom, FreeModule cod,
      const std::vector<std::tuple<size_t, size_t, MonoidElement>>& entries);
  static MonomialMatrix diagonal(const FreeModule& m, const std::vector<MonoidElement>& d);
  static MonomialMatrix permutation(const FreeModule& m, const std::vector<size_t>& perm);

  const FreeModule& domain() const { return dom_; }
  const FreeModule& codomain() const { return cod_; }
  size_t rows() const { return cod_.rank; }
  size_t cols() const { return dom_.rank; }

  void set_entry(size_t row, size_t col, const MonoidElement& a);
  MonoidElement entry(size_t row, size_t col) const;
  /// (col, entry) of the unique nonzero entry in a row, if any.
  std::optional<std::pair<size_t, MonoidElement>> row_support(size_t row) const;
  std::optional<std::pair<size_t, MonoidElement>> col_support(size_t col) const;

  MonomialMatrix compose(const MonomialMatrix& inner) const;  // this after inner
  MonomialMatrix direct_sum(const MonomialMatrix& other) const;
  MonomialMatrix inverse() const;  // isomorphisms only
  bool equal(const MonomialMatrix& other) const;

  std::string to_string() const;

 private:
  FreeModule dom_, cod_;
  // per-column: (row, entry); absent = zero column
  std::vector<std::optional<std::pair<size_t, MonoidElement>>> by_col_;
  std::vector<std::optional<size_t>> row_to_col_;
};

struct MorphismClass {
  bool normal = false;
  bool inflation = false;
  bool deflation = false;
  bool iso = false;
};

MorphismClass classify_morphism(const MonomialMatrix& f);

/// U >--i--> V --pi->> W with im(i) = pi^{-1}(0) indexwise.
struct Conflation {
  MonomialMatrix inflation;  // U -> V
  MonomialMatrix deflation;  // V -> W
};

/// The unique isomorphism U (+) W -> V splitting the conflation.
MonomialMatrix split_conflation(const Conflation& c);

/// Normal dual of a free module: same rank, dual basis labels. Requires a
/// right reversible rpc monoid.
FreeModule normal_dual(const FreeModule& m);

/// P^sigma on morphisms: the sigma-applied transpose.
MonomialMatrix dual_of_morphism(const MonomialMatrix& f, const MonoidInvolution& sigma);

/// Double-dual comparison Theta_M: M -> P(P(M)), the diagonal matrix with
/// entries epsilon.
MonomialMatrix double_dual_map(const FreeModule& m, const MonoidElement& epsilon);

}  // namespace f1kgw
