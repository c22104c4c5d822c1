#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "f1kgw/abgroup.hpp"
#include "f1kgw/ints.hpp"

namespace f1kgw {

/// Index sets for pi_0-level invariants. Possibly infinite; exposed through
/// membership and canonicalization rather than enumeration.
class IndexDescriptor {
 public:
  enum class Kind { FiniteList, AbGroupElements, FixedCoset, OrbitSpace, Product };

  static IndexDescriptor finite_list(std::vector<Vec> keys);
  static IndexDescriptor group_elements(FgAbGroup g);
  /// Fixed points {x : inv(x) = x} of an affine involution.
  static IndexDescriptor fixed_coset(AffineInvolution inv);
  /// Orbits of the whole group under an affine involution, keyed by
  /// canonical representatives.
  static IndexDescriptor orbit_space(AffineInvolution inv);
  static IndexDescriptor product(std::vector<IndexDescriptor> parts);

  Kind kind() const { return kind_; }
  size_t key_size() const;
  bool contains(const Vec& key) const;
  Vec canonicalize(const Vec& key) const;
  std::optional<std::vector<Vec>> enumerate() const;  // nullopt when infinite
  bool compatible(const IndexDescriptor& other) const;

  const FgAbGroup& group() const;                 // AbGroupElements / FixedCoset / OrbitSpace
  const AffineInvolution& involution() const;     // FixedCoset / OrbitSpace
  const std::vector<IndexDescriptor>& parts() const;

  std::string to_string() const;

 private:
  IndexDescriptor() = default;
  Kind kind_ = Kind::FiniteList;
  std::vector<Vec> keys_;  // FiniteList
  FgAbGroup group_;
  std::shared_ptr<AffineInvolution> inv_;
  std::shared_ptr<FixedSet> fixed_;
  std::vector<IndexDescriptor> parts_;
};

/// Finitely supported integer-valued map on an index descriptor; the free
/// abelian group (or group ring) element type of the library.
class FinSuppMap {
 public:
  explicit FinSuppMap(IndexDescriptor desc) : desc_(std::move(desc)) {}

  static FinSuppMap basis(const IndexDescriptor& desc, const Vec& key) {
    FinSuppMap m(desc);
    m.add_term(key, 1);
    return m;
  }

  const IndexDescriptor& descriptor() const { return desc_; }
  const std::map<Vec, Int, VecLess>& terms() const { return terms_; }

  void add_term(const Vec& key, const Int& coeff);
  Int coeff(const Vec& key) const;
  bool is_zero() const { return terms_.empty(); }

  FinSuppMap add(const FinSuppMap& other) const;
  FinSuppMap negate() const;
  FinSuppMap sub(const FinSuppMap& other) const { return add(other.negate()); }
  FinSuppMap scale(const Int& c) const;
  bool equal(const FinSuppMap& other) const;

  /// Group-ring product; descriptor must be AbGroupElements.
  FinSuppMap convolve(const FinSuppMap& other) const;

  std::string to_string() const;

 private:
  IndexDescriptor desc_;
  std::map<Vec, Int, VecLess> terms_;
};

}  // namespace f1kgw
