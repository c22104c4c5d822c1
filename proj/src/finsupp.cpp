#include "f1kgw/finsupp.hpp"

#include <algorithm>
#include <sstream>

#include "f1kgw/errors.hpp"

namespace f1kgw {

IndexDescriptor IndexDescriptor::finite_list(std::vector<Vec> keys) {
  IndexDescriptor d;
  d.kind_ = Kind::FiniteList;
  std::sort(keys.begin(), keys.end(), VecLess{});
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  d.keys_ = std::move(keys);
  return d;
}

IndexDescriptor IndexDescriptor::group_elements(FgAbGroup g) {
  IndexDescriptor d;
  d.kind_ = Kind::AbGroupElements;
  d.group_ = std::move(g);
  return d;
}

IndexDescriptor IndexDescriptor::fixed_coset(AffineInvolution inv) {
  IndexDescriptor d;
  d.kind_ = Kind::FixedCoset;
  d.group_ = inv.group;
  d.fixed_ = std::make_shared<FixedSet>(involution_fixed_and_orbits(inv).fixed);
  d.inv_ = std::make_shared<AffineInvolution>(std::move(inv));
  return d;
}

IndexDescriptor IndexDescriptor::orbit_space(AffineInvolution inv) {
  IndexDescriptor d;
  d.kind_ = Kind::OrbitSpace;
  d.group_ = inv.group;
  d.inv_ = std::make_shared<AffineInvolution>(std::move(inv));
  return d;
}

IndexDescriptor IndexDescriptor::product(std::vector<IndexDescriptor> parts) {
  IndexDescriptor d;
  d.kind_ = Kind::Product;
  d.parts_ = std::move(parts);
  return d;
}

size_t IndexDescriptor::key_size() const {
  switch (kind_) {
    case Kind::FiniteList:
      return keys_.empty() ? 0 : keys_[0].size();
    case Kind::AbGroupElements:
    case Kind::FixedCoset:
    case Kind::OrbitSpace:
      return group_.dim();
    case Kind::Product: {
      size_t n = 0;
      for (const auto& p : parts_) n += p.key_size();
      return n;
    }
  }
  return 0;
}

bool IndexDescriptor::contains(const Vec& key) const {
  switch (kind_) {
    case Kind::FiniteList:
      return std::binary_search(keys_.begin(), keys_.end(), key, VecLess{});
    case Kind::AbGroupElements:
      return key.size() == group_.dim();
    case Kind::FixedCoset:
      return key.size() == group_.dim() && !fixed_->empty &&
             group_.equal(inv_->apply(key), key);
    case Kind::OrbitSpace:
      return key.size() == group_.dim();
    case Kind::Product: {
      size_t off = 0;
      for (const auto& p : parts_) {
        size_t k = p.key_size();
        if (off + k > key.size()) return false;
        Vec part(key.begin() + off, key.begin() + off + k);
        if (!p.contains(part)) return false;
        off += k;
      }
      return off == key.size();
    }
  }
  return false;
}

Vec IndexDescriptor::canonicalize(const Vec& key) const {
  require(contains(key), "DescriptorMismatch", "key not in index set");
  switch (kind_) {
    case Kind::FiniteList:
      return key;
    case Kind::AbGroupElements:
    case Kind::FixedCoset:
      return group_.reduce(key);
    case Kind::OrbitSpace:
      return OrbitSpace{*inv_}.rep(key);
    case Kind::Product: {
      Vec out;
      size_t off = 0;
      for (const auto& p : parts_) {
        size_t k = p.key_size();
        Vec part(key.begin() + off, key.begin() + off + k);
        Vec c = p.canonicalize(part);
        out.insert(out.end(), c.begin(), c.end());
        off += k;
      }
      return out;
    }
  }
  return key;
}

std::optional<std::vector<Vec>> IndexDescriptor::enumerate() const {
  switch (kind_) {
    case Kind::FiniteList:
      return keys_;
    case Kind::AbGroupElements: {
      if (!group_.is_finite()) return std::nullopt;
      return group_.enumerate();
    }
    case Kind::FixedCoset: {
      if (fixed_->empty) return std::vector<Vec>{};
      if (!fixed_->is_finite()) return std::nullopt;
      return fixed_->enumerate(group_);
    }
    case Kind::OrbitSpace: {
      if (!group_.is_finite()) return std::nullopt;
      return f1kgw::OrbitSpace{*inv_}.enumerate_reps();
    }
    case Kind::Product: {
      std::vector<Vec> acc{Vec{}};
      for (const auto& p : parts_) {
        auto sub = p.enumerate();
        if (!sub) return std::nullopt;
        std::vector<Vec> next;
        for (const auto& a : acc)
          for (const auto& s : *sub) {
            Vec v = a;
            v.insert(v.end(), s.begin(), s.end());
            next.push_back(std::move(v));
          }
        acc = std::move(next);
      }
      return acc;
    }
  }
  return std::nullopt;
}

bool IndexDescriptor::compatible(const IndexDescriptor& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case Kind::FiniteList:
      return keys_ == other.keys_;
    case Kind::AbGroupElements:
      return group_.same_shape(other.group_);
    case Kind::FixedCoset:
    case Kind::OrbitSpace:
      return group_.same_shape(other.group_) && inv_->linear.matrix == other.inv_->linear.matrix &&
             group_.equal(inv_->shift, other.inv_->shift);
    case Kind::Product: {
      if (parts_.size() != other.parts_.size()) return false;
      for (size_t i = 0; i < parts_.size(); ++i)
        if (!parts_[i].compatible(other.parts_[i])) return false;
      return true;
    }
  }
  return false;
}

const FgAbGroup& IndexDescriptor::group() const { return group_; }

const AffineInvolution& IndexDescriptor::involution() const {
  require(inv_ != nullptr, "DescriptorMismatch", "descriptor has no involution");
  return *inv_;
}

const std::vector<IndexDescriptor>& IndexDescriptor::parts() const { return parts_; }

std::string IndexDescriptor::to_string() const {
  switch (kind_) {
    case Kind::FiniteList: {
      std::ostringstream os;
      os << "finite(" << keys_.size() << ")";
      return os.str();
    }
    case Kind::AbGroupElements:
      return "elements(" + group_.to_string() + ")";
    case Kind::FixedCoset:
      return "fixed(" + group_.to_string() + ")";
    case Kind::OrbitSpace:
      return "orbits(" + group_.to_string() + ")";
    case Kind::Product: {
      std::string s = "product(";
      for (size_t i = 0; i < parts_.size(); ++i) s += (i ? ", " : "") + parts_[i].to_string();
      return s + ")";
    }
  }
  return "?";
}

void FinSuppMap::add_term(const Vec& key, const Int& coeff) {
  if (coeff == 0) return;
  Vec k = desc_.canonicalize(key);
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(std::move(k), coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Int FinSuppMap::coeff(const Vec& key) const {
  auto it = terms_.find(desc_.canonicalize(key));
  return it == terms_.end() ? Int(0) : it->second;
}

FinSuppMap FinSuppMap::add(const FinSuppMap& other) const {
  require(desc_.compatible(other.desc_), "DescriptorMismatch", "adding over different index sets");
  FinSuppMap out = *this;
  for (const auto& [k, c] : other.terms_) out.add_term(k, c);
  return out;
}

FinSuppMap FinSuppMap::negate() const {
  FinSuppMap out(desc_);
  for (const auto& [k, c] : terms_) out.terms_.emplace(k, -c);
  return out;
}

FinSuppMap FinSuppMap::scale(const Int& c) const {
  FinSuppMap out(desc_);
  if (c == 0) return out;
  for (const auto& [k, v] : terms_) out.terms_.emplace(k, c * v);
  return out;
}

bool FinSuppMap::equal(const FinSuppMap& other) const {
  return desc_.compatible(other.desc_) && terms_ == other.terms_;
}

FinSuppMap FinSuppMap::convolve(const FinSuppMap& other) const {
  require(desc_.kind() == IndexDescriptor::Kind::AbGroupElements, "DescriptorMismatch",
          "convolution needs a group index set");
  require(desc_.compatible(other.desc_), "DescriptorMismatch",
          "convolving over different index sets");
  FinSuppMap out(desc_);
  const FgAbGroup& g = desc_.group();
  for (const auto& [k1, c1] : terms_)
    for (const auto& [k2, c2] : other.terms_) out.add_term(g.add(k1, k2), c1 * c2);
  return out;
}

std::string FinSuppMap::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.str() << "*[";
    for (size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i].str();
    os << "]";
  }
  return os.str();
}

}  // namespace f1kgw
