#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "subind/kernel.hpp"

// Finite sets with all functions as morphisms. The embedding class is the
// whole category; monomorphisms are exactly the injective maps once a
// nonempty probe object is registered.

namespace subind::fset {

struct SetObject {
  std::vector<std::string> labels;  // pairwise distinct, order fixes element indices
};

struct Morphism {
  ObjectId dom = -1, cod = -1;
  std::vector<int> table;  // table[i] = index in cod of the image of element i
};

class Category {
 public:
  using Morphism = fset::Morphism;

  explicit Category(std::uint64_t hom_cap = 1'000'000) : hom_cap_(hom_cap) {}

  /// Registers a set (deduplicated by its label list) and returns its id.
  ObjectId add_object(std::vector<std::string> labels);
  const SetObject& object(ObjectId x) const;
  int object_count() const { return static_cast<int>(objects_.size()); }

  /// All functions dom -> cod ordered lexicographically by table.
  const std::vector<Morphism>& hom(ObjectId d, ObjectId c);

  Morphism compose(const Morphism& f, const Morphism& g) const;
  Morphism identity(ObjectId x) const;
  ObjectId dom(const Morphism& f) const { return f.dom; }
  ObjectId cod(const Morphism& f) const { return f.cod; }
  bool in_embeddings(const Morphism&) const { return true; }
  bool equal(const Morphism& f, const Morphism& g) const;
  std::string key(const Morphism& f) const;

 private:
  void check_morphism(const Morphism& f) const;
  std::vector<SetObject> objects_;
  std::map<std::vector<std::string>, ObjectId> index_;
  std::map<std::pair<ObjectId, ObjectId>, std::vector<Morphism>> hom_cache_;
  std::uint64_t hom_cap_;
};

/// Registers the subset of `ambient` selected by `mask` (bit i = element i).
ObjectId subset(Category& cat, ObjectId ambient, std::uint32_t mask);

/// The label-preserving injection of a registered subset.
Morphism inclusion(Category& cat, ObjectId sub, ObjectId ambient);

/// True when f maps every element to the equally-labelled element of cod.
bool is_inclusion(const Category& cat, const Morphism& f);

/// Analytic oracle for independence of two inclusions: the subsets are
/// disjoint, or both are the same singleton, or either is empty. The two
/// degenerate clauses sharpen plain disjointness: a shared singleton has
/// only the identity endomorphism, and an empty domain quantifies over
/// nothing. Also the exact oracle for compatibility of inclusions.
bool disjointness_oracle(const Category& cat, const Morphism& f_a, const Morphism& f_b);

/// Pullback of a cospan: pairs with equal images. For two inclusions the
/// apex is registered as the literal intersection of the subsets.
PullbackData<Category> pullback(Category& cat, const Morphism& f_a, const Morphism& f_b);

/// Tagged disjoint union with its two injections.
CoproductData<Category> coproduct(Category& cat, ObjectId x1, ObjectId x2);

}  // namespace subind::fset
