#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "subind/kernel.hpp"

// Finite Boolean algebras with injective unital homomorphisms. The category
// is stored through Stone duality: a morphism A -> C is kept as its dual
// fiber map at(C) -> at(A), which is surjective exactly when the
// homomorphism is injective. Composition of fibers therefore runs backwards:
// the fiber of f;g is fiber(f) after fiber(g).

namespace subind::balg {

struct Morphism {
  ObjectId dom = -1, cod = -1;
  std::vector<int> fiber;  // at(cod) -> at(dom), surjective
};

class Category {
 public:
  using Morphism = balg::Morphism;

  explicit Category(std::uint64_t hom_cap = 2'000'000);

  /// Registers (or looks up) the algebra with the given number of atoms.
  ObjectId algebra(int atoms);
  int atoms(ObjectId x) const;
  int object_count() const { return static_cast<int>(sizes_.size()); }

  /// All surjective fiber maps, filtered from the lexicographic sweep; the
  /// cap applies to the unfiltered function count.
  const std::vector<Morphism>& hom(ObjectId d, ObjectId c);

  Morphism compose(const Morphism& f, const Morphism& g) const;
  Morphism identity(ObjectId x) const;
  ObjectId dom(const Morphism& f) const { return f.dom; }
  ObjectId cod(const Morphism& f) const { return f.cod; }
  bool in_embeddings(const Morphism&) const { return true; }
  bool equal(const Morphism& f, const Morphism& g) const;
  std::string key(const Morphism& f) const;

 private:
  std::uint64_t hom_cap_;
  std::vector<int> sizes_;
  std::map<int, ObjectId> index_;
  std::map<std::pair<ObjectId, ObjectId>, std::vector<Morphism>> hom_cache_;
};

/// Element transport: elements are atom masks, and bit t of the image is set
/// exactly when the fiber sends t into the argument.
std::uint32_t apply(const Morphism& f, std::uint32_t mask);

/// A subalgebra of an ambient algebra is a partition of its atoms; the
/// blocks are the subalgebra's atoms, labeled in first-occurrence order.
struct Subalgebra {
  ObjectId ambient = -1;
  std::vector<int> block_of;  // ambient atom -> block
  int blocks = 0;
  ObjectId sub = -1;
};

Subalgebra make_subalgebra(Category& cat, ObjectId ambient, std::vector<int> block_of);

/// Subalgebra generated by the given atom masks: blocks are the classes of
/// atoms with identical membership across the generators.
Subalgebra generated_subalgebra(Category& cat, ObjectId ambient,
                                const std::vector<std::uint32_t>& gens);

Morphism inclusion(Category& cat, const Subalgebra& s);

/// Every pair of blocks meets: the classical product-decomposition notion.
bool logically_independent(const Subalgebra& a, const Subalgebra& b);

/// Intersection of subalgebras: the partition join (union-find over shared
/// blocks).
Subalgebra meet_subalgebra(Category& cat, const Subalgebra& a, const Subalgebra& b);

/// Internal sum: the common refinement partition.
Subalgebra join_subalgebra(Category& cat, const Subalgebra& a, const Subalgebra& b);

/// Free product with atom set at(x1) x at(x2). Not a true coproduct here:
/// the canonical mediating fiber for a cospan into a small target is not
/// surjective, and copair then throws StructureError. The exhaustive audit
/// mode documents that failure; the constructive mode (cap 0) checks the
/// copair on endomorphism cospans, where the mediator always exists.
CoproductData<Category> free_product(Category& cat, ObjectId x1, ObjectId x2);

/// Verdict on the ambient-atom split claim: the subalgebras generated by
/// atoms {0..k-1} and {k..n-1} of an n-atom algebra, claimed independent.
struct SplitAdjudication {
  int n = 0, k = 0;
  IndependenceVerdict<Category> verdict;
  bool restricted_extension_ok = false;  // co-block-fixing permutation pairs extend
  std::uint64_t restricted_pairs = 0;
};

SplitAdjudication adjudicate_atom_split(Category& cat, int n, int k,
                                        const SearchBudget& budget = {}, int jobs = 1);

}  // namespace subind::balg
