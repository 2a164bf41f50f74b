#include "subind/boolalg.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace subind::balg {
namespace {

constexpr int kMaxAtoms = 16;

bool surjective(const std::vector<int>& fiber, int onto) {
  std::vector<bool> hit(static_cast<std::size_t>(onto), false);
  for (int v : fiber) hit[static_cast<std::size_t>(v)] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

/// Relabels partition blocks in first-occurrence order; returns block count.
int normalize_blocks(std::vector<int>& block_of) {
  std::vector<int> relabel(block_of.size(), -1);
  int next = 0;
  for (int& b : block_of) {
    if (relabel[static_cast<std::size_t>(b)] < 0) relabel[static_cast<std::size_t>(b)] = next++;
    b = relabel[static_cast<std::size_t>(b)];
  }
  return next;
}

}  // namespace

Category::Category(std::uint64_t hom_cap) : hom_cap_(hom_cap) {}

ObjectId Category::algebra(int atoms) {
  if (atoms < 1 || atoms > kMaxAtoms) throw DomainError("atom count out of range");
  if (auto it = index_.find(atoms); it != index_.end()) return it->second;
  const ObjectId id = static_cast<ObjectId>(sizes_.size());
  sizes_.push_back(atoms);
  index_.emplace(atoms, id);
  return id;
}

int Category::atoms(ObjectId x) const {
  if (x < 0 || x >= object_count()) throw DomainError("unknown object id");
  return sizes_[static_cast<std::size_t>(x)];
}

const std::vector<Category::Morphism>& Category::hom(ObjectId d, ObjectId c) {
  const auto key = std::make_pair(d, c);
  if (auto it = hom_cache_.find(key); it != hom_cache_.end()) return it->second;
  const int nd = atoms(d), nc = atoms(c);
  std::uint64_t count = 1;
  for (int i = 0; i < nc; ++i) {
    count *= static_cast<std::uint64_t>(nd);
    if (count > hom_cap_) throw EnumerationError("hom set exceeds enumeration cap");
  }
  std::vector<Morphism> out;
  std::vector<int> fiber(static_cast<std::size_t>(nc), 0);
  for (std::uint64_t i = 0; i < count; ++i) {
    if (surjective(fiber, nd)) out.push_back(Morphism{d, c, fiber});
    for (int j = nc - 1; j >= 0; --j) {
      if (++fiber[static_cast<std::size_t>(j)] < nd) break;
      fiber[static_cast<std::size_t>(j)] = 0;
    }
  }
  return hom_cache_.emplace(key, std::move(out)).first->second;
}

Category::Morphism Category::compose(const Morphism& f, const Morphism& g) const {
  if (f.cod != g.dom) throw DomainError("compose: endpoints do not match");
  Morphism r{f.dom, g.cod, std::vector<int>(g.fiber.size())};
  for (std::size_t t = 0; t < g.fiber.size(); ++t)
    r.fiber[t] = f.fiber[static_cast<std::size_t>(g.fiber[t])];
  return r;
}

Category::Morphism Category::identity(ObjectId x) const {
  Morphism r{x, x, std::vector<int>(static_cast<std::size_t>(atoms(x)))};
  std::iota(r.fiber.begin(), r.fiber.end(), 0);
  return r;
}

bool Category::equal(const Morphism& f, const Morphism& g) const {
  return f.dom == g.dom && f.cod == g.cod && f.fiber == g.fiber;
}

std::string Category::key(const Morphism& f) const {
  std::string s;
  s.reserve(4 + f.fiber.size());
  for (int v : {f.dom, f.cod}) {
    s.push_back(static_cast<char>(v & 0xff));
    s.push_back(static_cast<char>((v >> 8) & 0xff));
  }
  for (int v : f.fiber) s.push_back(static_cast<char>(v));
  return s;
}

std::uint32_t apply(const Morphism& f, std::uint32_t mask) {
  std::uint32_t out = 0;
  for (std::size_t t = 0; t < f.fiber.size(); ++t)
    if (mask & (1u << f.fiber[t])) out |= 1u << t;
  return out;
}

Subalgebra make_subalgebra(Category& cat, ObjectId ambient, std::vector<int> block_of) {
  const int n = cat.atoms(ambient);
  if (static_cast<int>(block_of.size()) != n)
    throw StructureError("partition size does not match the atom count");
  for (int b : block_of)
    if (b < 0 || b >= n) throw StructureError("block label out of range");
  const int blocks = normalize_blocks(block_of);
  Subalgebra s{ambient, std::move(block_of), blocks, cat.algebra(blocks)};
  return s;
}

Subalgebra generated_subalgebra(Category& cat, ObjectId ambient,
                                const std::vector<std::uint32_t>& gens) {
  const int n = cat.atoms(ambient);
  std::vector<int> block_of(static_cast<std::size_t>(n));
  std::vector<std::vector<bool>> seen;
  std::vector<int> label;
  for (int t = 0; t < n; ++t) {
    std::vector<bool> pattern;
    pattern.reserve(gens.size());
    for (std::uint32_t g : gens) pattern.push_back((g >> t) & 1u);
    int found = -1;
    for (std::size_t i = 0; i < seen.size(); ++i)
      if (seen[i] == pattern) {
        found = label[i];
        break;
      }
    if (found < 0) {
      found = static_cast<int>(seen.size());
      seen.push_back(std::move(pattern));
      label.push_back(found);
    }
    block_of[static_cast<std::size_t>(t)] = found;
  }
  return make_subalgebra(cat, ambient, std::move(block_of));
}

Morphism inclusion(Category& cat, const Subalgebra& s) {
  (void)cat;
  return Morphism{s.sub, s.ambient, s.block_of};
}

bool logically_independent(const Subalgebra& a, const Subalgebra& b) {
  if (a.ambient != b.ambient) throw DomainError("subalgebras of different ambient algebras");
  std::vector<bool> hit(static_cast<std::size_t>(a.blocks) * b.blocks, false);
  for (std::size_t t = 0; t < a.block_of.size(); ++t)
    hit[static_cast<std::size_t>(a.block_of[t]) * b.blocks + b.block_of[t]] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool h) { return h; });
}

Subalgebra meet_subalgebra(Category& cat, const Subalgebra& a, const Subalgebra& b) {
  if (a.ambient != b.ambient) throw DomainError("subalgebras of different ambient algebras");
  const int n = static_cast<int>(a.block_of.size());
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  const auto unite = [&](int x, int y) { parent[static_cast<std::size_t>(find(x))] = find(y); };
  std::vector<int> first_a(static_cast<std::size_t>(a.blocks), -1);
  std::vector<int> first_b(static_cast<std::size_t>(b.blocks), -1);
  for (int t = 0; t < n; ++t) {
    int& fa = first_a[static_cast<std::size_t>(a.block_of[static_cast<std::size_t>(t)])];
    if (fa < 0)
      fa = t;
    else
      unite(t, fa);
    int& fb = first_b[static_cast<std::size_t>(b.block_of[static_cast<std::size_t>(t)])];
    if (fb < 0)
      fb = t;
    else
      unite(t, fb);
  }
  std::vector<int> block_of(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) block_of[static_cast<std::size_t>(t)] = find(t);
  return make_subalgebra(cat, a.ambient, std::move(block_of));
}

Subalgebra join_subalgebra(Category& cat, const Subalgebra& a, const Subalgebra& b) {
  if (a.ambient != b.ambient) throw DomainError("subalgebras of different ambient algebras");
  // Pair labels first, compressed into the atom range for make_subalgebra.
  std::vector<int> relabel(static_cast<std::size_t>(a.blocks) * b.blocks, -1);
  std::vector<int> block_of(a.block_of.size());
  int next = 0;
  for (std::size_t t = 0; t < a.block_of.size(); ++t) {
    int& r = relabel[static_cast<std::size_t>(a.block_of[t]) * b.blocks + b.block_of[t]];
    if (r < 0) r = next++;
    block_of[t] = r;
  }
  return make_subalgebra(cat, a.ambient, std::move(block_of));
}

CoproductData<Category> free_product(Category& cat, ObjectId x1, ObjectId x2) {
  const int k = cat.atoms(x1), m = cat.atoms(x2);
  if (static_cast<std::uint64_t>(k) * m > kMaxAtoms)
    throw DomainError("free product atom count out of range");
  const ObjectId sum = cat.algebra(k * m);
  CoproductData<Category> out;
  out.x1 = x1;
  out.x2 = x2;
  out.sum = sum;
  out.i1 = Morphism{x1, sum, {}};
  out.i2 = Morphism{x2, sum, {}};
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < m; ++b) {
      out.i1.fiber.push_back(a);
      out.i2.fiber.push_back(b);
    }
  out.copair = [sum, x1, x2, m](Category& c, const Morphism& f1, const Morphism& f2) {
    if (f1.dom != x1 || f2.dom != x2 || f1.cod != f2.cod)
      throw DomainError("copair: cospan endpoints do not match the free product");
    Morphism med{sum, f1.cod, std::vector<int>(f1.fiber.size())};
    for (std::size_t t = 0; t < f1.fiber.size(); ++t)
      med.fiber[t] = f1.fiber[t] * m + f2.fiber[t];
    if (!surjective(med.fiber, c.atoms(sum)))
      throw StructureError(
          "invalid coproduct: the mediating fiber misses an atom pair, so the mediator "
          "leaves the injective-homomorphism category");
    return med;
  };
  // Mediating fibers are determined pointwise by the two legs, so they are
  // unique whenever the atom-pair map below is injective.
  out.jointly_epic = [](Category&) { return true; };
  return out;
}

SplitAdjudication adjudicate_atom_split(Category& cat, int n, int k, const SearchBudget& budget,
                                        int jobs) {
  if (k < 1 || k >= n) throw DomainError("split requires 1 <= k < n");
  const ObjectId amb = cat.algebra(n);
  std::vector<std::uint32_t> gens_a, gens_b;
  for (int i = 0; i < k; ++i) gens_a.push_back(1u << i);
  for (int i = k; i < n; ++i) gens_b.push_back(1u << i);
  const auto sa = generated_subalgebra(cat, amb, gens_a);
  const auto sb = generated_subalgebra(cat, amb, gens_b);
  const auto fa = inclusion(cat, sa), fb = inclusion(cat, sb);

  SplitAdjudication out;
  out.n = n;
  out.k = k;
  out.verdict = decide_independence(cat, fa, fb, budget, jobs);

  // Restricted claim: permutations of the generator atoms that fix the
  // co-block always extend, through the induced ambient permutation.
  bool all_ok = true;
  std::uint64_t pairs = 0;
  std::vector<int> perm_a(static_cast<std::size_t>(k));
  std::iota(perm_a.begin(), perm_a.end(), 0);
  do {
    std::vector<int> perm_b(static_cast<std::size_t>(n - k));
    std::iota(perm_b.begin(), perm_b.end(), 0);
    do {
      ++pairs;
      Morphism alpha_a = cat.identity(sa.sub);
      for (int i = 0; i < k; ++i) {
        const auto from = static_cast<std::size_t>(sa.block_of[static_cast<std::size_t>(i)]);
        alpha_a.fiber[from] =
            sa.block_of[static_cast<std::size_t>(perm_a[static_cast<std::size_t>(i)])];
      }
      Morphism alpha_b = cat.identity(sb.sub);
      for (int i = 0; i < n - k; ++i) {
        const auto from = static_cast<std::size_t>(sb.block_of[static_cast<std::size_t>(k + i)]);
        alpha_b.fiber[from] =
            sb.block_of[static_cast<std::size_t>(k + perm_b[static_cast<std::size_t>(i)])];
      }
      Morphism gamma = cat.identity(amb);
      for (int i = 0; i < k; ++i)
        gamma.fiber[static_cast<std::size_t>(i)] = perm_a[static_cast<std::size_t>(i)];
      for (int i = 0; i < n - k; ++i)
        gamma.fiber[static_cast<std::size_t>(k + i)] = k + perm_b[static_cast<std::size_t>(i)];
      if (!cat.equal(cat.compose(fa, gamma), cat.compose(alpha_a, fa)) ||
          !cat.equal(cat.compose(fb, gamma), cat.compose(alpha_b, fb)))
        all_ok = false;
    } while (std::next_permutation(perm_b.begin(), perm_b.end()));
  } while (std::next_permutation(perm_a.begin(), perm_a.end()));

  out.restricted_extension_ok = all_ok;
  out.restricted_pairs = pairs;
  return out;
}

}  // namespace subind::balg
