#pragma once

#include <string>
#include <vector>

#include "subind/common.hpp"

// Finite orthomodular lattices as explicit operation tables, with the
// summability relation and internal direct sums. Everything here is plain
// lattice arithmetic; the categorical machinery stays in the Boolean module.

namespace subind::oml {

struct Lattice {
  int n = 0;
  std::vector<int> meet, join;  // n x n, row-major
  std::vector<int> ortho;       // n
  int zero = 0, one = 0;

  int meet_of(int x, int y) const { return meet[static_cast<std::size_t>(x) * n + y]; }
  int join_of(int x, int y) const { return join[static_cast<std::size_t>(x) * n + y]; }
  int ortho_of(int x) const { return ortho[static_cast<std::size_t>(x)]; }
  bool le(int x, int y) const { return meet_of(x, y) == x; }
};

/// Throws StructureError unless the tables form an ortholattice satisfying
/// the orthomodular law.
void validate_lattice(const Lattice& l);

/// Elements are atom masks.
Lattice boolean_lattice(int atoms);
/// 0, 1, and k orthocomplementary atom pairs (all atoms pairwise
/// incomparable); non-distributive for k >= 2.
Lattice mo(int k);
/// Componentwise product; element (x, y) sits at index x * rhs.n + y.
Lattice product(const Lattice& lhs, const Lattice& rhs);

std::vector<int> atoms_of(const Lattice& l);

/// The summability relation: joining x never disturbs meets with y.
bool summable(const Lattice& l, int x, int y);

/// Ortho-automorphisms as full element maps, seeded from atom permutations
/// (finite orthomodular lattices are atomistic).
std::vector<std::vector<int>> automorphisms(const Lattice& l);

/// Injective maps preserving meet, join, and orthocomplement, enumerated
/// from atom-image tuples in lexicographic order.
std::vector<std::vector<int>> ortho_embeddings(const Lattice& src, const Lattice& dst);

struct DirectSumCheck {
  bool factors_closed = false;  // closed under meet, join, relative ortho
  bool cover_ok = false;        // every element splits as s v q
  bool summable_ok = false;     // all cross pairs summable
  bool iso_ok = false;          // (s, q) -> s v q is an ortho-isomorphism
  std::string detail;
  bool ok() const { return factors_closed && cover_ok && summable_ok && iso_ok; }
};

/// Tests whether the two element subsets decompose the lattice as an
/// internal direct sum.
DirectSumCheck internal_direct_sum(const Lattice& l, const std::vector<int>& s,
                                   const std::vector<int>& q);

/// For a decomposition that passed: the automorphism determined by a factor
/// map on each side (sigma_s[i] is the image of s[i], likewise sigma_q).
/// Throws StructureError when the decomposition is not bijective.
std::vector<int> joint_extension(const Lattice& l, const std::vector<int>& s,
                                 const std::vector<int>& q, const std::vector<int>& sigma_s,
                                 const std::vector<int>& sigma_q);

}  // namespace subind::oml
