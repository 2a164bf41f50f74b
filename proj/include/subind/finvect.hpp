#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "subind/kernel.hpp"

// Finite-dimensional vector spaces over a prime field F_p with all linear
// maps as morphisms. Column-vector convention: a morphism F_p^a -> F_p^b is
// a b x a matrix acting by v |-> M v, so the diagrammatic composite
// compose(f, g) is the matrix product g.m * f.m.

namespace subind::fvec {

/// Dense matrix over F_p, entries reduced mod p, row-major storage.
struct Mat {
  int rows = 0, cols = 0;
  std::vector<std::uint8_t> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}
  std::uint8_t& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  std::uint8_t at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
  bool operator==(const Mat&) const = default;
};

Mat identity_mat(int n);
Mat mul(const Mat& lhs, const Mat& rhs, int p);
Mat hconcat(const Mat& lhs, const Mat& rhs);
int rank(Mat m, int p);
std::optional<Mat> inverse(const Mat& m, int p);
/// Basis of the nullspace (columns), canonical order.
Mat nullspace(const Mat& m, int p);
/// Canonical basis of the column space: pivot-reduced, used to compare spans.
Mat column_space(const Mat& m, int p);
/// Solves m * x = rhs column-wise; requires consistency.
Mat solve(const Mat& m, const Mat& rhs, int p);

struct Morphism {
  ObjectId dom = -1, cod = -1;
  Mat m;
};

class Category {
 public:
  using Morphism = fvec::Morphism;

  explicit Category(int p, std::uint64_t hom_cap = 2'000'000);

  /// Registers (or looks up) the space of the given dimension.
  ObjectId space(int dim);
  int dim(ObjectId x) const;
  int prime() const { return p_; }
  int object_count() const { return static_cast<int>(dims_.size()); }

  /// All matrices cod_dim x dom_dim, entries as a row-major base-p odometer
  /// with the last entry fastest (the zero map comes first).
  const std::vector<Morphism>& hom(ObjectId d, ObjectId c);

  Morphism compose(const Morphism& f, const Morphism& g) const;
  Morphism identity(ObjectId x) const;
  ObjectId dom(const Morphism& f) const { return f.dom; }
  ObjectId cod(const Morphism& f) const { return f.cod; }
  bool in_embeddings(const Morphism&) const { return true; }
  bool equal(const Morphism& f, const Morphism& g) const;
  std::string key(const Morphism& f) const;

 private:
  int p_;
  std::uint64_t hom_cap_;
  std::vector<int> dims_;
  std::map<int, ObjectId> index_;
  std::map<std::pair<ObjectId, ObjectId>, std::vector<Morphism>> hom_cache_;
};

/// A subspace of a registered ambient space, presented by a full-column-rank
/// basis matrix (ambient_dim x dim).
struct Subspace {
  ObjectId ambient = -1;
  Mat basis;
};

/// Validates rank and registers the abstract space of matching dimension.
Subspace make_subspace(Category& cat, ObjectId ambient, Mat basis);

/// The basis matrix viewed as a monic morphism from the abstract space.
Morphism inclusion(Category& cat, const Subspace& s);

/// True iff the two subspaces intersect trivially (rank identity).
bool intersection_oracle(Category& cat, const Subspace& a, const Subspace& b);

/// Constructive joint extension for trivially intersecting subspaces: maps
/// the A-basis through alpha_a, the B-basis through alpha_b, and fixes a
/// greedy canonical-coordinate completion pointwise. Exact by construction.
Morphism joint_extension_by_basis(Category& cat, const Subspace& a, const Subspace& b,
                                  const Mat& alpha_a, const Mat& alpha_b);

/// Pullback of the two inclusions: the intersection subspace with its
/// coordinate projections.
PullbackData<Category> pullback(Category& cat, const Subspace& a, const Subspace& b);

/// Direct sum with block injections; the copair is the block matrix [m1|m2].
CoproductData<Category> direct_sum(Category& cat, ObjectId x1, ObjectId x2);

/// Canonical bases (reduced echelon row spaces, transposed) of every
/// subspace of F_p^n, listed dimension-major.
std::vector<Mat> all_subspace_bases(int n, int p);

}  // namespace subind::fvec
