#include "subind/finvect.hpp"

#include <algorithm>
#include <utility>

namespace subind::fvec {
namespace {

int modinv(int a, int p) {
  // p prime, a != 0 mod p; extended Euclid.
  int t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    int q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  return ((t % p) + p) % p;
}

struct Reduced {
  Mat m;
  std::vector<int> pivots;  // pivot column of each nonzero row, increasing
};

Reduced rref(Mat m, int p) {
  Reduced out;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int sel = -1;
    for (int r = row; r < m.rows; ++r) {
      if (m.at(r, col) != 0) {
        sel = r;
        break;
      }
    }
    if (sel < 0) continue;
    for (int c = 0; c < m.cols; ++c) std::swap(m.at(sel, c), m.at(row, c));
    const int inv = modinv(m.at(row, col), p);
    for (int c = 0; c < m.cols; ++c) m.at(row, c) = static_cast<std::uint8_t>(m.at(row, c) * inv % p);
    for (int r = 0; r < m.rows; ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      const int f = m.at(r, col);
      for (int c = 0; c < m.cols; ++c)
        m.at(r, c) = static_cast<std::uint8_t>(((m.at(r, c) - f * m.at(row, c)) % p + p) % p);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.m = std::move(m);
  return out;
}

Mat transpose(const Mat& m) {
  Mat t(m.cols, m.rows);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) t.at(c, r) = m.at(r, c);
  return t;
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

Mat identity_mat(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat mul(const Mat& lhs, const Mat& rhs, int p) {
  if (lhs.cols != rhs.rows) throw DomainError("matrix product: inner dimensions disagree");
  Mat out(lhs.rows, rhs.cols);
  for (int r = 0; r < lhs.rows; ++r)
    for (int k = 0; k < lhs.cols; ++k) {
      const int f = lhs.at(r, k);
      if (f == 0) continue;
      for (int c = 0; c < rhs.cols; ++c)
        out.at(r, c) = static_cast<std::uint8_t>((out.at(r, c) + f * rhs.at(k, c)) % p);
    }
  return out;
}

Mat hconcat(const Mat& lhs, const Mat& rhs) {
  if (lhs.rows != rhs.rows) throw DomainError("hconcat: row counts disagree");
  Mat out(lhs.rows, lhs.cols + rhs.cols);
  for (int r = 0; r < lhs.rows; ++r) {
    for (int c = 0; c < lhs.cols; ++c) out.at(r, c) = lhs.at(r, c);
    for (int c = 0; c < rhs.cols; ++c) out.at(r, lhs.cols + c) = rhs.at(r, c);
  }
  return out;
}

int rank(Mat m, int p) { return static_cast<int>(rref(std::move(m), p).pivots.size()); }

std::optional<Mat> inverse(const Mat& m, int p) {
  if (m.rows != m.cols) return std::nullopt;
  const auto red = rref(hconcat(m, identity_mat(m.rows)), p);
  if (static_cast<int>(red.pivots.size()) != m.rows ||
      (m.rows > 0 && red.pivots.back() >= m.rows))
    return std::nullopt;
  Mat inv(m.rows, m.rows);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.rows; ++c) inv.at(r, c) = red.m.at(r, m.cols + c);
  return inv;
}

Mat nullspace(const Mat& m, int p) {
  const auto red = rref(m, p);
  std::vector<int> free_cols;
  for (int c = 0, k = 0; c < m.cols; ++c) {
    if (k < static_cast<int>(red.pivots.size()) && red.pivots[k] == c)
      ++k;
    else
      free_cols.push_back(c);
  }
  Mat basis(m.cols, static_cast<int>(free_cols.size()));
  for (int j = 0; j < static_cast<int>(free_cols.size()); ++j) {
    basis.at(free_cols[j], j) = 1;
    for (int i = 0; i < static_cast<int>(red.pivots.size()); ++i)
      basis.at(red.pivots[i], j) =
          static_cast<std::uint8_t>((p - red.m.at(i, free_cols[j])) % p);
  }
  return basis;
}

Mat column_space(const Mat& m, int p) {
  // Canonical span representative: reduced echelon form of the row space of
  // the transpose, transposed back, so equal spans give equal matrices.
  const auto red = rref(transpose(m), p);
  Mat rows(static_cast<int>(red.pivots.size()), m.rows);
  for (int r = 0; r < rows.rows; ++r)
    for (int c = 0; c < rows.cols; ++c) rows.at(r, c) = red.m.at(r, c);
  return transpose(rows);
}

Mat solve(const Mat& m, const Mat& rhs, int p) {
  if (m.rows != rhs.rows) throw DomainError("solve: row counts disagree");
  const auto red = rref(hconcat(m, rhs), p);
  for (int c : red.pivots)
    if (c >= m.cols) throw StructureError("solve: inconsistent system");
  Mat x(m.cols, rhs.cols);
  for (int i = 0; i < static_cast<int>(red.pivots.size()); ++i)
    for (int c = 0; c < rhs.cols; ++c) x.at(red.pivots[i], c) = red.m.at(i, m.cols + c);
  return x;
}

Category::Category(int p, std::uint64_t hom_cap) : p_(p), hom_cap_(hom_cap) {
  if (!is_prime(p) || p > 11) throw DomainError("field order must be a small prime");
}

ObjectId Category::space(int dim) {
  if (dim < 0) throw DomainError("negative dimension");
  if (auto it = index_.find(dim); it != index_.end()) return it->second;
  const ObjectId id = static_cast<ObjectId>(dims_.size());
  dims_.push_back(dim);
  index_.emplace(dim, id);
  return id;
}

int Category::dim(ObjectId x) const {
  if (x < 0 || x >= object_count()) throw DomainError("unknown object id");
  return dims_[static_cast<std::size_t>(x)];
}

const std::vector<Category::Morphism>& Category::hom(ObjectId d, ObjectId c) {
  const auto key = std::make_pair(d, c);
  if (auto it = hom_cache_.find(key); it != hom_cache_.end()) return it->second;
  const int nd = dim(d), nc = dim(c);
  const int entries = nc * nd;
  std::uint64_t count = 1;
  for (int i = 0; i < entries; ++i) {
    count *= static_cast<std::uint64_t>(p_);
    if (count > hom_cap_) throw EnumerationError("hom set exceeds enumeration cap");
  }
  std::vector<Morphism> out;
  out.reserve(static_cast<std::size_t>(count));
  Mat m(nc, nd);
  for (std::uint64_t i = 0; i < count; ++i) {
    out.push_back(Morphism{d, c, m});
    for (int j = entries - 1; j >= 0; --j) {
      if (++m.a[static_cast<std::size_t>(j)] < p_) break;
      m.a[static_cast<std::size_t>(j)] = 0;
    }
  }
  return hom_cache_.emplace(key, std::move(out)).first->second;
}

Category::Morphism Category::compose(const Morphism& f, const Morphism& g) const {
  if (f.cod != g.dom) throw DomainError("compose: endpoints do not match");
  return Morphism{f.dom, g.cod, mul(g.m, f.m, p_)};
}

Category::Morphism Category::identity(ObjectId x) const {
  if (x < 0 || x >= object_count()) throw DomainError("unknown object id");
  return Morphism{x, x, identity_mat(dims_[static_cast<std::size_t>(x)])};
}

bool Category::equal(const Morphism& f, const Morphism& g) const {
  return f.dom == g.dom && f.cod == g.cod && f.m == g.m;
}

std::string Category::key(const Morphism& f) const {
  std::string s;
  s.reserve(8 + f.m.a.size());
  for (int v : {f.dom, f.cod, f.m.rows, f.m.cols}) {
    s.push_back(static_cast<char>(v & 0xff));
    s.push_back(static_cast<char>((v >> 8) & 0xff));
  }
  for (auto e : f.m.a) s.push_back(static_cast<char>(e));
  return s;
}

Subspace make_subspace(Category& cat, ObjectId ambient, Mat basis) {
  if (basis.rows != cat.dim(ambient))
    throw StructureError("subspace basis does not live in the ambient space");
  if (rank(basis, cat.prime()) != basis.cols)
    throw StructureError("subspace basis has dependent columns");
  cat.space(basis.cols);
  return Subspace{ambient, std::move(basis)};
}

Morphism inclusion(Category& cat, const Subspace& s) {
  return Morphism{cat.space(s.basis.cols), s.ambient, s.basis};
}

bool intersection_oracle(Category& cat, const Subspace& a, const Subspace& b) {
  if (a.ambient != b.ambient) throw DomainError("subspaces live in different ambient spaces");
  const int p = cat.prime();
  return rank(hconcat(a.basis, b.basis), p) == a.basis.cols + b.basis.cols;
}

Morphism joint_extension_by_basis(Category& cat, const Subspace& a, const Subspace& b,
                                  const Mat& alpha_a, const Mat& alpha_b) {
  if (a.ambient != b.ambient) throw DomainError("subspaces live in different ambient spaces");
  if (alpha_a.rows != a.basis.cols || alpha_a.cols != a.basis.cols ||
      alpha_b.rows != b.basis.cols || alpha_b.cols != b.basis.cols)
    throw DomainError("endomap shapes do not match the subspace dimensions");
  if (!intersection_oracle(cat, a, b))
    throw StructureError("joint extension by basis needs trivially intersecting subspaces");
  const int p = cat.prime();
  const int n = cat.dim(a.ambient);
  Mat span = hconcat(a.basis, b.basis);
  // Greedy completion by canonical coordinate vectors.
  Mat completion(n, 0);
  for (int j = 0; j < n && span.cols < n; ++j) {
    Mat e(n, 1);
    e.at(j, 0) = 1;
    if (rank(hconcat(span, e), p) > span.cols) {
      span = hconcat(span, e);
      completion = hconcat(completion, e);
    }
  }
  const auto inv = inverse(span, p);
  if (!inv) throw StructureError("completion failed to produce a basis");
  Mat images =
      hconcat(hconcat(mul(a.basis, alpha_a, p), mul(b.basis, alpha_b, p)), completion);
  return Morphism{a.ambient, a.ambient, mul(images, *inv, p)};
}

PullbackData<Category> pullback(Category& cat, const Subspace& a, const Subspace& b) {
  if (a.ambient != b.ambient) throw DomainError("subspaces live in different ambient spaces");
  const int p = cat.prime();
  // Null vectors (u; v) of [A|B] give A u = -B v, i.e. the intersection.
  const Mat null = nullspace(hconcat(a.basis, b.basis), p);
  Mat u(a.basis.cols, null.cols);
  for (int r = 0; r < u.rows; ++r)
    for (int c = 0; c < u.cols; ++c) u.at(r, c) = null.at(r, c);
  const Mat meet = column_space(mul(a.basis, u, p), p);
  const ObjectId apex = cat.space(meet.cols);
  PullbackData<Category> out;
  out.apex = apex;
  out.p_a = Morphism{apex, cat.space(a.basis.cols), solve(a.basis, meet, p)};
  out.p_b = Morphism{apex, cat.space(b.basis.cols), solve(b.basis, meet, p)};
  return out;
}

CoproductData<Category> direct_sum(Category& cat, ObjectId x1, ObjectId x2) {
  const int d1 = cat.dim(x1), d2 = cat.dim(x2);
  const ObjectId sum = cat.space(d1 + d2);
  Mat m1(d1 + d2, d1), m2(d1 + d2, d2);
  for (int i = 0; i < d1; ++i) m1.at(i, i) = 1;
  for (int i = 0; i < d2; ++i) m2.at(d1 + i, i) = 1;
  CoproductData<Category> out;
  out.x1 = x1;
  out.x2 = x2;
  out.sum = sum;
  out.i1 = Morphism{x1, sum, std::move(m1)};
  out.i2 = Morphism{x2, sum, std::move(m2)};
  out.copair = [sum, x1, x2](Category& c, const Morphism& f1, const Morphism& f2) {
    if (f1.dom != x1 || f2.dom != x2 || f1.cod != f2.cod)
      throw DomainError("copair: cospan endpoints do not match the sum");
    return Morphism{sum, f1.cod, hconcat(f1.m, f2.m)};
  };
  out.jointly_epic = [sum, d1, d2](Category& c) {
    Mat both(d1 + d2, d1 + d2);
    for (int i = 0; i < d1; ++i) both.at(i, i) = 1;
    for (int i = 0; i < d2; ++i) both.at(d1 + i, d1 + i) = 1;
    return rank(both, c.prime()) == c.dim(sum);
  };
  return out;
}

std::vector<Mat> all_subspace_bases(int n, int p) {
  std::vector<Mat> out;
  out.emplace_back(n, 0);
  for (int d = 1; d <= n; ++d) {
    // Pivot column combinations in lexicographic order.
    std::vector<int> piv(d);
    for (int i = 0; i < d; ++i) piv[i] = i;
    while (true) {
      std::vector<std::pair<int, int>> free_pos;  // (row, col) in the d x n echelon form
      std::vector<bool> is_piv(static_cast<std::size_t>(n), false);
      for (int c : piv) is_piv[static_cast<std::size_t>(c)] = true;
      for (int i = 0; i < d; ++i)
        for (int c = piv[i] + 1; c < n; ++c)
          if (!is_piv[static_cast<std::size_t>(c)]) free_pos.emplace_back(i, c);
      std::vector<std::uint8_t> fill(free_pos.size(), 0);
      while (true) {
        Mat rows(d, n);
        for (int i = 0; i < d; ++i) rows.at(i, piv[i]) = 1;
        for (std::size_t k = 0; k < free_pos.size(); ++k)
          rows.at(free_pos[k].first, free_pos[k].second) = fill[k];
        out.push_back(transpose(rows));
        int j = static_cast<int>(fill.size()) - 1;
        while (j >= 0 && ++fill[static_cast<std::size_t>(j)] == p) fill[static_cast<std::size_t>(j--)] = 0;
        if (j < 0) break;
      }
      int i = d - 1;
      while (i >= 0 && piv[i] == n - d + i) --i;
      if (i < 0) break;
      ++piv[i];
      for (int k = i + 1; k < d; ++k) piv[k] = piv[k - 1] + 1;
    }
  }
  return out;
}

}  // namespace subind::fvec
