#include "subind/oml.hpp"

#include <algorithm>
#include <numeric>

namespace subind::oml {
namespace {

constexpr int kMaxElements = 64;

void require(bool cond, const char* msg) {
  if (!cond) throw StructureError(msg);
}

/// Extends atom images additively: f(x) = join (in dst) of the images of
/// the src atoms below x.
std::vector<int> extend_by_atoms(const Lattice& src, const Lattice& dst,
                                 const std::vector<int>& atoms, const std::vector<int>& images) {
  std::vector<int> f(static_cast<std::size_t>(src.n), dst.zero);
  for (int x = 0; x < src.n; ++x) {
    int acc = dst.zero;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (src.le(atoms[i], x)) acc = dst.join_of(acc, images[i]);
    f[static_cast<std::size_t>(x)] = acc;
  }
  return f;
}

bool preserves_structure(const Lattice& src, const Lattice& dst, const std::vector<int>& f) {
  for (int x = 0; x < src.n; ++x) {
    if (dst.ortho_of(f[static_cast<std::size_t>(x)]) !=
        f[static_cast<std::size_t>(src.ortho_of(x))])
      return false;
    for (int y = 0; y < src.n; ++y) {
      if (f[static_cast<std::size_t>(src.meet_of(x, y))] !=
          dst.meet_of(f[static_cast<std::size_t>(x)], f[static_cast<std::size_t>(y)]))
        return false;
      if (f[static_cast<std::size_t>(src.join_of(x, y))] !=
          dst.join_of(f[static_cast<std::size_t>(x)], f[static_cast<std::size_t>(y)]))
        return false;
    }
  }
  return true;
}

bool injective(const Lattice& dst, const std::vector<int>& f) {
  std::vector<bool> hit(static_cast<std::size_t>(dst.n), false);
  for (int v : f) {
    if (hit[static_cast<std::size_t>(v)]) return false;
    hit[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

}  // namespace

void validate_lattice(const Lattice& l) {
  require(l.n >= 2 && l.n <= kMaxElements, "element count out of range");
  require(l.meet.size() == static_cast<std::size_t>(l.n) * l.n &&
              l.join.size() == l.meet.size() && l.ortho.size() == static_cast<std::size_t>(l.n),
          "table sizes do not match");
  require(l.zero != l.one, "zero and one coincide");
  const auto in_range = [&](int v) { return v >= 0 && v < l.n; };
  for (int v : l.meet) require(in_range(v), "meet table leaves the element set");
  for (int v : l.join) require(in_range(v), "join table leaves the element set");
  for (int v : l.ortho) require(in_range(v), "ortho table leaves the element set");
  for (int x = 0; x < l.n; ++x) {
    require(l.meet_of(x, x) == x && l.join_of(x, x) == x, "idempotence fails");
    require(l.meet_of(x, l.zero) == l.zero && l.join_of(x, l.one) == l.one,
            "bounds are not absorbing");
    require(l.meet_of(x, l.one) == x && l.join_of(x, l.zero) == x, "bounds are not neutral");
    require(l.ortho_of(l.ortho_of(x)) == x, "orthocomplement is not involutive");
    require(l.meet_of(x, l.ortho_of(x)) == l.zero && l.join_of(x, l.ortho_of(x)) == l.one,
            "orthocomplement is not a complement");
    for (int y = 0; y < l.n; ++y) {
      require(l.meet_of(x, y) == l.meet_of(y, x) && l.join_of(x, y) == l.join_of(y, x),
              "operations are not commutative");
      require(l.meet_of(x, l.join_of(x, y)) == x && l.join_of(x, l.meet_of(x, y)) == x,
              "absorption fails");
      require((l.meet_of(x, y) == x) == (l.join_of(x, y) == y), "meet and join orders disagree");
      require(l.ortho_of(l.meet_of(x, y)) == l.join_of(l.ortho_of(x), l.ortho_of(y)),
              "De Morgan fails");
      if (l.le(x, y))
        require(l.join_of(x, l.meet_of(l.ortho_of(x), y)) == y, "orthomodular law fails");
      for (int z = 0; z < l.n; ++z) {
        require(l.meet_of(l.meet_of(x, y), z) == l.meet_of(x, l.meet_of(y, z)) &&
                    l.join_of(l.join_of(x, y), z) == l.join_of(x, l.join_of(y, z)),
                "operations are not associative");
      }
    }
  }
}

Lattice boolean_lattice(int atoms) {
  if (atoms < 1 || atoms > 6) throw DomainError("atom count out of range");
  Lattice l;
  l.n = 1 << atoms;
  const int full = l.n - 1;
  l.zero = 0;
  l.one = full;
  l.meet.resize(static_cast<std::size_t>(l.n) * l.n);
  l.join.resize(l.meet.size());
  l.ortho.resize(static_cast<std::size_t>(l.n));
  for (int x = 0; x < l.n; ++x) {
    l.ortho[static_cast<std::size_t>(x)] = full & ~x;
    for (int y = 0; y < l.n; ++y) {
      l.meet[static_cast<std::size_t>(x) * l.n + y] = x & y;
      l.join[static_cast<std::size_t>(x) * l.n + y] = x | y;
    }
  }
  return l;
}

Lattice mo(int k) {
  if (k < 1 || k > 8) throw DomainError("pair count out of range");
  Lattice l;
  l.n = 2 + 2 * k;
  l.zero = 0;
  l.one = 1;
  l.meet.assign(static_cast<std::size_t>(l.n) * l.n, 0);
  l.join.assign(static_cast<std::size_t>(l.n) * l.n, 1);
  l.ortho.resize(static_cast<std::size_t>(l.n));
  l.ortho[0] = 1;
  l.ortho[1] = 0;
  for (int j = 0; j < k; ++j) {
    l.ortho[static_cast<std::size_t>(2 + 2 * j)] = 3 + 2 * j;
    l.ortho[static_cast<std::size_t>(3 + 2 * j)] = 2 + 2 * j;
  }
  // Distinct atoms meet at 0 and join at 1; the bounds behave as bounds.
  for (int x = 0; x < l.n; ++x) {
    for (int y = 0; y < l.n; ++y) {
      auto& m = l.meet[static_cast<std::size_t>(x) * l.n + y];
      auto& j = l.join[static_cast<std::size_t>(x) * l.n + y];
      m = (x == y) ? x : (x == 0 || y == 0) ? 0 : (x == 1) ? y : (y == 1) ? x : 0;
      j = (x == y) ? x : (x == 1 || y == 1) ? 1 : (x == 0) ? y : (y == 0) ? x : 1;
    }
  }
  return l;
}

Lattice product(const Lattice& lhs, const Lattice& rhs) {
  Lattice l;
  l.n = lhs.n * rhs.n;
  if (l.n > kMaxElements) throw DomainError("product too large");
  l.zero = lhs.zero * rhs.n + rhs.zero;
  l.one = lhs.one * rhs.n + rhs.one;
  l.meet.resize(static_cast<std::size_t>(l.n) * l.n);
  l.join.resize(l.meet.size());
  l.ortho.resize(static_cast<std::size_t>(l.n));
  for (int x1 = 0; x1 < lhs.n; ++x1)
    for (int x2 = 0; x2 < rhs.n; ++x2) {
      const int x = x1 * rhs.n + x2;
      l.ortho[static_cast<std::size_t>(x)] = lhs.ortho_of(x1) * rhs.n + rhs.ortho_of(x2);
      for (int y1 = 0; y1 < lhs.n; ++y1)
        for (int y2 = 0; y2 < rhs.n; ++y2) {
          const int y = y1 * rhs.n + y2;
          l.meet[static_cast<std::size_t>(x) * l.n + y] =
              lhs.meet_of(x1, y1) * rhs.n + rhs.meet_of(x2, y2);
          l.join[static_cast<std::size_t>(x) * l.n + y] =
              lhs.join_of(x1, y1) * rhs.n + rhs.join_of(x2, y2);
        }
    }
  return l;
}

std::vector<int> atoms_of(const Lattice& l) {
  std::vector<int> out;
  for (int x = 0; x < l.n; ++x) {
    if (x == l.zero) continue;
    bool atom = true;
    for (int y = 0; y < l.n && atom; ++y)
      if (y != l.zero && y != x && l.le(y, x)) atom = false;
    if (atom) out.push_back(x);
  }
  return out;
}

bool summable(const Lattice& l, int x, int y) {
  for (int z = 0; z < l.n; ++z)
    if (l.meet_of(l.join_of(x, z), y) != l.meet_of(z, y)) return false;
  return true;
}

std::vector<std::vector<int>> automorphisms(const Lattice& l) {
  const auto atoms = atoms_of(l);
  std::vector<std::vector<int>> out;
  std::vector<int> perm(atoms.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<int> images(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i)
      images[i] = atoms[static_cast<std::size_t>(perm[i])];
    auto f = extend_by_atoms(l, l, atoms, images);
    if (injective(l, f) && preserves_structure(l, l, f)) out.push_back(std::move(f));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<std::vector<int>> ortho_embeddings(const Lattice& src, const Lattice& dst) {
  const auto atoms = atoms_of(src);
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    count *= static_cast<std::uint64_t>(dst.n);
    if (count > 2'000'000) throw EnumerationError("atom-image tuples exceed enumeration cap");
  }
  std::vector<std::vector<int>> out;
  std::vector<int> images(atoms.size(), 0);
  for (std::uint64_t i = 0; i < count; ++i) {
    auto f = extend_by_atoms(src, dst, atoms, images);
    if (injective(dst, f) && preserves_structure(src, dst, f)) out.push_back(std::move(f));
    for (int j = static_cast<int>(images.size()) - 1; j >= 0; --j) {
      if (++images[static_cast<std::size_t>(j)] < dst.n) break;
      images[static_cast<std::size_t>(j)] = 0;
    }
  }
  return out;
}

DirectSumCheck internal_direct_sum(const Lattice& l, const std::vector<int>& s,
                                   const std::vector<int>& q) {
  DirectSumCheck check;
  const auto prepare = [&](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  const auto ss = prepare(s);
  const auto qq = prepare(q);
  if (ss.empty() || qq.empty()) {
    check.detail = "empty factor";
    return check;
  }
  const auto member = [](const std::vector<int>& v, int x) {
    return std::binary_search(v.begin(), v.end(), x);
  };

  const auto top_of = [&](const std::vector<int>& v) {
    int t = l.zero;
    for (int x : v) t = l.join_of(t, x);
    return t;
  };
  const int top_s = top_of(ss), top_q = top_of(qq);
  const auto rel_ortho = [&](int x, int top) { return l.meet_of(l.ortho_of(x), top); };

  check.factors_closed = true;
  for (const auto* fac : {&ss, &qq}) {
    const int top = (fac == &ss) ? top_s : top_q;
    for (int x : *fac) {
      if (!member(*fac, rel_ortho(x, top))) check.factors_closed = false;
      for (int y : *fac)
        if (!member(*fac, l.meet_of(x, y)) || !member(*fac, l.join_of(x, y)))
          check.factors_closed = false;
    }
  }

  check.cover_ok = true;
  for (int x = 0; x < l.n && check.cover_ok; ++x) {
    bool covered = false;
    for (int a : ss) {
      for (int b : qq)
        if (l.join_of(a, b) == x) {
          covered = true;
          break;
        }
      if (covered) break;
    }
    if (!covered) {
      check.cover_ok = false;
      check.detail = "element " + std::to_string(x) + " does not split";
    }
  }

  check.summable_ok = true;
  for (int a : ss)
    for (int b : qq)
      if (!summable(l, a, b) || !summable(l, b, a)) {
        check.summable_ok = false;
        if (check.detail.empty())
          check.detail =
              "cross pair (" + std::to_string(a) + ", " + std::to_string(b) + ") not summable";
      }

  check.iso_ok = static_cast<int>(ss.size() * qq.size()) == l.n;
  if (check.iso_ok) {
    std::vector<int> seen(static_cast<std::size_t>(l.n), 0);
    for (int a : ss)
      for (int b : qq) seen[static_cast<std::size_t>(l.join_of(a, b))] += 1;
    for (int c : seen)
      if (c != 1) check.iso_ok = false;
  }
  if (check.iso_ok) {
    for (std::size_t i = 0; i < ss.size() && check.iso_ok; ++i)
      for (std::size_t j = 0; j < qq.size() && check.iso_ok; ++j) {
        const int x = l.join_of(ss[i], qq[j]);
        if (l.ortho_of(x) != l.join_of(rel_ortho(ss[i], top_s), rel_ortho(qq[j], top_q)))
          check.iso_ok = false;
        for (std::size_t i2 = 0; i2 < ss.size() && check.iso_ok; ++i2)
          for (std::size_t j2 = 0; j2 < qq.size() && check.iso_ok; ++j2) {
            const int y = l.join_of(ss[i2], qq[j2]);
            if (l.meet_of(x, y) !=
                l.join_of(l.meet_of(ss[i], ss[i2]), l.meet_of(qq[j], qq[j2])))
              check.iso_ok = false;
            if (l.join_of(x, y) !=
                l.join_of(l.join_of(ss[i], ss[i2]), l.join_of(qq[j], qq[j2])))
              check.iso_ok = false;
          }
      }
    if (!check.iso_ok && check.detail.empty())
      check.detail = "pairing is bijective but not an ortho-isomorphism";
  } else if (check.detail.empty()) {
    check.detail = "pairing is not bijective";
  }
  return check;
}

std::vector<int> joint_extension(const Lattice& l, const std::vector<int>& s,
                                 const std::vector<int>& q, const std::vector<int>& sigma_s,
                                 const std::vector<int>& sigma_q) {
  if (sigma_s.size() != s.size() || sigma_q.size() != q.size())
    throw DomainError("factor map sizes do not match the factors");
  std::vector<int> gamma(static_cast<std::size_t>(l.n), -1);
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) {
      const int x = l.join_of(s[i], q[j]);
      const int y = l.join_of(sigma_s[i], sigma_q[j]);
      if (gamma[static_cast<std::size_t>(x)] >= 0 && gamma[static_cast<std::size_t>(x)] != y)
        throw StructureError("decomposition is not bijective");
      gamma[static_cast<std::size_t>(x)] = y;
    }
  for (int v : gamma)
    if (v < 0) throw StructureError("decomposition does not cover the lattice");
  return gamma;
}

}  // namespace subind::oml
