#include "subind/pregeom.hpp"

#include <bit>
#include <utility>

namespace subind::pgeo {
namespace {

constexpr int kMaxPoints = 16;

/// Positions of set bits, ascending.
std::vector<int> bits_of(std::uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; mask; ++i, mask >>= 1)
    if (mask & 1u) out.push_back(i);
  return out;
}

}  // namespace

void validate_geometry(const Geometry& g) {
  if (g.n < 0 || g.n > kMaxPoints) throw StructureError("point count out of range");
  const std::uint32_t full = (1u << g.n) - 1u;
  if (g.cl.size() != (std::size_t{1} << g.n)) throw StructureError("closure table size mismatch");
  for (std::uint32_t m = 0; m <= full; ++m) {
    const std::uint32_t c = g.cl[m];
    if ((c & ~full) != 0) throw StructureError("closure leaves the point set");
    if ((c & m) != m) throw StructureError("closure is not extensive");
    if (g.cl[c] != c) throw StructureError("closure is not idempotent");
    for (int b = 0; b < g.n; ++b)
      if ((c & ~g.cl[m | (1u << b)]) != 0) throw StructureError("closure is not monotone");
    // Exchange: a in cl(m + b) \ cl(m) forces b in cl(m + a).
    for (int b = 0; b < g.n; ++b) {
      const std::uint32_t gained = g.cl[m | (1u << b)] & ~c;
      for (int a : bits_of(gained & ~(1u << b)))
        if ((g.cl[m | (1u << a)] & (1u << b)) == 0)
          throw StructureError("exchange axiom fails");
    }
    if (m == full) break;
  }
}

Geometry free_geometry(int n) {
  Geometry g;
  g.n = n;
  g.cl.resize(std::size_t{1} << n);
  for (std::uint32_t m = 0; m < g.cl.size(); ++m) g.cl[m] = m;
  return g;
}

Geometry free_geometry_with_loops(int n, std::uint32_t loops) {
  Geometry g = free_geometry(n);
  for (std::uint32_t m = 0; m < g.cl.size(); ++m) g.cl[m] = m | loops;
  return g;
}

Geometry uniform_geometry(int n, int r) {
  Geometry g = free_geometry(n);
  const std::uint32_t full = (1u << n) - 1u;
  for (std::uint32_t m = 0; m < g.cl.size(); ++m)
    if (std::popcount(m) >= r) g.cl[m] = full;
  return g;
}

Geometry span_geometry_f2(int dim) {
  if (dim < 1 || dim > 4) throw DomainError("span geometry supported for dimensions 1..4");
  const int n = (1 << dim) - 1;  // point i represents the vector i + 1
  Geometry g;
  g.n = n;
  g.cl.resize(std::size_t{1} << n);
  for (std::uint32_t m = 0; m < g.cl.size(); ++m) {
    // Close the chosen vectors under xor.
    std::vector<bool> in_span(std::size_t{1} << dim, false);
    in_span[0] = true;
    std::vector<int> span{0};
    for (int i : bits_of(m)) {
      const int v = i + 1;
      if (in_span[static_cast<std::size_t>(v)]) continue;
      const std::size_t count = span.size();
      for (std::size_t k = 0; k < count; ++k) {
        const int w = span[k] ^ v;
        if (!in_span[static_cast<std::size_t>(w)]) {
          in_span[static_cast<std::size_t>(w)] = true;
          span.push_back(w);
        }
      }
    }
    std::uint32_t closed = 0;
    for (int v = 1; v <= n; ++v)
      if (in_span[static_cast<std::size_t>(v)]) closed |= 1u << (v - 1);
    g.cl[m] = closed;
  }
  return g;
}

std::vector<std::uint32_t> closed_sets(const Geometry& g) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m < g.cl.size(); ++m)
    if (g.cl[m] == m) out.push_back(m);
  return out;
}

Category::Category(std::uint64_t hom_cap) : hom_cap_(hom_cap) {}

ObjectId Category::add_geometry(Geometry g) {
  validate_geometry(g);
  for (std::size_t i = 0; i < objects_.size(); ++i)
    if (objects_[i].n == g.n && objects_[i].cl == g.cl) return static_cast<ObjectId>(i);
  objects_.push_back(std::move(g));
  return static_cast<ObjectId>(objects_.size() - 1);
}

const Geometry& Category::geometry(ObjectId x) const {
  if (x < 0 || x >= object_count()) throw DomainError("unknown object id");
  return objects_[static_cast<std::size_t>(x)];
}

bool Category::is_morphism(ObjectId d, ObjectId c, const std::vector<int>& table) const {
  const Geometry& gd = geometry(d);
  const Geometry& gc = geometry(c);
  if (static_cast<int>(table.size()) != gd.n) return false;
  for (int v : table)
    if (v < 0 || v >= gc.n) return false;
  for (std::uint32_t z = 0; z < gc.cl.size(); ++z) {
    if (gc.cl[z] != z) continue;
    std::uint32_t pre = 0;
    for (int i = 0; i < gd.n; ++i)
      if (z & (1u << table[i])) pre |= 1u << i;
    if (gd.cl[pre] != pre) return false;
  }
  return true;
}

const std::vector<Category::Morphism>& Category::hom(ObjectId d, ObjectId c) {
  const auto key = std::make_pair(d, c);
  if (auto it = hom_cache_.find(key); it != hom_cache_.end()) return it->second;
  const int nd = geometry(d).n, nc = geometry(c).n;
  std::uint64_t count = 1;
  for (int i = 0; i < nd; ++i) {
    count *= static_cast<std::uint64_t>(nc);
    if (count > hom_cap_) throw EnumerationError("hom set exceeds enumeration cap");
  }
  if (nc == 0 && nd > 0) count = 0;
  std::vector<Morphism> out;
  std::vector<int> table(static_cast<std::size_t>(nd), 0);
  for (std::uint64_t i = 0; i < count; ++i) {
    if (is_morphism(d, c, table)) out.push_back(Morphism{d, c, table});
    for (int j = nd - 1; j >= 0; --j) {
      if (++table[static_cast<std::size_t>(j)] < nc) break;
      table[static_cast<std::size_t>(j)] = 0;
    }
  }
  return hom_cache_.emplace(key, std::move(out)).first->second;
}

Category::Morphism Category::compose(const Morphism& f, const Morphism& g) const {
  if (f.cod != g.dom) throw DomainError("compose: endpoints do not match");
  Morphism r{f.dom, g.cod, std::vector<int>(f.table.size())};
  for (std::size_t i = 0; i < f.table.size(); ++i)
    r.table[i] = g.table[static_cast<std::size_t>(f.table[i])];
  return r;
}

Category::Morphism Category::identity(ObjectId x) const {
  Morphism r{x, x, std::vector<int>(static_cast<std::size_t>(geometry(x).n))};
  for (std::size_t i = 0; i < r.table.size(); ++i) r.table[i] = static_cast<int>(i);
  return r;
}

bool Category::equal(const Morphism& f, const Morphism& g) const {
  return f.dom == g.dom && f.cod == g.cod && f.table == g.table;
}

std::string Category::key(const Morphism& f) const {
  std::string s;
  s.reserve(4 + 2 * f.table.size());
  for (int v : {f.dom, f.cod}) {
    s.push_back(static_cast<char>(v & 0xff));
    s.push_back(static_cast<char>((v >> 8) & 0xff));
  }
  for (int v : f.table) {
    s.push_back(static_cast<char>(v & 0xff));
    s.push_back(static_cast<char>((v >> 8) & 0xff));
  }
  return s;
}

ClosedSub closed_sub(Category& cat, ObjectId ambient, std::uint32_t mask) {
  const Geometry& g = cat.geometry(ambient);
  if (mask >= (1u << g.n)) throw DomainError("mask leaves the point set");
  if (g.cl[mask] != mask) throw StructureError("subset is not closed");
  const auto pts = bits_of(mask);
  Geometry sub;
  sub.n = static_cast<int>(pts.size());
  sub.cl.resize(std::size_t{1} << sub.n);
  for (std::uint32_t t = 0; t < sub.cl.size(); ++t) {
    std::uint32_t expanded = 0;
    for (int i = 0; i < sub.n; ++i)
      if (t & (1u << i)) expanded |= 1u << pts[static_cast<std::size_t>(i)];
    const std::uint32_t closed = g.cl[expanded] & mask;
    std::uint32_t compressed = 0;
    for (int i = 0; i < sub.n; ++i)
      if (closed & (1u << pts[static_cast<std::size_t>(i)])) compressed |= 1u << i;
    sub.cl[t] = compressed;
  }
  return ClosedSub{ambient, mask, cat.add_geometry(std::move(sub))};
}

Morphism inclusion(Category& cat, const ClosedSub& s) {
  Morphism m{s.sub, s.ambient, bits_of(s.mask)};
  return m;
}

bool meet_triviality_oracle(Category& cat, const ClosedSub& a, const ClosedSub& b) {
  if (a.ambient != b.ambient) throw DomainError("subs live in different ambient geometries");
  const Geometry& g = cat.geometry(a.ambient);
  const std::uint32_t loops = g.cl[0];
  if ((a.mask & b.mask) == loops) return true;
  return a.mask == b.mask && std::popcount(a.mask) <= 1;
}

PullbackData<Category> pullback(Category& cat, const ClosedSub& a, const ClosedSub& b) {
  if (a.ambient != b.ambient) throw DomainError("subs live in different ambient geometries");
  const std::uint32_t meet = a.mask & b.mask;  // closed: meet of closed sets
  const auto apex = closed_sub(cat, a.ambient, meet);
  const auto apts = bits_of(a.mask), bpts = bits_of(b.mask), mpts = bits_of(meet);
  PullbackData<Category> out;
  out.apex = apex.sub;
  out.p_a = Morphism{apex.sub, a.sub, {}};
  out.p_b = Morphism{apex.sub, b.sub, {}};
  for (int pt : mpts) {
    for (std::size_t i = 0; i < apts.size(); ++i)
      if (apts[i] == pt) out.p_a.table.push_back(static_cast<int>(i));
    for (std::size_t i = 0; i < bpts.size(); ++i)
      if (bpts[i] == pt) out.p_b.table.push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace subind::pgeo
