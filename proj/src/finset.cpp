#include "subind/finset.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace subind::fset {

ObjectId Category::add_object(std::vector<std::string> labels) {
  std::set<std::string> distinct(labels.begin(), labels.end());
  if (distinct.size() != labels.size())
    throw DomainError("set object: labels must be pairwise distinct");
  if (auto it = index_.find(labels); it != index_.end()) return it->second;
  const ObjectId id = static_cast<ObjectId>(objects_.size());
  index_.emplace(labels, id);
  objects_.push_back(SetObject{std::move(labels)});
  return id;
}

const SetObject& Category::object(ObjectId x) const {
  if (x < 0 || x >= static_cast<ObjectId>(objects_.size()))
    throw DomainError("set object: unknown id");
  return objects_[static_cast<std::size_t>(x)];
}

const std::vector<Morphism>& Category::hom(ObjectId d, ObjectId c) {
  const auto key = std::make_pair(d, c);
  if (auto it = hom_cache_.find(key); it != hom_cache_.end()) return it->second;
  const std::size_t nd = object(d).labels.size();
  const std::size_t nc = object(c).labels.size();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < nd; ++i) {
    count *= nc;
    if (count > hom_cap_) throw EnumerationError("set hom-set exceeds enumeration cap");
  }
  if (nc == 0 && nd > 0) count = 0;  // no map out of a nonempty set into the empty set
  std::vector<Morphism> homs;
  homs.reserve(static_cast<std::size_t>(count));
  Morphism m{d, c, std::vector<int>(nd, 0)};
  for (std::uint64_t k = 0; k < count; ++k) {
    homs.push_back(m);
    for (std::size_t i = nd; i-- > 0;) {  // advance table as a base-|cod| odometer
      if (++m.table[i] < static_cast<int>(nc)) break;
      m.table[i] = 0;
    }
  }
  return hom_cache_.emplace(key, std::move(homs)).first->second;
}

void Category::check_morphism(const Morphism& f) const {
  const auto& d = object(f.dom);
  const auto& c = object(f.cod);
  if (f.table.size() != d.labels.size()) throw DomainError("set morphism: table size mismatch");
  for (int v : f.table)
    if (v < 0 || v >= static_cast<int>(c.labels.size()))
      throw DomainError("set morphism: image out of range");
}

Morphism Category::compose(const Morphism& f, const Morphism& g) const {
  check_morphism(f);
  check_morphism(g);
  if (f.cod != g.dom) throw DomainError("set compose: codomain/domain mismatch");
  Morphism r{f.dom, g.cod, std::vector<int>(f.table.size(), 0)};
  for (std::size_t i = 0; i < f.table.size(); ++i)
    r.table[i] = g.table[static_cast<std::size_t>(f.table[i])];
  return r;
}

Morphism Category::identity(ObjectId x) const {
  Morphism r{x, x, {}};
  r.table.resize(object(x).labels.size());
  for (std::size_t i = 0; i < r.table.size(); ++i) r.table[i] = static_cast<int>(i);
  return r;
}

bool Category::equal(const Morphism& f, const Morphism& g) const {
  return f.dom == g.dom && f.cod == g.cod && f.table == g.table;
}

std::string Category::key(const Morphism& f) const {
  std::string k;
  k.reserve(2 * f.table.size() + 8);
  auto put = [&k](int v) {
    k += static_cast<char>(v & 0xff);
    k += static_cast<char>((v >> 8) & 0xff);
  };
  put(f.dom);
  put(f.cod);
  for (int v : f.table) put(v);
  return k;
}

ObjectId subset(Category& cat, ObjectId ambient, std::uint32_t mask) {
  const auto& amb = cat.object(ambient);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < amb.labels.size(); ++i)
    if (mask & (1u << i)) labels.push_back(amb.labels[i]);
  return cat.add_object(std::move(labels));
}

Morphism inclusion(Category& cat, ObjectId sub, ObjectId ambient) {
  const auto& s = cat.object(sub);
  const auto& amb = cat.object(ambient);
  Morphism r{sub, ambient, {}};
  for (const auto& label : s.labels) {
    const auto it = std::find(amb.labels.begin(), amb.labels.end(), label);
    if (it == amb.labels.end()) throw DomainError("inclusion: label missing from ambient set");
    r.table.push_back(static_cast<int>(it - amb.labels.begin()));
  }
  return r;
}

bool is_inclusion(const Category& cat, const Morphism& f) {
  const auto& d = cat.object(f.dom);
  const auto& c = cat.object(f.cod);
  if (f.table.size() != d.labels.size()) return false;
  for (std::size_t i = 0; i < f.table.size(); ++i)
    if (c.labels[static_cast<std::size_t>(f.table[i])] != d.labels[i]) return false;
  return true;
}

bool disjointness_oracle(const Category& cat, const Morphism& f_a, const Morphism& f_b) {
  if (f_a.cod != f_b.cod) throw DomainError("disjointness oracle: different ambient sets");
  if (!is_inclusion(cat, f_a) || !is_inclusion(cat, f_b))
    throw DomainError("disjointness oracle: both morphisms must be inclusions");
  const auto& a = cat.object(f_a.dom).labels;
  const auto& b = cat.object(f_b.dom).labels;
  if (a.empty() || b.empty()) return true;
  if (a.size() == 1 && b.size() == 1 && a == b) return true;
  for (const auto& x : a)
    if (std::find(b.begin(), b.end(), x) != b.end()) return false;
  return true;
}

PullbackData<Category> pullback(Category& cat, const Morphism& f_a, const Morphism& f_b) {
  if (f_a.cod != f_b.cod) throw DomainError("pullback: morphisms do not share a codomain");
  const auto& a = cat.object(f_a.dom);
  const auto& b = cat.object(f_b.dom);
  const bool inclusions = is_inclusion(cat, f_a) && is_inclusion(cat, f_b);
  std::vector<std::string> labels;
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < a.labels.size(); ++i)
    for (std::size_t j = 0; j < b.labels.size(); ++j)
      if (f_a.table[i] == f_b.table[j]) {
        pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
        labels.push_back(inclusions ? a.labels[i] : "(" + a.labels[i] + "," + b.labels[j] + ")");
      }
  PullbackData<Category> pb;
  pb.apex = cat.add_object(std::move(labels));
  pb.p_a = Morphism{pb.apex, f_a.dom, {}};
  pb.p_b = Morphism{pb.apex, f_b.dom, {}};
  for (const auto& [i, j] : pairs) {
    pb.p_a.table.push_back(i);
    pb.p_b.table.push_back(j);
  }
  return pb;
}

CoproductData<Category> coproduct(Category& cat, ObjectId x1, ObjectId x2) {
  const std::size_t n1 = cat.object(x1).labels.size();
  const std::size_t n2 = cat.object(x2).labels.size();
  std::vector<std::string> labels;
  for (const auto& l : cat.object(x1).labels) labels.push_back("1:" + l);
  for (const auto& l : cat.object(x2).labels) labels.push_back("2:" + l);
  CoproductData<Category> cop;
  cop.x1 = x1;
  cop.x2 = x2;
  cop.sum = cat.add_object(std::move(labels));  // may reallocate the registry
  cop.i1 = Morphism{x1, cop.sum, {}};
  cop.i2 = Morphism{x2, cop.sum, {}};
  for (std::size_t i = 0; i < n1; ++i) cop.i1.table.push_back(static_cast<int>(i));
  for (std::size_t j = 0; j < n2; ++j) cop.i2.table.push_back(static_cast<int>(n1 + j));
  const ObjectId sum_id = cop.sum;
  cop.copair = [sum_id](Category& c, const Morphism& m1, const Morphism& m2) {
    if (m1.cod != m2.cod) throw DomainError("copair: cospan legs disagree on target");
    (void)c;
    Morphism r{sum_id, m1.cod, {}};
    r.table = m1.table;
    r.table.insert(r.table.end(), m2.table.begin(), m2.table.end());
    return r;
  };
  cop.jointly_epic = [sum_id, x1, x2](Category& c) {
    // every element of the sum is hit by one of the injections
    return c.object(sum_id).labels.size() ==
           c.object(x1).labels.size() + c.object(x2).labels.size();
  };
  return cop;
}

}  // namespace subind::fset
