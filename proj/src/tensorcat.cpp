#include "subind/tensorcat.hpp"

#include <algorithm>

namespace subind {

namespace {

fset::Morphism concat_tables(ObjectId dom, ObjectId cod, const std::vector<int>& head,
                             const std::vector<int>& tail, int tail_shift) {
  fset::Morphism r{dom, cod, head};
  for (int v : tail) r.table.push_back(tail_shift + v);
  return r;
}

}  // namespace

TensorStructure<fset::Category> disjoint_union_structure(fset::Category& cat) {
  TensorStructure<fset::Category> t;
  t.name = "finset disjoint union";
  t.unit = cat.add_object({});
  t.obj = [](fset::Category& c, ObjectId a, ObjectId b) { return fset::coproduct(c, a, b).sum; };
  t.inj_a = [](fset::Category& c, ObjectId a, ObjectId b) { return fset::coproduct(c, a, b).i1; };
  t.inj_b = [](fset::Category& c, ObjectId a, ObjectId b) { return fset::coproduct(c, a, b).i2; };
  t.mor = [](fset::Category& c, const fset::Morphism& m_a, const fset::Morphism& m_b) {
    const ObjectId dom = fset::coproduct(c, m_a.dom, m_b.dom).sum;
    const ObjectId cod = fset::coproduct(c, m_a.cod, m_b.cod).sum;
    const int shift = static_cast<int>(c.object(m_a.cod).labels.size());
    return concat_tables(dom, cod, m_a.table, m_b.table, shift);
  };
  t.copair = [](fset::Category& c, const fset::Morphism& f_a, const fset::Morphism& f_b) {
    if (f_a.cod != f_b.cod) throw DomainError("copair: cospan legs disagree on target");
    const ObjectId dom = fset::coproduct(c, f_a.dom, f_b.dom).sum;
    return concat_tables(dom, f_a.cod, f_a.table, f_b.table, 0);
  };
  return t;
}

TensorStructure<fset::Category> union_structure(fset::Category& cat) {
  TensorStructure<fset::Category> t;
  t.name = "finset union";
  t.unit = cat.add_object({});
  const auto union_labels = [](fset::Category& c, ObjectId a, ObjectId b) {
    std::vector<std::string> labels = c.object(a).labels;
    for (const auto& l : c.object(b).labels)
      if (std::find(labels.begin(), labels.end(), l) == labels.end()) labels.push_back(l);
    return labels;
  };
  t.obj = [union_labels](fset::Category& c, ObjectId a, ObjectId b) {
    return c.add_object(union_labels(c, a, b));
  };
  const auto label_injection = [union_labels](fset::Category& c, ObjectId a, ObjectId b,
                                              ObjectId part) {
    const auto labels = union_labels(c, a, b);
    const ObjectId sum = c.add_object(labels);
    fset::Morphism inj{part, sum, {}};
    for (const auto& l : c.object(part).labels) {
      const auto it = std::find(labels.begin(), labels.end(), l);
      inj.table.push_back(static_cast<int>(it - labels.begin()));
    }
    return inj;
  };
  t.inj_a = [label_injection](fset::Category& c, ObjectId a, ObjectId b) {
    return label_injection(c, a, b, a);
  };
  t.inj_b = [label_injection](fset::Category& c, ObjectId a, ObjectId b) {
    return label_injection(c, a, b, b);
  };
  // No morphism bifunctor: two functions have no canonical common value on
  // an overlap, and inventing one would silently change the instance.
  return t;
}

TensorStructure<fvec::Category> direct_sum_structure(fvec::Category& cat) {
  TensorStructure<fvec::Category> t;
  t.name = "finvect direct sum";
  t.unit = cat.space(0);
  t.obj = [](fvec::Category& c, ObjectId a, ObjectId b) {
    return c.space(c.dim(a) + c.dim(b));
  };
  t.inj_a = [](fvec::Category& c, ObjectId a, ObjectId b) {
    const int da = c.dim(a), db = c.dim(b);
    fvec::Mat m(da + db, da);
    for (int i = 0; i < da; ++i) m.at(i, i) = 1;
    return fvec::Morphism{a, c.space(da + db), std::move(m)};
  };
  t.inj_b = [](fvec::Category& c, ObjectId a, ObjectId b) {
    const int da = c.dim(a), db = c.dim(b);
    fvec::Mat m(da + db, db);
    for (int j = 0; j < db; ++j) m.at(da + j, j) = 1;
    return fvec::Morphism{b, c.space(da + db), std::move(m)};
  };
  t.mor = [](fvec::Category& c, const fvec::Morphism& m_a, const fvec::Morphism& m_b) {
    const int ra = m_a.m.rows, ca = m_a.m.cols;
    const int rb = m_b.m.rows, cb = m_b.m.cols;
    fvec::Mat m(ra + rb, ca + cb);
    for (int i = 0; i < ra; ++i)
      for (int j = 0; j < ca; ++j) m.at(i, j) = m_a.m.at(i, j);
    for (int i = 0; i < rb; ++i)
      for (int j = 0; j < cb; ++j) m.at(ra + i, ca + j) = m_b.m.at(i, j);
    return fvec::Morphism{c.space(ca + cb), c.space(ra + rb), std::move(m)};
  };
  t.copair = [](fvec::Category& c, const fvec::Morphism& f_a, const fvec::Morphism& f_b) {
    if (f_a.cod != f_b.cod) throw DomainError("copair: cospan legs disagree on target");
    return fvec::Morphism{c.space(f_a.m.cols + f_b.m.cols), f_a.cod,
                           fvec::hconcat(f_a.m, f_b.m)};
  };
  return t;
}

}  // namespace subind
