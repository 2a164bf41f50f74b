#include <string>
#include <vector>

#include "doctest.h"
#include "subind/boolalg.hpp"
#include "subind/kernel.hpp"
#include "subind/tensorcat.hpp"

using namespace subind;

namespace {

fvec::Mat mat(int rows, int cols, const std::vector<int>& entries) {
  fvec::Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m.at(i, j) = static_cast<std::uint8_t>(entries[static_cast<std::size_t>(i) * cols + j]);
  return m;
}

}  // namespace

TEST_CASE("disjoint union is a regular structure whose copair mediates") {
  fset::Category cat;
  auto t = disjoint_union_structure(cat);
  const ObjectId a = cat.add_object({"x"});
  const ObjectId b = cat.add_object({"u", "v"});

  const auto report = check_regularity(cat, t);
  CHECK(report.injections_monic);
  CHECK(report.squares_ok);
  CHECK(report.complete);
  CHECK(report.pass());
  CHECK(report.detail.empty());

  const auto i_a = t.inj_a(cat, a, b), i_b = t.inj_b(cat, a, b);
  const auto verdict = decide_tensor_independence(cat, i_a, i_b, t);
  REQUIRE(verdict.decision == Decision::Independent);
  CHECK(cat.equal(*verdict.mediator, cat.identity(t.obj(cat, a, b))));

  // Canonical injections are independent, witnessed by the tensor arrows.
  CHECK(decide_independence(cat, i_a, i_b).decision == Decision::Independent);
  for (const auto& alpha_a : cat.hom(a, a)) {
    for (const auto& alpha_b : cat.hom(b, b)) {
      const auto w = t.mor(cat, alpha_a, alpha_b);
      CHECK(cat.equal(cat.compose(i_a, w), cat.compose(alpha_a, i_a)));
      CHECK(cat.equal(cat.compose(i_b, w), cat.compose(alpha_b, i_b)));
    }
  }
}

TEST_CASE("a corrupted tensor arrow is rejected as malformed") {
  fset::Category cat;
  auto t = disjoint_union_structure(cat);
  cat.add_object({"x"});
  t.mor = [](fset::Category& c, const fset::Morphism& m_a, const fset::Morphism& m_b) {
    // Deliberately wrong: lands the two blocks in swapped positions.
    const ObjectId dom = fset::coproduct(c, m_a.dom, m_b.dom).sum;
    const ObjectId cod = fset::coproduct(c, m_a.cod, m_b.cod).sum;
    fset::Morphism r{dom, cod, {}};
    const int shift = static_cast<int>(c.object(m_a.cod).labels.size());
    for (int v : m_b.table) r.table.push_back(shift + v);
    for (int v : m_a.table) r.table.push_back(v);
    return r;
  };
  CHECK_THROWS_AS((void)check_regularity(cat, t), StructureError);
}

TEST_CASE("block matrices realize the direct-sum squares") {
  fvec::Category cat(2);
  auto t = direct_sum_structure(cat);
  const ObjectId v1 = cat.space(1);
  const ObjectId v2 = cat.space(2);

  const auto report = check_regularity(cat, t, {}, 1'000'000);
  CHECK(report.pass());
  CHECK(report.complete);

  const auto i_a = t.inj_a(cat, v1, v2), i_b = t.inj_b(cat, v1, v2);
  CHECK(decide_independence(cat, i_a, i_b).decision == Decision::Independent);

  // Disjoint subspaces of a common ambient: the copair mediates and is monic.
  const ObjectId amb = cat.space(3);
  const auto sa = fvec::make_subspace(cat, amb, mat(3, 1, {1, 0, 0}));
  const auto sb = fvec::make_subspace(cat, amb, mat(3, 2, {0, 1, 1, 0, 0, 1}));
  const auto f_a = fvec::inclusion(cat, sa), f_b = fvec::inclusion(cat, sb);
  const auto verdict = decide_tensor_independence(cat, f_a, f_b, t);
  REQUIRE(verdict.decision == Decision::Independent);
  CHECK(is_monomorphism(cat, *verdict.mediator).monic);
  CHECK(cat.equal(cat.compose(i_a, *verdict.mediator), f_a));
}

TEST_CASE("object-level union: no bifunctor, mediators decouple from independence") {
  fset::Category cat;
  auto t = union_structure(cat);
  const ObjectId amb = cat.add_object({"x", "y", "z"});
  const ObjectId a = fset::subset(cat, amb, 0b011);  // {x, y}
  const ObjectId b = fset::subset(cat, amb, 0b110);  // {y, z}

  const auto report = check_regularity(cat, t);
  CHECK(report.injections_monic);
  CHECK_FALSE(report.squares_ok);
  CHECK_FALSE(report.pass());
  CHECK(report.detail == "morphism bifunctor is undefined");

  // The union of overlapping subsets is the ambient set itself, and the
  // identity mediates, yet the pair is not independent: tensor independence
  // alone does not carry the kernel notion.
  CHECK(t.obj(cat, a, b) == amb);
  const auto f_a = fset::inclusion(cat, a, amb), f_b = fset::inclusion(cat, b, amb);
  const auto tensor = decide_tensor_independence(cat, f_a, f_b, t);
  REQUIRE(tensor.decision == Decision::Independent);
  CHECK(cat.equal(*tensor.mediator, cat.identity(amb)));
  CHECK(decide_independence(cat, f_a, f_b).decision == Decision::NotIndependent);

  // Against the disjoint-union structure the merge map mediates instead,
  // and the overlap makes every mediator non-monic.
  auto tagged = disjoint_union_structure(cat);
  const auto merged = decide_tensor_independence(cat, f_a, f_b, tagged);
  REQUIRE(merged.decision == Decision::Independent);
  CHECK_FALSE(is_monomorphism(cat, *merged.mediator).monic);

  // A cospan disagreeing on the shared label has no mediator at all.
  const auto small = fset::subset(cat, amb, 0b010);  // {y}
  fset::Morphism twist{amb, amb, {0, 1, 2}};
  fset::Morphism clash{small, amb, {0}};  // y maps to x
  const auto blocked = decide_tensor_independence(cat, twist, clash, t);
  CHECK(blocked.decision == Decision::NotIndependent);
  CHECK(blocked.stats.candidates_examined == cat.hom(t.obj(cat, amb, small), amb).size());

  SearchBudget one;
  one.max_candidates = 1;
  const auto cut = decide_tensor_independence(cat, twist, clash, t, one);
  CHECK(cut.decision == Decision::Undecided);
  CHECK(cut.stats.budget_exhausted);
}

TEST_CASE("finite sets certify as injective objects") {
  fset::Category cat;
  const ObjectId empty = cat.add_object({});
  const ObjectId one = cat.add_object({"x"});
  const ObjectId q = cat.add_object({"x", "y"});

  const auto outcome = certify_hom_injective(cat, q);
  REQUIRE(outcome.certificate.has_value());
  CHECK_FALSE(outcome.failure.has_value());
  CHECK(outcome.certificate->table.size() == 13);
  for (ObjectId a : {empty, one, q}) {
    for (const auto& m : cat.hom(a, q)) {
      if (!is_monomorphism(cat, m).monic) continue;
      for (const auto& arrow : cat.hom(a, q)) {
        const auto& j = outcome.certificate->table.at({cat.key(m), cat.key(arrow)});
        CHECK(cat.equal(cat.compose(m, j), arrow));
      }
    }
  }

  const auto vacuous = certify_hom_injective(cat, empty);
  REQUIRE(vacuous.certificate.has_value());
  CHECK(vacuous.certificate->table.size() == 1);  // only the empty identity
}

TEST_CASE("injective completion fails when all endomorphisms are invertible") {
  // With injective homomorphisms as the only morphisms, completions must be
  // automorphisms, and mismatched fiber profiles admit none.
  balg::Category cat;
  cat.algebra(2);
  const ObjectId q = cat.algebra(3);
  const auto outcome = certify_hom_injective(cat, q);
  REQUIRE(outcome.failure.has_value());
  CHECK_FALSE(outcome.certificate.has_value());
  const auto& [m, arrow] = *outcome.failure;
  CHECK(m.fiber == std::vector<int>{0, 0, 1});
  CHECK(arrow.fiber == std::vector<int>{0, 1, 1});
  for (const auto& j : cat.hom(q, q)) CHECK_FALSE(cat.equal(cat.compose(m, j), arrow));
}

TEST_CASE("the injectivity pipeline produces verified joint extensions") {
  fvec::Category cat(3);
  auto t = direct_sum_structure(cat);
  const ObjectId q = cat.space(2);
  cat.space(1);
  const auto cert_outcome = certify_hom_injective(cat, q);
  REQUIRE(cert_outcome.certificate.has_value());
  const auto& cert = *cert_outcome.certificate;

  const auto lines = fvec::all_subspace_bases(2, 3);
  std::vector<fvec::Mat> dim1;
  for (const auto& basis : lines)
    if (basis.cols == 1) dim1.push_back(basis);
  REQUIRE(dim1.size() == 4);

  for (const auto& ba : dim1) {
    for (const auto& bb : dim1) {
      const auto sa = fvec::make_subspace(cat, q, ba);
      const auto sb = fvec::make_subspace(cat, q, bb);
      const auto f_a = fvec::inclusion(cat, sa), f_b = fvec::inclusion(cat, sb);
      if (ba == bb) {
        // One shared line: the only mediator is the rank-deficient copair,
        // which no certificate entry covers.
        CHECK_THROWS_AS(
            (void)joint_extension_via_injectivity(cat, f_a, f_b, cat.identity(f_a.dom),
                                                  cat.identity(f_b.dom), t, cert),
            StructureError);
        continue;
      }
      for (const auto& alpha_a : cat.hom(f_a.dom, f_a.dom)) {
        for (const auto& alpha_b : cat.hom(f_b.dom, f_b.dom)) {
          const auto j = joint_extension_via_injectivity(cat, f_a, f_b, alpha_a, alpha_b, t, cert);
          CHECK(cat.equal(cat.compose(f_a, j), cat.compose(alpha_a, f_a)));
          CHECK(cat.equal(cat.compose(f_b, j), cat.compose(alpha_b, f_b)));
        }
      }
      CHECK(decide_independence(cat, f_a, f_b).decision == Decision::Independent);
    }
  }

  // Coordinate axes: the mediator is the identity and the extension is the
  // block diagonal of the two endomorphism matrices.
  const auto sx = fvec::make_subspace(cat, q, mat(2, 1, {1, 0}));
  const auto sy = fvec::make_subspace(cat, q, mat(2, 1, {0, 1}));
  const auto fx = fvec::inclusion(cat, sx), fy = fvec::inclusion(cat, sy);
  for (const auto& alpha_a : cat.hom(fx.dom, fx.dom)) {
    for (const auto& alpha_b : cat.hom(fy.dom, fy.dom)) {
      const auto j = joint_extension_via_injectivity(cat, fx, fy, alpha_a, alpha_b, t, cert);
      CHECK(cat.equal(j, t.mor(cat, alpha_a, alpha_b)));
    }
  }
}

TEST_CASE("the pipeline extends off the tensor image in finite sets") {
  fset::Category cat;
  auto t = disjoint_union_structure(cat);
  const ObjectId q = cat.add_object({"x", "y", "z", "w"});
  const ObjectId a = fset::subset(cat, q, 0b0011);  // {x, y}
  const ObjectId b = fset::subset(cat, q, 0b0100);  // {z}
  (void)t.obj(cat, a, b);  // certificates only cover registered objects

  const auto outcome = certify_hom_injective(cat, q, 6'000'000);
  REQUIRE(outcome.certificate.has_value());

  const auto f_a = fset::inclusion(cat, a, q), f_b = fset::inclusion(cat, b, q);
  CHECK(decide_independence(cat, f_a, f_b).decision == Decision::Independent);
  for (const auto& alpha_a : cat.hom(a, a)) {
    for (const auto& alpha_b : cat.hom(b, b)) {
      const auto j =
          joint_extension_via_injectivity(cat, f_a, f_b, alpha_a, alpha_b, t, *outcome.certificate);
      CHECK(cat.equal(cat.compose(f_a, j), cat.compose(alpha_a, f_a)));
      CHECK(cat.equal(cat.compose(f_b, j), cat.compose(alpha_b, f_b)));
    }
  }
}
