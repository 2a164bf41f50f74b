#include "doctest.h"
#include "subind/finvect.hpp"
#include "subind/kernel.hpp"

using namespace subind;
namespace fv = subind::fvec;

namespace {

fv::Mat mat(int rows, int cols, std::vector<std::uint8_t> entries) {
  fv::Mat m(rows, cols);
  m.a = std::move(entries);
  return m;
}

}  // namespace

TEST_CASE("modular matrix helpers") {
  const int p = 3;
  const auto a = mat(2, 2, {1, 2, 0, 1});
  const auto b = mat(2, 2, {2, 1, 1, 1});
  CHECK(fv::mul(a, b, p) == mat(2, 2, {1, 0, 1, 1}));

  CHECK(fv::rank(mat(3, 2, {1, 0, 0, 1, 0, 0}), 2) == 2);
  CHECK(fv::rank(mat(2, 2, {1, 1, 1, 1}), 2) == 1);
  CHECK(fv::rank(fv::Mat(3, 0), 2) == 0);

  const auto inv = fv::inverse(a, p);
  REQUIRE(inv.has_value());
  CHECK(fv::mul(a, *inv, p) == fv::identity_mat(2));
  CHECK(fv::mul(*inv, a, p) == fv::identity_mat(2));
  CHECK_FALSE(fv::inverse(mat(2, 2, {1, 1, 2, 2}), p).has_value());

  const auto sing = mat(2, 3, {1, 0, 1, 0, 1, 1});
  const auto null = fv::nullspace(sing, 2);
  REQUIRE(null.cols == 1);
  CHECK(fv::mul(sing, null, 2) == fv::Mat(2, 1));

  // Equal spans get identical canonical representatives.
  const auto span1 = fv::column_space(mat(3, 2, {1, 1, 0, 1, 0, 0}), 2);
  const auto span2 = fv::column_space(mat(3, 2, {0, 1, 1, 1, 0, 0}), 2);
  CHECK(span1 == span2);

  const auto rhs = fv::mul(a, mat(2, 1, {1, 2}), p);
  CHECK(fv::mul(a, fv::solve(a, rhs, p), p) == rhs);
  CHECK_THROWS_AS((void)fv::solve(mat(2, 1, {1, 0}), mat(2, 1, {0, 1}), p), StructureError);
}

TEST_CASE("hom-sets enumerate as base-p odometers and respect the cap") {
  fv::Category cat(2);
  const ObjectId one = cat.space(1);
  const auto& endos = cat.hom(one, one);
  REQUIRE(endos.size() == 2);
  CHECK(endos[0].m == fv::Mat(1, 1));
  CHECK(endos[1].m == mat(1, 1, {1}));

  const ObjectId two = cat.space(2);
  const auto& maps = cat.hom(one, two);
  REQUIRE(maps.size() == 4);
  CHECK(maps[1].m == mat(2, 1, {0, 1}));  // last entry fastest
  CHECK(maps[2].m == mat(2, 1, {1, 0}));

  const ObjectId zero = cat.space(0);
  CHECK(cat.hom(zero, zero).size() == 1);
  CHECK(cat.hom(two, zero).size() == 1);  // zero space is terminal here
  CHECK(cat.hom(zero, two).size() == 1);

  fv::Category tiny(2, 8);
  const ObjectId t2 = tiny.space(2);
  CHECK_THROWS_AS((void)tiny.hom(t2, t2), EnumerationError);

  CHECK_THROWS_AS(fv::Category(4), DomainError);
  CHECK_THROWS_AS(fv::Category(13), DomainError);

  fv::Category c3(3);
  const ObjectId o = c3.space(1);
  REQUIRE(c3.hom(o, o).size() == 3);
  CHECK(c3.hom(o, o)[2].m == mat(1, 1, {2}));
}

TEST_CASE("category laws hold and monos are the injective maps") {
  fv::Category cat(2);
  for (int d = 0; d <= 2; ++d) cat.space(d);
  const auto diag = validate_category(cat);
  CHECK(diag.identities_ok);
  CHECK(diag.associative);
  CHECK(diag.embeddings_closed);
  CHECK(diag.complete);

  const ObjectId one = cat.space(1), two = cat.space(2);
  const fv::Morphism incl{one, two, mat(2, 1, {1, 0})};
  CHECK(is_monomorphism(cat, incl).monic);

  const fv::Morphism zero{one, one, fv::Mat(1, 1)};
  const auto check = is_monomorphism(cat, zero);
  CHECK_FALSE(check.monic);
  REQUIRE(check.witness.has_value());
  CHECK_FALSE(cat.equal(check.witness->first, check.witness->second));
  CHECK(cat.equal(cat.compose(check.witness->first, zero),
                  cat.compose(check.witness->second, zero)));
}

TEST_CASE("subspace validation and inclusion monos") {
  fv::Category cat(2);
  const ObjectId amb = cat.space(3);
  CHECK_THROWS_AS(fv::make_subspace(cat, amb, mat(3, 2, {1, 1, 0, 0, 1, 1})), StructureError);
  CHECK_THROWS_AS(fv::make_subspace(cat, amb, mat(2, 1, {1, 0})), StructureError);

  const auto s = fv::make_subspace(cat, amb, mat(3, 2, {1, 0, 0, 1, 0, 0}));
  const auto inc = fv::inclusion(cat, s);
  CHECK(cat.dim(inc.dom) == 2);
  CHECK(inc.cod == amb);
  CHECK(is_monomorphism(cat, inc).monic);
}

TEST_CASE("trivial-intersection oracle matches the exhaustive decision (p=2, dim <= 3)") {
  for (int n = 1; n <= 3; ++n) {
    CAPTURE(n);
    fv::Category cat(2);
    for (int d = 0; d <= n; ++d) cat.space(d);
    const ObjectId amb = cat.space(n);
    const auto bases = fv::all_subspace_bases(n, 2);
    if (n == 3) REQUIRE(bases.size() == 16);

    for (const auto& ba : bases) {
      for (const auto& bb : bases) {
        const auto sa = fv::make_subspace(cat, amb, ba);
        const auto sb = fv::make_subspace(cat, amb, bb);
        const auto pair = make_mono_pair(cat, fv::inclusion(cat, sa), fv::inclusion(cat, sb));
        const auto verdict = decide_subobject_independence(cat, pair);
        REQUIRE(verdict.decision != Decision::Undecided);
        const bool expected = fv::intersection_oracle(cat, sa, sb);
        CAPTURE(ba.cols);
        CAPTURE(bb.cols);
        CHECK((verdict.decision == Decision::Independent) == expected);

        if (expected) {
          // The constructive extension agrees square-for-square.
          const auto& ea = cat.hom(pair.f_a.dom, pair.f_a.dom);
          const auto& eb = cat.hom(pair.f_b.dom, pair.f_b.dom);
          for (std::size_t i = 0; i < ea.size(); i += 3) {
            for (std::size_t j = 0; j < eb.size(); j += 3) {
              const auto gamma =
                  fv::joint_extension_by_basis(cat, sa, sb, ea[i].m, eb[j].m);
              CHECK(cat.equal(cat.compose(pair.f_a, gamma), cat.compose(ea[i], pair.f_a)));
              CHECK(cat.equal(cat.compose(pair.f_b, gamma), cat.compose(eb[j], pair.f_b)));
            }
          }
        } else {
          CHECK_THROWS_AS((void)fv::joint_extension_by_basis(
                              cat, sa, sb, fv::identity_mat(ba.cols), fv::identity_mat(bb.cols)),
                          StructureError);
        }
      }
    }
  }
}

TEST_CASE("joint extension fixes a canonical complement (p=3 spot check)") {
  fv::Category cat(3);
  const ObjectId amb = cat.space(2);
  const auto sa = fv::make_subspace(cat, amb, mat(2, 1, {1, 0}));
  const auto sb = fv::make_subspace(cat, amb, mat(2, 1, {0, 1}));
  const auto gamma = fv::joint_extension_by_basis(cat, sa, sb, mat(1, 1, {2}), mat(1, 1, {1}));
  CHECK(gamma.m == mat(2, 2, {2, 0, 0, 1}));

  // A slanted line forces a genuine change of basis.
  const auto sc = fv::make_subspace(cat, amb, mat(2, 1, {1, 1}));
  const auto gamma2 = fv::joint_extension_by_basis(cat, sa, sc, mat(1, 1, {1}), mat(1, 1, {2}));
  const auto inc_c = fv::inclusion(cat, sc);
  const fv::Morphism twice{inc_c.dom, inc_c.dom, mat(1, 1, {2})};
  CHECK(cat.equal(cat.compose(inc_c, gamma2), cat.compose(twice, inc_c)));
  CHECK(fv::mul(gamma2.m, mat(2, 1, {1, 0}), 3) == mat(2, 1, {1, 0}));
}

TEST_CASE("pullback of inclusions is the intersection subspace") {
  fv::Category cat(2);
  for (int d = 0; d <= 3; ++d) cat.space(d);
  const ObjectId amb = cat.space(3);
  const auto sa = fv::make_subspace(cat, amb, mat(3, 2, {1, 0, 0, 1, 0, 0}));
  const auto sb = fv::make_subspace(cat, amb, mat(3, 2, {0, 0, 1, 0, 0, 1}));
  const auto pb = fv::pullback(cat, sa, sb);
  CHECK(cat.dim(pb.apex) == 1);
  const auto check =
      verify_pullback(cat, fv::inclusion(cat, sa), fv::inclusion(cat, sb), pb);
  CHECK(check.cone_ok);
  CHECK(check.universal_ok);
  CHECK(check.skipped_probes.empty());

  const auto sz = fv::make_subspace(cat, amb, mat(3, 1, {1, 0, 0}));
  const auto sw = fv::make_subspace(cat, amb, mat(3, 1, {0, 1, 0}));
  const auto pb0 = fv::pullback(cat, sz, sw);
  CHECK(cat.dim(pb0.apex) == 0);
  const auto check0 =
      verify_pullback(cat, fv::inclusion(cat, sz), fv::inclusion(cat, sw), pb0);
  CHECK(check0.cone_ok);
  CHECK(check0.universal_ok);
}

TEST_CASE("compatibility through the pullback is necessary, never sufficient evidence alone") {
  fv::Category cat(2);
  for (int d = 0; d <= 2; ++d) cat.space(d);
  const ObjectId amb = cat.space(2);
  const auto bases = fv::all_subspace_bases(2, 2);
  for (const auto& ba : bases) {
    for (const auto& bb : bases) {
      const auto sa = fv::make_subspace(cat, amb, ba);
      const auto sb = fv::make_subspace(cat, amb, bb);
      const auto pb = fv::pullback(cat, sa, sb);
      const auto fa = fv::inclusion(cat, sa), fb = fv::inclusion(cat, sb);
      const auto compat = decide_compatibility(cat, fa, fb, pb);
      const auto verdict = decide_independence(cat, fa, fb);
      if (verdict.decision == Decision::Independent)
        CHECK(compat.decision == CompatDecision::Compatible);
      if (compat.decision == CompatDecision::NotCompatible)
        CHECK(verdict.decision == Decision::NotIndependent);
    }
  }
}

TEST_CASE("direct sums pass the coproduct audit") {
  fv::Category cat(2);
  for (int d = 0; d <= 2; ++d) cat.space(d);
  const auto cop = fv::direct_sum(cat, cat.space(1), cat.space(1));
  const auto audit = audit_coproduct_independence(cat, cop);
  CHECK(audit.i1_monic);
  CHECK(audit.i2_monic);
  CHECK(audit.independence.decision == Decision::Independent);
  CHECK(audit.copairs.size() == 4);
  CHECK_FALSE(audit.exhaustive_probes.empty());
  for (const auto& w : audit.copairs) {
    CHECK(cat.equal(cat.compose(cop.i1, w.extension), cat.compose(w.alpha_a, cop.i1)));
    CHECK(cat.equal(cat.compose(cop.i2, w.extension), cat.compose(w.alpha_b, cop.i2)));
  }

  fv::Category big(2);
  for (int d = 0; d <= 3; ++d) big.space(d);
  const auto cop2 = fv::direct_sum(big, big.space(1), big.space(2));
  const auto audit2 = audit_coproduct_independence(big, cop2);
  CHECK(audit2.independence.decision == Decision::Independent);
  CHECK(audit2.copairs.size() == 2 * 16);
}

TEST_CASE("re-represented subobjects get the same verdict") {
  fv::Category cat(3);
  for (int d = 0; d <= 2; ++d) cat.space(d);
  const ObjectId amb = cat.space(2);
  const auto plain = fv::make_subspace(cat, amb, mat(2, 1, {1, 0}));
  const auto scaled = fv::make_subspace(cat, amb, mat(2, 1, {2, 0}));
  const auto other = fv::make_subspace(cat, amb, mat(2, 1, {0, 1}));
  const auto f = fv::inclusion(cat, plain);
  const auto f2 = fv::inclusion(cat, scaled);  // same line, rescaled basis
  const auto g = fv::inclusion(cat, other);
  CHECK(subobject_equal(cat, f, f2).has_value());
  CHECK_FALSE(subobject_equal(cat, f, g).has_value());

  const auto v1 = decide_independence(cat, f, g);
  const auto v2 = decide_independence(cat, f2, g);
  CHECK(v1.decision == v2.decision);
  CHECK(v1.decision == Decision::Independent);
}

TEST_CASE("budgets and schedules stay honest") {
  fv::Category cat(2);
  for (int d = 0; d <= 3; ++d) cat.space(d);
  const ObjectId amb = cat.space(3);
  const auto sa = fv::make_subspace(cat, amb, mat(3, 2, {1, 0, 0, 1, 0, 0}));
  const auto sb = fv::make_subspace(cat, amb, mat(3, 2, {0, 0, 1, 0, 0, 1}));
  const auto fa = fv::inclusion(cat, sa), fb = fv::inclusion(cat, sb);

  SearchBudget tight;
  tight.max_candidates = 10;
  const auto limited = decide_independence(cat, fa, fb, tight);
  CHECK(limited.decision == Decision::Undecided);
  CHECK(limited.stats.budget_exhausted);
  CHECK(limited.stats.candidates_examined == 10);

  const auto serial = decide_independence(cat, fa, fb, SearchBudget{}, 1);
  const auto parallel = decide_independence(cat, fa, fb, SearchBudget{}, 4);
  CHECK(serial.decision == parallel.decision);
  CHECK(serial.stats.pairs_examined == parallel.stats.pairs_examined);
  CHECK(serial.stats.candidates_examined == parallel.stats.candidates_examined);
  CHECK(serial.decision == Decision::NotIndependent);
  REQUIRE(serial.counterexample.has_value());
  REQUIRE(parallel.counterexample.has_value());
  CHECK(serial.counterexample->pair_index == parallel.counterexample->pair_index);
}
