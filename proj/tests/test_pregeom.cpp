#include "doctest.h"
#include "subind/kernel.hpp"
#include "subind/pregeom.hpp"

using namespace subind;
namespace pg = subind::pgeo;

TEST_CASE("geometry constructors satisfy the axioms, broken tables do not") {
  CHECK_NOTHROW(pg::validate_geometry(pg::free_geometry(3)));
  CHECK_NOTHROW(pg::validate_geometry(pg::free_geometry_with_loops(3, 0b011)));
  CHECK_NOTHROW(pg::validate_geometry(pg::uniform_geometry(4, 2)));
  CHECK_NOTHROW(pg::validate_geometry(pg::span_geometry_f2(3)));

  auto bad = pg::free_geometry(2);
  bad.cl[0b01] = 0b10;  // not extensive
  CHECK_THROWS_AS(pg::validate_geometry(bad), StructureError);

  auto drift = pg::uniform_geometry(3, 2);
  drift.cl[0b011] = 0b011;  // closing a pair no longer reaches the third point
  CHECK_THROWS_AS(pg::validate_geometry(drift), StructureError);

  const auto span = pg::span_geometry_f2(2);
  // Points 0,1,2 are e1, e2, e1+e2; any two span everything.
  CHECK(span.n == 3);
  CHECK(span.cl[0b001] == 0b001);
  CHECK(span.cl[0b011] == 0b111);
  CHECK(pg::closed_sets(span) == std::vector<std::uint32_t>{0, 1, 2, 4, 7});
}

TEST_CASE("morphisms are exactly the continuous maps") {
  pg::Category cat;
  const ObjectId span = cat.add_geometry(pg::span_geometry_f2(2));
  const ObjectId pt = cat.add_geometry(pg::free_geometry(1));

  CHECK(cat.is_morphism(span, span, {1, 0, 2}));   // linear swap of e1, e2
  CHECK(cat.is_morphism(span, span, {0, 0, 0}));   // constant
  CHECK_FALSE(cat.is_morphism(span, span, {0, 0, 2}));  // 2-point fiber is never closed
  CHECK(cat.is_morphism(pt, span, {2}));
  CHECK(cat.is_morphism(span, pt, {0, 0, 0}));

  // Bijections plus constants: 6 + 3.
  CHECK(cat.hom(span, span).size() == 9);

  const auto diag = validate_category(cat);
  CHECK(diag.identities_ok);
  CHECK(diag.associative);
  CHECK(diag.embeddings_closed);
}

TEST_CASE("closed subs induce geometries and monic inclusions") {
  pg::Category cat;
  const ObjectId amb = cat.add_geometry(pg::span_geometry_f2(2));
  CHECK_THROWS_AS(pg::closed_sub(cat, amb, 0b011), StructureError);  // not closed
  CHECK_THROWS_AS(pg::closed_sub(cat, amb, 0b11111), DomainError);

  const auto line = pg::closed_sub(cat, amb, 0b111);
  CHECK(cat.geometry(line.sub).n == 3);
  const auto point = pg::closed_sub(cat, amb, 0b100);
  CHECK(cat.geometry(point.sub).n == 1);
  CHECK(is_monomorphism(cat, pg::inclusion(cat, point)).monic);
  CHECK(is_monomorphism(cat, pg::inclusion(cat, line)).monic);

  // Loops survive into the induced closure.
  pg::Category loopy;
  const ObjectId l = loopy.add_geometry(pg::free_geometry_with_loops(3, 0b011));
  const auto all = pg::closed_sub(loopy, l, 0b111);
  CHECK(all.sub == l);  // structural dedup: the induced geometry is the ambient one
  const auto just_loops = pg::closed_sub(loopy, l, 0b011);
  CHECK(loopy.geometry(just_loops.sub).cl[0] == 0b11);
  CHECK(loopy.hom(just_loops.sub, just_loops.sub).size() == 4);  // every self-map
}

TEST_CASE("oracle matches brute force on the bundled corpus") {
  pg::Category cat;
  const std::vector<ObjectId> corpus = {
      cat.add_geometry(pg::free_geometry(2)),
      cat.add_geometry(pg::free_geometry(3)),
      cat.add_geometry(pg::span_geometry_f2(2)),
      cat.add_geometry(pg::uniform_geometry(4, 2)),
  };
  for (ObjectId amb : corpus) {
    CAPTURE(amb);
    const auto closed = pg::closed_sets(cat.geometry(amb));
    for (auto ma : closed) {
      for (auto mb : closed) {
        CAPTURE(ma);
        CAPTURE(mb);
        const auto sa = pg::closed_sub(cat, amb, ma);
        const auto sb = pg::closed_sub(cat, amb, mb);
        const auto pair = make_mono_pair(cat, pg::inclusion(cat, sa), pg::inclusion(cat, sb));
        const auto verdict = decide_subobject_independence(cat, pair);
        REQUIRE(verdict.decision != Decision::Undecided);
        CHECK((verdict.decision == Decision::Independent) ==
              pg::meet_triviality_oracle(cat, sa, sb));
      }
    }
  }
}

TEST_CASE("trivial meets stop certifying independence outside the corpus") {
  SUBCASE("two loops break the claim") {
    pg::Category cat;
    const ObjectId amb = cat.add_geometry(pg::free_geometry_with_loops(3, 0b011));
    const auto sa = pg::closed_sub(cat, amb, 0b011);  // exactly the loops
    const auto sb = pg::closed_sub(cat, amb, 0b111);
    CHECK(pg::meet_triviality_oracle(cat, sa, sb));
    const auto verdict =
        decide_independence(cat, pg::inclusion(cat, sa), pg::inclusion(cat, sb));
    CHECK(verdict.decision == Decision::NotIndependent);
    REQUIRE(verdict.counterexample.has_value());
    // The clash: a loop swap on the small sub against the identity upstairs.
    const auto& cx = *verdict.counterexample;
    CHECK_FALSE(cat.equal(cx.alpha_a, cat.identity(sa.sub)));
  }

  SUBCASE("rank 3: a line and an outside point") {
    pg::Category cat;
    const ObjectId amb = cat.add_geometry(pg::span_geometry_f2(3));
    // Points are nonzero vectors v at bit v-1: the line through e1, e2 is
    // {1, 2, 3}, the point e3 is vector 4.
    const auto line = pg::closed_sub(cat, amb, 0b0000111);
    const auto pt = pg::closed_sub(cat, amb, 0b0001000);
    CHECK(pg::meet_triviality_oracle(cat, line, pt));
    const auto verdict =
        decide_independence(cat, pg::inclusion(cat, line), pg::inclusion(cat, pt));
    CHECK(verdict.decision == Decision::NotIndependent);
    REQUIRE(verdict.counterexample.has_value());
    // Sound: rescan every ambient endomorphism against the reported pair.
    const auto& cx = *verdict.counterexample;
    const auto fa = pg::inclusion(cat, line), fb = pg::inclusion(cat, pt);
    for (const auto& gamma : cat.hom(amb, amb)) {
      const bool left = cat.equal(cat.compose(fa, gamma), cat.compose(cx.alpha_a, fa));
      const bool right = cat.equal(cat.compose(fb, gamma), cat.compose(cx.alpha_b, fb));
      CHECK_FALSE((left && right));
    }
  }
}

TEST_CASE("pullbacks of closed subs are the meets") {
  pg::Category cat;
  const ObjectId amb = cat.add_geometry(pg::span_geometry_f2(2));
  const auto sa = pg::closed_sub(cat, amb, 0b111);
  const auto sb = pg::closed_sub(cat, amb, 0b100);
  const auto pb = pg::pullback(cat, sa, sb);
  CHECK(cat.geometry(pb.apex).n == 1);
  const auto check = verify_pullback(cat, pg::inclusion(cat, sa), pg::inclusion(cat, sb), pb);
  CHECK(check.cone_ok);
  CHECK(check.universal_ok);

  const auto compat =
      decide_compatibility(cat, pg::inclusion(cat, sa), pg::inclusion(cat, sb), pb);
  const auto verdict = decide_independence(cat, pg::inclusion(cat, sa), pg::inclusion(cat, sb));
  if (verdict.decision == Decision::Independent)
    CHECK(compat.decision == CompatDecision::Compatible);
}
