#include "doctest.h"
#include "subind/finset.hpp"
#include "subind/kernel.hpp"

using namespace subind;
namespace fs = subind::fset;

TEST_CASE("hom-sets enumerate lexicographically and respect the cap") {
  fs::Category cat;
  ObjectId two = cat.add_object({"a", "b"});
  const auto& endos = cat.hom(two, two);
  REQUIRE(endos.size() == 4);
  CHECK(endos[0].table == std::vector<int>{0, 0});
  CHECK(endos[1].table == std::vector<int>{0, 1});
  CHECK(endos[2].table == std::vector<int>{1, 0});
  CHECK(endos[3].table == std::vector<int>{1, 1});

  fs::Category tiny(8);
  ObjectId big = tiny.add_object({"1", "2", "3", "4"});
  CHECK_THROWS_AS((void)tiny.hom(big, big), EnumerationError);
}

TEST_CASE("maps into the empty set exist only from the empty set") {
  fs::Category cat;
  ObjectId e = cat.add_object({});
  ObjectId one = cat.add_object({"1"});
  CHECK(cat.hom(e, e).size() == 1);
  CHECK(cat.hom(one, e).empty());
  CHECK(cat.hom(e, one).size() == 1);
}

TEST_CASE("oracle clauses: disjoint, shared singleton, empty side") {
  fs::Category cat;
  ObjectId c = cat.add_object({"1", "2", "3"});
  auto inc = [&](std::uint32_t m) { return fs::inclusion(cat, fs::subset(cat, c, m), c); };
  CHECK(fs::disjointness_oracle(cat, inc(0b011), inc(0b100)));
  CHECK_FALSE(fs::disjointness_oracle(cat, inc(0b011), inc(0b110)));
  CHECK(fs::disjointness_oracle(cat, inc(0b001), inc(0b001)));   // same singleton
  CHECK_FALSE(fs::disjointness_oracle(cat, inc(0b001), inc(0b011)));
  CHECK(fs::disjointness_oracle(cat, inc(0b000), inc(0b111)));   // empty side
  fs::Morphism not_incl{fs::subset(cat, c, 0b001), c, {2}};
  CHECK_THROWS_AS((void)fs::disjointness_oracle(cat, not_incl, inc(0b001)), DomainError);
}

TEST_CASE("oracle matches the exhaustive decision on every pair, |C| <= 3") {
  for (int n = 0; n <= 3; ++n) {
    fs::Category cat;
    std::vector<std::string> labels;
    for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
    ObjectId c = cat.add_object(labels);
    const std::uint32_t limit = 1u << n;
    for (std::uint32_t ma = 0; ma < limit; ++ma) {
      for (std::uint32_t mb = 0; mb < limit; ++mb) {
        auto fa = fs::inclusion(cat, fs::subset(cat, c, ma), c);
        auto fb = fs::inclusion(cat, fs::subset(cat, c, mb), c);
        const bool predicted = fs::disjointness_oracle(cat, fa, fb);
        auto v = decide_independence(cat, fa, fb);
        REQUIRE(v.decision != Decision::Undecided);
        CHECK(predicted == (v.decision == Decision::Independent));
        // compatibility coincides with the oracle for inclusions
        auto pb = fs::pullback(cat, fa, fb);
        auto compat = decide_compatibility(cat, fa, fb, pb);
        CHECK(predicted == (compat.decision == CompatDecision::Compatible));
      }
    }
  }
}

TEST_CASE("pullback doubles as intersection only for inclusions") {
  fs::Category cat;
  ObjectId c = cat.add_object({"1"});
  ObjectId a = cat.add_object({"x", "y"});
  fs::Morphism f{a, c, {0, 0}};
  auto pb = fs::pullback(cat, f, f);
  CHECK(cat.object(pb.apex).labels.size() == 4);  // all pairs agree on the point
  auto check = verify_pullback(cat, f, f, pb);
  CHECK(check.cone_ok);
  CHECK(check.universal_ok);
}

TEST_CASE("coproduct copair hits an external target") {
  fs::Category cat;
  ObjectId x1 = cat.add_object({"1"});
  ObjectId x2 = cat.add_object({"2"});
  ObjectId t = cat.add_object({"5"});
  auto cop = fs::coproduct(cat, x1, x2);
  fs::Morphism m1{x1, t, {0}};
  fs::Morphism m2{x2, t, {0}};
  auto med = cop.copair(cat, m1, m2);
  CHECK(med.dom == cop.sum);
  CHECK(med.table == std::vector<int>{0, 0});
  auto audit = audit_coproduct_independence(cat, cop);
  CHECK(audit.independence.decision == Decision::Independent);
  // the external target was swept exhaustively
  bool swept = false;
  for (ObjectId q : audit.exhaustive_probes) swept |= (q == t);
  CHECK(swept);
}

TEST_CASE("injections of a disjoint union need not be split but are monic") {
  fs::Category cat;
  ObjectId x1 = cat.add_object({"1", "2", "3"});
  ObjectId x2 = cat.add_object({"4", "5"});
  auto cop = fs::coproduct(cat, x1, x2);
  CHECK(is_monomorphism(cat, cop.i1).monic);
  CHECK(is_monomorphism(cat, cop.i2).monic);
  auto audit = audit_coproduct_independence(cat, cop);
  CHECK(audit.independence.decision == Decision::Independent);
  CHECK(audit.copairs.size() == 27 * 4);
}
