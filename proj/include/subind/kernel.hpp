#pragma once

#include <concepts>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "subind/common.hpp"

// Generic decision procedures over finite categories.
//
// A category instance owns a registry of objects and materializes each
// hom-set as a vector in a fixed canonical order; every algorithm below
// quantifies over those vectors, so verdicts, witnesses and counterexamples
// are deterministic functions of the registry alone. Composition is written
// diagrammatically: compose(f, g) is "f followed by g".
//
// Each category flags a wide subcategory of "embeddings" (it contains all
// identities and is closed under composition); subobjects are equivalence
// classes of monic embeddings under mutually inverse embedding
// isomorphisms. Independence of two morphisms with a common codomain asks
// for a joint extension: every pair of endomorphisms of the two domains
// must be realized by one endomorphism of the codomain.

namespace subind {

template <typename C>
concept Category = requires(C& cat, ObjectId x, const typename C::Morphism& f) {
  typename C::Morphism;
  { cat.object_count() } -> std::convertible_to<int>;
  { cat.hom(x, x) } -> std::convertible_to<const std::vector<typename C::Morphism>&>;
  { cat.compose(f, f) } -> std::same_as<typename C::Morphism>;
  { cat.identity(x) } -> std::same_as<typename C::Morphism>;
  { cat.dom(f) } -> std::convertible_to<ObjectId>;
  { cat.cod(f) } -> std::convertible_to<ObjectId>;
  { cat.in_embeddings(f) } -> std::convertible_to<bool>;
  { cat.equal(f, f) } -> std::convertible_to<bool>;
  { cat.key(f) } -> std::convertible_to<std::string>;
};

namespace detail {

// Runs eval(k) for k in [0, n) on up to `jobs` threads and stores the results
// in order. Results depend only on eval, never on the schedule.
template <typename R, typename F>
void indexed_map(std::uint64_t n, int jobs, std::vector<R>& out, F&& eval) {
  out.resize(static_cast<std::size_t>(n));
  if (jobs <= 1 || n < 2) {
    for (std::uint64_t k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = eval(k);
    return;
  }
  const std::uint64_t workers = std::min<std::uint64_t>(static_cast<std::uint64_t>(jobs), n);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (std::uint64_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::uint64_t k = w; k < n; k += workers) out[static_cast<std::size_t>(k)] = eval(k);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace detail

template <Category C>
struct WitnessEntry {
  typename C::Morphism alpha_a, alpha_b, extension;
};

template <Category C>
struct PairCounterexample {
  typename C::Morphism alpha_a, alpha_b;
  std::uint64_t pair_index = 0;  // position in the canonical End(A) x End(B) order
};

template <Category C>
struct IndependenceVerdict {
  Decision decision = Decision::Undecided;
  std::vector<WitnessEntry<C>> witnesses;               // full table iff Independent
  std::optional<PairCounterexample<C>> counterexample;  // iff NotIndependent
  SearchStats stats;
};

/// Decides joint extendability for two morphisms with a common codomain by
/// exhausting endomorphism pairs in canonical order and scanning End(cod)
/// for each. The first failing pair (if any) is the reported counterexample
/// regardless of `jobs`.
template <Category C>
IndependenceVerdict<C> decide_independence(C& cat, const typename C::Morphism& f_a,
                                           const typename C::Morphism& f_b,
                                           const SearchBudget& budget = {}, int jobs = 1) {
  if (cat.cod(f_a) != cat.cod(f_b))
    throw DomainError("decide_independence: morphisms do not share a codomain");
  const ObjectId a = cat.dom(f_a), b = cat.dom(f_b), x = cat.cod(f_a);
  const auto& end_a = cat.hom(a, a);
  const auto& end_b = cat.hom(b, b);
  const auto& end_x = cat.hom(x, x);

  struct Outcome {
    std::int64_t found = -1;
    std::uint64_t scanned = 0;
  };
  auto eval = [&](std::uint64_t k) {
    const auto& alpha_a = end_a[static_cast<std::size_t>(k / end_b.size())];
    const auto& alpha_b = end_b[static_cast<std::size_t>(k % end_b.size())];
    const auto rhs_a = cat.compose(alpha_a, f_a);
    const auto rhs_b = cat.compose(alpha_b, f_b);
    Outcome o;
    for (std::size_t i = 0; i < end_x.size(); ++i) {
      ++o.scanned;
      if (cat.equal(cat.compose(f_a, end_x[i]), rhs_a) &&
          cat.equal(cat.compose(f_b, end_x[i]), rhs_b)) {
        o.found = static_cast<std::int64_t>(i);
        break;
      }
    }
    return o;
  };

  IndependenceVerdict<C> v;
  const std::uint64_t total = static_cast<std::uint64_t>(end_a.size()) * end_b.size();
  v.witnesses.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(total, 1 << 16)));
  const std::uint64_t window = static_cast<std::uint64_t>(std::max(jobs, 1)) * 32;
  std::vector<Outcome> results;
  for (std::uint64_t base = 0; base < total; base += window) {
    const std::uint64_t n = std::min(window, total - base);
    detail::indexed_map(n, jobs, results, [&](std::uint64_t t) { return eval(base + t); });
    for (std::uint64_t t = 0; t < n; ++t) {
      const std::uint64_t k = base + t;
      if (v.stats.pairs_examined >= budget.max_pairs) {
        v.stats.budget_exhausted = true;
        v.decision = Decision::Undecided;
        v.witnesses.clear();
        return v;
      }
      const Outcome& o = results[static_cast<std::size_t>(t)];
      const std::uint64_t remaining = budget.max_candidates - v.stats.candidates_examined;
      if (o.scanned > remaining) {
        v.stats.candidates_examined = budget.max_candidates;
        v.stats.budget_exhausted = true;
        v.decision = Decision::Undecided;
        v.witnesses.clear();
        return v;
      }
      ++v.stats.pairs_examined;
      v.stats.candidates_examined += o.scanned;
      const auto& alpha_a = end_a[static_cast<std::size_t>(k / end_b.size())];
      const auto& alpha_b = end_b[static_cast<std::size_t>(k % end_b.size())];
      if (o.found >= 0) {
        v.witnesses.push_back({alpha_a, alpha_b, end_x[static_cast<std::size_t>(o.found)]});
      } else {
        v.decision = Decision::NotIndependent;
        v.counterexample = PairCounterexample<C>{alpha_a, alpha_b, k};
        v.witnesses.clear();
        return v;
      }
    }
  }
  v.decision = Decision::Independent;
  return v;
}

template <Category C>
struct MonoCheck {
  bool monic = true;
  ObjectId probe = -1;
  std::optional<std::pair<typename C::Morphism, typename C::Morphism>> witness;
};

/// Monomorphism test by quantification over every registered probe object:
/// distinct parallel arrows into dom(f) must stay distinct after f.
template <Category C>
MonoCheck<C> is_monomorphism(C& cat, const typename C::Morphism& f) {
  MonoCheck<C> r;
  for (ObjectId p = 0; p < cat.object_count(); ++p) {
    const auto& probes = cat.hom(p, cat.dom(f));
    std::map<std::string, std::size_t> seen;
    for (std::size_t i = 0; i < probes.size(); ++i) {
      const auto composite = cat.compose(probes[i], f);
      auto [it, inserted] = seen.emplace(cat.key(composite), i);
      if (!inserted) {
        r.monic = false;
        r.probe = p;
        r.witness = std::make_pair(probes[it->second], probes[i]);
        return r;
      }
    }
  }
  return r;
}

template <Category C>
struct SubobjectIso {
  typename C::Morphism iso, inverse;
};

/// Enumerates mutually inverse embedding pairs d -> a.
template <Category C>
std::vector<SubobjectIso<C>> enumerate_isos(C& cat, ObjectId d, ObjectId a) {
  std::vector<SubobjectIso<C>> out;
  const auto& fwd = cat.hom(d, a);
  const auto& bwd = cat.hom(a, d);
  const auto id_d = cat.identity(d);
  const auto id_a = cat.identity(a);
  for (const auto& h : fwd) {
    if (!cat.in_embeddings(h)) continue;
    for (const auto& g : bwd) {
      if (!cat.in_embeddings(g)) continue;
      if (cat.equal(cat.compose(h, g), id_d) && cat.equal(cat.compose(g, h), id_a)) {
        out.push_back({h, g});
        break;  // a morphism has at most one two-sided inverse
      }
    }
  }
  return out;
}

/// Two monic embeddings with a common codomain present the same subobject
/// when an embedding isomorphism h satisfies h;g = f and h^-1;f = g.
template <Category C>
std::optional<SubobjectIso<C>> subobject_equal(C& cat, const typename C::Morphism& f,
                                               const typename C::Morphism& g) {
  if (cat.cod(f) != cat.cod(g))
    throw DomainError("subobject_equal: morphisms do not share a codomain");
  const auto id_f = cat.identity(cat.dom(f));
  const auto id_g = cat.identity(cat.dom(g));
  for (const auto& h : cat.hom(cat.dom(f), cat.dom(g))) {
    if (!cat.in_embeddings(h)) continue;
    if (!cat.equal(cat.compose(h, g), f)) continue;
    for (const auto& hi : cat.hom(cat.dom(g), cat.dom(f))) {
      if (!cat.in_embeddings(hi)) continue;
      if (cat.equal(cat.compose(h, hi), id_f) && cat.equal(cat.compose(hi, h), id_g) &&
          cat.equal(cat.compose(hi, f), g)) {
        return SubobjectIso<C>{h, hi};
      }
    }
  }
  return std::nullopt;
}

/// A validated pair of monic embeddings into a common object.
template <Category C>
struct MonoPair {
  typename C::Morphism f_a, f_b;
};

template <Category C>
MonoPair<C> make_mono_pair(C& cat, const typename C::Morphism& f_a,
                           const typename C::Morphism& f_b) {
  if (cat.cod(f_a) != cat.cod(f_b))
    throw DomainError("mono pair: morphisms do not share a codomain");
  if (!cat.in_embeddings(f_a) || !cat.in_embeddings(f_b))
    throw DomainError("mono pair: both morphisms must be embeddings");
  if (!is_monomorphism(cat, f_a).monic) throw DomainError("mono pair: left morphism is not monic");
  if (!is_monomorphism(cat, f_b).monic) throw DomainError("mono pair: right morphism is not monic");
  return MonoPair<C>{f_a, f_b};
}

/// Subobject-level decision: delegates to the chosen representatives. The
/// verdict does not depend on the choice (see the representative-invariance
/// suite check).
template <Category C>
IndependenceVerdict<C> decide_subobject_independence(C& cat, const MonoPair<C>& pair,
                                                     const SearchBudget& budget = {},
                                                     int jobs = 1) {
  return decide_independence(cat, pair.f_a, pair.f_b, budget, jobs);
}

template <Category C>
struct PullbackData {
  ObjectId apex = -1;
  typename C::Morphism p_a, p_b;
};

template <Category C>
struct PullbackCheck {
  bool cone_ok = false;
  bool universal_ok = false;
  std::vector<ObjectId> skipped_probes;  // probes beyond the enumeration cap
  std::string detail;
};

/// Verifies pullback data against the two morphisms: the cone commutes and,
/// for every registered probe within the cap, each commuting cone factors
/// uniquely through the apex.
template <Category C>
PullbackCheck<C> verify_pullback(C& cat, const typename C::Morphism& f_a,
                                 const typename C::Morphism& f_b, const PullbackData<C>& pb,
                                 std::uint64_t cap = 2'000'000) {
  PullbackCheck<C> r;
  if (cat.dom(pb.p_a) != pb.apex || cat.dom(pb.p_b) != pb.apex ||
      cat.cod(pb.p_a) != cat.dom(f_a) || cat.cod(pb.p_b) != cat.dom(f_b)) {
    r.detail = "projection endpoints do not match";
    return r;
  }
  if (!cat.equal(cat.compose(pb.p_a, f_a), cat.compose(pb.p_b, f_b))) {
    r.detail = "apex cone does not commute";
    return r;
  }
  r.cone_ok = true;
  r.universal_ok = true;
  for (ObjectId q = 0; q < cat.object_count(); ++q) {
    const auto& to_a = cat.hom(q, cat.dom(f_a));
    const auto& to_b = cat.hom(q, cat.dom(f_b));
    const auto& to_apex = cat.hom(q, pb.apex);
    const std::uint64_t cost = static_cast<std::uint64_t>(to_a.size()) * to_b.size() *
                               (1 + static_cast<std::uint64_t>(to_apex.size()));
    if (cost > cap) {
      r.skipped_probes.push_back(q);
      continue;
    }
    for (const auto& q_a : to_a) {
      const auto via_a = cat.compose(q_a, f_a);
      for (const auto& q_b : to_b) {
        if (!cat.equal(via_a, cat.compose(q_b, f_b))) continue;
        int mediators = 0;
        for (const auto& u : to_apex) {
          if (cat.equal(cat.compose(u, pb.p_a), q_a) && cat.equal(cat.compose(u, pb.p_b), q_b))
            ++mediators;
        }
        if (mediators != 1) {
          r.universal_ok = false;
          r.detail = mediators == 0 ? "a cone does not factor through the apex"
                                    : "a cone factors non-uniquely through the apex";
          return r;
        }
      }
    }
  }
  return r;
}

enum class CompatDecision { Compatible, NotCompatible, Undecided };

inline const char* to_string(CompatDecision d) {
  switch (d) {
    case CompatDecision::Compatible: return "compatible";
    case CompatDecision::NotCompatible: return "not-compatible";
    default: return "undecided";
  }
}

template <Category C>
struct CompatibilityVerdict {
  CompatDecision decision = CompatDecision::Undecided;
  std::optional<std::pair<typename C::Morphism, typename C::Morphism>> violation;
  SearchStats stats;
};

/// Necessary condition for independence: after pulling back along the apex,
/// every endomorphism pair must agree. The first violating pair in canonical
/// order is reported.
template <Category C>
CompatibilityVerdict<C> decide_compatibility(C& cat, const typename C::Morphism& f_a,
                                             const typename C::Morphism& f_b,
                                             const PullbackData<C>& pb,
                                             const SearchBudget& budget = {}) {
  if (cat.cod(f_a) != cat.cod(f_b))
    throw DomainError("decide_compatibility: morphisms do not share a codomain");
  CompatibilityVerdict<C> v;
  const auto& end_a = cat.hom(cat.dom(f_a), cat.dom(f_a));
  const auto& end_b = cat.hom(cat.dom(f_b), cat.dom(f_b));
  for (const auto& alpha_a : end_a) {
    const auto left = cat.compose(pb.p_a, cat.compose(alpha_a, f_a));
    for (const auto& alpha_b : end_b) {
      if (v.stats.pairs_examined >= budget.max_pairs) {
        v.stats.budget_exhausted = true;
        return v;
      }
      ++v.stats.pairs_examined;
      if (!cat.equal(left, cat.compose(pb.p_b, cat.compose(alpha_b, f_b)))) {
        v.decision = CompatDecision::NotCompatible;
        v.violation = std::make_pair(alpha_a, alpha_b);
        return v;
      }
    }
  }
  v.decision = CompatDecision::Compatible;
  return v;
}

/// Pullback-free variant: quantifies over every registered probe and every
/// commuting cone out of it instead of a chosen apex. Interchangeable with
/// decide_compatibility when a pullback exists.
template <Category C>
CompatibilityVerdict<C> decide_relaxed_compatibility(C& cat, const typename C::Morphism& f_a,
                                                     const typename C::Morphism& f_b,
                                                     const SearchBudget& budget = {}) {
  if (cat.cod(f_a) != cat.cod(f_b))
    throw DomainError("decide_relaxed_compatibility: morphisms do not share a codomain");
  CompatibilityVerdict<C> v;
  const auto& end_a = cat.hom(cat.dom(f_a), cat.dom(f_a));
  const auto& end_b = cat.hom(cat.dom(f_b), cat.dom(f_b));
  for (ObjectId y = 0; y < cat.object_count(); ++y) {
    const auto& to_a = cat.hom(y, cat.dom(f_a));
    const auto& to_b = cat.hom(y, cat.dom(f_b));
    for (const auto& y_a : to_a) {
      const auto cone_a = cat.compose(y_a, f_a);
      for (const auto& y_b : to_b) {
        if (!cat.equal(cone_a, cat.compose(y_b, f_b))) continue;
        for (const auto& alpha_a : end_a) {
          const auto left = cat.compose(y_a, cat.compose(alpha_a, f_a));
          for (const auto& alpha_b : end_b) {
            if (v.stats.pairs_examined >= budget.max_pairs) {
              v.stats.budget_exhausted = true;
              return v;
            }
            ++v.stats.pairs_examined;
            if (!cat.equal(left, cat.compose(y_b, cat.compose(alpha_b, f_b)))) {
              v.decision = CompatDecision::NotCompatible;
              v.violation = std::make_pair(alpha_a, alpha_b);
              return v;
            }
          }
        }
      }
    }
  }
  v.decision = CompatDecision::Compatible;
  return v;
}

/// Coproduct presentation of an object: two injections plus a constructive
/// mediating-map builder for cospans and a joint-epimorphism oracle that
/// certifies mediating maps are unique.
template <Category C>
struct CoproductData {
  ObjectId x1 = -1, x2 = -1, sum = -1;
  typename C::Morphism i1, i2;
  std::function<typename C::Morphism(C&, const typename C::Morphism&, const typename C::Morphism&)>
      copair;
  std::function<bool(C&)> jointly_epic;
};

template <Category C>
struct CoproductAudit {
  std::vector<ObjectId> exhaustive_probes;   // universal property swept in full
  std::vector<ObjectId> constructive_probes; // copair verified, uniqueness by joint epi
  bool i1_monic = false, i2_monic = false;
  IndependenceVerdict<C> independence;
  std::vector<WitnessEntry<C>> copairs;  // (m1, m2) |-> mediating endomorphism of the sum
};

/// Validates the universal property of the claimed coproduct (throwing on
/// failure), decides independence of the injections, and records the
/// mediating endomorphism for every component-endomorphism cospan.
template <Category C>
CoproductAudit<C> audit_coproduct_independence(C& cat, const CoproductData<C>& cop,
                                               const SearchBudget& budget = {}, int jobs = 1,
                                               std::uint64_t cap = 2'000'000) {
  if (cat.dom(cop.i1) != cop.x1 || cat.dom(cop.i2) != cop.x2 || cat.cod(cop.i1) != cop.sum ||
      cat.cod(cop.i2) != cop.sum)
    throw DomainError("coproduct audit: injection endpoints do not match");
  CoproductAudit<C> audit;

  bool joint_epi_checked = false;
  for (ObjectId t = 0; t < cat.object_count(); ++t) {
    const auto& from_1 = cat.hom(cop.x1, t);
    const auto& from_2 = cat.hom(cop.x2, t);
    const auto& from_sum = cat.hom(cop.sum, t);
    const std::uint64_t cost = static_cast<std::uint64_t>(from_1.size()) * from_2.size() *
                               (1 + static_cast<std::uint64_t>(from_sum.size()));
    if (cost <= cap) {
      for (const auto& m1 : from_1) {
        for (const auto& m2 : from_2) {
          const auto med = cop.copair(cat, m1, m2);
          if (!cat.equal(cat.compose(cop.i1, med), m1) ||
              !cat.equal(cat.compose(cop.i2, med), m2))
            throw StructureError("invalid coproduct: mediating map misses a cospan");
          int count = 0;
          for (const auto& u : from_sum) {
            if (cat.equal(cat.compose(cop.i1, u), m1) && cat.equal(cat.compose(cop.i2, u), m2))
              ++count;
          }
          if (count != 1)
            throw StructureError("invalid coproduct: mediating map is not unique");
        }
      }
      audit.exhaustive_probes.push_back(t);
    } else {
      if (!joint_epi_checked) {
        if (!cop.jointly_epic || !cop.jointly_epic(cat))
          throw StructureError("invalid coproduct: injections are not jointly epic");
        joint_epi_checked = true;
      }
      audit.constructive_probes.push_back(t);
    }
  }

  audit.i1_monic = is_monomorphism(cat, cop.i1).monic;
  audit.i2_monic = is_monomorphism(cat, cop.i2).monic;
  audit.independence = decide_independence(cat, cop.i1, cop.i2, budget, jobs);

  // The joint extension of (m1, m2) predicted by the universal property.
  const auto& end_1 = cat.hom(cop.x1, cop.x1);
  const auto& end_2 = cat.hom(cop.x2, cop.x2);
  for (const auto& m1 : end_1) {
    const auto leg_1 = cat.compose(m1, cop.i1);
    for (const auto& m2 : end_2) {
      const auto leg_2 = cat.compose(m2, cop.i2);
      const auto med = cop.copair(cat, leg_1, leg_2);
      if (!cat.equal(cat.compose(cop.i1, med), leg_1) ||
          !cat.equal(cat.compose(cop.i2, med), leg_2))
        throw StructureError("invalid coproduct: copair fails on an endomorphism cospan");
      audit.copairs.push_back({m1, m2, med});
    }
  }
  return audit;
}

struct CategoryDiagnostics {
  bool identities_ok = true;
  bool associative = true;
  bool embeddings_closed = true;
  bool complete = true;  // false when the cap truncated the sweep
  std::string detail;
};

/// Law check used by tests: identity neutrality, associativity on composable
/// triples, and closure of the embedding class (identities are embeddings,
/// composites of embeddings are embeddings).
template <Category C>
CategoryDiagnostics validate_category(C& cat, std::uint64_t cap = 2'000'000) {
  CategoryDiagnostics d;
  std::uint64_t work = 0;
  const int n = cat.object_count();
  for (ObjectId x = 0; x < n && d.identities_ok; ++x) {
    for (ObjectId y = 0; y < n && d.identities_ok; ++y) {
      const auto id_x = cat.identity(x);
      const auto id_y = cat.identity(y);
      if (!cat.in_embeddings(id_x)) {
        d.embeddings_closed = false;
        d.detail = "identity is not an embedding";
      }
      for (const auto& f : cat.hom(x, y)) {
        if (++work > cap) {
          d.complete = false;
          return d;
        }
        if (!cat.equal(cat.compose(id_x, f), f) || !cat.equal(cat.compose(f, id_y), f)) {
          d.identities_ok = false;
          d.detail = "identity is not neutral";
          break;
        }
      }
    }
  }
  for (ObjectId x = 0; x < n; ++x)
    for (ObjectId y = 0; y < n; ++y)
      for (ObjectId z = 0; z < n; ++z) {
        for (const auto& f : cat.hom(x, y))
          for (const auto& g : cat.hom(y, z)) {
            if (++work > cap) {
              d.complete = false;
              return d;
            }
            const auto fg = cat.compose(f, g);
            if (cat.in_embeddings(f) && cat.in_embeddings(g) && !cat.in_embeddings(fg)) {
              d.embeddings_closed = false;
              d.detail = "embeddings are not closed under composition";
              return d;
            }
            for (ObjectId w = 0; w < n; ++w)
              for (const auto& h : cat.hom(z, w)) {
                if (++work > cap) {
                  d.complete = false;
                  return d;
                }
                if (!cat.equal(cat.compose(fg, h), cat.compose(f, cat.compose(g, h)))) {
                  d.associative = false;
                  d.detail = "associativity fails";
                  return d;
                }
              }
          }
      }
  return d;
}

}  // namespace subind
