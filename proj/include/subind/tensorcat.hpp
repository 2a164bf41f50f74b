#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subind/finset.hpp"
#include "subind/finvect.hpp"
#include "subind/kernel.hpp"

// Monoidal layer: tensor structures over a registry category, regularity
// and tensor-independence checks, and the injectivity-certificate pipeline
// that turns a tensor mediator plus an endomorphism pair into a joint
// extension on the ambient object.
//
// Coherence data (associators, unitors) is deliberately not represented:
// nothing downstream consumes it, only regularity is load-bearing here.

namespace subind {

template <Category C>
struct TensorStructure {
  std::string name;
  ObjectId unit = -1;
  /// Object bifunctor; registers the tensor object on demand.
  std::function<ObjectId(C&, ObjectId, ObjectId)> obj;
  /// Morphism bifunctor; null when the instance defines no action on
  /// arrows (the object-level union is such an instance).
  std::function<typename C::Morphism(C&, const typename C::Morphism&,
                                     const typename C::Morphism&)>
      mor;
  /// Canonical injections into obj(a, b).
  std::function<typename C::Morphism(C&, ObjectId, ObjectId)> inj_a, inj_b;
  /// Optional constructive mediator for a cospan (f_a, f_b); when present,
  /// decide_tensor_independence uses it instead of searching.
  std::function<typename C::Morphism(C&, const typename C::Morphism&,
                                     const typename C::Morphism&)>
      copair;
};

template <Category C>
struct RegularityReport {
  bool injections_monic = false;
  bool squares_ok = false;
  bool complete = true;  // false when the cap truncated a sweep
  std::string detail;    // first failure, empty when the report passes
  bool pass() const { return injections_monic && squares_ok; }
};

/// Checks that the canonical injections are embedding monomorphisms and
/// that the tensor arrow of every sampled morphism pair commutes with them.
/// With an empty sample the sweep covers all morphisms between objects
/// registered at call time, truncated at `cap` square checks. Bifunctor
/// violations (identities or composition) throw StructureError; a missing
/// morphism bifunctor is reported as a regularity failure instead.
template <Category C>
RegularityReport<C> check_regularity(
    C& cat, const TensorStructure<C>& t,
    const std::vector<std::pair<typename C::Morphism, typename C::Morphism>>& sample = {},
    std::uint64_t cap = 200'000);

template <Category C>
struct TensorVerdict {
  Decision decision = Decision::Undecided;
  std::optional<typename C::Morphism> mediator;
  SearchStats stats;
};

/// Searches Mor(dom(f_a) tensor dom(f_b), cod) in canonical order for a
/// mediator restricting to f_a and f_b along the canonical injections. A
/// constructive copair short-circuits the search and must verify, else
/// StructureError. NotIndependent is decisive (the hom-set is finite);
/// Undecided only reports an exhausted budget.
template <Category C>
TensorVerdict<C> decide_tensor_independence(C& cat, const typename C::Morphism& f_a,
                                            const typename C::Morphism& f_b,
                                            const TensorStructure<C>& t,
                                            const SearchBudget& budget = {},
                                            bool embeddings_only = false);

/// Completion table of an injective object: for every embedding
/// monomorphism m into q and every morphism a out of its domain, a j with
/// compose(m, j) = a. Keys are the category's canonical morphism keys.
template <Category C>
struct InjectivityCertificate {
  ObjectId q = -1;
  std::map<std::pair<std::string, std::string>, typename C::Morphism> table;
};

template <Category C>
struct InjectivityOutcome {
  std::optional<InjectivityCertificate<C>> certificate;
  /// Set instead of the certificate when some pair admits no completion.
  std::optional<std::pair<typename C::Morphism, typename C::Morphism>> failure;
};

/// Enumerates all (embedding mono into q, morphism into q) pairs over the
/// registered objects and scans End(q) for completions. The cap bounds
/// pairs times endomorphisms scanned.
template <Category C>
InjectivityOutcome<C> certify_hom_injective(C& cat, ObjectId q, std::uint64_t cap = 2'000'000);

/// The constructive sufficiency pipeline: from a tensor mediator u for
/// (f_a, f_b), the tensor arrow h of (alpha_a, alpha_b), and a completion j
/// with compose(u, j) = compose(h, u) drawn from the certificate, returns j
/// satisfying both restriction squares (re-checked exactly). The mediator
/// is taken monic when any monic mediator exists; a non-monic mediator is
/// outside the certificate and raises the documented injectivity failure.
template <Category C>
typename C::Morphism joint_extension_via_injectivity(
    C& cat, const typename C::Morphism& f_a, const typename C::Morphism& f_b,
    const typename C::Morphism& alpha_a, const typename C::Morphism& alpha_b,
    const TensorStructure<C>& t, const InjectivityCertificate<C>& cert);

// Instances. Each builder registers the unit object in the given category.

/// Tagged disjoint union on finite sets, with the coproduct copair.
TensorStructure<fset::Category> disjoint_union_structure(fset::Category& cat);

/// Label union on finite sets. Object-level only: the union of two
/// functions has no canonical value on overlaps, so no morphism bifunctor
/// is supplied and check_regularity reports the failure.
TensorStructure<fset::Category> union_structure(fset::Category& cat);

/// Direct sum on finite vector spaces, with the block-matrix copair.
TensorStructure<fvec::Category> direct_sum_structure(fvec::Category& cat);

// Template implementations.

template <Category C>
RegularityReport<C> check_regularity(
    C& cat, const TensorStructure<C>& t,
    const std::vector<std::pair<typename C::Morphism, typename C::Morphism>>& sample,
    std::uint64_t cap) {
  using M = typename C::Morphism;
  RegularityReport<C> report;
  if (!t.obj || !t.inj_a || !t.inj_b)
    throw DomainError("tensor structure is missing its object action or injections");

  const int n = cat.object_count();
  // Tensor objects and injections for every pair registered at call time;
  // computed up front because obj() itself may grow the registry.
  std::map<std::pair<ObjectId, ObjectId>, ObjectId> sums;
  std::map<std::pair<ObjectId, ObjectId>, std::pair<M, M>> injections;
  for (ObjectId a = 0; a < n; ++a) {
    for (ObjectId b = 0; b < n; ++b) {
      const ObjectId s = t.obj(cat, a, b);
      M ia = t.inj_a(cat, a, b), ib = t.inj_b(cat, a, b);
      if (cat.dom(ia) != a || cat.dom(ib) != b || cat.cod(ia) != s || cat.cod(ib) != s)
        throw StructureError("tensor injections do not span their tensor object");
      sums.emplace(std::make_pair(a, b), s);
      injections.emplace(std::make_pair(a, b), std::make_pair(std::move(ia), std::move(ib)));
    }
  }

  report.injections_monic = true;
  for (const auto& [pair, inj] : injections) {
    const auto check_a = is_monomorphism(cat, inj.first);
    const auto check_b = is_monomorphism(cat, inj.second);
    if (!cat.in_embeddings(inj.first) || !cat.in_embeddings(inj.second) || !check_a.monic ||
        !check_b.monic) {
      report.injections_monic = false;
      if (report.detail.empty())
        report.detail = "canonical injection at object pair (" + std::to_string(pair.first) +
                        ", " + std::to_string(pair.second) + ") is not an embedding mono";
    }
  }

  if (!t.mor) {
    report.squares_ok = false;
    if (report.detail.empty()) report.detail = "morphism bifunctor is undefined";
    return report;
  }

  // Identity preservation: a violation means the bifunctor is malformed,
  // not merely irregular.
  for (const auto& [pair, s] : sums) {
    const M tensor_id = t.mor(cat, cat.identity(pair.first), cat.identity(pair.second));
    if (!cat.equal(tensor_id, cat.identity(s)))
      throw StructureError("malformed tensor bifunctor: identities are not preserved");
  }

  const auto square_holds = [&](const M& m_a, const M& m_b) {
    const auto& src = injections.at({cat.dom(m_a), cat.dom(m_b)});
    const auto& dst = injections.at({cat.cod(m_a), cat.cod(m_b)});
    const M tp = t.mor(cat, m_a, m_b);
    if (cat.dom(tp) != sums.at({cat.dom(m_a), cat.dom(m_b)}) ||
        cat.cod(tp) != sums.at({cat.cod(m_a), cat.cod(m_b)}))
      throw StructureError("malformed tensor bifunctor: tensor arrow has wrong endpoints");
    return cat.equal(cat.compose(src.first, tp), cat.compose(m_a, dst.first)) &&
           cat.equal(cat.compose(src.second, tp), cat.compose(m_b, dst.second));
  };

  report.squares_ok = true;
  std::uint64_t checked = 0;
  std::vector<std::pair<M, M>> swept;
  const auto note_square = [&](const M& m_a, const M& m_b) {
    if (checked >= cap) {
      report.complete = false;
      return false;
    }
    ++checked;
    if (!square_holds(m_a, m_b)) {
      report.squares_ok = false;
      if (report.detail.empty())
        report.detail = "naturality square fails for (" + cat.key(m_a) + ", " + cat.key(m_b) + ")";
    }
    swept.push_back({m_a, m_b});
    return true;
  };

  if (!sample.empty()) {
    for (const auto& [m_a, m_b] : sample)
      if (!note_square(m_a, m_b)) break;
  } else {
    bool room = true;
    for (ObjectId a = 0; a < n && room; ++a)
      for (ObjectId a2 = 0; a2 < n && room; ++a2)
        for (ObjectId b = 0; b < n && room; ++b)
          for (ObjectId b2 = 0; b2 < n && room; ++b2)
            for (const auto& m_a : cat.hom(a, a2)) {
              for (const auto& m_b : cat.hom(b, b2))
                if (!(room = note_square(m_a, m_b))) break;
              if (!room) break;
            }
  }

  // Composition preservation over the swept pairs that chain up.
  std::map<std::pair<ObjectId, ObjectId>, std::vector<std::size_t>> by_dom;
  for (std::size_t i = 0; i < swept.size(); ++i)
    by_dom[{cat.dom(swept[i].first), cat.dom(swept[i].second)}].push_back(i);
  for (const auto& [m_a, m_b] : swept) {
    const auto it = by_dom.find({cat.cod(m_a), cat.cod(m_b)});
    if (it == by_dom.end()) continue;
    for (const std::size_t idx : it->second) {
      const auto& [n_a, n_b] = swept[idx];
      if (checked >= cap) {
        report.complete = false;
        return report;
      }
      ++checked;
      const M lhs = t.mor(cat, cat.compose(m_a, n_a), cat.compose(m_b, n_b));
      const M rhs = cat.compose(t.mor(cat, m_a, m_b), t.mor(cat, n_a, n_b));
      if (!cat.equal(lhs, rhs))
        throw StructureError("malformed tensor bifunctor: composition is not preserved");
    }
  }
  return report;
}

template <Category C>
TensorVerdict<C> decide_tensor_independence(C& cat, const typename C::Morphism& f_a,
                                            const typename C::Morphism& f_b,
                                            const TensorStructure<C>& t,
                                            const SearchBudget& budget, bool embeddings_only) {
  if (cat.cod(f_a) != cat.cod(f_b))
    throw DomainError("decide_tensor_independence: morphisms do not share a codomain");
  const ObjectId a = cat.dom(f_a), b = cat.dom(f_b), target = cat.cod(f_a);
  const ObjectId sum = t.obj(cat, a, b);
  const auto i_a = t.inj_a(cat, a, b), i_b = t.inj_b(cat, a, b);

  TensorVerdict<C> verdict;
  const auto mediates = [&](const typename C::Morphism& h) {
    return cat.equal(cat.compose(i_a, h), f_a) && cat.equal(cat.compose(i_b, h), f_b);
  };

  if (t.copair) {
    const auto h = t.copair(cat, f_a, f_b);
    if (cat.dom(h) != sum || cat.cod(h) != target || !mediates(h))
      throw StructureError("constructive copair fails its mediating squares");
    if (!embeddings_only || cat.in_embeddings(h)) {
      verdict.decision = Decision::Independent;
      verdict.mediator = h;
      return verdict;
    }
  }

  for (const auto& h : cat.hom(sum, target)) {
    if (verdict.stats.candidates_examined >= budget.max_candidates) {
      verdict.stats.budget_exhausted = true;
      return verdict;
    }
    verdict.stats.candidates_examined += 1;
    if (embeddings_only && !cat.in_embeddings(h)) continue;
    if (mediates(h)) {
      verdict.decision = Decision::Independent;
      verdict.mediator = h;
      return verdict;
    }
  }
  verdict.decision = Decision::NotIndependent;
  return verdict;
}

template <Category C>
InjectivityOutcome<C> certify_hom_injective(C& cat, ObjectId q, std::uint64_t cap) {
  InjectivityOutcome<C> outcome;
  InjectivityCertificate<C> cert;
  cert.q = q;
  const int n = cat.object_count();
  const auto& end_q = cat.hom(q, q);

  std::uint64_t cost = 0;
  std::vector<std::vector<typename C::Morphism>> monos(static_cast<std::size_t>(n));
  for (ObjectId a = 0; a < n; ++a) {
    for (const auto& m : cat.hom(a, q))
      if (cat.in_embeddings(m) && is_monomorphism(cat, m).monic)
        monos[static_cast<std::size_t>(a)].push_back(m);
    cost += monos[static_cast<std::size_t>(a)].size() * cat.hom(a, q).size() *
            std::max<std::uint64_t>(1, end_q.size());
    if (cost > cap) throw EnumerationError("injectivity certificate exceeds its cap");
  }

  for (ObjectId a = 0; a < n; ++a) {
    for (const auto& m : monos[static_cast<std::size_t>(a)]) {
      for (const auto& arrow : cat.hom(a, q)) {
        bool completed = false;
        for (const auto& j : end_q) {
          if (cat.equal(cat.compose(m, j), arrow)) {
            cert.table.emplace(std::make_pair(cat.key(m), cat.key(arrow)), j);
            completed = true;
            break;
          }
        }
        if (!completed) {
          outcome.failure = std::make_pair(m, arrow);
          return outcome;
        }
      }
    }
  }
  outcome.certificate = std::move(cert);
  return outcome;
}

template <Category C>
typename C::Morphism joint_extension_via_injectivity(
    C& cat, const typename C::Morphism& f_a, const typename C::Morphism& f_b,
    const typename C::Morphism& alpha_a, const typename C::Morphism& alpha_b,
    const TensorStructure<C>& t, const InjectivityCertificate<C>& cert) {
  if (cat.cod(f_a) != cert.q || cat.cod(f_b) != cert.q)
    throw DomainError("joint extension: morphisms do not land in the certified object");
  if (cat.dom(alpha_a) != cat.dom(f_a) || cat.cod(alpha_a) != cat.dom(f_a) ||
      cat.dom(alpha_b) != cat.dom(f_b) || cat.cod(alpha_b) != cat.dom(f_b))
    throw DomainError("joint extension: alpha maps are not endomorphisms of the domains");
  if (!t.mor) throw DomainError("joint extension: tensor structure has no morphism bifunctor");

  const auto base = decide_tensor_independence(cat, f_a, f_b, t, SearchBudget{}, true);
  if (base.decision != Decision::Independent)
    throw DomainError("joint extension: morphisms are not tensor-independent");
  auto u = *base.mediator;
  if (!is_monomorphism(cat, u).monic) {
    // Only monic mediators are covered by the certificate; prefer one.
    const ObjectId sum = t.obj(cat, cat.dom(f_a), cat.dom(f_b));
    const auto i_a = t.inj_a(cat, cat.dom(f_a), cat.dom(f_b));
    const auto i_b = t.inj_b(cat, cat.dom(f_a), cat.dom(f_b));
    for (const auto& h : cat.hom(sum, cert.q)) {
      if (!cat.in_embeddings(h)) continue;
      if (!cat.equal(cat.compose(i_a, h), f_a) || !cat.equal(cat.compose(i_b, h), f_b)) continue;
      if (is_monomorphism(cat, h).monic) {
        u = h;
        break;
      }
    }
  }

  const auto h = t.mor(cat, alpha_a, alpha_b);
  const auto target = cat.compose(h, u);  // v = u: the same mediator serves both squares
  const auto entry = cert.table.find(std::make_pair(cat.key(u), cat.key(target)));
  if (entry == cert.table.end())
    throw StructureError(
        "injectivity failure: certificate has no completion for the mediating square");
  const auto& j = entry->second;
  if (!cat.equal(cat.compose(f_a, j), cat.compose(alpha_a, f_a)) ||
      !cat.equal(cat.compose(f_b, j), cat.compose(alpha_b, f_b)))
    throw StructureError("joint extension violates a restriction square");
  return j;
}

}  // namespace subind
