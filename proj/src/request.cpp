#include "subind/request.hpp"

#include <map>
#include <memory>
#include <set>
#include <utility>
#include <vector>

#include "subind/corpus.hpp"
#include "subind/kernel.hpp"
#include "subind/qft.hpp"
#include "subind/tensorcat.hpp"

namespace subind::request {
namespace {

using report::json;

// Witness tables beyond this many entries are summarized by their count;
// the table is regenerable from the request, so omission loses no evidence.
constexpr std::size_t kWitnessCap = 1024;

const std::map<std::string, std::set<std::string>>& support_matrix() {
  static const std::map<std::string, std::set<std::string>> m = {
      {"finset", {"decide", "compat", "tensor", "audit", "enumerate"}},
      {"finvect", {"decide", "compat", "tensor", "audit", "enumerate"}},
      {"pregeom", {"decide", "compat", "enumerate"}},
      {"bool", {"decide", "adjudicate", "audit", "enumerate"}},
      {"oml", {"decide", "audit", "enumerate"}},
      {"opalg", {"decide", "tensor", "audit"}},
      {"site", {"audit"}},
      {"all", {"suite"}},
  };
  return m;
}

json related_claims(const std::string& kind, const std::string& task) {
  static const std::map<std::pair<std::string, std::string>, std::vector<std::string>>
      tags = {
          {{"finset", "decide"}, {"set-disjointness", "representative-invariance"}},
          {{"finset", "compat"}, {"independence-implies-compatibility"}},
          {{"finset", "tensor"}, {"tensor-regularity-and-union-gap"}},
          {{"finset", "audit"}, {"coproduct-injection-independence"}},
          {{"finvect", "decide"}, {"vect-trivial-intersection", "representative-invariance"}},
          {{"finvect", "compat"}, {"independence-implies-compatibility"}},
          {{"finvect", "tensor"},
           {"tensor-regularity-and-union-gap", "injective-completion-pipeline"}},
          {{"finvect", "audit"}, {"coproduct-injection-independence"}},
          {{"pregeom", "decide"}, {"pregeom-meet-triviality"}},
          {{"pregeom", "compat"}, {"independence-implies-compatibility"}},
          {{"bool", "decide"}, {"bool-uniform-cell-criterion"}},
          {{"bool", "adjudicate"}, {"atom-split-independence"}},
          {{"bool", "audit"},
           {"stone-free-product-universality", "coproduct-injection-independence"}},
          {{"oml", "decide"}, {"oml-summability"}},
          {{"oml", "audit"}, {"oml-summability"}},
          {{"opalg", "decide"}, {"factorization-implies-feasibility"}},
          {{"opalg", "tensor"}, {"operator-tensor-restriction"}},
          {{"opalg", "audit"}, {"factorization-implies-feasibility"}},
          {{"site", "audit"}, {"site-axioms", "site-axiom-separation"}},
      };
  auto it = tags.find({kind, task});
  json out = json::array();
  if (it != tags.end())
    for (const auto& id : it->second) out.push_back(id);
  return out;
}

// ---- JSON access with path-labeled errors ----------------------------------

const json& need(const json& j, const std::string& path, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw DomainError(path + "." + key + ": missing field");
  return j.at(key);
}

std::string need_string(const json& j, const std::string& path, const char* key) {
  const json& v = need(j, path, key);
  if (!v.is_string()) throw DomainError(path + "." + std::string(key) + ": expected a string");
  return v.get<std::string>();
}

std::int64_t need_int(const json& j, const std::string& path, const char* key,
                      std::int64_t lo, std::int64_t hi) {
  const json& v = need(j, path, key);
  if (!v.is_number_integer())
    throw DomainError(path + "." + std::string(key) + ": expected an integer");
  auto n = v.get<std::int64_t>();
  if (n < lo || n > hi)
    throw DomainError(path + "." + std::string(key) + ": expected an integer in [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                      std::to_string(n));
  return n;
}

const json& need_array(const json& j, const std::string& path, const char* key) {
  const json& v = need(j, path, key);
  if (!v.is_array()) throw DomainError(path + "." + std::string(key) + ": expected an array");
  return v;
}

std::vector<std::string> need_labels(const json& j, const std::string& path,
                                     const char* key, std::size_t max_size) {
  const json& arr = need_array(j, path, key);
  if (arr.size() > max_size)
    throw DomainError(path + "." + std::string(key) + ": at most " +
                      std::to_string(max_size) + " labels are supported");
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_string())
      throw DomainError(path + "." + std::string(key) + "[" + std::to_string(i) +
                        "]: expected a string");
    auto label = arr[i].get<std::string>();
    if (!seen.insert(label).second)
      throw DomainError(path + "." + std::string(key) + "[" + std::to_string(i) +
                        "]: duplicate label \"" + label + "\"");
    out.push_back(std::move(label));
  }
  return out;
}

// ---- generic verdict serialization ----------------------------------------

template <class Cat>
json independence_json(const Cat& cat, const IndependenceVerdict<Cat>& v) {
  json out = json::object();
  out["decision"] = to_string(v.decision);
  if (v.counterexample) {
    json cx = json::object();
    cx["alpha_a"] = report::morphism_json(cat, v.counterexample->alpha_a);
    cx["alpha_b"] = report::morphism_json(cat, v.counterexample->alpha_b);
    cx["pair_index"] = v.counterexample->pair_index;
    out["counterexample"] = cx;
  }
  if (v.decision == Decision::Independent) {
    out["witness_count"] = v.witnesses.size();
    if (v.witnesses.size() <= kWitnessCap) {
      json table = json::array();
      for (const auto& w : v.witnesses) {
        json e = json::object();
        e["alpha_a"] = report::morphism_json(cat, w.alpha_a);
        e["alpha_b"] = report::morphism_json(cat, w.alpha_b);
        e["extension"] = report::morphism_json(cat, w.extension);
        table.push_back(e);
      }
      out["witness_table"] = table;
    } else {
      out["witness_table_omitted"] = true;
    }
  }
  out["stats"] = report::search_stats(v.stats);
  return out;
}

template <class Cat>
json compatibility_json(const Cat& cat, const CompatibilityVerdict<Cat>& v) {
  json out = json::object();
  out["decision"] = to_string(v.decision);
  if (v.violation) {
    json w = json::object();
    w["alpha_a"] = report::morphism_json(cat, v.violation->first);
    w["alpha_b"] = report::morphism_json(cat, v.violation->second);
    out["violation"] = w;
  }
  out["stats"] = report::search_stats(v.stats);
  return out;
}

template <class Cat>
json coproduct_audit_json(const Cat& cat, const CoproductAudit<Cat>& audit) {
  json out = json::object();
  out["universal_property"] = "verified";
  out["exhaustive_probes"] = audit.exhaustive_probes.size();
  out["constructive_probes"] = audit.constructive_probes.size();
  out["i1_monic"] = audit.i1_monic;
  out["i2_monic"] = audit.i2_monic;
  out["cospans_mediated"] = audit.copairs.size();
  out["injections"] = independence_json(cat, audit.independence);
  return out;
}

int exit_for(Decision d) { return d == Decision::Undecided ? 2 : 0; }
int exit_for(CompatDecision d) { return d == CompatDecision::Undecided ? 2 : 0; }

// ---- finset ----------------------------------------------------------------

struct FinsetPair {
  fset::Category cat;
  ObjectId ambient = -1;
  fset::Morphism f_a, f_b;
};

std::uint32_t label_mask(const std::vector<std::string>& ambient, const json& arr,
                         const std::string& path) {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto label = arr[i].get<std::string>();
    auto it = std::find(ambient.begin(), ambient.end(), label);
    if (it == ambient.end())
      throw DomainError(path + "[" + std::to_string(i) + "]: label \"" + label +
                        "\" is not in the ambient set");
    mask |= 1u << (it - ambient.begin());
  }
  return mask;
}

FinsetPair build_finset_pair(const json& p) {
  FinsetPair out;
  auto ambient = need_labels(p, "$.payload", "ambient", 4);
  auto left = need_labels(p, "$.payload", "left", 4);
  auto right = need_labels(p, "$.payload", "right", 4);
  out.ambient = out.cat.add_object(ambient);
  std::uint32_t ma = label_mask(ambient, p.at("left"), "$.payload.left");
  std::uint32_t mb = label_mask(ambient, p.at("right"), "$.payload.right");
  out.f_a = fset::inclusion(out.cat, fset::subset(out.cat, out.ambient, ma), out.ambient);
  out.f_b = fset::inclusion(out.cat, fset::subset(out.cat, out.ambient, mb), out.ambient);
  return out;
}

RunOutcome run_finset(const WorkbenchRequest& req, int jobs, json body) {
  const json& p = req.payload;
  if (req.task == "decide" || req.task == "compat") {
    auto inst = build_finset_pair(p);
    if (req.task == "decide") {
      auto v = decide_independence(inst.cat, inst.f_a, inst.f_b, req.budget, jobs);
      body["verdict"] = to_string(v.decision);
      json criterion = json::object();
      criterion["name"] = "disjoint-or-shared-point";
      criterion["holds"] = fset::disjointness_oracle(inst.cat, inst.f_a, inst.f_b);
      if (v.decision != Decision::Undecided)
        criterion["agrees"] =
            criterion["holds"].get<bool>() == (v.decision == Decision::Independent);
      body["criterion"] = criterion;
      body["independence"] = independence_json(inst.cat, v);
      return {std::move(body), exit_for(v.decision)};
    }
    auto pb = fset::pullback(inst.cat, inst.f_a, inst.f_b);
    auto v = decide_compatibility(inst.cat, inst.f_a, inst.f_b, pb, req.budget);
    body["verdict"] = to_string(v.decision);
    body["apex_size"] = inst.cat.object(pb.apex).labels.size();
    body["compatibility"] = compatibility_json(inst.cat, v);
    return {std::move(body), exit_for(v.decision)};
  }
  if (req.task == "tensor") {
    auto structure = need_string(p, "$.payload", "structure");
    if (structure != "disjoint-union" && structure != "union")
      throw DomainError(
          "$.payload.structure: expected \"disjoint-union\" or \"union\"");
    auto inst = build_finset_pair(p);
    auto t = structure == "union" ? union_structure(inst.cat)
                                  : disjoint_union_structure(inst.cat);
    auto reg = check_regularity(inst.cat, t);
    json rj = json::object();
    rj["pass"] = reg.pass();
    rj["complete"] = reg.complete;
    if (!reg.detail.empty()) rj["detail"] = reg.detail;
    body["structure"] = structure;
    body["regularity"] = rj;
    auto v = decide_tensor_independence(inst.cat, inst.f_a, inst.f_b, t, req.budget);
    body["verdict"] = to_string(v.decision);
    if (v.mediator) body["mediator"] = report::morphism_json(inst.cat, *v.mediator);
    body["stats"] = report::search_stats(v.stats);
    return {std::move(body), exit_for(v.decision)};
  }
  if (req.task == "audit") {
    auto left = need_labels(p, "$.payload", "left", 3);
    auto right = need_labels(p, "$.payload", "right", 3);
    fset::Category cat;
    auto cop = fset::coproduct(cat, cat.add_object(left), cat.add_object(right));
    auto audit = audit_coproduct_independence(cat, cop, req.budget, jobs);
    body["coproduct"] = coproduct_audit_json(cat, audit);
    body["verdict"] = to_string(audit.independence.decision);
    return {std::move(body), exit_for(audit.independence.decision)};
  }
  // enumerate
  auto ambient = need_labels(p, "$.payload", "ambient", 4);
  fset::Category cat;
  ObjectId amb = cat.add_object(ambient);
  json subsets = json::array();
  for (std::uint32_t mask = 0; mask < (1u << ambient.size()); ++mask) {
    ObjectId sub = fset::subset(cat, amb, mask);
    json e = json::object();
    e["mask"] = mask;
    e["labels"] = cat.object(sub).labels;
    e["endomorphisms"] = cat.hom(sub, sub).size();
    subsets.push_back(e);
  }
  body["verdict"] = "enumerated";
  body["subsets"] = subsets;
  return {std::move(body), 0};
}

// ---- finvect ---------------------------------------------------------------

struct FinvectPair {
  std::unique_ptr<fvec::Category> cat;
  ObjectId ambient = -1;
  fvec::Subspace sa, sb;
  fvec::Morphism f_a, f_b;
};

int need_prime(const json& p, const std::string& path) {
  int q = static_cast<int>(need_int(p, path, "p", 2, 11));
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0)
      throw DomainError(path + ".p: expected a prime modulus, got " + std::to_string(q));
  return q;
}

fvec::Mat parse_basis(const json& p, const std::string& path, const char* key, int dim,
                      int modulus) {
  const json& cols = need_array(p, path, key);
  if (cols.size() > static_cast<std::size_t>(dim))
    throw DomainError(path + "." + std::string(key) +
                      ": more basis columns than the ambient dimension");
  fvec::Mat m(dim, static_cast<int>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const std::string at = path + "." + std::string(key) + "[" + std::to_string(c) + "]";
    if (!cols[c].is_array() || cols[c].size() != static_cast<std::size_t>(dim))
      throw DomainError(at + ": expected a column of " + std::to_string(dim) +
                        " field entries");
    for (int r = 0; r < dim; ++r) {
      const json& entry = cols[c][static_cast<std::size_t>(r)];
      if (!entry.is_number_integer())
        throw DomainError(at + "[" + std::to_string(r) + "]: expected an integer");
      auto val = entry.get<std::int64_t>();
      if (val < 0 || val >= modulus)
        throw DomainError(at + "[" + std::to_string(r) +
                          "]: expected an entry in [0, " + std::to_string(modulus - 1) +
                          "]");
      m.at(r, static_cast<int>(c)) = static_cast<std::uint8_t>(val);
    }
  }
  return m;
}

FinvectPair build_finvect_pair(const json& p) {
  FinvectPair out;
  int modulus = need_prime(p, "$.payload");
  int dim = static_cast<int>(need_int(p, "$.payload", "ambient_dim", 0, 4));
  out.cat = std::make_unique<fvec::Category>(modulus);
  out.ambient = out.cat->space(dim);
  auto install = [&](const char* key, fvec::Subspace& s, fvec::Morphism& f) {
    auto basis = parse_basis(p, "$.payload", key, dim, modulus);
    try {
      s = fvec::make_subspace(*out.cat, out.ambient, basis);
    } catch (const StructureError& e) {
      throw DomainError("$.payload." + std::string(key) + ": " + e.what());
    }
    f = fvec::inclusion(*out.cat, s);
  };
  install("left", out.sa, out.f_a);
  install("right", out.sb, out.f_b);
  return out;
}

RunOutcome run_finvect(const WorkbenchRequest& req, int jobs, json body) {
  const json& p = req.payload;
  if (req.task == "decide" || req.task == "compat" || req.task == "tensor") {
    auto inst = build_finvect_pair(p);
    auto& cat = *inst.cat;
    if (req.task == "decide") {
      auto v = decide_independence(cat, inst.f_a, inst.f_b, req.budget, jobs);
      body["verdict"] = to_string(v.decision);
      json criterion = json::object();
      criterion["name"] = "trivial-intersection";
      criterion["holds"] = fvec::intersection_oracle(cat, inst.sa, inst.sb);
      if (v.decision != Decision::Undecided)
        criterion["agrees"] =
            criterion["holds"].get<bool>() == (v.decision == Decision::Independent);
      body["criterion"] = criterion;
      body["independence"] = independence_json(cat, v);
      return {std::move(body), exit_for(v.decision)};
    }
    if (req.task == "compat") {
      auto pb = fvec::pullback(cat, inst.sa, inst.sb);
      auto v = decide_compatibility(cat, inst.f_a, inst.f_b, pb, req.budget);
      body["verdict"] = to_string(v.decision);
      body["apex_dim"] = cat.dim(pb.apex);
      body["compatibility"] = compatibility_json(cat, v);
      return {std::move(body), exit_for(v.decision)};
    }
    auto t = direct_sum_structure(cat);
    auto reg = check_regularity(cat, t);
    json rj = json::object();
    rj["pass"] = reg.pass();
    rj["complete"] = reg.complete;
    if (!reg.detail.empty()) rj["detail"] = reg.detail;
    body["structure"] = "direct-sum";
    body["regularity"] = rj;
    auto v = decide_tensor_independence(cat, inst.f_a, inst.f_b, t, req.budget);
    body["verdict"] = to_string(v.decision);
    if (v.mediator) body["mediator"] = report::morphism_json(cat, *v.mediator);
    body["stats"] = report::search_stats(v.stats);
    return {std::move(body), exit_for(v.decision)};
  }
  if (req.task == "audit") {
    int modulus = need_prime(p, "$.payload");
    int da = static_cast<int>(need_int(p, "$.payload", "left_dim", 0, 3));
    int db = static_cast<int>(need_int(p, "$.payload", "right_dim", 0, 3));
    fvec::Category cat(modulus);
    auto cop = fvec::direct_sum(cat, cat.space(da), cat.space(db));
    auto audit = audit_coproduct_independence(cat, cop, req.budget, jobs);
    body["coproduct"] = coproduct_audit_json(cat, audit);
    body["verdict"] = to_string(audit.independence.decision);
    return {std::move(body), exit_for(audit.independence.decision)};
  }
  // enumerate
  int modulus = need_prime(p, "$.payload");
  int dim = static_cast<int>(need_int(p, "$.payload", "dim", 0, 4));
  json bases = json::array();
  for (const auto& basis : fvec::all_subspace_bases(dim, modulus)) {
    json e = json::object();
    e["dim"] = basis.cols;
    json cols = json::array();
    for (int c = 0; c < basis.cols; ++c) {
      json col = json::array();
      for (int r = 0; r < basis.rows; ++r) col.push_back(static_cast<int>(basis.at(r, c)));
      cols.push_back(col);
    }
    e["basis"] = cols;
    bases.push_back(e);
  }
  body["verdict"] = "enumerated";
  body["subspaces"] = bases;
  return {std::move(body), 0};
}

// ---- pregeom ---------------------------------------------------------------

pgeo::Geometry build_geometry(const json& spec, const std::string& path) {
  if (!spec.is_object()) throw DomainError(path + ": expected an object");
  auto builder = need_string(spec, path, "builder");
  try {
    if (builder == "free")
      return pgeo::free_geometry(static_cast<int>(need_int(spec, path, "n", 0, 4)));
    if (builder == "free-with-loops") {
      int n = static_cast<int>(need_int(spec, path, "n", 0, 4));
      auto loops = need_int(spec, path, "loops", 0, (1 << n) - 1);
      return pgeo::free_geometry_with_loops(n, static_cast<std::uint32_t>(loops));
    }
    if (builder == "uniform") {
      int n = static_cast<int>(need_int(spec, path, "n", 0, 4));
      int r = static_cast<int>(need_int(spec, path, "rank", 0, n + 1));
      return pgeo::uniform_geometry(n, r);
    }
    if (builder == "span-f2")
      return pgeo::span_geometry_f2(static_cast<int>(need_int(spec, path, "dim", 1, 3)));
    if (builder == "table") {
      pgeo::Geometry g;
      g.n = static_cast<int>(need_int(spec, path, "n", 0, 4));
      const json& cl = need_array(spec, path, "closure");
      if (cl.size() != (std::size_t{1} << g.n))
        throw DomainError(path + ".closure: expected " +
                          std::to_string(std::size_t{1} << g.n) + " entries");
      for (std::size_t i = 0; i < cl.size(); ++i) {
        if (!cl[i].is_number_integer() || cl[i].get<std::int64_t>() < 0)
          throw DomainError(path + ".closure[" + std::to_string(i) +
                            "]: expected a subset mask");
        g.cl.push_back(static_cast<std::uint32_t>(cl[i].get<std::int64_t>()));
      }
      pgeo::validate_geometry(g);
      return g;
    }
  } catch (const StructureError& e) {
    throw DomainError(path + ": " + e.what());
  }
  throw DomainError(path + ".builder: unknown builder \"" + builder + "\"");
}

struct PregeomPair {
  pgeo::Category cat;
  ObjectId ambient = -1;
  pgeo::ClosedSub sa, sb;
  pgeo::Morphism f_a, f_b;
};

PregeomPair build_pregeom_pair(const json& p) {
  PregeomPair out;
  out.ambient = out.cat.add_geometry(build_geometry(need(p, "$.payload", "geometry"),
                                                    "$.payload.geometry"));
  int n = out.cat.geometry(out.ambient).n;
  auto install = [&](const char* key, pgeo::ClosedSub& s, pgeo::Morphism& f) {
    auto mask = need_int(p, "$.payload", key, 0, (1 << n) - 1);
    try {
      s = pgeo::closed_sub(out.cat, out.ambient, static_cast<std::uint32_t>(mask));
    } catch (const StructureError& e) {
      throw DomainError("$.payload." + std::string(key) + ": " + e.what());
    }
    f = pgeo::inclusion(out.cat, s);
  };
  install("left_mask", out.sa, out.f_a);
  install("right_mask", out.sb, out.f_b);
  return out;
}

RunOutcome run_pregeom(const WorkbenchRequest& req, int jobs, json body) {
  const json& p = req.payload;
  if (req.task == "decide" || req.task == "compat") {
    auto inst = build_pregeom_pair(p);
    if (req.task == "decide") {
      auto v = decide_independence(inst.cat, inst.f_a, inst.f_b, req.budget, jobs);
      body["verdict"] = to_string(v.decision);
      json criterion = json::object();
      criterion["name"] = "meet-triviality";
      criterion["holds"] = pgeo::meet_triviality_oracle(inst.cat, inst.sa, inst.sb);
      if (v.decision != Decision::Undecided)
        criterion["agrees"] =
            criterion["holds"].get<bool>() == (v.decision == Decision::Independent);
      body["criterion"] = criterion;
      body["independence"] = independence_json(inst.cat, v);
      return {std::move(body), exit_for(v.decision)};
    }
    auto pb = pgeo::pullback(inst.cat, inst.sa, inst.sb);
    auto v = decide_compatibility(inst.cat, inst.f_a, inst.f_b, pb, req.budget);
    body["verdict"] = to_string(v.decision);
    body["apex_points"] = inst.cat.geometry(pb.apex).n;
    body["compatibility"] = compatibility_json(inst.cat, v);
    return {std::move(body), exit_for(v.decision)};
  }
  // enumerate
  PregeomPair holder;
  ObjectId amb = holder.cat.add_geometry(
      build_geometry(need(p, "$.payload", "geometry"), "$.payload.geometry"));
  json masks = json::array();
  for (auto mask : pgeo::closed_sets(holder.cat.geometry(amb))) {
    json e = json::object();
    e["mask"] = mask;
    e["points"] = std::popcount(mask);
    masks.push_back(e);
  }
  body["verdict"] = "enumerated";
  body["closed_sets"] = masks;
  return {std::move(body), 0};
}

// ---- bool ------------------------------------------------------------------

struct BoolPair {
  balg::Category cat;
  ObjectId ambient = -1;
  balg::Subalgebra sa, sb;
  balg::Morphism f_a, f_b;
};

std::vector<int> need_blocks(const json& p, const std::string& path, const char* key,
                             int atoms) {
  const json& arr = need_array(p, path, key);
  if (arr.size() != static_cast<std::size_t>(atoms))
    throw DomainError(path + "." + std::string(key) + ": expected " +
                      std::to_string(atoms) + " block labels");
  std::vector<int> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number_integer() || arr[i].get<std::int64_t>() < 0 ||
        arr[i].get<std::int64_t>() >= atoms)
      throw DomainError(path + "." + std::string(key) + "[" + std::to_string(i) +
                        "]: expected a block label in [0, " + std::to_string(atoms - 1) +
                        "]");
    out.push_back(static_cast<int>(arr[i].get<std::int64_t>()));
  }
  return out;
}

BoolPair build_bool_pair(const json& p) {
  BoolPair out;
  int atoms = static_cast<int>(need_int(p, "$.payload", "atoms", 1, 5));
  out.ambient = out.cat.algebra(atoms);
  auto install = [&](const char* key, balg::Subalgebra& s, balg::Morphism& f) {
    auto blocks = need_blocks(p, "$.payload", key, atoms);
    try {
      s = balg::make_subalgebra(out.cat, out.ambient, blocks);
    } catch (const StructureError& e) {
      throw DomainError("$.payload." + std::string(key) + ": " + e.what());
    }
    f = balg::inclusion(out.cat, s);
  };
  install("left_blocks", out.sa, out.f_a);
  install("right_blocks", out.sb, out.f_b);
  return out;
}

bool uniform_cells(const balg::Subalgebra& a, const balg::Subalgebra& b) {
  std::map<std::pair<int, int>, int> cell;
  for (std::size_t i = 0; i < a.block_of.size(); ++i)
    ++cell[{a.block_of[i], b.block_of[i]}];
  if (cell.size() != static_cast<std::size_t>(a.blocks) * b.blocks) return false;
  int size = cell.begin()->second;
  for (const auto& [key, count] : cell)
    if (count != size) return false;
  return true;
}

RunOutcome run_bool(const WorkbenchRequest& req, int jobs, json body) {
  const json& p = req.payload;
  if (req.task == "decide") {
    auto inst = build_bool_pair(p);
    auto v = decide_independence(inst.cat, inst.f_a, inst.f_b, req.budget, jobs);
    body["verdict"] = to_string(v.decision);
    json criterion = json::object();
    criterion["name"] = "uniform-cross-cells";
    criterion["holds"] = uniform_cells(inst.sa, inst.sb);
    criterion["logically_independent"] = balg::logically_independent(inst.sa, inst.sb);
    if (v.decision != Decision::Undecided)
      criterion["agrees"] =
          criterion["holds"].get<bool>() == (v.decision == Decision::Independent);
    body["criterion"] = criterion;
    body["independence"] = independence_json(inst.cat, v);
    return {std::move(body), exit_for(v.decision)};
  }
  if (req.task == "adjudicate") {
    int n = static_cast<int>(need_int(p, "$.payload", "n", 2, 5));
    int k = static_cast<int>(need_int(p, "$.payload", "k", 1, n - 1));
    balg::Category cat;
    auto adj = balg::adjudicate_atom_split(cat, n, k, req.budget, jobs);
    body["verdict"] = to_string(adj.verdict.decision);
    body["documented_claim"] = "jointly extendable";
    if (adj.verdict.decision != Decision::Undecided)
      body["agreement"] = adj.verdict.decision == Decision::Independent
                              ? "agree"
                              : "contradict";
    else
      body["agreement"] = "undecided";
    body["independence"] = independence_json(cat, adj.verdict);
    body["restricted_extension_ok"] = adj.restricted_extension_ok;
    body["restricted_pairs"] = adj.restricted_pairs;
    return {std::move(body), exit_for(adj.verdict.decision)};
  }
  if (req.task == "audit") {
    int la = static_cast<int>(need_int(p, "$.payload", "left_atoms", 1, 3));
    int ra = static_cast<int>(need_int(p, "$.payload", "right_atoms", 1, 3));
    auto mode = need_string(p, "$.payload", "mode");
    if (mode != "exhaustive" && mode != "constructive")
      throw DomainError("$.payload.mode: expected \"exhaustive\" or \"constructive\"");
    balg::Category cat;
    auto cop = balg::free_product(cat, cat.algebra(la), cat.algebra(ra));
    body["mode"] = mode;
    try {
      auto audit = mode == "exhaustive"
                       ? audit_coproduct_independence(cat, cop, req.budget, jobs)
                       : audit_coproduct_independence(cat, cop, req.budget, jobs, 0);
      body["coproduct"] = coproduct_audit_json(cat, audit);
      body["verdict"] = to_string(audit.independence.decision);
      return {std::move(body), exit_for(audit.independence.decision)};
    } catch (const StructureError& e) {
      // A failed universal property is the audit's finding, not an error.
      body["coproduct"] = json::object();
      body["coproduct"]["universal_property"] = "failed";
      body["coproduct"]["detail"] = e.what();
      body["verdict"] = "not-a-coproduct";
      return {std::move(body), 0};
    }
  }
  // enumerate
  int da = static_cast<int>(need_int(p, "$.payload", "dom_atoms", 1, 4));
  int ca = static_cast<int>(need_int(p, "$.payload", "cod_atoms", 1, 4));
  balg::Category cat;
  ObjectId dom = cat.algebra(da), cod = cat.algebra(ca);
  json fibers = json::array();
  for (const auto& m : cat.hom(dom, cod)) fibers.push_back(m.fiber);
  body["verdict"] = "enumerated";
  body["morphisms"] = fibers.size();
  body["fibers"] = fibers;
  return {std::move(body), 0};
}

// ---- oml -------------------------------------------------------------------

oml::Lattice build_lattice(const json& spec, const std::string& path) {
  if (!spec.is_object()) throw DomainError(path + ": expected an object");
  auto builder = need_string(spec, path, "builder");
  try {
    if (builder == "boolean")
      return oml::boolean_lattice(static_cast<int>(need_int(spec, path, "atoms", 1, 4)));
    if (builder == "mo")
      return oml::mo(static_cast<int>(need_int(spec, path, "pairs", 1, 6)));
    if (builder == "product")
      return oml::product(build_lattice(need(spec, path, "left"), path + ".left"),
                          build_lattice(need(spec, path, "right"), path + ".right"));
  } catch (const StructureError& e) {
    throw DomainError(path + ": " + e.what());
  }
  if (builder != "table")
    throw DomainError(path + ".builder: unknown builder \"" + builder + "\"");

  oml::Lattice l;
  l.n = static_cast<int>(need_int(spec, path, "n", 2, 32));
  auto table = [&](const char* key, std::size_t want) {
    const json& arr = need_array(spec, path, key);
    if (arr.size() != want)
      throw DomainError(path + "." + std::string(key) + ": expected " +
                        std::to_string(want) + " entries");
    std::vector<int> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (!arr[i].is_number_integer() || arr[i].get<std::int64_t>() < 0 ||
          arr[i].get<std::int64_t>() >= l.n)
        throw DomainError(path + "." + std::string(key) + "[" + std::to_string(i) +
                          "]: expected an element index in [0, " +
                          std::to_string(l.n - 1) + "]");
      out.push_back(static_cast<int>(arr[i].get<std::int64_t>()));
    }
    return out;
  };
  l.meet = table("meet", static_cast<std::size_t>(l.n) * l.n);
  l.join = table("join", static_cast<std::size_t>(l.n) * l.n);
  l.ortho = table("ortho", static_cast<std::size_t>(l.n));
  l.zero = static_cast<int>(need_int(spec, path, "zero", 0, l.n - 1));
  l.one = static_cast<int>(need_int(spec, path, "one", 0, l.n - 1));
  try {
    oml::validate_lattice(l);
  } catch (const StructureError& e) {
    if (std::string(e.what()) == "orthomodular law fails") {
      // Re-derive the witness so the error names the violating elements.
      for (int x = 0; x < l.n; ++x)
        for (int y = 0; y < l.n; ++y)
          if (l.le(x, y) && l.join_of(x, l.meet_of(l.ortho_of(x), y)) != y)
            throw DomainError(
                path + ": orthomodular law fails at (" + std::to_string(x) + ", " +
                std::to_string(y) + "): join(" + std::to_string(x) + ", meet(" +
                std::to_string(l.ortho_of(x)) + ", " + std::to_string(y) + ")) = " +
                std::to_string(l.join_of(x, l.meet_of(l.ortho_of(x), y))) +
                ", expected " + std::to_string(y));
    }
    throw DomainError(path + ": " + e.what());
  }
  return l;
}

std::vector<int> need_elements(const json& p, const std::string& path, const char* key,
                               int n) {
  const json& arr = need_array(p, path, key);
  std::vector<int> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number_integer() || arr[i].get<std::int64_t>() < 0 ||
        arr[i].get<std::int64_t>() >= n)
      throw DomainError(path + "." + std::string(key) + "[" + std::to_string(i) +
                        "]: expected an element index in [0, " + std::to_string(n - 1) +
                        "]");
    out.push_back(static_cast<int>(arr[i].get<std::int64_t>()));
  }
  return out;
}

bool is_ortho_automorphism(const oml::Lattice& l, const std::vector<int>& m) {
  if (m.size() != static_cast<std::size_t>(l.n)) return false;
  std::vector<bool> hit(static_cast<std::size_t>(l.n), false);
  for (int x = 0; x < l.n; ++x) {
    int mx = m[static_cast<std::size_t>(x)];
    if (mx < 0 || mx >= l.n || hit[static_cast<std::size_t>(mx)]) return false;
    hit[static_cast<std::size_t>(mx)] = true;
  }
  for (int x = 0; x < l.n; ++x) {
    if (m[static_cast<std::size_t>(l.ortho_of(x))] !=
        l.ortho_of(m[static_cast<std::size_t>(x)]))
      return false;
    for (int y = 0; y < l.n; ++y)
      if (m[static_cast<std::size_t>(l.meet_of(x, y))] !=
              l.meet_of(m[static_cast<std::size_t>(x)], m[static_cast<std::size_t>(y)]) ||
          m[static_cast<std::size_t>(l.join_of(x, y))] !=
              l.join_of(m[static_cast<std::size_t>(x)], m[static_cast<std::size_t>(y)]))
        return false;
  }
  return true;
}

RunOutcome run_oml(const WorkbenchRequest& req, int, json body) {
  const json& p = req.payload;
  auto l = build_lattice(need(p, "$.payload", "lattice"), "$.payload.lattice");
  if (req.task == "decide") {
    auto s = need_elements(p, "$.payload", "left", l.n);
    auto q = need_elements(p, "$.payload", "right", l.n);
    auto check = oml::internal_direct_sum(l, s, q);
    body["verdict"] = check.ok() ? "independent" : "not-independent";
    json cj = json::object();
    cj["factors_closed"] = check.factors_closed;
    cj["cover_ok"] = check.cover_ok;
    cj["summable_ok"] = check.summable_ok;
    cj["iso_ok"] = check.iso_ok;
    if (!check.detail.empty()) cj["detail"] = check.detail;
    body["direct_sum"] = cj;
    if (check.ok() && p.contains("sigma_left") && p.contains("sigma_right")) {
      auto sigma_s = need_elements(p, "$.payload", "sigma_left", l.n);
      auto sigma_q = need_elements(p, "$.payload", "sigma_right", l.n);
      if (sigma_s.size() != s.size())
        throw DomainError("$.payload.sigma_left: expected " + std::to_string(s.size()) +
                          " images");
      if (sigma_q.size() != q.size())
        throw DomainError("$.payload.sigma_right: expected " + std::to_string(q.size()) +
                          " images");
      auto ext = oml::joint_extension(l, s, q, sigma_s, sigma_q);
      body["extension"] = ext;
      body["extension_is_automorphism"] = is_ortho_automorphism(l, ext);
    }
    return {std::move(body), 0};
  }
  if (req.task == "audit") {
    std::uint64_t summable_pairs = 0, meet_zero_pairs = 0;
    bool collapse = true;
    for (int x = 0; x < l.n; ++x)
      for (int y = 0; y < l.n; ++y) {
        bool s = oml::summable(l, x, y);
        bool z = l.meet_of(x, y) == l.zero;
        if (s) ++summable_pairs;
        if (z) ++meet_zero_pairs;
        if (s != z) collapse = false;
      }
    body["verdict"] = "audited";
    body["elements"] = l.n;
    body["atoms"] = oml::atoms_of(l).size();
    body["summable_pairs"] = summable_pairs;
    body["trivial_meet_pairs"] = meet_zero_pairs;
    body["summability_is_trivial_meet"] = collapse;
    body["automorphisms"] = oml::automorphisms(l).size();
    return {std::move(body), 0};
  }
  // enumerate
  body["verdict"] = "enumerated";
  body["elements"] = l.n;
  body["atoms"] = oml::atoms_of(l);
  auto autos = oml::automorphisms(l);
  body["automorphism_count"] = autos.size();
  json tables = json::array();
  for (std::size_t i = 0; i < autos.size() && i < 64; ++i) tables.push_back(autos[i]);
  body["automorphisms"] = tables;
  return {std::move(body), 0};
}

// ---- opalg -----------------------------------------------------------------

opalg::CPMap parse_operation(const json& spec, const std::string& path) {
  if (!spec.is_object()) throw DomainError(path + ": expected an object");
  int in = static_cast<int>(need_int(spec, path, "in", 1, 8));
  int out = static_cast<int>(need_int(spec, path, "out", 1, 8));
  try {
    if (spec.contains("choi")) {
      auto choi = report::parse_complex_matrix(spec.at("choi"), in * out, in * out,
                                               path + ".choi");
      return opalg::CPMap::from_choi(in, out, choi);
    }
    if (spec.contains("kraus")) {
      const json& arr = need_array(spec, path, "kraus");
      if (arr.empty()) throw DomainError(path + ".kraus: expected at least one matrix");
      std::vector<opalg::Mat> kraus;
      for (std::size_t i = 0; i < arr.size(); ++i)
        kraus.push_back(report::parse_complex_matrix(
            arr[i], out, in, path + ".kraus[" + std::to_string(i) + "]"));
      return opalg::CPMap::from_kraus(in, out, kraus);
    }
  } catch (const StructureError& e) {
    throw DomainError(path + ": " + e.what());
  }
  throw DomainError(path + ": expected a \"choi\" or \"kraus\" presentation");
}

opalg::StarMono parse_embedding(const json& spec, const std::string& path) {
  if (!spec.is_object()) throw DomainError(path + ": expected an object");
  try {
    if (spec.contains("canonical")) {
      auto side = need_string(spec, path, "canonical");
      int src = static_cast<int>(need_int(spec, path, "src", 1, 8));
      int mult = static_cast<int>(need_int(spec, path, "mult", 1, 8));
      if (side == "left") return opalg::StarMono::canonical_left(src, mult);
      if (side == "right") return opalg::StarMono::canonical_right(mult, src);
      throw DomainError(path + ".canonical: expected \"left\" or \"right\"");
    }
    int src = static_cast<int>(need_int(spec, path, "src", 1, 8));
    int mult = static_cast<int>(need_int(spec, path, "mult", 1, 8));
    auto u = report::parse_complex_matrix(need(spec, path, "u"), src * mult, src * mult,
                                          path + ".u");
    return opalg::StarMono(src, mult, u);
  } catch (const StructureError& e) {
    throw DomainError(path + ": " + e.what());
  }
}

json operation_json(const opalg::CPMap& op) {
  json out = json::object();
  out["in"] = op.in_dim();
  out["out"] = op.out_dim();
  out["choi"] = report::complex_matrix(op.choi());
  return out;
}

std::pair<opalg::StarMono, opalg::StarMono> build_embedding_pair(const json& p) {
  auto f_a = parse_embedding(need(p, "$.payload", "f_a"), "$.payload.f_a");
  auto f_b = parse_embedding(need(p, "$.payload", "f_b"), "$.payload.f_b");
  if (f_a.dst_dim() != f_b.dst_dim())
    throw DomainError("$.payload.f_b: embeddings target different algebras");
  return {std::move(f_a), std::move(f_b)};
}

struct OpalgDecide {
  opalg::StarMono f_a, f_b;
  opalg::CPMap alpha, beta;
};

OpalgDecide build_opalg_decide(const json& p) {
  auto [f_a, f_b] = build_embedding_pair(p);
  auto alpha = parse_operation(need(p, "$.payload", "alpha"), "$.payload.alpha");
  auto beta = parse_operation(need(p, "$.payload", "beta"), "$.payload.beta");
  if (alpha.in_dim() != f_a.src_dim() || alpha.out_dim() != f_a.src_dim())
    throw DomainError("$.payload.alpha: operation dimensions do not match f_a");
  if (beta.in_dim() != f_b.src_dim() || beta.out_dim() != f_b.src_dim())
    throw DomainError("$.payload.beta: operation dimensions do not match f_b");
  return {std::move(f_a), std::move(f_b), std::move(alpha), std::move(beta)};
}

RunOutcome run_opalg(const WorkbenchRequest& req, int, json body) {
  const json& p = req.payload;
  if (req.task == "decide") {
    auto [f_a, f_b, alpha, beta] = build_opalg_decide(p);
    opalg::MatrixAlgebra ambient(f_a.dst_dim());
    opalg::FeasibilityParams params;
    if (req.tol) params.tol = *req.tol;
    if (req.max_iter) params.max_iter = *req.max_iter;
    auto res = opalg::search_joint_extension(f_a, f_b, alpha, beta, ambient, params);
    bool found = res.status == opalg::FeasibilityStatus::Found;
    body["verdict"] = found ? "found" : "unknown";
    body["iterations"] = res.iterations;
    body["constraint_residual"] = report::format_real(res.constraint_residual);
    body["affine_floor"] = report::format_real(res.affine_floor);
    if (found) {
      body["verify_residual"] = report::format_real(res.verify_residual);
      body["extension"] = operation_json(*res.extension);
    } else if (res.affine_floor > params.tol) {
      // The linear part of the constraints is already contradictory, so the
      // Unknown is in fact a proof of non-existence.
      body["nonexistence_proved"] = true;
    }
    return {std::move(body), found ? 0 : 2};
  }
  if (req.task == "tensor") {
    auto alpha = parse_operation(need(p, "$.payload", "alpha"), "$.payload.alpha");
    auto beta = parse_operation(need(p, "$.payload", "beta"), "$.payload.beta");
    if (alpha.in_dim() != alpha.out_dim())
      throw DomainError("$.payload.alpha: expected an endomorphism operation");
    if (beta.in_dim() != beta.out_dim())
      throw DomainError("$.payload.beta: expected an endomorphism operation");
    auto f_a = opalg::StarMono::canonical_left(alpha.in_dim(), beta.in_dim());
    auto f_b = opalg::StarMono::canonical_right(alpha.in_dim(), beta.in_dim());
    auto gamma = opalg::tensor_operation(alpha, beta);
    double tol = req.tol.value_or(opalg::kVerificationTol);
    auto chk = opalg::verify_extension(gamma, f_a, f_b, alpha, beta, tol);
    body["verdict"] = chk.ok ? "extends" : "fails-restriction";
    body["restriction_residual"] = report::format_real(chk.residual);
    body["min_choi_eigenvalue"] = report::format_real(gamma.min_choi_eigenvalue());
    body["product_extension"] =
        opalg::is_product_extension(gamma, f_a, f_b, opalg::kFeasibilityTol);
    body["tensor"] = operation_json(gamma);
    return {std::move(body), 0};
  }
  // audit: factorization certificate detection
  auto [f_a, f_b] = build_embedding_pair(p);
  opalg::MatrixAlgebra ambient(f_a.dst_dim());
  auto u = opalg::detect_tensor_factorization(f_a.image_units(), f_b.image_units(),
                                              ambient);
  body["verdict"] = u ? "factorized" : "no-certificate";
  body["ambient_dim"] = ambient.n;
  if (u) body["factor_unitary"] = report::complex_matrix(*u);
  return {std::move(body), 0};
}

// ---- site ------------------------------------------------------------------

struct SiteInstance {
  std::unique_ptr<qft::CausalSite> site;
  std::unique_ptr<qft::FunctorAssignment> assignment;
  std::vector<std::vector<int>> covers;
  int samples = 5;
};

SiteInstance build_site(const json& p) {
  SiteInstance out;
  out.site = std::make_unique<qft::CausalSite>();

  std::map<std::string, int> region_of;
  std::map<std::string, int> region_dim;
  const json& regions = need_array(p, "$.payload", "regions");
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const std::string path = "$.payload.regions[" + std::to_string(i) + "]";
    auto name = need_string(regions[i], path, "name");
    int dim = static_cast<int>(need_int(regions[i], path, "dim", 1, 8));
    if (!region_of.emplace(name, out.site->add_region(name)).second)
      throw DomainError(path + ".name: duplicate region \"" + name + "\"");
    region_dim[name] = dim;
  }
  auto region_index = [&](const json& j, const std::string& path, const char* key) {
    auto name = need_string(j, path, key);
    auto it = region_of.find(name);
    if (it == region_of.end())
      throw DomainError(path + "." + std::string(key) + ": unknown region \"" + name +
                        "\"");
    return it->second;
  };

  std::map<std::string, int> embedding_of;
  const json& embeddings = need_array(p, "$.payload", "embeddings");
  for (std::size_t i = 0; i < embeddings.size(); ++i) {
    const std::string path = "$.payload.embeddings[" + std::to_string(i) + "]";
    auto name = need_string(embeddings[i], path, "name");
    int dom = region_index(embeddings[i], path, "dom");
    int cod = region_index(embeddings[i], path, "cod");
    if (!embedding_of.emplace(name, out.site->add_embedding(name, dom, cod)).second)
      throw DomainError(path + ".name: duplicate embedding \"" + name + "\"");
  }
  auto embedding_index = [&](const json& v, const std::string& path) {
    if (!v.is_string()) throw DomainError(path + ": expected an embedding name");
    auto it = embedding_of.find(v.get<std::string>());
    if (it == embedding_of.end())
      throw DomainError(path + ": unknown embedding \"" + v.get<std::string>() + "\"");
    return it->second;
  };

  if (p.contains("composites")) {
    const json& comps = need_array(p, "$.payload", "composites");
    for (std::size_t i = 0; i < comps.size(); ++i) {
      const std::string path = "$.payload.composites[" + std::to_string(i) + "]";
      if (!comps[i].is_array() || comps[i].size() != 3)
        throw DomainError(path + ": expected [first, then, equals]");
      try {
        out.site->declare_composite(embedding_index(comps[i][0], path + "[0]"),
                                    embedding_index(comps[i][1], path + "[1]"),
                                    embedding_index(comps[i][2], path + "[2]"));
      } catch (const DomainError& e) {
        throw DomainError(path + ": " + e.what());
      }
    }
  }
  if (p.contains("spacelike")) {
    const json& pairs = need_array(p, "$.payload", "spacelike");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const std::string path = "$.payload.spacelike[" + std::to_string(i) + "]";
      if (!pairs[i].is_array() || pairs[i].size() != 2)
        throw DomainError(path + ": expected [first, second]");
      try {
        out.site->declare_spacelike(embedding_index(pairs[i][0], path + "[0]"),
                                    embedding_index(pairs[i][1], path + "[1]"));
      } catch (const DomainError& e) {
        throw DomainError(path + ": " + e.what());
      }
    }
  }
  try {
    out.site->validate();
  } catch (const StructureError& e) {
    throw DomainError(std::string("$.payload: ") + e.what());
  }

  out.assignment = std::make_unique<qft::FunctorAssignment>(*out.site);
  for (const auto& [name, region] : region_of)
    out.assignment->assign_region(region, region_dim.at(name));
  for (std::size_t i = 0; i < embeddings.size(); ++i) {
    const std::string path = "$.payload.embeddings[" + std::to_string(i) + "]";
    const auto& e = out.site->embedding(
        embedding_of.at(need_string(embeddings[i], path, "name")));
    int src = region_dim.at(out.site->region_name(e.dom));
    int dst = region_dim.at(out.site->region_name(e.cod));
    if (dst % src != 0)
      throw DomainError(path + ": codomain dimension is not a multiple of the domain");
    int mult = dst / src;
    try {
      if (embeddings[i].contains("canonical")) {
        auto side = need_string(embeddings[i], path, "canonical");
        if (side == "left")
          out.assignment->assign_embedding(embedding_of.at(e.name),
                                           opalg::StarMono::canonical_left(src, mult));
        else if (side == "right")
          out.assignment->assign_embedding(embedding_of.at(e.name),
                                           opalg::StarMono::canonical_right(mult, src));
        else
          throw DomainError(path + ".canonical: expected \"left\" or \"right\"");
      } else {
        auto u = report::parse_complex_matrix(need(embeddings[i], path, "u"), dst, dst,
                                              path + ".u");
        out.assignment->assign_embedding(embedding_of.at(e.name),
                                         opalg::StarMono(src, mult, u));
      }
    } catch (const StructureError& err) {
      throw DomainError(path + ": " + err.what());
    }
  }

  if (p.contains("covers")) {
    const json& covers = need_array(p, "$.payload", "covers");
    for (std::size_t i = 0; i < covers.size(); ++i) {
      const std::string path = "$.payload.covers[" + std::to_string(i) + "]";
      if (!covers[i].is_array() || covers[i].empty())
        throw DomainError(path + ": expected a non-empty array of embedding names");
      std::vector<int> cover;
      int cod = -1;
      for (std::size_t k = 0; k < covers[i].size(); ++k) {
        int e = embedding_index(covers[i][k], path + "[" + std::to_string(k) + "]");
        if (cod == -1) cod = out.site->embedding(e).cod;
        if (out.site->embedding(e).cod != cod)
          throw DomainError(path + "[" + std::to_string(k) +
                            "]: cover embeddings must share a codomain");
        cover.push_back(e);
      }
      out.covers.push_back(std::move(cover));
    }
  }
  if (p.contains("samples"))
    out.samples = static_cast<int>(need_int(p, "$.payload", "samples", 1, 16));
  return out;
}

RunOutcome run_site(const WorkbenchRequest& req, int, json body) {
  auto inst = build_site(req.payload);
  const auto& site = *inst.site;
  const auto& f = *inst.assignment;

  auto cov = qft::check_covariance(site, f);
  json cj = json::object();
  cj["ok"] = cov.ok;
  cj["residual"] = report::format_real(cov.residual);
  if (!cov.detail.empty()) cj["detail"] = cov.detail;
  body["covariance"] = cj;
  if (!cov.ok) {
    body["verdict"] = "fail";
    return {std::move(body), 0};
  }

  bool any_fail = false, any_inconclusive = false;

  auto causal = qft::check_einstein_causality(site, f, req.tol.value_or(1e-10));
  json causj = json::object();
  causj["ok"] = causal.ok;
  json cpairs = json::array();
  for (const auto& pr : causal.pairs) {
    json e = json::object();
    e["pair"] = json::array(
        {site.embedding(pr.e1).name, site.embedding(pr.e2).name});
    e["commute"] = pr.commute;
    e["worst_commutator"] = report::format_real(pr.worst);
    if (pr.witness)
      e["witness_units"] = json::array({pr.witness->first, pr.witness->second});
    cpairs.push_back(e);
  }
  causj["pairs"] = cpairs;
  body["causality"] = causj;
  if (!causal.ok) any_fail = true;

  qft::OpIndParams params;
  params.samples = inst.samples;
  if (req.tol) params.feasibility.tol = *req.tol;
  if (req.max_iter) params.feasibility.max_iter = *req.max_iter;
  auto opind = qft::check_opind(site, f, params);
  json oj = json::object();
  oj["all_pass"] = opind.all_pass;
  json opairs = json::array();
  for (const auto& pr : opind.pairs) {
    json e = json::object();
    e["pair"] = json::array(
        {site.embedding(pr.e1).name, site.embedding(pr.e2).name});
    e["verdict"] = pr.verdict == qft::AxiomVerdict::Pass          ? "pass"
                   : pr.verdict == qft::AxiomVerdict::Fail        ? "fail"
                                                                  : "inconclusive";
    e["samples"] = pr.samples;
    e["found"] = pr.found;
    e["worst_verify"] = report::format_real(pr.worst_verify);
    if (pr.factor_unitary) e["factor_unitary"] = report::complex_matrix(*pr.factor_unitary);
    if (pr.witness) {
      e["witness_alpha"] = operation_json(pr.witness->first);
      e["witness_beta"] = operation_json(pr.witness->second);
      e["witness_floor"] = report::format_real(pr.witness_floor);
    }
    if (!pr.detail.empty()) e["detail"] = pr.detail;
    opairs.push_back(e);
    if (pr.verdict == qft::AxiomVerdict::Fail) any_fail = true;
    if (pr.verdict == qft::AxiomVerdict::Inconclusive) any_inconclusive = true;
  }
  oj["pairs"] = opairs;
  body["operational_independence"] = oj;

  if (!inst.covers.empty()) {
    json aj = json::array();
    for (const auto& cover : inst.covers) {
      auto add = qft::check_weak_additivity(site, f, cover);
      json e = json::object();
      json names = json::array();
      for (int emb : cover) names.push_back(site.embedding(emb).name);
      e["cover"] = names;
      e["ok"] = add.ok;
      e["generated_dim"] = add.generated_dim;
      e["ambient_dim"] = add.ambient_dim;
      e["rounds"] = add.rounds;
      aj.push_back(e);
      if (!add.ok) any_fail = true;
    }
    body["weak_additivity"] = aj;
  }

  body["verdict"] = any_fail ? "fail" : any_inconclusive ? "inconclusive" : "pass";
  return {std::move(body), any_inconclusive && !any_fail ? 2 : 0};
}

// ---- suite -----------------------------------------------------------------

RunOutcome run_all(int jobs) {
  auto claims = corpus::run_suite(jobs);
  auto body = corpus::suite_report(claims);
  return {body, body.at("verdict").get<std::string>() == "undecided" ? 2 : 0};
}

void validate_payload(const WorkbenchRequest& req) {
  const json& p = req.payload;
  const auto& kind = req.kind;
  const auto& task = req.task;
  if (kind == "finset") {
    if (task == "enumerate") {
      need_labels(p, "$.payload", "ambient", 4);
    } else if (task == "audit") {
      need_labels(p, "$.payload", "left", 3);
      need_labels(p, "$.payload", "right", 3);
    } else {
      if (task == "tensor") {
        auto s = need_string(p, "$.payload", "structure");
        if (s != "disjoint-union" && s != "union")
          throw DomainError(
              "$.payload.structure: expected \"disjoint-union\" or \"union\"");
      }
      build_finset_pair(p);
    }
  } else if (kind == "finvect") {
    if (task == "enumerate") {
      need_prime(p, "$.payload");
      need_int(p, "$.payload", "dim", 0, 4);
    } else if (task == "audit") {
      need_prime(p, "$.payload");
      need_int(p, "$.payload", "left_dim", 0, 3);
      need_int(p, "$.payload", "right_dim", 0, 3);
    } else {
      build_finvect_pair(p);
    }
  } else if (kind == "pregeom") {
    if (task == "enumerate")
      build_geometry(need(p, "$.payload", "geometry"), "$.payload.geometry");
    else
      build_pregeom_pair(p);
  } else if (kind == "bool") {
    if (task == "decide") {
      build_bool_pair(p);
    } else if (task == "adjudicate") {
      int n = static_cast<int>(need_int(p, "$.payload", "n", 2, 5));
      need_int(p, "$.payload", "k", 1, n - 1);
    } else if (task == "audit") {
      need_int(p, "$.payload", "left_atoms", 1, 3);
      need_int(p, "$.payload", "right_atoms", 1, 3);
      auto mode = need_string(p, "$.payload", "mode");
      if (mode != "exhaustive" && mode != "constructive")
        throw DomainError("$.payload.mode: expected \"exhaustive\" or \"constructive\"");
    } else {
      need_int(p, "$.payload", "dom_atoms", 1, 4);
      need_int(p, "$.payload", "cod_atoms", 1, 4);
    }
  } else if (kind == "oml") {
    auto l = build_lattice(need(p, "$.payload", "lattice"), "$.payload.lattice");
    if (task == "decide") {
      need_elements(p, "$.payload", "left", l.n);
      need_elements(p, "$.payload", "right", l.n);
      if (p.contains("sigma_left")) need_elements(p, "$.payload", "sigma_left", l.n);
      if (p.contains("sigma_right")) need_elements(p, "$.payload", "sigma_right", l.n);
    }
  } else if (kind == "opalg") {
    if (task == "tensor") {
      auto alpha = parse_operation(need(p, "$.payload", "alpha"), "$.payload.alpha");
      auto beta = parse_operation(need(p, "$.payload", "beta"), "$.payload.beta");
      if (alpha.in_dim() != alpha.out_dim())
        throw DomainError("$.payload.alpha: expected an endomorphism operation");
      if (beta.in_dim() != beta.out_dim())
        throw DomainError("$.payload.beta: expected an endomorphism operation");
    } else if (task == "decide") {
      build_opalg_decide(p);
    } else {
      build_embedding_pair(p);
    }
  } else if (kind == "site") {
    build_site(p);
  } else {
    // kind "all": the suite takes no payload fields.
    if (!p.empty())
      throw DomainError("$.payload: the suite accepts no payload fields");
  }
}

}  // namespace

WorkbenchRequest parse_request(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("$: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw DomainError("$: expected a request object");

  WorkbenchRequest req;
  req.kind = need_string(j, "$", "kind");
  if (!support_matrix().contains(req.kind))
    throw DomainError("$.kind: unknown kind \"" + req.kind + "\"");
  req.task = need_string(j, "$", "task");
  if (req.task == "compatibility") req.task = "compat";
  if (req.task == "theorem-suite") req.task = "suite";
  if (!support_matrix().at(req.kind).contains(req.task))
    throw DomainError("$.task: task \"" + req.task + "\" is not supported for kind \"" +
                      req.kind + "\"");

  if (j.contains("budget")) {
    const json& b = j.at("budget");
    if (b.is_number_integer() && b.get<std::int64_t>() > 0) {
      req.budget.max_pairs = b.get<std::uint64_t>();
      req.budget.max_candidates = b.get<std::uint64_t>();
    } else if (b.is_object()) {
      if (b.contains("max_pairs"))
        req.budget.max_pairs = need_int(j.at("budget"), "$.budget", "max_pairs", 1,
                                        std::numeric_limits<std::int64_t>::max());
      if (b.contains("max_candidates"))
        req.budget.max_candidates =
            need_int(j.at("budget"), "$.budget", "max_candidates", 1,
                     std::numeric_limits<std::int64_t>::max());
    } else {
      throw DomainError("$.budget: expected a positive integer or an object");
    }
  }
  if (j.contains("tol")) {
    const json& t = j.at("tol");
    double tol = t.is_string() ? report::parse_real(t.get<std::string>(), "$.tol")
                               : (t.is_number() ? t.get<double>() : -1.0);
    if (!(tol > 0.0)) throw DomainError("$.tol: expected a positive number");
    req.tol = tol;
  }
  if (j.contains("max_iter"))
    req.max_iter = static_cast<int>(need_int(j, "$", "max_iter", 1, 100'000'000));

  req.payload = j.value("payload", json::object());
  if (!req.payload.is_object()) throw DomainError("$.payload: expected an object");
  validate_payload(req);
  return req;
}

RunOutcome run(const WorkbenchRequest& req, int jobs) {
  if (jobs < 1) throw DomainError("jobs must be positive");
  if (req.kind == "all") {
    auto out = run_all(jobs);
    return out;
  }
  json body = report::envelope(req.kind, req.task);
  RunOutcome out;
  if (req.kind == "finset")
    out = run_finset(req, jobs, std::move(body));
  else if (req.kind == "finvect")
    out = run_finvect(req, jobs, std::move(body));
  else if (req.kind == "pregeom")
    out = run_pregeom(req, jobs, std::move(body));
  else if (req.kind == "bool")
    out = run_bool(req, jobs, std::move(body));
  else if (req.kind == "oml")
    out = run_oml(req, jobs, std::move(body));
  else if (req.kind == "opalg")
    out = run_opalg(req, jobs, std::move(body));
  else
    out = run_site(req, jobs, std::move(body));
  out.body["related_claims"] = related_claims(req.kind, req.task);
  return out;
}

}  // namespace subind::request
