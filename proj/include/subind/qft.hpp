#pragma once

// Axiom audits for algebra-valued functors on finite causal sites.  A site
// lists regions, embeddings with a declared composition table, and a
// spacelike relation on pairs of embeddings into a common region.  An
// assignment sends regions to full matrix algebras and embeddings to unital
// *-monomorphisms; the audits check covariance (functoriality), Einstein
// causality (images of spacelike pairs commute), operational independence
// (joint extensions of local operations), and weak additivity (a declared
// cover generates the ambient algebra).  Causality and operational
// independence are audited separately: neither verdict is inferred from the
// other.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subind/common.hpp"
#include "subind/opalg.hpp"

namespace subind::qft {

using opalg::CPMap;
using opalg::Mat;
using opalg::MatrixAlgebra;
using opalg::StarMono;

// Functoriality residuals are exact algebra up to rounding, so the gate sits
// just above accumulated floating-point noise.
inline constexpr double kCovarianceTol = 1e-12;

struct Embedding {
  std::string name;
  int dom = -1;
  int cod = -1;
  bool is_identity = false;
};

// Finite diagram of regions and embeddings.  Identities are materialized
// automatically, one per region; composites with them resolve implicitly and
// every other composable pair must be declared.  validate() checks that the
// declared table is total on composable pairs, endpoint-consistent, and
// associative, and that spacelike pairs share a codomain.
class CausalSite {
 public:
  int add_region(std::string name);
  int add_embedding(std::string name, int dom, int cod);
  void declare_composite(int first, int then, int equals);
  void declare_spacelike(int a, int b);

  int region_count() const { return static_cast<int>(regions_.size()); }
  const std::string& region_name(int r) const;
  int embedding_count() const { return static_cast<int>(embeddings_.size()); }
  const Embedding& embedding(int e) const;
  int identity_of(int region) const;
  std::optional<int> composite(int first, int then) const;
  const std::vector<std::pair<int, int>>& spacelike_pairs() const {
    return spacelike_;
  }

  void validate() const;

 private:
  void require_region(int r) const;
  void require_embedding(int e) const;

  std::vector<std::string> regions_;
  std::vector<Embedding> embeddings_;
  std::vector<int> identities_;
  std::map<std::pair<int, int>, int> composites_;
  std::vector<std::pair<int, int>> spacelike_;
};

// Region-by-region algebra dimensions plus a *-monomorphism per embedding.
// Regions must be assigned before the embeddings between them; identity
// embeddings are assigned automatically and cannot be overridden.
class FunctorAssignment {
 public:
  explicit FunctorAssignment(const CausalSite& site);

  void assign_region(int region, int dim);
  void assign_embedding(int embedding, StarMono mono);

  bool complete() const;
  const MatrixAlgebra& algebra(int region) const;
  const StarMono& morphism(int embedding) const;

 private:
  const CausalSite* site_;
  std::vector<std::optional<MatrixAlgebra>> algebras_;
  std::vector<std::optional<StarMono>> morphisms_;
};

struct CovarianceReport {
  bool ok = true;
  double residual = 0.0;
  // Offending (first, then, composite) embedding triple when a declared
  // composite fails; (e, -1, e) when an identity fails to act trivially.
  std::optional<std::array<int, 3>> witness;
  std::string detail;
};

CovarianceReport check_covariance(const CausalSite& site,
                                  const FunctorAssignment& f);

struct CausalityPairResult {
  int e1 = -1;
  int e2 = -1;
  bool commute = true;
  double worst = 0.0;
  // Matrix-unit indices, flattened row-major per factor, realizing the worst
  // commutator when the pair fails.
  std::optional<std::pair<int, int>> witness;
};

struct CausalityReport {
  bool ok = true;
  std::vector<CausalityPairResult> pairs;
};

CausalityReport check_einstein_causality(const CausalSite& site,
                                         const FunctorAssignment& f,
                                         double tol = 1e-10);

enum class AxiomVerdict { Pass, Fail, Inconclusive };

struct OpIndParams {
  int samples = 5;
  std::uint64_t seed = 0x517ead17ULL;
  opalg::FeasibilityParams feasibility{};
};

struct OpIndPairResult {
  int e1 = -1;
  int e2 = -1;
  AxiomVerdict verdict = AxiomVerdict::Inconclusive;
  // Conjugating unitary certifying the images as tensor factors; present
  // exactly on Pass.  Every sampled operation pair is re-verified against
  // the transported extension before Pass is reported.
  std::optional<Mat> factor_unitary;
  int samples = 0;
  int found = 0;
  double worst_verify = 0.0;
  // Operation pair whose restriction constraints are affinely infeasible,
  // present exactly on Fail; the floor is a least-squares lower bound on any
  // candidate's constraint residual, so no joint extension exists.
  std::optional<std::pair<CPMap, CPMap>> witness;
  double witness_floor = 0.0;
  std::string detail;
};

struct OpIndReport {
  bool all_pass = true;
  std::vector<OpIndPairResult> pairs;
};

OpIndReport check_opind(const CausalSite& site, const FunctorAssignment& f,
                        const OpIndParams& params = {});

struct AdditivityReport {
  bool ok = false;
  int generated_dim = 0;
  int ambient_dim = 0;
  int rounds = 0;
};

// Closes the union of the cover images under products and checks the span
// reaches the full ambient algebra.  All cover embeddings must land in the
// same region.
AdditivityReport check_weak_additivity(const CausalSite& site,
                                       const FunctorAssignment& f,
                                       const std::vector<int>& cover);

}  // namespace subind::qft
