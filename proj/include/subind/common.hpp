#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace subind {

/// Index of a registered object inside a category registry.
using ObjectId = int;

/// Morphisms were combined against their domains/codomains, or an argument
/// violates a documented precondition.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A structure failed its own laws (closure axioms, lattice laws, a claimed
/// coproduct without the universal property, a non-positive Choi block, ...).
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration was asked to materialize more elements than its hard cap.
class EnumerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Three-valued outcome of an exhaustive search. Undecided is only produced
/// when a budget ran out, never as a silent default.
enum class Decision { Independent, NotIndependent, Undecided };

inline const char* to_string(Decision d) {
  switch (d) {
    case Decision::Independent: return "independent";
    case Decision::NotIndependent: return "not-independent";
    default: return "undecided";
  }
}

/// Caps for the exhaustive searches. Exceeding either cap yields an explicit
/// Undecided verdict carrying the counters reached so far.
struct SearchBudget {
  static constexpr std::uint64_t unlimited = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t max_pairs = unlimited;       // endomorphism pairs examined
  std::uint64_t max_candidates = unlimited;  // extension candidates scanned in total
};

struct SearchStats {
  std::uint64_t pairs_examined = 0;
  std::uint64_t candidates_examined = 0;
  bool budget_exhausted = false;
};

}  // namespace subind
