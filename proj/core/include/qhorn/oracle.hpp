#ifndef QHORN_ORACLE_HPP_
#define QHORN_ORACLE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qhorn/formula.hpp"

namespace qhorn {

/// An existential choice function: for each (existential variable, assignment
/// to the variables left of it in the prefix) one Boolean value. The key's
/// vector holds the earlier assignments in prefix order.
struct Strategy {
  std::map<std::pair<VarId, std::vector<bool>>, bool> choices;
  friend bool operator==(const Strategy& a, const Strategy& b) {
    return a.choices == b.choices;
  }
  friend bool operator<(const Strategy& a, const Strategy& b) {
    return a.choices < b.choices;
  }
};

inline constexpr int kDefaultOracleCap = 20;

/// Game evaluation in prefix order: true iff the existential player wins.
bool eval_qbf(const Program& p, int varCap = kDefaultOracleCap);

/// All strategies (pre-models) under which every completed path satisfies the
/// matrix. Desk scale only; throws CapExceeded when the strategy space blows
/// up (limit on the produced count).
std::vector<Strategy> enumerate_models(const Program& p,
                                       int varCap = kDefaultOracleCap,
                                       std::uint64_t maxModels = 1u << 20);

/// Model-set inclusion over strategies: true iff every model of `p` is a
/// model of `q`. Requires structurally equal prefixes.
bool implies(const Program& p, const Program& q,
             int varCap = kDefaultOracleCap);

/// Quick satisfiability by the Horn lemmas: Some(true) when all clauses are
/// definite, or when no positive unit clause exists; None when the lemma is
/// silent.
std::optional<bool> horn_quick_sat(const Program& p);

/// For a false program, the index of some clause C' in F-forall or F-goal
/// such that prefix.(F-exists and C') is false; None for true programs.
std::optional<std::size_t> find_witness_goal(const Program& p,
                                             int varCap = kDefaultOracleCap);

}  // namespace qhorn

#endif  // QHORN_ORACLE_HPP_
