#ifndef QHORN_SOLVER_HPP_
#define QHORN_SOLVER_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qhorn/sldq.hpp"

namespace qhorn {

/// Per-existential solve states. Monotone within one query:
/// New -> Loop -> {Yes, No, Loop, Inf final}, or New -> No.
enum class SolveState { New, Yes, No, Loop, Inf };

enum class Verdict { Yes, No, Loop };

enum class BlockStatus { BlockedYes, BlockedNo };

const char* to_string(SolveState s);
const char* to_string(Verdict v);

/// The five-state machine over one program. The state table lives for the
/// lifetime of the object; output() constructs a fresh Solver per query, so
/// verdicts never depend on session history. Iterative (explicit frame
/// stack): clause chains of ~10^5 variables must not overflow the C stack.
class Solver {
 public:
  /// Requires a Horn program; throws NotHornError otherwise.
  explicit Solver(const Program& pprime);

  /// Alg-3 state of x, memoized in the table. Re-entry during an ongoing
  /// computation returns the provisional state (first initialization Loop).
  SolveState refutation_state(VarId x);

  /// State contributed by one definite clause (existential head), walking
  /// the body left-to-right. Universal body literals are deferred and
  /// resolved through comp_block only when the walk otherwise ends Yes/Inf.
  SolveState test_clause(const Clause& c);

  /// BlockedYes iff some existential body literal l with level(u) <= level(l)
  /// currently has state No or Loop. Inf does not block: the literal is
  /// refutable, so u can still be reduced.
  BlockStatus comp_block(VarId u, const Clause& c) const;

  const Program& program() const { return p_; }
  SolveState state(VarId x) const { return st_[static_cast<std::size_t>(x)]; }
  std::uint64_t work() const { return work_; }
  void reset();

 private:
  struct RefFrame {
    VarId x;
    std::size_t idx = 0;
    bool second = false;  // scanning the remaining clauses after a Yes
    bool infflag = false;
  };
  struct TcFrame {
    const Clause* clause;
    std::size_t pos = 0;
    bool infflag = false;
  };

  void callRefutation(VarId x);
  void stepRef(RefFrame& f);
  void stepTc(TcFrame& f);
  void finish(SolveState s);
  SolveState run();

  const Program& p_;
  // Head clause indices per existential var, flattened (CSR layout):
  // clauses with head x are locHFlat_[locHOff_[x] .. locHOff_[x+1]).
  std::vector<int> locHFlat_;
  std::vector<std::size_t> locHOff_;
  std::vector<SolveState> st_;
  std::uint64_t work_ = 0;
  std::vector<std::variant<RefFrame, TcFrame>> stack_;
  SolveState ret_ = SolveState::New;
  bool haveRet_ = false;
};

struct SolveResult {
  Verdict verdict = Verdict::No;
  Program pprime;
  Clause topGoal;
  /// (variable of pprime, state) for every existential, prefix order.
  std::vector<std::pair<VarId, SolveState>> states;
  std::uint64_t work = 0;
};

/// output(P, C): builds P' and the top goal, runs the machine. Definite
/// query: the head's refutation state, {Yes, Inf} -> yes. Goal query:
/// left-to-right over the goal literals, short-circuiting -- first No wins
/// as no, a Loop before any No wins as loop; universal goal literals do not
/// contribute. Throws NewVariableError when var(q) is not within var(p).
SolveResult output(const Program& p, const Query& q);

/// `<var> = <state>` per existential variable of P', prefix order.
std::string render_states(const SolveResult& r);

}  // namespace qhorn

#endif  // QHORN_SOLVER_HPP_
