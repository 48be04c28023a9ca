#ifndef QHORN_PN_HPP_
#define QHORN_PN_HPP_

#include <string>

#include "qhorn/formula.hpp"

namespace qhorn {

/// The alternating chain family: prefix exists e0 forall u1 exists e1 ...
/// forall un exists en, rules e_{i-1} <- u_i, e_i for i in 1..n, and the
/// fact e_n. Scales linearly; the standard benchmark input.
inline Program make_chain_program(int n) {
  Program p;
  std::vector<VarId> e(static_cast<std::size_t>(n) + 1);
  std::vector<VarId> u(static_cast<std::size_t>(n) + 1);
  e[0] = p.declare("e0", Quantifier::Existential);
  for (int i = 1; i <= n; ++i) {
    u[static_cast<std::size_t>(i)] =
        p.declare("u" + std::to_string(i), Quantifier::Universal);
    e[static_cast<std::size_t>(i)] =
        p.declare("e" + std::to_string(i), Quantifier::Existential);
  }
  for (int i = 1; i <= n; ++i)
    p.addClause(Clause{{pos(e[static_cast<std::size_t>(i - 1)]),
                        neg(u[static_cast<std::size_t>(i)]),
                        neg(e[static_cast<std::size_t>(i)])}});
  p.addClause(Clause{{pos(e[static_cast<std::size_t>(n)])}});
  return p;
}

}  // namespace qhorn

#endif  // QHORN_PN_HPP_
