#ifndef QHORN_DOT_HPP_
#define QHORN_DOT_HPP_

#include <string>

#include "qhorn/sldq.hpp"

namespace qhorn {

/// DOT digraph of a derivation: one node per goal in order, edges labeled
/// with the side-clause index or the reduced variable. Deterministic node
/// ids n0, n1, ...; the empty goal renders as the box.
std::string emit_dot(const Program& p, const Derivation& d);

/// DOT digraph of a (bounded) refutation tree. Leaf annotations: repeat,
/// fail, cap.
std::string emit_dot(const Program& p, const RefutationTree& t);

}  // namespace qhorn

#endif  // QHORN_DOT_HPP_
