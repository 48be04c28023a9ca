#include "qhorn/dot.hpp"

#include <sstream>

namespace qhorn {
namespace {

std::string goalLabel(const Program& p, const Clause& c) {
  if (c.empty()) return "□";  // box: the empty goal
  std::string s = "← ";       // left arrow
  for (std::size_t i = 0; i < c.lits.size(); ++i) {
    if (i) s += ", ";
    if (c.lits[i].positive) s += "~";  // goals carry negated literals
    s += p.var(c.lits[i].var).name;
  }
  return s;
}

}  // namespace

std::string emit_dot(const Program& p, const Derivation& d) {
  std::ostringstream os;
  os << "digraph derivation {\n";
  os << "  n0 [label=\"" << goalLabel(p, d.topGoal) << "\"];\n";
  for (std::size_t i = 0; i < d.steps.size(); ++i)
    os << "  n" << (i + 1) << " [label=\""
       << goalLabel(p, d.steps[i].second) << "\"];\n";
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    os << "  n" << i << " -> n" << (i + 1) << " [label=\"";
    if (const ResolveStep* r = std::get_if<ResolveStep>(&d.steps[i].first))
      os << "C" << r->sideIndex;
    else
      os << "∀-Red "
         << p.var(std::get<ForallReduceStep>(d.steps[i].first).var).name;
    os << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string emit_dot(const Program& p, const RefutationTree& t) {
  std::ostringstream os;
  os << "digraph refutation_tree {\n";
  for (std::size_t i = 0; i < t.nodes.size(); ++i) {
    const RefTreeNode& n = t.nodes[i];
    os << "  n" << i << " [label=\"" << goalLabel(p, n.goal);
    switch (n.kind) {
      case RefTreeNode::Kind::Repeat: os << " (repeat)"; break;
      case RefTreeNode::Kind::DeadEnd: os << " (fail)"; break;
      case RefTreeNode::Kind::CapHit: os << " (cap)"; break;
      default: break;
    }
    os << "\"];\n";
  }
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    for (const RefTreeNode::Edge& e : t.nodes[i].children) {
      os << "  n" << i << " -> n" << e.child << " [label=\"";
      if (e.isReduce)
        os << "∀-Red " << p.var(e.var).name;
      else
        os << "C" << e.sideIndex;
      os << "\"];\n";
    }
  os << "}\n";
  return os.str();
}

}  // namespace qhorn
