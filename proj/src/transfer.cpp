#include "lca/transfer.hpp"

namespace lca {

LinearCA restrict_ca(const LinearCA& ca, const Embedding& h) {
  if (!(ca.group() == h.ambient())) throw GroupMismatch("restrict: embedding targets another group");
  LocalRule rule;
  for (std::size_t i = 0; i < ca.memory().size(); ++i) {
    auto local = h.recognize(ca.memory()[i]);
    if (!local) throw GroupMismatch("restrict: memory element outside the subgroup");
    rule.memory.push_back(std::move(*local));
    rule.blocks.push_back(ca.block(i));
  }
  return LinearCA(h.sub(), ca.field(), ca.dim_v(), std::move(rule));
}

LinearCA induce_ca(const LinearCA& ca, const Embedding& h) {
  if (!(ca.group() == h.sub())) throw GroupMismatch("induce: automaton is not over the embedded subgroup");
  LocalRule rule;
  for (std::size_t i = 0; i < ca.memory().size(); ++i) {
    rule.memory.push_back(h.embed(ca.memory()[i]));
    rule.blocks.push_back(ca.block(i));
  }
  return LinearCA(h.ambient(), ca.field(), ca.dim_v(), std::move(rule));
}

LinearCA restrict_to_memory_subgroup(const LinearCA& ca) {
  return restrict_ca(ca, subgroup_generated(ca.group(), ca.memory()));
}

}  // namespace lca
