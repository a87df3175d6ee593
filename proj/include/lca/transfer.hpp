#pragma once

#include "lca/ca.hpp"
#include "lca/subgroup.hpp"

namespace lca {

/// The automaton over H with the same local rule, relabelled through the
/// embedding. Throws GroupMismatch when a memory element lies outside H.
LinearCA restrict_ca(const LinearCA& ca, const Embedding& h);

/// The automaton over the ambient group with memory embed(M) and the same
/// blocks.
LinearCA induce_ca(const LinearCA& ca, const Embedding& h);

/// restrict_ca along the subgroup generated by the memory set.
LinearCA restrict_to_memory_subgroup(const LinearCA& ca);

}  // namespace lca
