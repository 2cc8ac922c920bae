#pragma once

#include <cstddef>
#include <string>

namespace lodim {

/// Why a reported value cannot be smaller.
enum class LowerBoundReason { exhausted_search, clique, odd_cycle, bipartite_test, theorem_citation };

std::string to_string(LowerBoundReason r);
LowerBoundReason lower_bound_reason_from_string(const std::string& s);

/// Exact parameter value together with a witness that independently
/// re-verifies to achieve it.
template <class Witness>
struct ParamResult {
    std::size_t value = 0;
    Witness witness;
    LowerBoundReason reason = LowerBoundReason::exhausted_search;
    bool exact = true;
};

} // namespace lodim
