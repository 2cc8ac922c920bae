#include "lodim/result.hpp"

#include "lodim/error.hpp"

namespace lodim {

std::string to_string(LowerBoundReason r) {
    switch (r) {
    case LowerBoundReason::exhausted_search:
        return "exhausted-search";
    case LowerBoundReason::clique:
        return "clique";
    case LowerBoundReason::odd_cycle:
        return "odd-cycle";
    case LowerBoundReason::bipartite_test:
        return "bipartite-test";
    case LowerBoundReason::theorem_citation:
        return "theorem-citation";
    }
    return "unknown";
}

LowerBoundReason lower_bound_reason_from_string(const std::string& s) {
    for (auto r : {LowerBoundReason::exhausted_search, LowerBoundReason::clique, LowerBoundReason::odd_cycle,
                   LowerBoundReason::bipartite_test, LowerBoundReason::theorem_citation})
        if (to_string(r) == s)
            return r;
    throw ParseError("unknown lower bound reason '" + s + "'");
}

} // namespace lodim
