#pragma once

#include "lodim/coloring.hpp"
#include "lodim/field.hpp"
#include "lodim/graph.hpp"
#include "lodim/linalg.hpp"
#include "lodim/result.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lodim {

enum class RepKind { orthogonal, independent };

std::string to_string(RepKind k);

/// Vertex -> vector in F^dim.
struct VectorRepresentation {
    FieldSpec field = FieldSpec::prime(2);
    std::size_t dim = 0;
    std::vector<Vec> vectors;
    RepKind kind = RepKind::orthogonal;
};

/// Nonzero self inner products and orthogonality across every edge. Returns a
/// description naming the offending vertex or edge. A missing vector or one of
/// the wrong length or field throws PreconditionError.
std::optional<std::string> orthogonal_violation(const Graph& g, const VectorRepresentation& r);
/// Every u_v lies outside the span of its neighbors' vectors.
std::optional<std::string> independent_violation(const Graph& g, const VectorRepresentation& r);

/// Checks according to r.kind.
std::optional<std::string> representation_violation(const Graph& g, const VectorRepresentation& r);

/// Max over v of dim span{u_w : w in N[v]}. Throws PreconditionError if r does
/// not verify as its declared kind.
std::size_t locality_of_rep(const Graph& g, const VectorRepresentation& r);

/// e_{c(v)} in F^m for a proper coloring with m colors.
VectorRepresentation rep_from_coloring(const Coloring& c, FieldSpec f);

struct OrthoCaps {
    std::size_t od_vertices = 16;
    std::size_t od_dim = 6;
    std::size_t local_vertices = 12;
    unsigned local_max_field = 3;
    std::size_t minrank_vertices = 12;
};

struct LowerBound {
    std::size_t value = 0;
    LowerBoundReason reason = LowerBoundReason::clique;
};

/// max{1; 2 if G has an edge; 3 if G is not bipartite; clique number}.
LowerBound local_od_lower_bounds(const Graph& g);

/// Exhaustive decision: an orthogonal representation in F^t (prime F).
std::optional<VectorRepresentation> find_orthogonal_rep(const Graph& g, FieldSpec f, std::size_t t);

/// Exhaustive decision: an orthogonal representation in F^t whose every
/// closed neighborhood spans at most `ell` dimensions.
std::optional<VectorRepresentation> find_local_rep(const Graph& g, FieldSpec f, std::size_t t, std::size_t ell);

/// Exhaustive decision: an independent representation in F^t.
std::optional<VectorRepresentation> find_independent_rep(const Graph& g, FieldSpec f, std::size_t t);

ParamResult<VectorRepresentation> orthogonality_dimension(const Graph& g, FieldSpec f, const OrthoCaps& caps = {});

struct LocalOdResult {
    std::size_t value = 0;
    VectorRepresentation witness;
    std::size_t dim_cap = 0;
    /// Every smaller locality was ruled out for all ambient dimensions up to dim_cap.
    bool exact_under_cap = false;
    /// The value matches a proven lower bound, so no cap qualification is needed.
    bool exact = false;
    LowerBoundReason reason = LowerBoundReason::exhausted_search;
};

/// dim_cap = 0 means the vertex count.
LocalOdResult local_orthogonality_dimension(const Graph& g, FieldSpec f, std::size_t dim_cap = 0,
                                            const OrthoCaps& caps = {});

struct MinrankResult {
    std::size_t value = 0;
    /// Independent representation of the complement in F^value.
    VectorRepresentation witness;
    /// Matrix representing g with rank value.
    Mat matrix;
    LowerBoundReason reason = LowerBoundReason::exhausted_search;
};

MinrankResult minrank(const Graph& g, FieldSpec f, const OrthoCaps& caps = {});

/// Matrix-pattern check: nonzero diagonal, zero at distinct non-adjacent pairs.
std::optional<std::string> representing_violation(const Graph& g, const Mat& m);

} // namespace lodim
