#include "lodim/ortho.hpp"

#include "lodim/error.hpp"
#include "lodim/indexcoding.hpp"
#include "lodim/packed.hpp"

#include <algorithm>
#include <map>

namespace lodim {

std::string to_string(RepKind k) { return k == RepKind::orthogonal ? "orthogonal" : "independent"; }

namespace {

// Malformed input rather than a failed property: reported as an error.
void check_shape(const Graph& g, const VectorRepresentation& r) {
    if (r.vectors.size() != g.n())
        throw PreconditionError("representation has " + std::to_string(r.vectors.size()) + " vectors for " +
                                std::to_string(g.n()) + " vertices");
    for (std::size_t v = 0; v < g.n(); ++v) {
        if (r.vectors[v].size() != r.dim)
            throw PreconditionError("vertex " + std::to_string(v) + " has a vector of length " +
                                    std::to_string(r.vectors[v].size()) + ", expected " + std::to_string(r.dim));
        for (const auto& e : r.vectors[v])
            if (!(e.field() == r.field))
                throw PreconditionError("vertex " + std::to_string(v) + " has an entry over " + e.field().name());
    }
}

} // namespace

std::optional<std::string> orthogonal_violation(const Graph& g, const VectorRepresentation& r) {
    check_shape(g, r);
    for (std::size_t v = 0; v < g.n(); ++v)
        if (r.dim == 0 || inner_product(r.vectors[v], r.vectors[v]).is_zero())
            return "vertex " + std::to_string(v) + " has a self-orthogonal vector";
    for (auto [u, v] : g.edges())
        if (!inner_product(r.vectors[u], r.vectors[v]).is_zero())
            return "edge " + std::to_string(u) + "-" + std::to_string(v) + " is not orthogonal";
    return std::nullopt;
}

std::optional<std::string> independent_violation(const Graph& g, const VectorRepresentation& r) {
    check_shape(g, r);
    for (std::size_t v = 0; v < g.n(); ++v) {
        Basis span(r.field, r.dim);
        for (auto u : g.neighbors(v))
            span.insert(r.vectors[u]);
        if (extend_basis(span, r.vectors[v]).in_span)
            return "vertex " + std::to_string(v) + " lies in the span of its neighbors";
    }
    return std::nullopt;
}

std::optional<std::string> representation_violation(const Graph& g, const VectorRepresentation& r) {
    return r.kind == RepKind::orthogonal ? orthogonal_violation(g, r) : independent_violation(g, r);
}

std::size_t locality_of_rep(const Graph& g, const VectorRepresentation& r) {
    if (auto why = representation_violation(g, r))
        throw PreconditionError("invalid " + to_string(r.kind) + " representation: " + *why);
    std::size_t best = 0;
    for (std::size_t v = 0; v < g.n(); ++v) {
        Basis span(r.field, r.dim);
        span.insert(r.vectors[v]);
        for (auto u : g.neighbors(v))
            span.insert(r.vectors[u]);
        best = std::max(best, span.size());
    }
    return best;
}

VectorRepresentation rep_from_coloring(const Coloring& c, FieldSpec f) {
    VectorRepresentation r;
    r.field = f;
    r.dim = c.num_colors;
    r.kind = RepKind::orthogonal;
    for (auto col : c.colors) {
        Vec v = zero_vec(f, c.num_colors);
        v[col] = FieldElem::one(f);
        r.vectors.push_back(std::move(v));
    }
    return r;
}

LowerBound local_od_lower_bounds(const Graph& g) {
    LowerBound lb;
    if (g.n() == 0)
        return lb;
    lb = {1, LowerBoundReason::clique};
    if (g.edge_count() > 0)
        lb = {2, LowerBoundReason::bipartite_test};
    if (!is_bipartite(g))
        lb = {3, LowerBoundReason::odd_cycle};
    if (g.n() <= kEngineLimit) {
        auto omega = max_clique(g).value;
        if (omega > lb.value)
            lb = {omega, LowerBoundReason::clique};
    }
    return lb;
}

namespace {

unsigned require_small_prime(FieldSpec f) {
    if (!f.is_prime())
        throw PreconditionError("exact representation search needs a prime field, got " + f.name());
    return f.modulus();
}

VectorRepresentation to_rep(const SmallSpace& s, const std::vector<PackedVec>& vs, FieldSpec f, RepKind kind) {
    VectorRepresentation r;
    r.field = f;
    r.dim = s.dim();
    r.kind = kind;
    for (const auto& v : vs)
        r.vectors.push_back(s.to_vec(v, f));
    return r;
}

// Static search order: start from the highest-degree vertex, then repeatedly
// take the vertex with the most already-ordered neighbors. Ties go to higher
// degree, then lower index.
std::vector<std::size_t> connectivity_order(const Graph& g) {
    const std::size_t n = g.n();
    std::vector<std::size_t> order;
    std::vector<bool> placed(n, false);
    std::vector<std::size_t> links(n, 0);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t pick = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (placed[v])
                continue;
            if (pick == n || links[v] > links[pick] ||
                (links[v] == links[pick] && g.degree(v) > g.degree(pick)))
                pick = v;
        }
        placed[pick] = true;
        order.push_back(pick);
        for (auto u : g.neighbors(pick))
            ++links[u];
    }
    return order;
}

// One projective point per orbit of the signed coordinate permutations, which
// preserve the standard form. Valid for the first vertex of a search only.
std::vector<PackedVec> orbit_representatives(const SmallSpace& s, const std::vector<PackedVec>& points) {
    const unsigned p = s.p();
    std::map<std::vector<unsigned>, PackedVec> first;
    std::vector<PackedVec> out;
    for (const auto& v : points) {
        std::vector<unsigned> key;
        for (unsigned lambda = 1; lambda < p; ++lambda) {
            std::vector<unsigned> mags;
            for (std::size_t i = 0; i < s.dim(); ++i) {
                unsigned a = s.field().mul(static_cast<std::uint8_t>(lambda), v[i]);
                mags.push_back(std::min(a, p - a == p ? 0u : p - a));
            }
            std::sort(mags.rbegin(), mags.rend());
            if (key.empty() || mags < key)
                key = std::move(mags);
        }
        if (first.emplace(key, v).second)
            out.push_back(v);
    }
    return out;
}

class OrthoSearch {
public:
    // ell == t gives the plain orthogonal-representation search.
    OrthoSearch(const Graph& g, unsigned p, std::size_t t, std::size_t ell)
        : g_(g), space_(p, t), ell_(ell), order_(connectivity_order(g)), assigned_(g.n(), false),
          vec_(g.n()), bases_(g.n()) {
        points_ = space_.anisotropic_points();
        first_points_ = orbit_representatives(space_, points_);
        for (std::size_t v = 0; v < g.n(); ++v) {
            nbrs_.push_back(g.neighbors(v));
            closed_.push_back(nbrs_.back());
            closed_.back().push_back(v);
        }
    }

    std::optional<std::vector<PackedVec>> run() {
        if (g_.n() > 0 && points_.empty())
            return std::nullopt;
        if (!dfs(0))
            return std::nullopt;
        return vec_;
    }

    const SmallSpace& space() const { return space_; }

private:
    bool admissible(std::size_t y, const PackedVec& u) const {
        for (auto z : nbrs_[y])
            if (assigned_[z] && space_.dot(u, vec_[z]) != 0)
                return false;
        if (ell_ < space_.dim())
            for (auto z : closed_[y])
                if (bases_[z].size() >= ell_ && !bases_[z].contains(space_, u))
                    return false;
        return true;
    }

    bool dfs(std::size_t pos) {
        if (pos == order_.size())
            return true;
        const std::size_t y = order_[pos];
        std::vector<PackedVec> span_points;
        const std::vector<PackedVec>* cands = pos == 0 ? &first_points_ : &points_;
        if (ell_ < space_.dim())
            for (auto z : closed_[y])
                if (bases_[z].size() >= ell_) {
                    for (const auto& v : bases_[z].projective_span(space_))
                        if (space_.anisotropic(v))
                            span_points.push_back(v);
                    cands = &span_points;
                    break;
                }
        for (const auto& u : *cands) {
            if (!admissible(y, u))
                continue;
            std::vector<PackedBasis> saved;
            if (ell_ < space_.dim()) {
                saved.reserve(closed_[y].size());
                for (auto z : closed_[y]) {
                    saved.push_back(bases_[z]);
                    bases_[z].insert(space_, u);
                }
            }
            vec_[y] = u;
            assigned_[y] = true;
            if (dfs(pos + 1))
                return true;
            assigned_[y] = false;
            if (ell_ < space_.dim())
                for (std::size_t k = 0; k < closed_[y].size(); ++k)
                    bases_[closed_[y][k]] = saved[k];
        }
        return false;
    }

    const Graph& g_;
    SmallSpace space_;
    std::size_t ell_;
    std::vector<std::size_t> order_;
    std::vector<bool> assigned_;
    std::vector<PackedVec> vec_;
    std::vector<PackedBasis> bases_;
    std::vector<PackedVec> points_;
    std::vector<PackedVec> first_points_;
    std::vector<std::vector<std::size_t>> nbrs_;
    std::vector<std::vector<std::size_t>> closed_;
};

// Independent representations are invariant under GL(t) and under scaling each
// vector, so along a fixed vertex order every vector can be taken either as the
// next unit vector e_r (raising the rank of the assigned family to r + 1) or as a
// normalised point of span(e_0..e_{r-1}).
class IndependentSearch {
public:
    IndependentSearch(const Graph& g, unsigned p, std::size_t t)
        : g_(g), space_(p, t), order_(connectivity_order(g)), assigned_(g.n(), false), vec_(g.n()) {
        for (std::size_t r = 0; r <= t; ++r) {
            std::vector<PackedVec> pts;
            if (r > 0)
                for (const auto& c : SmallSpace(p, r).projective_points()) {
                    PackedVec v{};
                    std::copy(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(r), v.begin());
                    pts.push_back(v);
                }
            in_span_.push_back(std::move(pts));
        }
        for (std::size_t v = 0; v < g.n(); ++v)
            nbrs_.push_back(g.neighbors(v));
    }

    std::optional<std::vector<PackedVec>> run() {
        if (!dfs(0, 0))
            return std::nullopt;
        return vec_;
    }

    const SmallSpace& space() const { return space_; }

private:
    bool outside_neighbors(std::size_t v) const {
        PackedBasis span;
        for (auto z : nbrs_[v])
            if (assigned_[z])
                span.insert(space_, vec_[z]);
        return !span.contains(space_, vec_[v]);
    }

    bool consistent(std::size_t y) const {
        if (!outside_neighbors(y))
            return false;
        for (auto z : nbrs_[y])
            if (assigned_[z] && !outside_neighbors(z))
                return false;
        return true;
    }

    bool try_vector(std::size_t pos, std::size_t rank, const PackedVec& u, std::size_t new_rank) {
        const std::size_t y = order_[pos];
        vec_[y] = u;
        assigned_[y] = true;
        if (consistent(y) && dfs(pos + 1, new_rank))
            return true;
        assigned_[y] = false;
        (void)rank;
        return false;
    }

    bool dfs(std::size_t pos, std::size_t rank) {
        if (pos == order_.size())
            return true;
        for (const auto& u : in_span_[rank])
            if (try_vector(pos, rank, u, rank))
                return true;
        if (rank < space_.dim())
            return try_vector(pos, rank, space_.unit(rank), rank + 1);
        return false;
    }

    const Graph& g_;
    SmallSpace space_;
    std::vector<std::size_t> order_;
    std::vector<bool> assigned_;
    std::vector<PackedVec> vec_;
    std::vector<std::vector<PackedVec>> in_span_;
    std::vector<std::vector<std::size_t>> nbrs_;
};

} // namespace

std::optional<VectorRepresentation> find_orthogonal_rep(const Graph& g, FieldSpec f, std::size_t t) {
    unsigned p = require_small_prime(f);
    if (t == 0)
        return g.n() == 0 ? std::optional(VectorRepresentation{f, 0, {}, RepKind::orthogonal}) : std::nullopt;
    OrthoSearch search(g, p, t, t);
    auto vs = search.run();
    if (!vs)
        return std::nullopt;
    return to_rep(search.space(), *vs, f, RepKind::orthogonal);
}

std::optional<VectorRepresentation> find_local_rep(const Graph& g, FieldSpec f, std::size_t t, std::size_t ell) {
    unsigned p = require_small_prime(f);
    if (t == 0 || ell == 0)
        return g.n() == 0 ? std::optional(VectorRepresentation{f, t, {}, RepKind::orthogonal}) : std::nullopt;
    OrthoSearch search(g, p, t, std::min(ell, t));
    auto vs = search.run();
    if (!vs)
        return std::nullopt;
    return to_rep(search.space(), *vs, f, RepKind::orthogonal);
}

std::optional<VectorRepresentation> find_independent_rep(const Graph& g, FieldSpec f, std::size_t t) {
    unsigned p = require_small_prime(f);
    if (t == 0)
        return g.n() == 0 ? std::optional(VectorRepresentation{f, 0, {}, RepKind::independent}) : std::nullopt;
    IndependentSearch search(g, p, t);
    auto vs = search.run();
    if (!vs)
        return std::nullopt;
    return to_rep(search.space(), *vs, f, RepKind::independent);
}

ParamResult<VectorRepresentation> orthogonality_dimension(const Graph& g, FieldSpec f, const OrthoCaps& caps) {
    require_small_prime(f);
    if (g.n() > caps.od_vertices)
        throw CapExceeded("orthogonality_dimension: " + std::to_string(g.n()) + " vertices exceeds cap " +
                          std::to_string(caps.od_vertices));
    ParamResult<VectorRepresentation> r;
    r.witness.field = f;
    if (g.n() == 0) {
        r.reason = LowerBoundReason::clique;
        return r;
    }
    const std::size_t omega = max_clique(g).value;
    for (std::size_t t = omega; t <= caps.od_dim; ++t) {
        if (auto rep = find_orthogonal_rep(g, f, t)) {
            r.value = t;
            r.witness = std::move(*rep);
            r.reason = t == omega ? LowerBoundReason::clique : LowerBoundReason::exhausted_search;
            return r;
        }
    }
    throw CapExceeded("orthogonality_dimension: no representation of dimension <= " + std::to_string(caps.od_dim));
}

LocalOdResult local_orthogonality_dimension(const Graph& g, FieldSpec f, std::size_t dim_cap, const OrthoCaps& caps) {
    unsigned p = require_small_prime(f);
    if (g.n() > caps.local_vertices)
        throw CapExceeded("local_orthogonality_dimension: " + std::to_string(g.n()) + " vertices exceeds cap " +
                          std::to_string(caps.local_vertices));
    if (p > caps.local_max_field)
        throw CapExceeded("local_orthogonality_dimension: field " + f.name() + " exceeds cap GF(" +
                          std::to_string(caps.local_max_field) + ")");
    LocalOdResult r;
    r.dim_cap = dim_cap == 0 ? g.n() : dim_cap;
    r.witness.field = f;
    if (g.n() == 0) {
        r.exact = r.exact_under_cap = true;
        r.reason = LowerBoundReason::clique;
        return r;
    }
    const LowerBound lb = local_od_lower_bounds(g);
    for (std::size_t ell = lb.value; ell <= r.dim_cap; ++ell)
        for (std::size_t t = ell; t <= r.dim_cap; ++t)
            if (auto rep = find_local_rep(g, f, t, ell)) {
                r.value = ell;
                r.witness = std::move(*rep);
                r.exact = ell == lb.value;
                r.exact_under_cap = true;
                r.reason = r.exact ? lb.reason : LowerBoundReason::exhausted_search;
                return r;
            }
    // Nothing within the cap: fall back to the coloring-induced representation.
    auto chil = local_chromatic_number(g);
    r.witness = rep_from_coloring(chil.witness, f);
    r.value = locality_of_rep(g, r.witness);
    r.exact = false;
    r.exact_under_cap = false;
    r.reason = LowerBoundReason::exhausted_search;
    return r;
}

std::optional<std::string> representing_violation(const Graph& g, const Mat& m) {
    if (m.rows() != g.n() || m.cols() != g.n())
        return "matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " for " +
               std::to_string(g.n()) + " vertices";
    for (std::size_t i = 0; i < g.n(); ++i) {
        if (m(i, i).is_zero())
            return "zero diagonal entry at " + std::to_string(i);
        for (std::size_t j = 0; j < g.n(); ++j)
            if (j != i && !g.has_edge(i, j) && !m(i, j).is_zero())
                return "nonzero entry at non-adjacent pair (" + std::to_string(i) + ", " + std::to_string(j) + ")";
    }
    return std::nullopt;
}

MinrankResult minrank(const Graph& g, FieldSpec f, const OrthoCaps& caps) {
    require_small_prime(f);
    if (g.n() > caps.minrank_vertices)
        throw CapExceeded("minrank: " + std::to_string(g.n()) + " vertices exceeds cap " +
                          std::to_string(caps.minrank_vertices));
    const Graph comp = complement(g);
    for (std::size_t t = g.n() == 0 ? 0 : 1; t <= g.n(); ++t) {
        if (auto rep = find_independent_rep(comp, f, t)) {
            Mat m = representing_matrix(g, *rep);
            return {t, std::move(*rep), std::move(m),
                    t <= 1 ? LowerBoundReason::clique : LowerBoundReason::exhausted_search};
        }
    }
    throw Error("minrank: no independent representation up to dimension n"); // standard basis always works
}

} // namespace lodim
