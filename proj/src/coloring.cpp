#include "lodim/coloring.hpp"

#include "lodim/error.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

namespace lodim {

Coloring Coloring::from_colors(const std::vector<std::size_t>& raw) {
    std::map<std::size_t, std::size_t> rank;
    for (auto c : raw)
        rank.emplace(c, 0);
    std::size_t next = 0;
    for (auto& [c, r] : rank)
        r = next++;
    Coloring out;
    out.num_colors = rank.size();
    out.colors.reserve(raw.size());
    for (auto c : raw)
        out.colors.push_back(rank[c]);
    return out;
}

std::optional<std::string> coloring_violation(const Graph& g, const Coloring& c) {
    if (c.colors.size() != g.n())
        return "coloring has " + std::to_string(c.colors.size()) + " entries for " + std::to_string(g.n()) +
               " vertices";
    std::vector<bool> used(c.num_colors, false);
    for (std::size_t v = 0; v < g.n(); ++v) {
        if (c.colors[v] >= c.num_colors)
            return "vertex " + std::to_string(v) + " has color " + std::to_string(c.colors[v]) + " outside [0, " +
                   std::to_string(c.num_colors) + ")";
        used[c.colors[v]] = true;
    }
    for (std::size_t k = 0; k < used.size(); ++k)
        if (!used[k])
            return "color " + std::to_string(k) + " is unused";
    for (auto [u, v] : g.edges())
        if (c.colors[u] == c.colors[v])
            return "edge " + std::to_string(u) + "-" + std::to_string(v) + " is monochromatic";
    return std::nullopt;
}

bool is_proper(const Graph& g, const Coloring& c) { return !coloring_violation(g, c); }

std::size_t locality_of_coloring(const Graph& g, const Coloring& c) {
    if (auto why = coloring_violation(g, c))
        throw PreconditionError("improper coloring: " + *why);
    std::size_t best = 0;
    std::vector<std::size_t> seen(c.num_colors, g.n());
    for (std::size_t v = 0; v < g.n(); ++v) {
        std::size_t distinct = 1;
        seen[c.colors[v]] = v;
        for (auto u : g.neighbors(v))
            if (seen[c.colors[u]] != v) {
                seen[c.colors[u]] = v;
                ++distinct;
            }
        best = std::max(best, distinct);
    }
    return best;
}

namespace {

using Mask = std::uint64_t;

std::vector<Mask> adjacency_masks(const Graph& g) {
    std::vector<Mask> adj(g.n(), 0);
    for (auto [u, v] : g.edges()) {
        adj[u] |= Mask{1} << v;
        adj[v] |= Mask{1} << u;
    }
    return adj;
}

void require_cap(const Graph& g, std::size_t cap, const char* what) {
    if (g.n() > std::min(cap, kEngineLimit))
        throw CapExceeded(std::string(what) + ": " + std::to_string(g.n()) + " vertices exceeds the solver cap of " +
                          std::to_string(std::min(cap, kEngineLimit)) + "; use upper-bound-only mode");
}

// Descending degree, ties by index.
std::vector<std::size_t> degree_rank(const Graph& g) {
    std::vector<std::size_t> order(g.n());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return g.degree(a) > g.degree(b); });
    std::vector<std::size_t> rank(g.n());
    for (std::size_t i = 0; i < order.size(); ++i)
        rank[order[i]] = i;
    return rank;
}

class CliqueSearch {
public:
    explicit CliqueSearch(const Graph& g) : adj_(adjacency_masks(g)), n_(g.n()) {}

    std::vector<std::size_t> run() {
        Mask all = n_ == 64 ? ~Mask{0} : (Mask{1} << n_) - 1;
        std::vector<std::size_t> current;
        expand(current, all);
        return best_;
    }

private:
    void expand(std::vector<std::size_t>& current, Mask p) {
        // Greedy sequential coloring of p gives an upper bound per position.
        std::vector<std::size_t> order;
        std::vector<std::size_t> bound;
        Mask uncolored = p;
        std::size_t color = 0;
        while (uncolored) {
            ++color;
            Mask avail = uncolored;
            while (avail) {
                auto v = static_cast<std::size_t>(std::countr_zero(avail));
                avail &= ~(Mask{1} << v);
                avail &= ~adj_[v];
                uncolored &= ~(Mask{1} << v);
                order.push_back(v);
                bound.push_back(color);
            }
        }
        for (std::size_t i = order.size(); i-- > 0;) {
            if (current.size() + bound[i] <= best_.size())
                return;
            auto v = order[i];
            current.push_back(v);
            Mask next = p & adj_[v];
            if (!next) {
                if (current.size() > best_.size())
                    best_ = current;
            } else {
                expand(current, next);
            }
            current.pop_back();
            p &= ~(Mask{1} << v);
        }
    }

    std::vector<Mask> adj_;
    std::size_t n_;
    std::vector<std::size_t> best_;
};

// Backtracking over proper colorings with at most max_colors colors and
// locality at most max_locality. New colors are introduced only as the
// smallest unused index; the next vertex is the one with the fewest feasible
// colors, ties broken by descending degree then index.
class ColoringSearch {
public:
    ColoringSearch(const Graph& g, std::size_t max_colors, std::size_t max_locality,
                   const std::vector<std::size_t>& seed_clique)
        : n_(g.n()), k_(max_colors), l_(max_locality), adj_(adjacency_masks(g)), rank_(degree_rank(g)),
          color_(g.n(), kNone), colmask_(g.n(), 0) {
        for (auto v : seed_clique)
            seed_.push_back(v);
    }

    std::optional<Coloring> run() {
        if (n_ == 0)
            return Coloring{};
        if (seed_.size() > k_ || seed_.size() > l_)
            return std::nullopt;
        std::size_t colored = 0;
        for (auto v : seed_) {
            assign(v, used_);
            ++used_;
            ++colored;
        }
        for (auto v : seed_)
            if (static_cast<std::size_t>(std::popcount(colmask_[v])) > l_)
                return std::nullopt;
        if (!dfs(colored))
            return std::nullopt;
        Coloring c;
        c.colors = color_;
        c.num_colors = used_;
        return c;
    }

private:
    static constexpr std::size_t kNone = ~std::size_t{0};

    void assign(std::size_t v, std::size_t c) {
        color_[v] = c;
        Mask bit = Mask{1} << c;
        colmask_[v] |= bit;
        for (Mask nb = adj_[v]; nb; nb &= nb - 1)
            colmask_[std::countr_zero(nb)] |= bit;
    }

    Mask domain(std::size_t y) const {
        std::size_t limit = std::min(used_ + 1, k_);
        Mask cand = limit >= 64 ? ~Mask{0} : (Mask{1} << limit) - 1;
        cand &= ~colmask_[y];
        if (static_cast<std::size_t>(std::popcount(colmask_[y])) >= l_)
            return 0;
        for (Mask nb = adj_[y]; nb && cand; nb &= nb - 1) {
            Mask zm = colmask_[std::countr_zero(nb)];
            if (static_cast<std::size_t>(std::popcount(zm)) >= l_)
                cand &= zm;
        }
        return cand;
    }

    bool dfs(std::size_t colored) {
        if (colored == n_)
            return true;
        std::size_t pick = kNone;
        Mask pick_dom = 0;
        int pick_size = 65;
        for (std::size_t y = 0; y < n_; ++y) {
            if (color_[y] != kNone)
                continue;
            Mask d = domain(y);
            int sz = std::popcount(d);
            if (sz == 0)
                return false;
            if (sz < pick_size || (sz == pick_size && rank_[y] < rank_[pick])) {
                pick = y;
                pick_dom = d;
                pick_size = sz;
            }
        }
        const auto saved_mask = colmask_;
        const std::size_t saved_used = used_;
        for (Mask d = pick_dom; d; d &= d - 1) {
            auto c = static_cast<std::size_t>(std::countr_zero(d));
            assign(pick, c);
            if (c == used_)
                ++used_;
            if (dfs(colored + 1))
                return true;
            colmask_ = saved_mask;
            used_ = saved_used;
            color_[pick] = kNone;
        }
        return false;
    }

    std::size_t n_;
    std::size_t k_;
    std::size_t l_;
    std::vector<Mask> adj_;
    std::vector<std::size_t> rank_;
    std::vector<std::size_t> color_;
    std::vector<Mask> colmask_;
    std::vector<std::size_t> seed_;
    std::size_t used_ = 0;
};

} // namespace

CliqueResult max_clique(const Graph& g, const ColoringCaps& caps) {
    require_cap(g, caps.clique_vertices, "max_clique");
    CliqueResult r;
    if (g.n() == 0)
        return r;
    r.witness = CliqueSearch(g).run();
    std::sort(r.witness.begin(), r.witness.end());
    r.value = r.witness.size();
    return r;
}

Coloring dsatur_coloring(const Graph& g) {
    const std::size_t n = g.n();
    std::vector<std::size_t> color(n, ~std::size_t{0});
    std::vector<std::vector<bool>> seen(n);
    std::vector<std::size_t> saturation(n, 0);
    std::size_t used = 0;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t pick = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (color[v] != ~std::size_t{0})
                continue;
            if (pick == n || saturation[v] > saturation[pick] ||
                (saturation[v] == saturation[pick] && g.degree(v) > g.degree(pick)))
                pick = v;
        }
        std::size_t c = 0;
        while (c < seen[pick].size() && seen[pick][c])
            ++c;
        color[pick] = c;
        used = std::max(used, c + 1);
        for (auto u : g.neighbors(pick)) {
            if (seen[u].size() <= c)
                seen[u].resize(c + 1, false);
            if (!seen[u][c]) {
                seen[u][c] = true;
                ++saturation[u];
            }
        }
    }
    return Coloring::from_colors(color);
}

std::optional<Coloring> find_coloring(const Graph& g, std::size_t max_colors, std::size_t max_locality) {
    if (g.n() > kEngineLimit)
        throw CapExceeded("coloring search supports at most 64 vertices");
    auto clique = max_clique(g).witness;
    return ColoringSearch(g, std::min(max_colors, kEngineLimit), max_locality, clique).run();
}

ParamResult<Coloring> chromatic_number(const Graph& g, const ColoringCaps& caps) {
    require_cap(g, caps.chromatic_vertices, "chromatic_number");
    ParamResult<Coloring> r;
    if (g.n() == 0) {
        r.reason = LowerBoundReason::clique;
        return r;
    }
    auto clique = max_clique(g).witness;
    std::size_t lb = clique.size();
    LowerBoundReason reason = LowerBoundReason::clique;
    if (lb < 3 && !is_bipartite(g)) {
        lb = 3;
        reason = LowerBoundReason::odd_cycle;
    }
    for (std::size_t k = lb;; ++k) {
        if (auto c = ColoringSearch(g, k, kEngineLimit, clique).run()) {
            r.value = k;
            r.witness = std::move(*c);
            r.reason = k == lb ? reason : LowerBoundReason::exhausted_search;
            return r;
        }
    }
}

ParamResult<Coloring> local_chromatic_number(const Graph& g, const ColoringCaps& caps) {
    require_cap(g, caps.local_vertices, "local_chromatic_number");
    ParamResult<Coloring> r;
    if (g.n() == 0) {
        r.reason = LowerBoundReason::clique;
        return r;
    }
    auto clique = max_clique(g).witness;
    std::size_t lb = clique.size();
    LowerBoundReason reason = LowerBoundReason::clique;
    if (lb < 3 && !is_bipartite(g)) {
        lb = 3;
        reason = LowerBoundReason::odd_cycle;
    }
    for (std::size_t ell = lb;; ++ell) {
        if (auto c = ColoringSearch(g, std::min(g.n(), kEngineLimit), ell, clique).run()) {
            r.value = ell;
            r.witness = std::move(*c);
            r.reason = ell == lb ? reason : LowerBoundReason::exhausted_search;
            return r;
        }
    }
}

} // namespace lodim
