#include "lodim/graph.hpp"

#include "lodim/error.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <set>
#include <sstream>

namespace lodim {

std::size_t Bitset::count() const {
    std::size_t c = 0;
    for (auto w : words_)
        c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

bool Bitset::any() const {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

std::size_t Bitset::next(std::size_t from) const {
    if (from >= n_)
        return n_;
    std::size_t wi = from >> 6;
    std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
    for (;;) {
        if (w)
            return std::min(n_, wi * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        if (++wi == words_.size())
            return n_;
        w = words_[wi];
    }
}

Bitset& Bitset::operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] &= o.words_[i];
    return *this;
}

Bitset& Bitset::operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] |= o.words_[i];
    return *this;
}

std::vector<std::size_t> Bitset::ones() const {
    std::vector<std::size_t> out;
    for (std::size_t i = first(); i < n_; i = next(i + 1))
        out.push_back(i);
    return out;
}

Graph::Graph(std::size_t n, std::size_t cap) {
    if (n > cap)
        throw CapExceeded("graph with " + std::to_string(n) + " vertices exceeds storage cap " + std::to_string(cap));
    rows_.assign(n, Bitset(n));
}

void Graph::add_edge(std::size_t u, std::size_t v) {
    if (u >= n() || v >= n())
        throw PreconditionError("edge endpoint out of range");
    if (u == v)
        throw PreconditionError("self-loop at vertex " + std::to_string(u));
    rows_[u].set(v);
    rows_[v].set(u);
}

std::size_t Graph::edge_count() const {
    std::size_t twice = 0;
    for (const auto& r : rows_)
        twice += r.count();
    return twice / 2;
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < n(); ++u)
        for (std::size_t v = rows_[u].next(u + 1); v < n(); v = rows_[u].next(v + 1))
            out.emplace_back(u, v);
    return out;
}

void Graph::set_labels(std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != n())
        throw PreconditionError("label count does not match vertex count");
    labels_ = std::move(labels);
}

std::vector<std::vector<unsigned>> k_subsets(unsigned n, unsigned k) {
    std::vector<std::vector<unsigned>> out;
    if (k > n)
        return out;
    std::vector<unsigned> s(k);
    for (unsigned i = 0; i < k; ++i)
        s[i] = i + 1;
    for (;;) {
        out.push_back(s);
        int i = static_cast<int>(k) - 1;
        while (i >= 0 && s[i] == n - k + 1 + static_cast<unsigned>(i))
            --i;
        if (i < 0)
            break;
        ++s[i];
        for (unsigned j = static_cast<unsigned>(i) + 1; j < k; ++j)
            s[j] = s[j - 1] + 1;
    }
    return out;
}

std::string subset_label(const std::vector<unsigned>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i)
            out += ",";
        out += std::to_string(s[i]);
    }
    return out + "}";
}

namespace {

bool disjoint(const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j])
            return false;
        if (a[i] < b[j])
            ++i;
        else
            ++j;
    }
    return true;
}

Graph disjointness_graph(const std::vector<std::vector<unsigned>>& sets) {
    Graph g(sets.size());
    for (std::size_t u = 0; u < sets.size(); ++u)
        for (std::size_t v = u + 1; v < sets.size(); ++v)
            if (disjoint(sets[u], sets[v]))
                g.add_edge(u, v);
    std::vector<std::string> labels;
    for (const auto& s : sets)
        labels.push_back(subset_label(s));
    g.set_labels(std::move(labels));
    return g;
}

bool cyclically_stable(const std::vector<unsigned>& s, unsigned n) {
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
        if (s[i + 1] == s[i] + 1)
            return false;
    return !(s.size() >= 2 && s.front() == 1 && s.back() == n);
}

} // namespace

Graph kneser(unsigned n, unsigned k) {
    if (k < 1 || n < 2 * k)
        throw PreconditionError("kneser(n, k) requires n >= 2k >= 2");
    return disjointness_graph(k_subsets(n, k));
}

Graph schrijver(unsigned n, unsigned k) {
    if (k < 1 || n < 2 * k)
        throw PreconditionError("schrijver(n, k) requires n >= 2k >= 2");
    std::vector<std::vector<unsigned>> stable;
    for (auto& s : k_subsets(n, k))
        if (cyclically_stable(s, n))
            stable.push_back(std::move(s));
    return disjointness_graph(stable);
}

Graph intersection_graph(const SetSystem& f) {
    std::set<std::vector<unsigned>> seen;
    std::vector<std::vector<unsigned>> members;
    for (auto s : f.family) {
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw PreconditionError("set " + subset_label(s) + " repeats an element");
        for (auto e : s)
            if (e < 1 || e > f.ground)
                throw PreconditionError("element " + std::to_string(e) + " outside ground set");
        if (!seen.insert(s).second)
            throw PreconditionError("duplicate member " + subset_label(s));
        members.push_back(std::move(s));
    }
    return disjointness_graph(members);
}

Graph complement(const Graph& g) {
    Graph c(g.n());
    for (std::size_t u = 0; u < g.n(); ++u)
        for (std::size_t v = u + 1; v < g.n(); ++v)
            if (!g.has_edge(u, v))
                c.add_edge(u, v);
    if (!g.labels().empty())
        c.set_labels(g.labels());
    return c;
}

Graph line_graph(const Graph& h) {
    auto es = h.edges();
    Graph l(es.size());
    for (std::size_t a = 0; a < es.size(); ++a)
        for (std::size_t b = a + 1; b < es.size(); ++b) {
            auto [u1, v1] = es[a];
            auto [u2, v2] = es[b];
            if (u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2)
                l.add_edge(a, b);
        }
    std::vector<std::string> labels;
    for (auto [u, v] : es)
        labels.push_back(std::to_string(u + 1) + "-" + std::to_string(v + 1));
    l.set_labels(std::move(labels));
    return l;
}

Graph cycle(std::size_t r) {
    if (r < 3)
        throw PreconditionError("cycle needs at least 3 vertices");
    Graph g(r);
    for (std::size_t i = 0; i < r; ++i)
        g.add_edge(i, (i + 1) % r);
    return g;
}

Graph complete(std::size_t n) {
    Graph g(n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            g.add_edge(u, v);
    return g;
}

Graph edgeless(std::size_t n) { return Graph(n); }

Graph disjoint_union(const Graph& a, const Graph& b) {
    Graph g(a.n() + b.n());
    for (auto [u, v] : a.edges())
        g.add_edge(u, v);
    for (auto [u, v] : b.edges())
        g.add_edge(a.n() + u, a.n() + v);
    return g;
}

Graph induced_subgraph(const Graph& g, const std::vector<std::size_t>& vertices) {
    Graph s(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (g.has_edge(vertices[i], vertices[j]))
                s.add_edge(i, j);
    if (!g.labels().empty()) {
        std::vector<std::string> labels;
        for (auto v : vertices)
            labels.push_back(g.labels()[v]);
        s.set_labels(std::move(labels));
    }
    return s;
}

Graph relabel(const Graph& g, const std::vector<std::size_t>& perm) {
    if (perm.size() != g.n())
        throw PreconditionError("permutation size mismatch");
    Graph r(g.n());
    for (auto [u, v] : g.edges())
        r.add_edge(perm[u], perm[v]);
    return r;
}

bool is_bipartite(const Graph& g) {
    std::vector<int> side(g.n(), -1);
    std::vector<std::size_t> stack;
    for (std::size_t s = 0; s < g.n(); ++s) {
        if (side[s] != -1)
            continue;
        side[s] = 0;
        stack.push_back(s);
        while (!stack.empty()) {
            auto u = stack.back();
            stack.pop_back();
            for (auto v : g.neighbors(u)) {
                if (side[v] == -1) {
                    side[v] = 1 - side[u];
                    stack.push_back(v);
                } else if (side[v] == side[u]) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool is_connected(const Graph& g) {
    if (g.n() == 0)
        return true;
    std::vector<bool> seen(g.n(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        auto u = stack.back();
        stack.pop_back();
        for (auto v : g.neighbors(u))
            if (!seen[v]) {
                seen[v] = true;
                ++reached;
                stack.push_back(v);
            }
    }
    return reached == g.n();
}

Graph read_dimacs(std::string_view text, std::size_t cap) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    Graph g;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag == "c")
            continue;
        if (tag == "p") {
            std::string fmt;
            long long n = -1, m = -1;
            if (have_header)
                throw ParseError("duplicate problem line", lineno);
            if (!(ls >> fmt >> n >> m) || (fmt != "edge" && fmt != "col") || n < 0 || m < 0)
                throw ParseError("malformed problem line, expected 'p edge n m'", lineno);
            std::string extra;
            if (ls >> extra)
                throw ParseError("trailing data on problem line", lineno);
            if (static_cast<unsigned long long>(n) > cap)
                throw CapExceeded("graph with " + std::to_string(n) + " vertices exceeds storage cap " +
                                  std::to_string(cap));
            g = Graph(static_cast<std::size_t>(n), cap);
            have_header = true;
        } else if (tag == "e") {
            if (!have_header)
                throw ParseError("edge line before problem line", lineno);
            long long u = 0, v = 0;
            if (!(ls >> u >> v))
                throw ParseError("malformed edge line, expected 'e u v'", lineno);
            std::string extra;
            if (ls >> extra)
                throw ParseError("trailing data on edge line", lineno);
            if (u < 1 || v < 1 || static_cast<std::size_t>(u) > g.n() || static_cast<std::size_t>(v) > g.n())
                throw ParseError("vertex out of range in edge " + std::to_string(u) + " " + std::to_string(v),
                                 lineno);
            if (u == v)
                throw ParseError("self-loop at vertex " + std::to_string(u), lineno);
            g.add_edge(static_cast<std::size_t>(u - 1), static_cast<std::size_t>(v - 1));
        } else {
            throw ParseError("unrecognised line type '" + tag + "'", lineno);
        }
    }
    if (!have_header)
        throw ParseError("missing 'p edge n m' line");
    return g;
}

std::string write_dimacs(const Graph& g) {
    std::string out = "p edge " + std::to_string(g.n()) + " " + std::to_string(g.edge_count()) + "\n";
    for (auto [u, v] : g.edges())
        out += "e " + std::to_string(u + 1) + " " + std::to_string(v + 1) + "\n";
    return out;
}

Graph read_dimacs_file(const std::string& path, std::size_t cap) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return read_dimacs(ss.str(), cap);
}

} // namespace lodim
