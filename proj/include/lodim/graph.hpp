#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lodim {

/// Dynamic fixed-width bit row.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    std::size_t count() const;
    bool any() const;
    /// Index of the first set bit at or after `from`, or size().
    std::size_t next(std::size_t from) const;
    std::size_t first() const { return next(0); }

    Bitset& operator&=(const Bitset& o);
    Bitset& operator|=(const Bitset& o);
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    bool operator==(const Bitset&) const = default;

    std::vector<std::size_t> ones() const;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

inline constexpr std::size_t kDefaultVertexCap = 4096;

/// Simple undirected graph on vertices 0..n-1 with symmetric adjacency rows,
/// no loops, and optional per-vertex labels (metadata only).
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n, std::size_t cap = kDefaultVertexCap);

    std::size_t n() const { return rows_.size(); }
    void add_edge(std::size_t u, std::size_t v);
    bool has_edge(std::size_t u, std::size_t v) const { return rows_[u].test(v); }
    const Bitset& row(std::size_t v) const { return rows_[v]; }
    std::size_t degree(std::size_t v) const { return rows_[v].count(); }
    std::vector<std::size_t> neighbors(std::size_t v) const { return rows_[v].ones(); }
    std::size_t edge_count() const;
    /// Edges (u, v) with u < v in lexicographic order.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

    const std::vector<std::string>& labels() const { return labels_; }
    void set_labels(std::vector<std::string> labels);

    /// Adjacency equality; labels are ignored.
    bool operator==(const Graph& o) const { return rows_ == o.rows_; }

private:
    std::vector<Bitset> rows_;
    std::vector<std::string> labels_;
};

/// Distinct subsets of {1..ground}, each stored sorted.
struct SetSystem {
    std::size_t ground = 0;
    std::vector<std::vector<unsigned>> family;
};

/// All k-subsets of {1..n} in lexicographic order.
std::vector<std::vector<unsigned>> k_subsets(unsigned n, unsigned k);
std::string subset_label(const std::vector<unsigned>& s);

Graph kneser(unsigned n, unsigned k);
Graph schrijver(unsigned n, unsigned k);
/// One vertex per member, adjacent iff disjoint. Rejects duplicates and
/// out-of-range elements.
Graph intersection_graph(const SetSystem& f);

/// Keeps vertex labels.
Graph complement(const Graph& g);
/// Vertices are the edges of h in lexicographic order.
Graph line_graph(const Graph& h);
Graph cycle(std::size_t r);
Graph complete(std::size_t n);
Graph edgeless(std::size_t n);
Graph disjoint_union(const Graph& a, const Graph& b);
Graph induced_subgraph(const Graph& g, const std::vector<std::size_t>& vertices);
/// Vertex v of g becomes vertex perm[v].
Graph relabel(const Graph& g, const std::vector<std::size_t>& perm);

bool is_bipartite(const Graph& g);
bool is_connected(const Graph& g);

Graph read_dimacs(std::string_view text, std::size_t cap = kDefaultVertexCap);
std::string write_dimacs(const Graph& g);
Graph read_dimacs_file(const std::string& path, std::size_t cap = kDefaultVertexCap);

} // namespace lodim
