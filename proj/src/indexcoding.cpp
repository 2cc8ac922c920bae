#include "lodim/indexcoding.hpp"

#include "lodim/error.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <thread>

namespace lodim {

Mat representing_matrix(const Graph& g, const VectorRepresentation& complement_rep) {
    const Graph comp = complement(g);
    if (auto why = independent_violation(comp, complement_rep))
        throw PreconditionError("not an independent representation of the complement: " + *why);
    const FieldSpec f = complement_rep.field;
    const std::size_t n = g.n(), t = complement_rep.dim;
    Mat m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Vec> rows;
        for (auto j : comp.neighbors(i))
            rows.push_back(complement_rep.vectors[j]);
        Basis null(f, t);
        if (rows.empty()) {
            for (std::size_t k = 0; k < t; ++k) {
                Vec e = zero_vec(f, t);
                e[k] = FieldElem::one(f);
                null.insert(e);
            }
        } else {
            null = nullspace_basis(Mat::from_rows(f, rows, t));
        }
        // In reduced echelon form the coefficient vector orders the same way as
        // the combination it produces, so the smallest admissible y is the last
        // basis row not orthogonal to u_i.
        const Vec* y = nullptr;
        for (const auto& b : null.rows())
            if (!inner_product(b, complement_rep.vectors[i]).is_zero())
                y = &b;
        if (!y)
            throw Error("representing_matrix: no admissible y for vertex " + std::to_string(i));
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = inner_product(*y, complement_rep.vectors[j]);
    }
    return m;
}

IndexCode build_code(const Graph& g, const Mat& m) {
    if (auto why = representing_violation(g, m))
        throw PreconditionError("matrix does not represent the graph: " + *why);
    IndexCode code;
    code.field = m.field();
    code.graph = g;
    code.matrix = m;
    Basis span(m.field(), m.cols());
    std::vector<Vec> kept;
    for (std::size_t r = 0; r < m.rows(); ++r)
        if (span.insert(m.row(r)))
            kept.push_back(m.row_vec(r));
    code.encode_mat = Mat::from_rows(m.field(), kept, m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto lambda = solve_left(code.encode_mat, m.row(i));
        if (!lambda)
            throw Error("build_code: row " + std::to_string(i) + " outside the row space of B");
        code.decode_coeffs.push_back(std::move(*lambda));
    }
    return code;
}

Vec encode(const IndexCode& code, std::span<const FieldElem> x) {
    if (x.size() != code.n())
        throw PreconditionError("message has length " + std::to_string(x.size()) + ", expected " +
                                std::to_string(code.n()));
    if (code.length() == 0)
        return {};
    return code.encode_mat.apply(x);
}

FieldElem decode_one(const IndexCode& code, std::size_t i, std::span<const FieldElem> y,
                     const std::map<std::size_t, FieldElem>& side) {
    if (i >= code.n())
        throw PreconditionError("receiver " + std::to_string(i) + " out of range");
    if (y.size() != code.length())
        throw PreconditionError("broadcast has length " + std::to_string(y.size()) + ", expected " +
                                std::to_string(code.length()));
    for (const auto& [j, _] : side)
        if (!code.graph.has_edge(i, j))
            throw PreconditionError("receiver " + std::to_string(i) + " has no side information on " +
                                    std::to_string(j));
    const FieldSpec f = code.field;
    FieldElem acc = FieldElem::zero(f);
    for (std::size_t k = 0; k < y.size(); ++k)
        acc += code.decode_coeffs[i][k] * y[k];
    for (auto j : code.graph.neighbors(i)) {
        auto it = side.find(j);
        if (it == side.end())
            throw PreconditionError("receiver " + std::to_string(i) + " is missing side information x_" +
                                    std::to_string(j));
        acc -= code.matrix(i, j) * it->second;
    }
    return acc / code.matrix(i, i);
}

IndexCode code_from_local_coloring(const Graph& g, const Coloring& complement_coloring, const std::vector<Vec>& u) {
    const Graph comp = complement(g);
    if (auto why = coloring_violation(comp, complement_coloring))
        throw PreconditionError("not a proper coloring of the complement: " + *why);
    if (u.size() < complement_coloring.num_colors)
        throw PreconditionError(std::to_string(u.size()) + " vectors for " +
                                std::to_string(complement_coloring.num_colors) + " colors");
    if (g.n() == 0)
        return build_code(g, Mat(FieldSpec::prime(2), 0, 0));
    const FieldSpec f = u.front().front().field();
    const std::size_t t = u.front().size();
    for (std::size_t v = 0; v < g.n(); ++v) {
        std::set<std::size_t> cols{complement_coloring.colors[v]};
        for (auto w : comp.neighbors(v))
            cols.insert(complement_coloring.colors[w]);
        std::vector<Vec> local;
        for (auto c : cols)
            local.push_back(u[c]);
        if (rank(f, local, t) != local.size())
            throw PreconditionError("vectors on the closed neighborhood of vertex " + std::to_string(v) +
                                    " are dependent");
    }
    VectorRepresentation rep;
    rep.field = f;
    rep.dim = t;
    rep.kind = RepKind::independent;
    for (auto c : complement_coloring.colors)
        rep.vectors.push_back(u[c]);
    return build_code(g, representing_matrix(g, rep));
}

IndexCode code_from_local_coloring_vandermonde(const Graph& g, const Coloring& complement_coloring, FieldSpec f) {
    const std::size_t ell = locality_of_coloring(complement(g), complement_coloring);
    return code_from_local_coloring(g, complement_coloring, vandermonde(complement_coloring.num_colors, ell, f));
}

IndexCode code_from_local_coloring_greedy(const Graph& g, const Coloring& complement_coloring, FieldSpec f) {
    const Graph comp = complement(g);
    const std::size_t ell = locality_of_coloring(comp, complement_coloring);
    std::set<std::vector<std::size_t>> sets;
    for (std::size_t v = 0; v < g.n(); ++v) {
        std::vector<std::size_t> s{complement_coloring.colors[v]};
        for (auto w : comp.neighbors(v))
            s.push_back(complement_coloring.colors[w]);
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        sets.insert(std::move(s));
    }
    std::vector<std::vector<std::size_t>> family(sets.begin(), sets.end());
    return code_from_local_coloring(g, complement_coloring,
                                    schulman_vectors(family, complement_coloring.num_colors, ell, f));
}

namespace {

std::size_t compressed_dim(const Graph& g, const VectorRepresentation& r) {
    auto q = r.field.size();
    if (!q)
        throw PreconditionError("compression needs a finite field");
    return locality_of_rep(g, r) + ceil_log(*q, g.n());
}

std::optional<VectorRepresentation> attempt(const Graph& g, const VectorRepresentation& r, std::size_t m,
                                            std::uint64_t seed) {
    Mat a = random_mat(m, r.dim, r.field, seed);
    VectorRepresentation out;
    out.field = r.field;
    out.dim = m;
    out.kind = RepKind::independent;
    for (const auto& w : r.vectors)
        out.vectors.push_back(r.dim == 0 ? zero_vec(r.field, m) : a.apply(w));
    if (independent_violation(g, out))
        return std::nullopt;
    return out;
}

} // namespace

std::optional<VectorRepresentation> try_compress(const Graph& g, const VectorRepresentation& r, std::uint64_t seed) {
    return attempt(g, r, compressed_dim(g, r), seed);
}

CompressionResult compress_representation(const Graph& g, const VectorRepresentation& r, std::uint64_t seed,
                                          std::size_t retries) {
    const std::size_t m = compressed_dim(g, r);
    for (std::size_t k = 0; k < retries; ++k)
        if (auto out = attempt(g, r, m, seed + k))
            return {k + 1, m, std::move(*out)};
    throw Infeasible("compression failed " + std::to_string(retries) + " times");
}

CodeMethod code_method_from_string(const std::string& s) {
    if (s == "minrank")
        return CodeMethod::minrank;
    if (s == "local")
        return CodeMethod::local;
    if (s == "compress")
        return CodeMethod::compress;
    throw PreconditionError("unknown index-code method '" + s + "'");
}

std::string to_string(CodeMethod m) {
    switch (m) {
    case CodeMethod::minrank:
        return "minrank";
    case CodeMethod::local:
        return "local";
    case CodeMethod::compress:
        return "compress";
    }
    return "?";
}

IndexCode build_index_code(const Graph& g, FieldSpec f, CodeMethod method, std::uint64_t seed) {
    if (method == CodeMethod::minrank)
        return build_code(g, minrank(g, f).matrix);
    const Graph comp = complement(g);
    const Coloring c = local_chromatic_number(comp).witness;
    if (method == CodeMethod::local) {
        auto q = f.size();
        if (!q || *q >= c.num_colors)
            return code_from_local_coloring_vandermonde(g, c, f);
        return code_from_local_coloring_greedy(g, c, f);
    }
    auto compressed = compress_representation(comp, rep_from_coloring(c, f), seed);
    return build_code(g, representing_matrix(g, compressed.rep));
}

SimulationReport simulate(const IndexCode& code, std::size_t trials, std::uint64_t seed, unsigned threads) {
    SimulationReport report{trials, 0, code.length()};
    if (trials == 0)
        return report;
    auto q = code.field.size();
    if (!q)
        throw PreconditionError("simulation needs a finite field");
    const std::size_t n = code.n();
    std::mt19937_64 eng(seed);
    std::vector<Vec> messages(trials);
    for (auto& x : messages)
        for (std::size_t i = 0; i < n; ++i)
            x.emplace_back(code.field, static_cast<long long>(uniform_below(eng, *q)));

    auto run = [&](std::size_t begin, std::size_t end, std::size_t& failures) {
        for (std::size_t k = begin; k < end; ++k) {
            const Vec& x = messages[k];
            Vec y = encode(code, x);
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i) {
                std::map<std::size_t, FieldElem> side;
                for (auto j : code.graph.neighbors(i))
                    side.emplace(j, x[j]);
                ok = decode_one(code, i, y, side) == x[i];
            }
            failures += ok ? 0 : 1;
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
    std::vector<std::size_t> failures(threads, 0);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
        std::size_t begin = trials * w / threads, end = trials * (w + 1) / threads;
        if (w + 1 == threads)
            run(begin, end, failures[w]);
        else
            pool.emplace_back(run, begin, end, std::ref(failures[w]));
    }
    for (auto& th : pool)
        th.join();
    for (auto f : failures)
        report.failures += f;
    return report;
}

} // namespace lodim
