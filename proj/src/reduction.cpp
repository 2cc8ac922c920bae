#include "lodim/reduction.hpp"

#include "lodim/error.hpp"
#include "lodim/packed.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace lodim {

namespace {

constexpr std::size_t kW = 0, kT = 1, kF = 2;

std::size_t literal_vertex(Literal l) {
    const std::size_t v = static_cast<std::size_t>(std::abs(l));
    return 3 + 2 * (v - 1) + (l < 0 ? 1 : 0);
}

bool literal_value(Literal l, const std::vector<bool>& assignment) {
    bool v = assignment[static_cast<std::size_t>(std::abs(l)) - 1];
    return l > 0 ? v : !v;
}

// One OR gadget of the chain: its two side vertices, its two inputs and its
// top (t for the last gadget of a clause).
struct OrGadget {
    std::size_t in1, in2, side1, side2, top;
};

struct Layout {
    std::size_t size = 0;
    std::vector<std::vector<OrGadget>> chains;
};

Layout layout_of(const CnfFormula& phi) {
    Layout lay;
    std::size_t next = 3 + 2 * phi.num_vars;
    for (const auto& clause : phi.clauses) {
        std::vector<OrGadget> chain;
        std::size_t carry = literal_vertex(clause[0]);
        for (std::size_t p = 1; p < clause.size(); ++p) {
            OrGadget gd{carry, literal_vertex(clause[p]), next, next + 1, 0};
            next += 2;
            if (p + 1 == clause.size()) {
                gd.top = kT;
            } else {
                gd.top = next++;
            }
            chain.push_back(gd);
            carry = gd.top;
        }
        lay.chains.push_back(std::move(chain));
    }
    lay.size = next;
    return lay;
}

void check_assignment_size(const CnfFormula& phi, const std::vector<bool>& assignment) {
    if (assignment.size() != phi.num_vars)
        throw PreconditionError("assignment has " + std::to_string(assignment.size()) + " values for " +
                                std::to_string(phi.num_vars) + " variables");
}

} // namespace

CnfFormula CnfFormula::make(std::size_t num_vars, std::vector<std::vector<Literal>> clauses) {
    CnfFormula phi;
    phi.num_vars = num_vars;
    for (std::size_t c = 0; c < clauses.size(); ++c) {
        auto& clause = clauses[c];
        const std::string where = "clause " + std::to_string(c + 1);
        if (clause.empty())
            throw PreconditionError(where + " is empty");
        for (auto l : clause) {
            if (l == 0 || static_cast<std::size_t>(std::abs(l)) > num_vars)
                throw PreconditionError(where + " has literal " + std::to_string(l) + " out of range");
            if (std::find(clause.begin(), clause.end(), -l) != clause.end())
                throw PreconditionError(where + " is tautological in variable " + std::to_string(std::abs(l)));
        }
        if (clause.size() == 1)
            clause.push_back(clause[0]);
        phi.clauses.push_back(std::move(clause));
    }
    return phi;
}

bool CnfFormula::satisfied_by(const std::vector<bool>& assignment) const {
    return !falsified_clause(assignment).has_value();
}

std::optional<std::size_t> CnfFormula::falsified_clause(const std::vector<bool>& assignment) const {
    check_assignment_size(*this, assignment);
    for (std::size_t c = 0; c < clauses.size(); ++c)
        if (std::none_of(clauses[c].begin(), clauses[c].end(),
                         [&](Literal l) { return literal_value(l, assignment); }))
            return c;
    return std::nullopt;
}

CnfFormula parse_dimacs_cnf(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    std::size_t vars = 0, expected = 0;
    std::vector<std::vector<Literal>> clauses;
    std::vector<Literal> current;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok == "c")
            continue;
        if (tok == "%")
            break;
        if (tok == "p") {
            std::string fmt;
            long long k = -1, m = -1;
            if (header)
                throw ParseError("duplicate problem line", lineno);
            if (!(ls >> fmt >> k >> m) || fmt != "cnf" || k < 0 || m < 0 || (ls >> tok))
                throw ParseError("expected 'p cnf <vars> <clauses>'", lineno);
            header = true;
            vars = static_cast<std::size_t>(k);
            expected = static_cast<std::size_t>(m);
            continue;
        }
        if (!header)
            throw ParseError("clause before problem line", lineno);
        do {
            long long l = 0;
            try {
                std::size_t used = 0;
                l = std::stoll(tok, &used);
                if (used != tok.size())
                    throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw ParseError("bad literal '" + tok + "'", lineno);
            }
            if (l == 0) {
                if (current.empty())
                    throw ParseError("empty clause", lineno);
                clauses.push_back(std::move(current));
                current.clear();
                continue;
            }
            if (static_cast<std::size_t>(std::llabs(l)) > vars)
                throw ParseError("literal " + std::to_string(l) + " out of range", lineno);
            if (std::find(current.begin(), current.end(), -l) != current.end())
                throw ParseError("tautological clause", lineno);
            current.push_back(static_cast<Literal>(l));
        } while (ls >> tok);
    }
    if (!header)
        throw ParseError("missing problem line");
    if (!current.empty())
        clauses.push_back(std::move(current));
    if (clauses.size() != expected)
        throw ParseError("problem line declares " + std::to_string(expected) + " clauses, found " +
                         std::to_string(clauses.size()));
    return CnfFormula::make(vars, std::move(clauses));
}

std::string write_dimacs_cnf(const CnfFormula& phi) {
    std::ostringstream out;
    out << "p cnf " << phi.num_vars << ' ' << phi.clauses.size() << '\n';
    for (const auto& c : phi.clauses) {
        for (auto l : c)
            out << l << ' ';
        out << "0\n";
    }
    return out.str();
}

std::string Role::label() const {
    static const char* names[] = {"w", "t", "f"};
    auto s = [](auto v) { return std::to_string(v); };
    switch (kind) {
    case RoleKind::w:
        return "w";
    case RoleKind::t:
        return "t";
    case RoleKind::f:
        return "f";
    case RoleKind::literal:
        return (b < 0 ? "~x" : "x") + s(a);
    case RoleKind::or_top:
        return "or" + s(a) + "." + s(b) + ".top";
    case RoleKind::or_side:
        return "or" + s(a) + "." + s(b) + ".side" + s(c);
    case RoleKind::h_a:
    case RoleKind::h_b:
    case RoleKind::h_c:
    case RoleKind::h_d: {
        const char part = static_cast<char>('a' + (static_cast<int>(kind) - static_cast<int>(RoleKind::h_a)));
        return std::string("H(") + names[a] + "," + s(b) + ")." + part;
    }
    case RoleKind::clique_extra:
        return "K" + s(a);
    }
    return "?";
}

std::size_t expected_g_size(const CnfFormula& phi) {
    std::size_t n = 3 + 2 * phi.num_vars;
    for (const auto& c : phi.clauses)
        n += 3 * (c.size() - 1) - 1;
    return n;
}

GadgetGraph build_g(const CnfFormula& phi) {
    for (const auto& c : phi.clauses)
        if (c.size() < 2)
            throw PreconditionError("unpadded unit clause");
    const Layout lay = layout_of(phi);
    GadgetGraph gg;
    gg.graph = Graph(lay.size);
    gg.roles.assign(lay.size, Role{RoleKind::w});
    gg.roles[kT] = {RoleKind::t};
    gg.roles[kF] = {RoleKind::f};
    Graph& g = gg.graph;
    g.add_edge(kW, kT);
    g.add_edge(kW, kF);
    g.add_edge(kT, kF);
    for (std::size_t v = 1; v <= phi.num_vars; ++v) {
        const std::size_t pos = literal_vertex(static_cast<Literal>(v)), neg = pos + 1;
        gg.roles[pos] = {RoleKind::literal, v, 1};
        gg.roles[neg] = {RoleKind::literal, v, -1};
        g.add_edge(pos, neg);
        g.add_edge(pos, kW);
        g.add_edge(neg, kW);
    }
    for (std::size_t c = 0; c < lay.chains.size(); ++c)
        for (std::size_t p = 0; p < lay.chains[c].size(); ++p) {
            const OrGadget& gd = lay.chains[c][p];
            gg.roles[gd.side1] = {RoleKind::or_side, c + 1, static_cast<long>(p + 1), 1};
            gg.roles[gd.side2] = {RoleKind::or_side, c + 1, static_cast<long>(p + 1), 2};
            if (gd.top != kT)
                gg.roles[gd.top] = {RoleKind::or_top, c + 1, static_cast<long>(p + 1)};
            g.add_edge(gd.side1, gd.side2);
            g.add_edge(gd.side1, gd.top);
            g.add_edge(gd.side2, gd.top);
            g.add_edge(gd.side1, gd.in1);
            g.add_edge(gd.side2, gd.in2);
            if (gd.top != kT)
                g.add_edge(gd.top, kW);
        }
    std::vector<std::string> labels;
    for (const auto& r : gg.roles)
        labels.push_back(r.label());
    g.set_labels(std::move(labels));
    gg.base_size = lay.size;
    return gg;
}

GadgetGraph build_g_prime(const CnfFormula& phi) {
    const GadgetGraph base = build_g(phi);
    const std::size_t n0 = base.graph.n();
    const std::size_t n = n0 + 3 * (n0 - 3) * 4;
    GadgetGraph gg;
    gg.stage = Stage::g_prime;
    gg.base_size = n0;
    gg.graph = Graph(n);
    gg.roles = base.roles;
    for (auto [u, v] : base.graph.edges())
        gg.graph.add_edge(u, v);
    std::size_t next = n0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 3; j < n0; ++j) {
            const std::size_t a = next, b = next + 1, c = next + 2, d = next + 3;
            next += 4;
            const long jj = static_cast<long>(j);
            gg.roles.push_back({RoleKind::h_a, i, jj});
            gg.roles.push_back({RoleKind::h_b, i, jj});
            gg.roles.push_back({RoleKind::h_c, i, jj});
            gg.roles.push_back({RoleKind::h_d, i, jj});
            Graph& g = gg.graph;
            g.add_edge(i, a);
            g.add_edge(i, b);
            g.add_edge(a, b);
            g.add_edge(j, d);
            g.add_edge(j, c);
            g.add_edge(d, c);
            g.add_edge(i, d);
            g.add_edge(a, j);
            g.add_edge(b, c);
        }
    std::vector<std::string> labels;
    for (const auto& r : gg.roles)
        labels.push_back(r.label());
    gg.graph.set_labels(std::move(labels));
    return gg;
}

GadgetGraph build_gk(const CnfFormula& phi, std::size_t k) {
    if (k < 4)
        throw PreconditionError("build_gk needs k >= 4, got " + std::to_string(k));
    const GadgetGraph mid = build_g_prime(phi);
    const std::size_t n0 = mid.graph.n(), extra = k - 3;
    GadgetGraph gg;
    gg.stage = Stage::g_k;
    gg.k = k;
    gg.base_size = mid.base_size;
    gg.graph = Graph(n0 + extra);
    gg.roles = mid.roles;
    for (auto [u, v] : mid.graph.edges())
        gg.graph.add_edge(u, v);
    for (std::size_t x = 0; x < extra; ++x) {
        gg.roles.push_back({RoleKind::clique_extra, x + 1});
        for (std::size_t v = 0; v < n0 + x; ++v)
            gg.graph.add_edge(v, n0 + x);
    }
    std::vector<std::string> labels;
    for (const auto& r : gg.roles)
        labels.push_back(r.label());
    gg.graph.set_labels(std::move(labels));
    return gg;
}

Coloring assignment_to_coloring(const CnfFormula& phi, const std::vector<bool>& assignment, Stage stage,
                                std::size_t k) {
    if (auto bad = phi.falsified_clause(assignment))
        throw PreconditionError("assignment falsifies clause " + std::to_string(*bad + 1));
    if (stage == Stage::g_k && k < 4)
        throw PreconditionError("build_gk needs k >= 4, got " + std::to_string(k));
    const Layout lay = layout_of(phi);
    std::vector<std::size_t> col(lay.size, 0);
    col[kW] = 0;
    col[kT] = 1;
    col[kF] = 2;
    for (std::size_t v = 1; v <= phi.num_vars; ++v) {
        const bool val = assignment[v - 1];
        col[literal_vertex(static_cast<Literal>(v))] = val ? 1 : 2;
        col[literal_vertex(-static_cast<Literal>(v))] = val ? 2 : 1;
    }
    for (std::size_t c = 0; c < lay.chains.size(); ++c)
        for (std::size_t p = 0; p < lay.chains[c].size(); ++p) {
            const OrGadget& gd = lay.chains[c][p];
            const bool last = p + 1 == lay.chains[c].size();
            bool done = false;
            // Prefer t on the top; the last top is t itself.
            for (std::size_t top : {std::size_t{1}, std::size_t{2}}) {
                if (last && top != 1)
                    break;
                for (std::size_t s1 = 0; s1 < 3 && !done; ++s1)
                    for (std::size_t s2 = 0; s2 < 3 && !done; ++s2)
                        if (s1 != s2 && s1 != top && s2 != top && s1 != col[gd.in1] && s2 != col[gd.in2]) {
                            col[gd.side1] = s1;
                            col[gd.side2] = s2;
                            col[gd.top] = top;
                            done = true;
                        }
                if (done)
                    break;
            }
            if (!done)
                throw Error("OR gadget " + std::to_string(p + 1) + " of clause " + std::to_string(c + 1) +
                            " cannot be extended");
        }
    if (stage == Stage::g)
        return Coloring{col, 3};
    const std::size_t n0 = lay.size;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 3; j < n0; ++j) {
            std::size_t a, b, c, d;
            if (col[i] == col[j]) {
                // classes {i, j}, {a, c}, {b, d}
                std::size_t x = col[i] == 0 ? 1 : 0;
                a = c = x;
                b = d = 3 - col[i] - x;
            } else {
                // classes {i, c}, {a, d}, {j, b}
                c = col[i];
                b = col[j];
                a = d = 3 - col[i] - col[j];
            }
            col.push_back(a);
            col.push_back(b);
            col.push_back(c);
            col.push_back(d);
        }
    if (stage == Stage::g_prime)
        return Coloring{col, 3};
    for (std::size_t x = 3; x < k; ++x)
        col.push_back(x);
    return Coloring{col, k};
}

std::vector<bool> coloring_to_assignment(const CnfFormula& phi, const Coloring& c) {
    const GadgetGraph gg = build_g(phi);
    const std::size_t n = gg.graph.n();
    if (c.colors.size() < n)
        throw PreconditionError("coloring covers " + std::to_string(c.colors.size()) + " of " + std::to_string(n) +
                                " vertices");
    Coloring restricted = Coloring::from_colors({c.colors.begin(), c.colors.begin() + static_cast<std::ptrdiff_t>(n)});
    if (auto why = coloring_violation(gg.graph, restricted))
        throw PreconditionError("improper coloring: " + *why);
    if (restricted.num_colors > 3)
        throw PreconditionError("coloring uses " + std::to_string(restricted.num_colors) + " colors on G");
    std::vector<bool> assignment(phi.num_vars);
    for (std::size_t v = 1; v <= phi.num_vars; ++v)
        assignment[v - 1] =
            restricted.colors[literal_vertex(static_cast<Literal>(v))] == restricted.colors[kT];
    if (auto bad = phi.falsified_clause(assignment))
        throw Error("extracted assignment falsifies clause " + std::to_string(*bad + 1));
    return assignment;
}

Graph h_gadget(bool drop_matching_edge) {
    // i a b j d c
    Graph g(6);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(1, 2);
    g.add_edge(3, 4);
    g.add_edge(3, 5);
    g.add_edge(4, 5);
    g.add_edge(0, 4);
    g.add_edge(1, 3);
    if (!drop_matching_edge)
        g.add_edge(2, 5);
    g.set_labels({"i", "a", "b", "j", "d", "c"});
    return g;
}

namespace {

struct GadgetEnum {
    GadgetEnum(const Graph& g, const SmallSpace& s, const std::vector<PackedVec>& points)
        : g(g), s(s), points(points) {}

    const Graph& g;
    const SmallSpace& s;
    const std::vector<PackedVec>& points;
    std::vector<PackedVec> vec = std::vector<PackedVec>(6);
    std::size_t reps = 0;
    std::size_t bad = 0;
    std::vector<PackedVec> first_bad;

    bool proportional(const PackedVec& x, const PackedVec& y) const {
        return s.normalize(x) == s.normalize(y);
    }

    void dfs(std::size_t v) {
        if (v == 6) {
            ++reps;
            if (s.dot(vec[0], vec[3]) != 0 && !proportional(vec[0], vec[3])) {
                if (bad++ == 0)
                    first_bad = vec;
            }
            return;
        }
        for (const auto& u : points) {
            bool ok = true;
            for (std::size_t w = 0; w < v && ok; ++w)
                if (g.has_edge(v, w) && s.dot(u, vec[w]) != 0)
                    ok = false;
            if (!ok)
                continue;
            vec[v] = u;
            dfs(v + 1);
        }
    }
};

} // namespace

GadgetReport certify_gadget_lemma(FieldSpec f, bool mutated, unsigned threads) {
    if (!(f == FieldSpec::prime(2) || f == FieldSpec::prime(3)))
        throw PreconditionError("gadget certification supports GF(2) and GF(3), got " + f.name());
    const Graph g = h_gadget(mutated);
    const SmallSpace s(f.modulus(), 3);
    const std::vector<PackedVec> points = s.anisotropic_points();

    // Split on the vector of vertex i; results merge in candidate order.
    std::vector<GadgetEnum> parts;
    for (std::size_t k = 0; k < points.size(); ++k)
        parts.emplace_back(g, s, points);
    auto work = [&](std::size_t k) {
        parts[k].vec[0] = points[k];
        parts[k].dfs(1);
    };
    threads = std::max(1u, threads);
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < threads; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t k = w; k < points.size(); k += threads)
                work(k);
        });
    for (std::size_t k = 0; k < points.size(); k += threads)
        work(k);
    for (auto& th : pool)
        th.join();

    GadgetReport rep;
    rep.field = f;
    rep.mutated = mutated;
    for (const auto& p : parts) {
        rep.representations += p.reps;
        if (p.bad && rep.counterexamples == 0)
            for (const auto& v : p.first_bad)
                rep.first_counterexample.push_back(s.to_vec(v, f));
        rep.counterexamples += p.bad;
    }
    return rep;
}

} // namespace lodim
