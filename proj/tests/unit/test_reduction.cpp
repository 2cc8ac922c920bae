#include "doctest.h"

#include "../oracles/oracles.hpp"
#include "lodim/coloring.hpp"
#include "lodim/error.hpp"
#include "lodim/ortho.hpp"
#include "lodim/reduction.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <random>

using namespace lodim;

namespace {

std::vector<bool> bits_to_assignment(std::uint32_t bits, std::size_t vars) {
    std::vector<bool> a(vars);
    for (std::size_t v = 0; v < vars; ++v)
        a[v] = (bits >> v) & 1u;
    return a;
}

// Random formula with distinct variables inside each clause.
oracle::Formula random_formula(std::mt19937_64& eng, int max_vars, int max_clauses, int min_width, int max_width) {
    oracle::Formula f;
    f.vars = 1 + static_cast<int>(eng() % static_cast<unsigned>(max_vars));
    const int m = 1 + static_cast<int>(eng() % static_cast<unsigned>(max_clauses));
    for (int c = 0; c < m; ++c) {
        int width = min_width + static_cast<int>(eng() % static_cast<unsigned>(max_width - min_width + 1));
        width = std::min(width, f.vars);
        std::vector<int> vars(static_cast<std::size_t>(f.vars));
        for (int v = 0; v < f.vars; ++v)
            vars[static_cast<std::size_t>(v)] = v + 1;
        std::shuffle(vars.begin(), vars.end(), eng);
        std::vector<int> clause;
        for (int i = 0; i < width; ++i)
            clause.push_back(eng() % 2 ? vars[static_cast<std::size_t>(i)] : -vars[static_cast<std::size_t>(i)]);
        f.clauses.push_back(clause);
    }
    return f;
}

CnfFormula to_cnf(const oracle::Formula& f) {
    std::vector<std::vector<Literal>> cs(f.clauses.begin(), f.clauses.end());
    return CnfFormula::make(static_cast<std::size_t>(f.vars), cs);
}

// Counts straight from the construction: w, t, f and a triangle on them; a
// literal pair per variable, both joined to each other and to w; a chain of
// width-1 OR gadgets per clause (five edges each, plus top-w except for the
// last top, which is t).
std::pair<std::size_t, std::size_t> g_counts(const oracle::Formula& f) {
    std::size_t n = 3 + 2 * static_cast<std::size_t>(f.vars);
    std::size_t e = 3 + 3 * static_cast<std::size_t>(f.vars);
    for (const auto& c : f.clauses) {
        const std::size_t gadgets = std::max<std::size_t>(c.size(), 2) - 1;
        n += 3 * gadgets - 1;
        e += 5 * gadgets + (gadgets - 1);
    }
    return {n, e};
}

const FieldSpec F2 = FieldSpec::prime(2);
const FieldSpec F3 = FieldSpec::prime(3);

// Independent count for the gadget check: plain integer backtracking over the
// normalized anisotropic points of F_p^3, returning {representations, bad}.
std::pair<std::size_t, std::size_t> gadget_counts(int p, bool mutated) {
    std::vector<std::array<int, 3>> pts;
    for (int x = 0; x < p; ++x)
        for (int y = 0; y < p; ++y)
            for (int z = 0; z < p; ++z) {
                std::array<int, 3> v{x, y, z};
                int lead = 0;
                while (lead < 3 && v[static_cast<std::size_t>(lead)] == 0)
                    ++lead;
                if (lead == 3 || v[static_cast<std::size_t>(lead)] != 1)
                    continue;
                if ((x * x + y * y + z * z) % p)
                    pts.push_back(v);
            }
    auto dot = [&](std::size_t a, std::size_t b) {
        return (pts[a][0] * pts[b][0] + pts[a][1] * pts[b][1] + pts[a][2] * pts[b][2]) % p;
    };
    // i=0 a=1 b=2 j=3 d=4 c=5
    std::vector<std::pair<int, int>> edges = {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {0, 4}, {1, 3}};
    if (!mutated)
        edges.push_back({2, 5});
    std::size_t reps = 0, bad = 0;
    std::array<std::size_t, 6> pick{};
    std::function<void(int)> go = [&](int x) {
        if (x == 6) {
            ++reps;
            if (dot(pick[0], pick[3]) != 0 && pick[0] != pick[3])
                ++bad;
            return;
        }
        for (std::size_t c = 0; c < pts.size(); ++c) {
            bool ok = true;
            for (auto [u, v] : edges) {
                const int other = u == x ? v : v == x ? u : -1;
                if (other >= 0 && other < x && dot(c, pick[static_cast<std::size_t>(other)]) != 0)
                    ok = false;
            }
            if (!ok)
                continue;
            pick[static_cast<std::size_t>(x)] = c;
            go(x + 1);
        }
    };
    go(0);
    return {reps, bad};
}

} // namespace

TEST_SUITE("reduction") {

TEST_CASE("formula validation") {
    auto phi = CnfFormula::make(2, {{1}, {-1, 2}});
    CHECK(phi.clauses[0] == std::vector<Literal>{1, 1});
    CHECK(phi.satisfied_by({true, true}));
    CHECK_FALSE(phi.satisfied_by({false, true}));
    CHECK(phi.falsified_clause({true, false}) == std::optional<std::size_t>{1});
    CHECK_THROWS_AS(CnfFormula::make(2, {{}}), PreconditionError);
    CHECK_THROWS_AS(CnfFormula::make(2, {{1, -1}}), PreconditionError);
    CHECK_THROWS_AS(CnfFormula::make(2, {{3}}), PreconditionError);
    CHECK_THROWS_AS(CnfFormula::make(2, {{0, 1}}), PreconditionError);
}

TEST_CASE("DIMACS CNF parsing") {
    auto phi = parse_dimacs_cnf("c hi\np cnf 3 2\n1 -2 0\n3\n0\n%\n0\n");
    CHECK(phi.num_vars == 3);
    REQUIRE(phi.clauses.size() == 2);
    CHECK(phi.clauses[0] == std::vector<Literal>{1, -2});
    CHECK(phi.clauses[1] == std::vector<Literal>{3, 3});
    auto again = parse_dimacs_cnf(write_dimacs_cnf(phi));
    CHECK(again.clauses == phi.clauses);
    CHECK(again.num_vars == phi.num_vars);

    auto line_of = [](const char* text) {
        try {
            parse_dimacs_cnf(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t{99};
    };
    CHECK(line_of("1 2 0\n") == 1);
    CHECK(line_of("p cnf 2 1\n1 -1 0\n") == 2);
    CHECK(line_of("p cnf 2 1\n1 3 0\n") == 2);
    CHECK(line_of("p cnf 2 2\n1 0\n0\n") == 3);
    CHECK(line_of("p cnf 2 1\n1 x 0\n") == 2);
    CHECK(line_of("p cnf 2 1\np cnf 2 1\n") == 2);
    CHECK(line_of("p cnf two 1\n") == 1);
    CHECK_THROWS_AS(parse_dimacs_cnf("p cnf 2 2\n1 2 0\n"), ParseError);
    CHECK_THROWS_AS(parse_dimacs_cnf("c nothing\n"), ParseError);
}

TEST_CASE("vertex counts of the small examples") {
    auto two = CnfFormula::make(2, {{1, 2}});
    auto g = build_g(two);
    CHECK(g.graph.n() == 9);
    CHECK(expected_g_size(two) == 9);
    CHECK(build_g(CnfFormula::make(3, {{1, 2, 3}})).graph.n() == 14);
    auto gp = build_g_prime(two);
    CHECK(gp.graph.n() == 81);
    CHECK(gp.base_size == 9);
    CHECK(build_gk(two, 5).graph.n() == 83);
    auto g4 = build_gk(two, 4);
    REQUIRE(g4.graph.n() == 82);
    CHECK(g4.graph.degree(81) == 81);
    CHECK(g4.roles[81].label() == "K1");
    CHECK_THROWS_AS(build_gk(two, 3), PreconditionError);
}

TEST_CASE("role map") {
    auto gp = build_g_prime(CnfFormula::make(2, {{1, -2}}));
    const auto& r = gp.roles;
    REQUIRE(r.size() == gp.graph.n());
    CHECK(r[0].label() == "w");
    CHECK(r[1].label() == "t");
    CHECK(r[2].label() == "f");
    CHECK(r[3].label() == "x1");
    CHECK(r[4].label() == "~x1");
    CHECK(r[7].label() == "or1.1.side1");
    CHECK(r[8].label() == "or1.1.side2");
    CHECK(r[9].label() == "H(w,3).a");
    CHECK(gp.graph.labels()[12] == "H(w,3).d");
}

TEST_CASE("every H block has nine internal edges in the stated pattern") {
    auto gp = build_g_prime(CnfFormula::make(3, {{1, 2, -3}, {-1}}));
    const std::size_t n0 = gp.base_size;
    std::size_t blocks = 0;
    for (std::size_t v = n0; v < gp.graph.n(); v += 4) {
        const std::size_t i = gp.roles[v].a, j = static_cast<std::size_t>(gp.roles[v].b);
        const std::size_t a = v, b = v + 1, c = v + 2, d = v + 3;
        CHECK(gp.roles[b].kind == RoleKind::h_b);
        CHECK(gp.roles[c].kind == RoleKind::h_c);
        CHECK(gp.roles[d].kind == RoleKind::h_d);
        const std::vector<std::size_t> block = {i, a, b, j, d, c};
        std::size_t internal = 0;
        for (std::size_t x = 0; x < 6; ++x)
            for (std::size_t y = x + 1; y < 6; ++y)
                internal += gp.graph.has_edge(block[x], block[y]);
        // i and j may already be adjacent in G.
        CHECK(internal - gp.graph.has_edge(i, j) == 9);
        CHECK(gp.graph.has_edge(i, d));
        CHECK(gp.graph.has_edge(a, j));
        CHECK(gp.graph.has_edge(b, c));
        CHECK(gp.graph.degree(a) == 3);
        ++blocks;
    }
    CHECK(blocks == 3 * (n0 - 3));
    // t and x1 are not adjacent in G, so their block induces exactly the gadget.
    const std::size_t v = n0 + 4 * (n0 - 3);
    REQUIRE(gp.roles[v].label() == "H(t,3).a");
    CHECK(induced_subgraph(gp.graph, {1, v, v + 1, 3, v + 3, v + 2}) == h_gadget());
}

TEST_CASE("closed-form counts on random formulas") {
    std::mt19937_64 eng(41);
    for (int trial = 0; trial < 100; ++trial) {
        auto f = random_formula(eng, 5, 5, 1, 4);
        auto phi = to_cnf(f);
        auto [n, e] = g_counts(f);
        auto g = build_g(phi);
        CHECK(g.graph.n() == n);
        CHECK(expected_g_size(phi) == n);
        CHECK(g.graph.edge_count() == e);
        auto gp = build_g_prime(phi);
        CHECK(gp.graph.n() == n + 12 * (n - 3));
        CHECK(gp.graph.edge_count() == e + 27 * (n - 3));
        const std::size_t k = 4 + static_cast<std::size_t>(trial % 3);
        auto gk = build_gk(phi, k);
        CHECK(gk.graph.n() == gp.graph.n() + k - 3);
        CHECK(gk.graph.edge_count() == gp.graph.edge_count() + (k - 3) * (k - 4) / 2 + (k - 3) * gp.graph.n());
        CHECK(induced_subgraph(gp.graph, [&] {
                  std::vector<std::size_t> vs(n);
                  for (std::size_t v = 0; v < n; ++v)
                      vs[v] = v;
                  return vs;
              }()) == g.graph);
    }
}

TEST_CASE("satisfiable iff 3-colorable on random small formulas") {
    std::mt19937_64 eng(42);
    int sat = 0, unsat = 0;
    for (int trial = 0; trial < 20; ++trial) {
        auto f = random_formula(eng, 4, 4, 2, 3);
        auto g = build_g(to_cnf(f));
        const bool s = oracle::brute_force_sat(f).has_value();
        CHECK(s == (chromatic_number(g.graph).value <= 3));
        (s ? sat : unsat)++;
    }
    CHECK(sat > 0);
}

TEST_CASE("contradictory unit clauses give chromatic number four") {
    auto phi = CnfFormula::make(1, {{1}, {-1}});
    auto g = build_g(phi);
    CHECK(chromatic_number(g.graph).value == 4);
    CHECK_THROWS_AS(assignment_to_coloring(phi, {true}), PreconditionError);
    CHECK_THROWS_AS(assignment_to_coloring(phi, {false}), PreconditionError);
}

TEST_CASE("colorings from satisfying assignments") {
    auto two = CnfFormula::make(2, {{1, 2}});
    auto c = assignment_to_coloring(two, {true, false});
    auto gp = build_g_prime(two);
    CHECK_FALSE(coloring_violation(gp.graph, c));
    CHECK(c.num_colors == 3);
    CHECK(c.colors[1] == 1);
    CHECK(c.colors[3] == 1);
    CHECK(c.colors[5] == 2);
    try {
        assignment_to_coloring(CnfFormula::make(2, {{1, 2}, {-1, -2}}), {true, true});
        FAIL("expected an error");
    } catch (const PreconditionError& e) {
        CHECK(std::string(e.what()).find("clause 2") != std::string::npos);
    }

    std::mt19937_64 eng(43);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        auto f = random_formula(eng, 4, 4, 1, 3);
        auto sol = oracle::brute_force_sat(f);
        if (!sol)
            continue;
        ++checked;
        auto phi = to_cnf(f);
        auto a = bits_to_assignment(*sol, phi.num_vars);
        auto gp2 = build_g_prime(phi);
        auto col = assignment_to_coloring(phi, a);
        REQUIRE_FALSE(coloring_violation(gp2.graph, col));
        CHECK(col.num_colors <= 3);
        for (std::size_t v = 1; v <= phi.num_vars; ++v)
            CHECK((col.colors[3 + 2 * (v - 1)] == 1) == a[v - 1]);
        // H blocks follow one of the two class patterns.
        for (std::size_t v = gp2.base_size; v < gp2.graph.n(); v += 4) {
            const std::size_t i = gp2.roles[v].a, j = static_cast<std::size_t>(gp2.roles[v].b);
            const auto& k = col.colors;
            if (k[i] == k[j]) {
                CHECK(k[v] == k[v + 2]);
                CHECK(k[v + 1] == k[v + 3]);
            } else {
                CHECK(k[i] == k[v + 2]);
                CHECK(k[v] == k[v + 3]);
                CHECK(k[j] == k[v + 1]);
            }
        }
        // The coloring induces orthogonal representations of locality <= 3.
        for (FieldSpec fld : {F2, F3, FieldSpec::rationals()}) {
            auto r = rep_from_coloring(col, fld);
            CHECK_FALSE(orthogonal_violation(gp2.graph, r));
            CHECK(locality_of_rep(gp2.graph, r) <= 3);
        }
        for (std::size_t k = 4; k <= 5; ++k) {
            auto gk = build_gk(phi, k);
            auto ck = assignment_to_coloring(phi, a, Stage::g_k, k);
            CHECK_FALSE(coloring_violation(gk.graph, ck));
            CHECK(ck.num_colors <= k);
        }
        auto cg = assignment_to_coloring(phi, a, Stage::g);
        CHECK_FALSE(coloring_violation(build_g(phi).graph, cg));
    }
    CHECK(checked >= 20);
}

TEST_CASE("monotone formulas under the all-true assignment") {
    std::mt19937_64 eng(44);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = random_formula(eng, 4, 4, 1, 3);
        for (auto& c : f.clauses)
            for (auto& l : c)
                l = std::abs(l);
        auto phi = to_cnf(f);
        auto col = assignment_to_coloring(phi, std::vector<bool>(phi.num_vars, true));
        CHECK_FALSE(coloring_violation(build_g_prime(phi).graph, col));
    }
}

TEST_CASE("round trip through a coloring of G") {
    std::mt19937_64 eng(45);
    int done = 0;
    while (done < 20) {
        auto f = random_formula(eng, 4, 4, 1, 3);
        auto sol = oracle::brute_force_sat(f);
        if (!sol)
            continue;
        ++done;
        auto phi = to_cnf(f);
        auto a = bits_to_assignment(*sol, phi.num_vars);
        auto col = assignment_to_coloring(phi, a);
        auto back = coloring_to_assignment(phi, col);
        CHECK(phi.satisfied_by(back));
        CHECK(back == a);

        // Colorings found by the exact solver also decode to satisfying assignments.
        auto g = build_g(phi);
        auto exact = chromatic_number(g.graph);
        REQUIRE(exact.value <= 3);
        CHECK(phi.satisfied_by(coloring_to_assignment(phi, exact.witness)));
    }
}

TEST_CASE("pure literals") {
    // x2 occurs only negatively.
    auto phi = CnfFormula::make(3, {{1, -2}, {-2, 3}, {-1, 3}});
    std::vector<bool> a = {true, false, true};
    auto back = coloring_to_assignment(phi, assignment_to_coloring(phi, a));
    CHECK(back == a);
    CHECK_FALSE(back[1]);
}

TEST_CASE("coloring_to_assignment rejects bad colorings") {
    auto phi = CnfFormula::make(2, {{1, 2}});
    auto c = assignment_to_coloring(phi, {true, true});
    auto bad = c;
    bad.colors[3] = bad.colors[0];
    CHECK_THROWS_AS(coloring_to_assignment(phi, bad), PreconditionError);
    auto short_c = Coloring::from_colors({0, 1, 2});
    CHECK_THROWS_AS(coloring_to_assignment(phi, short_c), PreconditionError);
    auto g = build_g(phi);
    std::vector<std::size_t> four(g.graph.n());
    for (std::size_t v = 0; v < four.size(); ++v)
        four[v] = v;
    CHECK_THROWS_AS(coloring_to_assignment(phi, Coloring::from_colors(four)), PreconditionError);
}

TEST_CASE("gadget shape") {
    Graph h = h_gadget();
    CHECK(h.n() == 6);
    CHECK(h.edge_count() == 9);
    CHECK(h.has_edge(2, 5));
    Graph m = h_gadget(true);
    CHECK(m.edge_count() == 8);
    CHECK_FALSE(m.has_edge(2, 5));
}

TEST_CASE("gadget certification") {
    for (int p : {2, 3})
        for (bool mutated : {false, true}) {
            CAPTURE(p);
            CAPTURE(mutated);
            auto [reps, bad] = gadget_counts(p, mutated);
            auto report = certify_gadget_lemma(FieldSpec::prime(static_cast<unsigned>(p)), mutated);
            CHECK(report.representations == reps);
            CHECK(report.counterexamples == bad);
            CHECK(report.mutated == mutated);
            auto threaded = certify_gadget_lemma(FieldSpec::prime(static_cast<unsigned>(p)), mutated, 4);
            CHECK(threaded.representations == report.representations);
            CHECK(threaded.counterexamples == report.counterexamples);
            CHECK(threaded.first_counterexample == report.first_counterexample);
        }
    CHECK(certify_gadget_lemma(F2).counterexamples == 0);
    CHECK(certify_gadget_lemma(F3).counterexamples == 0);
    auto neg = certify_gadget_lemma(F3, true);
    CHECK(neg.counterexamples > 0);
    REQUIRE(neg.first_counterexample.size() == 6);
    VectorRepresentation r;
    r.field = F3;
    r.dim = 3;
    r.vectors = neg.first_counterexample;
    CHECK_FALSE(orthogonal_violation(h_gadget(true), r));
    CHECK(orthogonal_violation(h_gadget(), r));
    CHECK_FALSE(inner_product(r.vectors[0], r.vectors[3]).is_zero());
}

}
