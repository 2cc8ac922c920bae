#pragma once

#include "lodim/coloring.hpp"
#include "lodim/field.hpp"
#include "lodim/graph.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lodim {

/// Literal +v / -v for variable v in 1..num_vars.
using Literal = int;

/// CNF formula without empty or tautological clauses. Unit clauses are stored
/// padded as (x or x).
struct CnfFormula {
    std::size_t num_vars = 0;
    std::vector<std::vector<Literal>> clauses;

    /// Validates, pads unit clauses, and throws PreconditionError on bad input.
    static CnfFormula make(std::size_t num_vars, std::vector<std::vector<Literal>> clauses);

    /// assignment[v - 1] is the value of variable v.
    bool satisfied_by(const std::vector<bool>& assignment) const;
    /// Index of the first clause the assignment falsifies.
    std::optional<std::size_t> falsified_clause(const std::vector<bool>& assignment) const;
};

/// "p cnf k m" followed by zero-terminated clauses.
CnfFormula parse_dimacs_cnf(std::string_view text);
std::string write_dimacs_cnf(const CnfFormula& phi);

enum class RoleKind { w, t, f, literal, or_top, or_side, h_a, h_b, h_c, h_d, clique_extra };

struct Role {
    RoleKind kind;
    /// literal: variable and sign (+1/-1); or_*: clause, gadget position, side;
    /// h_*: i and j; clique_extra: index. Unused fields are zero. 1-based
    /// clause/variable/gadget numbers, 0-based vertex ids.
    std::size_t a = 0;
    long b = 0;
    std::size_t c = 0;

    std::string label() const;
};

enum class Stage { g, g_prime, g_k };

struct GadgetGraph {
    Graph graph;
    std::vector<Role> roles;
    Stage stage = Stage::g;
    /// Vertices 0..base_size-1 form the first-stage graph.
    std::size_t base_size = 0;
    std::size_t k = 3;
};

GadgetGraph build_g(const CnfFormula& phi);
GadgetGraph build_g_prime(const CnfFormula& phi);
/// Throws PreconditionError for k < 4.
GadgetGraph build_gk(const CnfFormula& phi, std::size_t k);

/// Closed-form vertex count of build_g.
std::size_t expected_g_size(const CnfFormula& phi);

/// Proper coloring of the chosen stage: colors 0, 1, 2 are w, t, f, and the
/// clique vertices of the last stage take 3..k-1. Throws PreconditionError
/// naming a falsified clause.
Coloring assignment_to_coloring(const CnfFormula& phi, const std::vector<bool>& assignment, Stage stage = Stage::g_prime,
                                std::size_t k = 3);

/// Reads the truth values off a proper 3-coloring whose first build_g(phi)
/// vertices carry a coloring of G: a literal is true iff it shares t's color.
std::vector<bool> coloring_to_assignment(const CnfFormula& phi, const Coloring& c);

/// The six-vertex gadget on i, a, b, j, d, c (vertex ids 0..5 in that order).
/// With `drop_matching_edge` the b-c edge is omitted.
Graph h_gadget(bool drop_matching_edge = false);

struct GadgetReport {
    FieldSpec field = FieldSpec::prime(2);
    bool mutated = false;
    std::size_t representations = 0;
    std::size_t counterexamples = 0;
    /// Vectors of the first counterexample, in gadget vertex order.
    std::vector<Vec> first_counterexample;
};

/// Enumerates every orthogonal representation of the gadget in F^3 up to
/// scaling each vector, and checks that u_i and u_j are orthogonal or
/// proportional. F must be GF(2) or GF(3).
GadgetReport certify_gadget_lemma(FieldSpec f, bool mutated = false, unsigned threads = 1);

} // namespace lodim
