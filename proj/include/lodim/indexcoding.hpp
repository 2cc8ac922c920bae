#pragma once

#include "lodim/coloring.hpp"
#include "lodim/graph.hpp"
#include "lodim/linalg.hpp"
#include "lodim/ortho.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lodim {

/// Linear index code for a symmetric side-information graph: the broadcast is
/// B x, and receiver i recovers x_i from lambda_i (B x) = M_i x.
struct IndexCode {
    FieldSpec field = FieldSpec::prime(2);
    Graph graph;
    Mat encode_mat;
    Mat matrix;
    std::vector<Vec> decode_coeffs;

    std::size_t n() const { return graph.n(); }
    std::size_t length() const { return encode_mat.rows(); }
};

/// Matrix representing g built from an independent representation of its
/// complement. Row i is <y_i, u_j> where y_i is the lexicographically smallest
/// vector orthogonal to the complement-neighbors of i but not to u_i.
Mat representing_matrix(const Graph& g, const VectorRepresentation& complement_rep);

/// B is the first rank(M) independent rows of M, scanned top to bottom.
IndexCode build_code(const Graph& g, const Mat& m);

Vec encode(const IndexCode& code, std::span<const FieldElem> x);

/// side holds x_j for exactly the neighbors j of i.
FieldElem decode_one(const IndexCode& code, std::size_t i, std::span<const FieldElem> y,
                     const std::map<std::size_t, FieldElem>& side);

/// Assigns u_{c(v)} to every vertex after checking that the vectors indexed by
/// each closed neighborhood of the complement are independent.
IndexCode code_from_local_coloring(const Graph& g, const Coloring& complement_coloring, const std::vector<Vec>& u);

/// Vandermonde vectors of length locality(c); needs |F| >= number of colors.
IndexCode code_from_local_coloring_vandermonde(const Graph& g, const Coloring& complement_coloring, FieldSpec f);
/// Greedy vectors of length locality(c) + ceil(log_q h), h = distinct
/// closed-neighborhood color sets.
IndexCode code_from_local_coloring_greedy(const Graph& g, const Coloring& complement_coloring, FieldSpec f);

struct CompressionResult {
    std::size_t attempts = 0;
    std::size_t m = 0;
    VectorRepresentation rep;
};

inline constexpr std::size_t kCompressionRetries = 64;

/// One attempt: A is random_mat(m, t, seed) and w_v -> A w_v, kept only if the
/// image is an independent representation of g.
std::optional<VectorRepresentation> try_compress(const Graph& g, const VectorRepresentation& r, std::uint64_t seed);

/// Attempt k uses seed + k. Throws Infeasible after `retries` failures.
CompressionResult compress_representation(const Graph& g, const VectorRepresentation& r, std::uint64_t seed,
                                          std::size_t retries = kCompressionRetries);

enum class CodeMethod { minrank, local, compress };

CodeMethod code_method_from_string(const std::string& s);
std::string to_string(CodeMethod m);

/// End-to-end construction for side-information graph g. The local and
/// compress methods start from a minimum-locality coloring of the complement.
IndexCode build_index_code(const Graph& g, FieldSpec f, CodeMethod method, std::uint64_t seed = 0);

struct SimulationReport {
    std::size_t trials = 0;
    std::size_t failures = 0;
    std::size_t length = 0;
};

/// Uniform random messages, every receiver decoded against the truth.
SimulationReport simulate(const IndexCode& code, std::size_t trials, std::uint64_t seed, unsigned threads = 1);

} // namespace lodim
