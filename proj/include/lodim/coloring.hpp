#pragma once

#include "lodim/graph.hpp"
#include "lodim/result.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lodim {

/// Vertex -> color in [0, num_colors); every color is used.
struct Coloring {
    std::vector<std::size_t> colors;
    std::size_t num_colors = 0;

    /// Renumbers arbitrary color ids onto 0..m-1 preserving their order.
    static Coloring from_colors(const std::vector<std::size_t>& raw);
    bool operator==(const Coloring&) const = default;
};

/// Description of the first monochromatic edge or malformed entry, if any.
std::optional<std::string> coloring_violation(const Graph& g, const Coloring& c);
bool is_proper(const Graph& g, const Coloring& c);

/// Largest number of distinct colors in a closed neighborhood. Throws
/// PreconditionError for an improper coloring.
std::size_t locality_of_coloring(const Graph& g, const Coloring& c);

/// Hard ceiling of the bitmask search engines (vertices and colors).
inline constexpr std::size_t kEngineLimit = 64;

struct ColoringCaps {
    std::size_t chromatic_vertices = 64;
    std::size_t local_vertices = 56;
    std::size_t clique_vertices = 64;
};

struct CliqueResult {
    std::size_t value = 0;
    std::vector<std::size_t> witness;
};

CliqueResult max_clique(const Graph& g, const ColoringCaps& caps = {});

/// DSATUR greedy coloring; an upper bound on the chromatic number for graphs of
/// any size.
Coloring dsatur_coloring(const Graph& g);

/// Exact chromatic number with a minimum coloring.
ParamResult<Coloring> chromatic_number(const Graph& g, const ColoringCaps& caps = {});

/// Exact local chromatic number with a coloring of that locality.
ParamResult<Coloring> local_chromatic_number(const Graph& g, const ColoringCaps& caps = {});

/// A proper coloring with at most `max_colors` colors whose locality is at most
/// `max_locality`, searched exhaustively; nullopt if none exists.
std::optional<Coloring> find_coloring(const Graph& g, std::size_t max_colors, std::size_t max_locality);

} // namespace lodim
