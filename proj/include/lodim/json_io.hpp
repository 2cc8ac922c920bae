#pragma once

// JSON forms of graphs, witnesses and certificates. Vertex ids are 0-based.
// Field entries are integers for GF(p) and "a/b" strings for the rationals.

#include "lodim/coloring.hpp"
#include "lodim/graph.hpp"
#include "lodim/indexcoding.hpp"
#include "lodim/linalg.hpp"
#include "lodim/ortho.hpp"
#include "lodim/reduction.hpp"

#include "json.hpp"

#include <optional>
#include <string>

namespace lodim {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const Graph& g);
Json to_json(FieldSpec f, std::span<const FieldElem> v);
Json to_json(const Mat& m);
Json to_json(const VectorRepresentation& r);
Json to_json(const Coloring& c);
Json to_json(const IndexCode& code);
Json to_json(const SimulationReport& r);
Json to_json(const GadgetReport& r);
Json roles_to_json(const GadgetGraph& gg);

FieldElem field_elem_from_json(FieldSpec f, const Json& j);
Mat mat_from_json(const Json& j);
VectorRepresentation rep_from_json(const Json& j);
Coloring coloring_from_json(const Json& j);

/// Re-checks a certificate's witness against g: the witness must verify and
/// realise the stated value. Returns a description of the first problem.
std::optional<std::string> certificate_violation(const Json& cert, const Graph& g);

} // namespace lodim
