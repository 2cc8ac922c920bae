#include "lodim/json_io.hpp"

#include "lodim/error.hpp"

#include <algorithm>
#include <set>

namespace lodim {

Json to_json(const Graph& g) {
    Json j;
    j["n"] = g.n();
    Json edges = Json::array();
    for (auto [u, v] : g.edges())
        edges.push_back({u, v});
    j["edges"] = std::move(edges);
    if (!g.labels().empty())
        j["labels"] = g.labels();
    return j;
}

Json to_json(FieldSpec f, std::span<const FieldElem> v) {
    Json out = Json::array();
    for (const auto& e : v) {
        if (f.is_prime())
            out.push_back(e.residue());
        else
            out.push_back(e.to_string());
    }
    return out;
}

Json to_json(const Mat& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
        rows.push_back(to_json(m.field(), m.row(r)));
    return {{"field", m.field().tag()}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

Json to_json(const VectorRepresentation& r) {
    Json vs = Json::array();
    for (const auto& v : r.vectors)
        vs.push_back(to_json(r.field, v));
    return {{"field", r.field.tag()}, {"kind", to_string(r.kind)}, {"dim", r.dim}, {"vectors", std::move(vs)}};
}

Json to_json(const Coloring& c) { return {{"num_colors", c.num_colors}, {"colors", c.colors}}; }

Json to_json(const IndexCode& code) {
    Json lambdas = Json::array();
    for (const auto& l : code.decode_coeffs)
        lambdas.push_back(to_json(code.field, l));
    return {{"field", code.field.tag()},
            {"n", code.n()},
            {"length", code.length()},
            {"encode", to_json(code.encode_mat)},
            {"matrix", to_json(code.matrix)},
            {"decode", std::move(lambdas)}};
}

Json to_json(const SimulationReport& r) {
    return {{"trials", r.trials}, {"failures", r.failures}, {"length", r.length}};
}

Json to_json(const GadgetReport& r) {
    Json j{{"field", r.field.tag()},
           {"mutated", r.mutated},
           {"representations", r.representations},
           {"counterexamples", r.counterexamples}};
    if (!r.first_counterexample.empty()) {
        Json vs = Json::array();
        for (const auto& v : r.first_counterexample)
            vs.push_back(to_json(r.field, v));
        j["first_counterexample"] = std::move(vs);
    }
    return j;
}

Json roles_to_json(const GadgetGraph& gg) {
    static const char* stages[] = {"G", "Gprime", "Gk"};
    Json roles = Json::array();
    for (std::size_t v = 0; v < gg.roles.size(); ++v)
        roles.push_back({{"vertex", v}, {"role", gg.roles[v].label()}});
    return {{"schema", kSchemaVersion},
            {"stage", stages[static_cast<int>(gg.stage)]},
            {"k", gg.k},
            {"n", gg.graph.n()},
            {"baseSize", gg.base_size},
            {"roles", std::move(roles)}};
}

namespace {

const Json& member(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("missing key '") + key + "'");
    return j.at(key);
}

std::size_t count_member(const Json& j, const char* key) {
    const Json& v = member(j, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        throw ParseError(std::string("key '") + key + "' must be a non-negative integer");
    return v.get<std::size_t>();
}

FieldSpec field_member(const Json& j) {
    const Json& v = member(j, "field");
    if (v.is_string())
        return FieldSpec::parse(v.get<std::string>());
    if (v.is_number_unsigned())
        return FieldSpec::prime(v.get<unsigned>());
    throw ParseError("bad field tag");
}

Vec vec_from_json(FieldSpec f, const Json& j, std::size_t len) {
    if (!j.is_array() || j.size() != len)
        throw ParseError("expected a vector of length " + std::to_string(len));
    Vec v;
    for (const auto& e : j)
        v.push_back(field_elem_from_json(f, e));
    return v;
}

} // namespace

FieldElem field_elem_from_json(FieldSpec f, const Json& j) {
    if (j.is_number_integer())
        return FieldElem(f, j.get<long long>());
    if (j.is_string() && f.is_rational()) {
        try {
            return FieldElem(f, Rational(j.get<std::string>()));
        } catch (const std::exception&) {
            throw ParseError("bad rational '" + j.get<std::string>() + "'");
        }
    }
    throw ParseError("bad field entry " + j.dump());
}

Mat mat_from_json(const Json& j) {
    const FieldSpec f = field_member(j);
    const std::size_t rows = count_member(j, "rows"), cols = count_member(j, "cols");
    const Json& entries = member(j, "entries");
    if (!entries.is_array() || entries.size() != rows)
        throw ParseError("matrix entries do not match the row count");
    std::vector<Vec> rs;
    for (const auto& r : entries)
        rs.push_back(vec_from_json(f, r, cols));
    return rows == 0 ? Mat(f, 0, cols) : Mat::from_rows(f, rs, cols);
}

VectorRepresentation rep_from_json(const Json& j) {
    VectorRepresentation r;
    r.field = field_member(j);
    r.dim = count_member(j, "dim");
    const std::string kind = member(j, "kind").get<std::string>();
    if (kind == "orthogonal")
        r.kind = RepKind::orthogonal;
    else if (kind == "independent")
        r.kind = RepKind::independent;
    else
        throw ParseError("unknown representation kind '" + kind + "'");
    const Json& vs = member(j, "vectors");
    if (!vs.is_array())
        throw ParseError("'vectors' must be an array");
    for (const auto& v : vs)
        r.vectors.push_back(vec_from_json(r.field, v, r.dim));
    return r;
}

Coloring coloring_from_json(const Json& j) {
    const Json& cs = member(j, "colors");
    if (!cs.is_array())
        throw ParseError("'colors' must be an array");
    Coloring c;
    for (const auto& x : cs) {
        if (!x.is_number_integer() || x.get<long long>() < 0)
            throw ParseError("colors must be non-negative integers");
        c.colors.push_back(x.get<std::size_t>());
    }
    c.num_colors = count_member(j, "num_colors");
    return c;
}

namespace {

std::optional<std::string> value_mismatch(const char* what, std::size_t got, std::size_t claimed) {
    if (got == claimed)
        return std::nullopt;
    return std::string(what) + " is " + std::to_string(got) + " but the certificate claims " + std::to_string(claimed);
}

std::optional<std::string> code_violation(const Json& j, const Graph& g) {
    const FieldSpec f = field_member(j);
    const Mat m = mat_from_json(member(j, "matrix"));
    const Mat b = mat_from_json(member(j, "encode"));
    if (auto why = representing_violation(g, m))
        return why;
    if (b.cols() != g.n())
        return std::string("encoding matrix has the wrong width");
    if (rank(b) != b.rows() || rank(m) != b.rows())
        return std::string("encoding matrix is not a basis of the row space of M");
    const Json& lambdas = member(j, "decode");
    if (!lambdas.is_array() || lambdas.size() != g.n())
        return std::string("decode coefficients do not cover every receiver");
    for (std::size_t i = 0; i < g.n(); ++i) {
        Vec l = vec_from_json(f, lambdas[i], b.rows());
        Vec lb = zero_vec(f, g.n());
        for (std::size_t k = 0; k < b.rows(); ++k)
            for (std::size_t c = 0; c < g.n(); ++c)
                lb[c] += l[k] * b(k, c);
        if (lb != m.row_vec(i))
            return "decode coefficients of receiver " + std::to_string(i) + " do not reproduce row " +
                   std::to_string(i) + " of M";
    }
    return value_mismatch("code length", b.rows(), count_member(j, "length"));
}

} // namespace

std::optional<std::string> certificate_violation(const Json& cert, const Graph& g) {
    try {
        if (member(cert, "schema") != kSchemaVersion)
            return std::string("unsupported schema version");
        const std::string param = member(cert, "param").get<std::string>();
        const Json& w = member(cert, "witness");
        if (param == "index-code")
            return code_violation(member(w, "code"), g);
        const std::size_t value = count_member(cert, "value");
        if (param == "chi" || param == "chi-local") {
            Coloring c = coloring_from_json(member(w, "coloring"));
            if (auto why = coloring_violation(g, c))
                return why;
            return param == "chi" ? value_mismatch("number of colors", c.num_colors, value)
                                  : value_mismatch("locality", locality_of_coloring(g, c), value);
        }
        if (param == "clique") {
            std::vector<std::size_t> vs = member(w, "clique").get<std::vector<std::size_t>>();
            std::set<std::size_t> seen(vs.begin(), vs.end());
            if (seen.size() != vs.size())
                return std::string("clique repeats a vertex");
            for (std::size_t a = 0; a < vs.size(); ++a) {
                if (vs[a] >= g.n())
                    return "vertex " + std::to_string(vs[a]) + " out of range";
                for (std::size_t b = 0; b < a; ++b)
                    if (!g.has_edge(vs[a], vs[b]))
                        return "vertices " + std::to_string(vs[b]) + " and " + std::to_string(vs[a]) +
                               " are not adjacent";
            }
            return value_mismatch("clique size", vs.size(), value);
        }
        if (param == "od" || param == "od-local") {
            VectorRepresentation r = rep_from_json(member(w, "representation"));
            if (r.kind != RepKind::orthogonal)
                return std::string("witness is not an orthogonal representation");
            if (auto why = orthogonal_violation(g, r))
                return why;
            return param == "od" ? value_mismatch("dimension", r.dim, value)
                                 : value_mismatch("locality", locality_of_rep(g, r), value);
        }
        if (param == "minrank") {
            VectorRepresentation r = rep_from_json(member(w, "representation"));
            if (auto why = independent_violation(complement(g), r))
                return "complement representation: " + *why;
            Mat m = mat_from_json(member(w, "matrix"));
            if (auto why = representing_violation(g, m))
                return why;
            if (auto why = value_mismatch("representation dimension", r.dim, value))
                return why;
            return value_mismatch("matrix rank", rank(m), value);
        }
        return "unknown parameter '" + param + "'";
    } catch (const Error& e) {
        return std::string("malformed certificate: ") + e.what();
    } catch (const nlohmann::json::exception& e) {
        return std::string("malformed certificate: ") + e.what();
    }
}

} // namespace lodim
