#include "doctest.h"

#include "lodim/coloring.hpp"
#include "lodim/error.hpp"
#include "lodim/indexcoding.hpp"
#include "lodim/json_io.hpp"
#include "lodim/ortho.hpp"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace lodim;
namespace fs = std::filesystem;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

// Runs the CLI with stderr discarded.
Run cli(const std::string& args) {
    const std::string cmd = std::string(LODIM_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0)
        r.out.append(buf.data(), got);
    const int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("lodim-test-" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(path / name) << text;
        return (path / name).string();
    }
};

Json cert(const std::string& param, std::size_t value, Json witness) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["param"] = param;
    j["value"] = value;
    j["witness"] = std::move(witness);
    return j;
}

} // namespace

TEST_SUITE("json") {

TEST_CASE("representations round trip") {
    auto r = orthogonality_dimension(kneser(5, 2), FieldSpec::prime(3)).witness;
    auto back = rep_from_json(to_json(r));
    CHECK(back.field == r.field);
    CHECK(back.dim == r.dim);
    CHECK(back.kind == r.kind);
    CHECK(back.vectors == r.vectors);

    const FieldSpec q = FieldSpec::rationals();
    VectorRepresentation qr;
    qr.field = q;
    qr.dim = 2;
    qr.vectors = {{FieldElem(q, Rational(1, 3)), FieldElem(q, Rational(-2))}};
    Json j = to_json(qr);
    CHECK(j["vectors"][0][0] == "1/3");
    CHECK(rep_from_json(j).vectors == qr.vectors);
}

TEST_CASE("matrices and colorings round trip") {
    auto mr = minrank(cycle(5), FieldSpec::prime(3));
    CHECK(mat_from_json(to_json(mr.matrix)) == mr.matrix);
    auto c = chromatic_number(kneser(5, 2)).witness;
    CHECK(coloring_from_json(to_json(c)) == c);
    CHECK_THROWS(rep_from_json(Json::parse(R"j({"field":"GF(4)","kind":"orthogonal","dim":1,"vectors":[[1]]})j")));
    CHECK_THROWS(mat_from_json(Json::parse(R"j({"field":"GF(2)","rows":2,"cols":1,"entries":[[1]]})j")));
}

TEST_CASE("graphs serialise with 0-based edges") {
    Json j = to_json(cycle(3));
    CHECK(j["n"] == 3);
    CHECK(j["edges"][0] == Json::array({0, 1}));
}

TEST_CASE("certificate checks catch tampering") {
    const Graph g = kneser(5, 2);
    auto chi = chromatic_number(g);
    Json good = cert("chi", chi.value, {{"coloring", to_json(chi.witness)}});
    CHECK_FALSE(certificate_violation(good, g));

    Json wrong_value = good;
    wrong_value["value"] = 2;
    CHECK(certificate_violation(wrong_value, g));

    Json improper = good;
    auto cols = chi.witness.colors;
    cols[1] = cols[0] == cols[1] ? cols[1] : cols[0];
    for (auto [u, v] : g.edges())
        if (u == 0) {
            cols[v] = cols[0];
            break;
        }
    improper["witness"]["coloring"] = to_json(Coloring::from_colors(cols));
    CHECK(certificate_violation(improper, g));

    auto od = orthogonality_dimension(cycle(5), FieldSpec::prime(2));
    Json odc = cert("od", od.value, {{"representation", to_json(od.witness)}});
    CHECK_FALSE(certificate_violation(odc, cycle(5)));
    odc["witness"]["representation"]["vectors"][0] = odc["witness"]["representation"]["vectors"][1];
    CHECK(certificate_violation(odc, cycle(5)));

    auto mr = minrank(cycle(5), FieldSpec::prime(2));
    Json mrc = cert("minrank", mr.value, {{"representation", to_json(mr.witness)}, {"matrix", to_json(mr.matrix)}});
    CHECK_FALSE(certificate_violation(mrc, cycle(5)));
    mrc["value"] = 2;
    CHECK(certificate_violation(mrc, cycle(5)));

    auto cl = max_clique(g);
    Json clc = cert("clique", cl.value, {{"clique", cl.witness}});
    CHECK_FALSE(certificate_violation(clc, g));
    clc["witness"]["clique"] = Json::array({0, 1});
    CHECK(certificate_violation(clc, g).has_value() == !g.has_edge(0, 1));

    CHECK(certificate_violation(cert("girth", 5, Json::object()), g));
    Json old = good;
    old["schema"] = 0;
    CHECK(certificate_violation(old, g));
    Json short_rep = cert("od", 3, {{"representation", to_json(od.witness)}});
    CHECK(certificate_violation(short_rep, cycle(7)));
}

}

TEST_SUITE("cli") {

TEST_CASE("gen writes DIMACS and usage errors exit 2") {
    auto r = cli("gen kneser 5 2");
    CHECK(r.status == 0);
    Graph g = read_dimacs(r.out);
    CHECK(g == kneser(5, 2));
    CHECK(cli("gen cycle 5").out == write_dimacs(cycle(5)));
    CHECK(cli("gen kneser 3 2").status == 2);
    CHECK(cli("").status == 2);
    CHECK(cli("gen bogus 1").status == 2);
    CHECK(cli("solve chi /nonexistent/graph.dimacs").status != 0);
}

TEST_CASE("solve certificates verify in a separate process") {
    TempDir dir;
    const std::string petersen = dir.write("petersen.dimacs", write_dimacs(kneser(5, 2)));
    for (const char* param : {"chi", "chi-local", "clique", "od", "od-local", "minrank"}) {
        CAPTURE(param);
        auto r = cli(std::string("solve ") + param + " " + petersen + " --json");
        REQUIRE(r.status == 0);
        Json j = Json::parse(r.out);
        CHECK(j["schema"] == 1);
        CHECK(j["param"] == param);
        CHECK(j["verified"] == true);
        CHECK_FALSE(j.contains("wallTime"));
        CHECK_FALSE(certificate_violation(j, kneser(5, 2)));
        const std::string path = dir.write(std::string(param) + ".json", r.out);
        auto v = cli("verify " + path + " " + petersen);
        CHECK(v.status == 0);
        CHECK(v.out.rfind("ok", 0) == 0);

        j["value"] = j["value"].get<int>() + 1;
        const std::string bad = dir.write(std::string(param) + "-bad.json", j.dump());
        auto w = cli("verify " + bad + " " + petersen);
        CHECK(w.status == 1);
        CHECK(w.out.find("violation") != std::string::npos);
    }
    auto chi = Json::parse(cli("solve chi " + petersen + " --json").out);
    CHECK(chi["value"] == 3);
    CHECK(chi["lowerBoundReason"] == "odd-cycle");
    auto odl = Json::parse(cli("solve od-local " + petersen + " --json").out);
    CHECK(odl["value"] == 3);
    auto timed = Json::parse(cli("solve chi " + petersen + " --json --timing").out);
    CHECK(timed.contains("wallTime"));
}

TEST_CASE("solve exit codes") {
    TempDir dir;
    const std::string c5 = dir.write("c5.dimacs", write_dimacs(cycle(5)));
    const std::string big = dir.write("e17.dimacs", write_dimacs(edgeless(17)));
    const std::string broken = dir.write("broken.dimacs", "p edge 2 1\ne 1 9\n");
    CHECK(cli("solve od " + c5 + " --field Q").status == 2);
    CHECK(cli("solve od " + c5 + " --field Q --upper-bound-only").status == 0);
    CHECK(cli("solve od " + big).status == 3);
    CHECK(cli("solve od " + big + " --upper-bound-only").status == 0);
    CHECK(cli("solve chi " + broken).status == 2);
    CHECK(cli("solve girth " + c5).status == 2);
    CHECK(cli("solve minrank " + c5 + " --field 4").status == 2);
    auto a = cli("solve od-local " + c5 + " --json --field 3");
    auto b = cli("solve od-local " + c5 + " --json --field 3");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("vandermonde over a small field is infeasible") {
    CHECK(cli("gen vandermonde 4 2 --field 2").status == 1);
    CHECK(cli("gen vandermonde 3 2 --field 5").status == 0);
}

TEST_CASE("reduce builds the gadget graph and role map") {
    TempDir dir;
    const std::string cnf = dir.write("phi.cnf", "p cnf 2 1\n1 2 0\n");
    const std::string roles = (dir.path / "roles.json").string();
    auto r = cli("reduce " + cnf + " --roles " + roles);
    REQUIRE(r.status == 0);
    CHECK(read_dimacs(r.out, 200).n() == 81);
    std::ifstream in(roles);
    Json j = Json::parse(in);
    CHECK(j["stage"] == "Gprime");
    CHECK(j["baseSize"] == 9);
    REQUIRE(j["roles"].size() == 81);
    CHECK(j["roles"][1]["role"] == "t");
    CHECK(j["roles"][9]["role"] == "H(w,3).a");
    CHECK(read_dimacs(cli("reduce " + cnf + " --stage G").out).n() == 9);
    CHECK(read_dimacs(cli("reduce " + cnf + " --k 5").out, 200).n() == 83);
    CHECK(cli("reduce " + cnf + " --k 2").status == 2);
    const std::string bad = dir.write("bad.cnf", "p cnf 2 1\n1 -1 0\n");
    CHECK(cli("reduce " + bad).status == 2);
}

TEST_CASE("index-code simulates without failures") {
    TempDir dir;
    const std::string c5 = dir.write("c5.dimacs", write_dimacs(cycle(5)));
    for (const char* method : {"minrank", "local", "compress"}) {
        CAPTURE(method);
        auto r = cli(std::string("index-code ") + c5 + " --method " + method + " --simulate 50 --json");
        REQUIRE(r.status == 0);
        Json j = Json::parse(r.out);
        CHECK(j["simulation"]["failures"] == 0);
        CHECK(j["simulation"]["trials"] == 50);
    }
    auto m = Json::parse(cli("index-code " + c5 + " --method minrank --json").out);
    CHECK(m["value"] == 3);
    CHECK(m["witness"]["code"]["length"] == 3);
}

}
