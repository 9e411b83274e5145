#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tatefgl/cli.hpp"

using namespace tatefgl;

namespace {

struct Captured {
    int code = 0;
    std::string out;
    std::string err;
};

Captured run_config(const RunConfig& c) {
    std::ostringstream out, err;
    Captured r;
    r.code = run(c, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

RunConfig cmd(const std::string& name, int p) {
    RunConfig c;
    c.command = name;
    c.prime = p;
    return c;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("obstruct finds the x^9 failure") {
    RunConfig c = cmd("obstruct", 3);
    c.x_bound = 9;
    c.coefficient = 9;
    Captured r = run_config(c);
    CHECK(r.code == kExitFound);
    CHECK(r.out.find("x^9: remainder β^10·t^4 (mod 3)") != std::string::npos);
    CHECK(r.out.find("first failure: x^9") != std::string::npos);
    CHECK(r.out.find("-1215/8·β^3·t^-3") != std::string::npos);
}

TEST_CASE("identity orientation exits cleanly") {
    RunConfig c = cmd("obstruct", 2);
    c.orientation = "identity";
    c.x_bound = 6;
    Captured r = run_config(c);
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("no obstruction") != std::string::npos);
}

TEST_CASE("frobenius over F_p") {
    Captured r = run_config(cmd("frobenius", 5));
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("(x·t^4 - x^5)/t^4") != std::string::npos);
}

TEST_CASE("jn exit codes") {
    RunConfig c = cmd("jn", 2);
    c.d = 2;
    Captured r = run_config(c);
    CHECK(r.code == kExitFound);
    CHECK(r.out.find("agrees with the direct route: yes") != std::string::npos);
    c.d = 1;
    Captured bad = run_config(c);
    CHECK(bad.code == kExitError);
    CHECK(bad.err.rfind("error: ", 0) == 0);
}

TEST_CASE("rigidity passes") {
    Captured r = run_config(cmd("rigidity", 2));
    CHECK(r.code == kExitOk);
}

TEST_CASE("invalid input is an error") {
    CHECK(run_config(cmd("obstruct", 4)).code == kExitError);
    CHECK(run_config(cmd("nonsense", 3)).code == kExitError);
    RunConfig g = cmd("golden", 3);
    CHECK(run_config(g).code == kExitError);
    RunConfig o = cmd("frobenius", 3);
    o.output = "xml";
    CHECK(run_config(o).code == kExitError);
}

TEST_CASE("json output is valid and deterministic") {
    RunConfig c = cmd("frobenius", 3);
    c.output = "json";
    Captured a = run_config(c);
    Captured b = run_config(c);
    CHECK(a.out == b.out);
    json j = json::parse(a.out);
    CHECK(j["closed_form_matches"] == true);
}

TEST_CASE("config round trip") {
    RunConfig c = cmd("jn", 2);
    c.d = 4;
    c.n = std::nullopt;
    c.t_bound = 2;
    RunConfig back = config_from_json(config_to_json(c));
    CHECK(back.command == "jn");
    CHECK(back.d == 4);
    CHECK(!back.n);
    CHECK(back.t_bound == 2);
    CHECK(parse_n("inf") == std::nullopt);
    CHECK(parse_n("7") == 7);
    CHECK_THROWS(parse_n("seven"));
    CHECK_THROWS_AS(config_from_json(json{{"bogus", 1}}), specification_error);
    json alias = {{"command", "obstruct"}, {"pow_choice", 12}};
    CHECK(config_from_json(alias).x_bound == 12);
}

TEST_CASE("fgl export and import") {
    auto U = RingSpec::universal(3);
    Fgl F = fgl_make(FglKind::universal, U, fgl_window(3));
    json j = fgl_to_json(F);
    Fgl G = fgl_from_json(json::parse(j.dump()));
    CHECK(G.law == F.law);
    CHECK(G.kind == F.kind);
    CHECK(G.trunc() == F.trunc());
    CHECK(fgl_to_json(G) == j);
}

TEST_CASE("golden files regenerate byte for byte") {
    std::filesystem::path dir = TATEFGL_GOLDEN_DIR;
    for (const auto& [name, c] : golden_cases()) {
        INFO("case " << name);
        std::filesystem::path f = dir / (name + ".json");
        REQUIRE(std::filesystem::exists(f));
        CHECK(golden_document(name, c) == read_file(f));
    }
}

}
