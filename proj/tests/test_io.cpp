#include "doctest.h"

#include "nbv/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace nbv;
using nlohmann::json;

namespace {

json vector_job(const char* method = "trace")
{
    json j = json::parse(R"({"case":"rational","n":3,"modules":[{"realization":"vector","x":"1/3"}],
                              "xi":[1,1],"t":[["2"],["5/7"]]})");
    j["method"] = method;
    return j;
}

std::string pointer_of(const json& j, bool modules_optional = false)
{
    try {
        parse_job(j, modules_optional);
    }
    catch (const ValidationError& e) {
        return e.pointer();
    }
    return "<accepted>";
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("job round trip")
{
    json trig = json::parse(R"({"case":"trigonometric","n":4,"q":"-3/5","xi":[1,2,0],"t":[["1/2"],["3","-4/7"],[]],
        "method":"recursion-last",
        "modules":[{"realization":{"kind":"cyclic_span","terms":[{"coeff":"1","word":[1,2]},{"coeff":"-2/3","word":[2,1]}]},
                    "x":"5","weight":[1,1,0,0]}]})");
    for (const json& j : {vector_job(), vector_job("closed-last"), trig}) {
        JobSpec job = parse_job(j);
        json once = serialize(job);
        JobSpec again = parse_job(once);
        CHECK(serialize(again) == once);
        CHECK(fingerprint(again) == fingerprint(job));
    }
    CHECK(serialize(parse_job(trig))["modules"][0]["realization"]["terms"][1]["coeff"] == "-2/3");
}

TEST_CASE("fingerprint ignores the method and nothing else")
{
    auto a = parse_job(vector_job("trace"));
    auto b = parse_job(vector_job("closed-first"));
    CHECK(fingerprint(a) == fingerprint(b));
    CHECK(fingerprint(a).size() == 64);
    json moved = vector_job();
    moved["t"][1][0] = "5/8";
    CHECK(fingerprint(parse_job(moved)) != fingerprint(a));
}

TEST_CASE("validation pointers")
{
    json j = vector_job();
    j["t"][0][0] = "1/0";
    CHECK(pointer_of(j) == "/t/0/0");

    j = vector_job();
    j["t"][1] = json::array();
    CHECK(pointer_of(j) == "/t/1");

    j = vector_job();
    j["xi"] = {1};
    CHECK(pointer_of(j) == "/xi");

    j = vector_job();
    j["xi"][1] = -1;
    CHECK(pointer_of(j) == "/xi/1");

    j = vector_job();
    j["case"] = "elliptic";
    CHECK(pointer_of(j) == "/case");

    j = vector_job();
    j["modules"][0]["x"] = 3;
    CHECK(pointer_of(j) == "/modules/0/x");

    j = vector_job();
    j["modules"][0]["realization"] = json{{"kind", "wedge_power"}, {"k", 4}};
    CHECK(pointer_of(j) == "/modules/0/realization/k");

    j = vector_job();
    j["bogus"] = 1;
    CHECK(pointer_of(j) == "/bogus");

    j = vector_job("tensor-split");
    CHECK(pointer_of(j) == "/modules");

    j = vector_job();
    j["method"] = "guess";
    CHECK(pointer_of(j) == "/method");

    j = vector_job();
    j["case"] = "trigonometric";
    CHECK(pointer_of(j) == "/q");
    j["q"] = "1";
    CHECK(pointer_of(j) == "/q");

    j = vector_job();
    j.erase("modules");
    CHECK(pointer_of(j) == "/modules");
    CHECK(pointer_of(j, true) == "<accepted>");

    CHECK_THROWS_AS(explain(parse_job(vector_job("closed-first"))), ValidationError);
    j = json::parse(R"({"case":"rational","n":2,"xi":[4],"t":[["1","2","3","4"]]})");
    CHECK_THROWS_AS(explain(parse_job(j, true)), ValidationError);
}

TEST_CASE("poles are precondition errors, not validation errors")
{
    json j = vector_job();
    j["t"][0][0] = "1/3";  // t^1_1 = x
    auto job = parse_job(j);
    CHECK_THROWS_AS(compute(job), PoleError);
}

TEST_CASE("trace and closed-first results agree byte for byte apart from the method")
{
    json a = compute(parse_job(vector_job("trace")));
    json b = compute(parse_job(vector_job("closed-first")));
    CHECK(a["method"] == "trace");
    a.erase("method");
    b.erase("method");
    CHECK(a.dump(2) == b.dump(2));
}

TEST_CASE("empty composition returns the singular vector")
{
    json j = json::parse(R"({"case":"rational","n":3,"modules":[{"realization":{"kind":"wedge_power","k":2},"x":"1/2"}],
                             "xi":[0,0],"t":[[],[]]})");
    JobSpec job = parse_job(j);
    json r = compute(job);
    auto m = build_module(job.modules.front(), job.flavor);
    REQUIRE(r["coordinates"].size() == m->singular().size());
    for (std::size_t i = 0; i < m->singular().size(); ++i)
        CHECK(r["coordinates"][i] == m->singular()[i].str());
    CHECK(r["weight"] == json(m->highest_weight()));
}

TEST_CASE("explain lists the printed monomials")
{
    json j = json::parse(R"({"case":"rational","n":3,"xi":[1,1],"t":[["2"],["5/7"]]})");
    json e = explain(parse_job(j, true));
    REQUIRE(e["monomials"].size() == 2);
    CHECK(e["monomials"][0]["monomial"] == "T_{12}(t^1_1)T_{23}(t^2_1)");
    CHECK(e["monomials"][0]["coefficient"] == Scalar(1).str());
    CHECK(e["monomials"][1]["monomial"] == "T_{13}(t^1_1)T_{22}(t^2_1)");
    // 1/(t^2 - t^1)
    CHECK(e["monomials"][1]["coefficient"] == make_scalar(-7, 9).str());

    j["case"] = "trigonometric";
    j["q"] = "2";
    e = explain(parse_job(j, true));
    REQUIRE(e["monomials"].size() == 2);
    CHECK(e["monomials"][1]["monomial"] == "L^-_{13}(t^1_1)L^-_{22}(t^2_1)");
    // (q - 1/q) t^2 / (t^2 - t^1) = (3/2)(5/7)/(-9/7)
    CHECK(e["monomials"][1]["coefficient"] == make_scalar(-5, 6).str());
}

TEST_CASE("files are written deterministically")
{
    auto dir = std::filesystem::temp_directory_path() / "nbv_io_test";
    std::filesystem::create_directories(dir);
    auto job = parse_job(vector_job());
    write_json((dir / "a.json").string(), compute(job));
    write_json((dir / "b.json").string(), compute(parse_job(vector_job())));
    std::string a = slurp(dir / "a.json");
    CHECK(a == slurp(dir / "b.json"));
    CHECK(a.back() == '\n');
    CHECK(read_json((dir / "a.json").string()) == compute(job));

    std::ofstream(dir / "broken.json") << "{\"case\": ";
    CHECK_THROWS_AS(read_json((dir / "broken.json").string()), ValidationError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("a fixed seed reproduces the report")
{
    SuiteOptions opt;
    opt.seed = 42;
    auto first = report_json("r-matrix", opt, run_suite("r-matrix", opt)).dump();
    opt.workers = 1;
    auto second = report_json("r-matrix", opt, run_suite("r-matrix", opt)).dump();
    CHECK(first == second);
    opt.seed = 43;
    CHECK(report_json("r-matrix", opt, run_suite("r-matrix", opt)).dump() != first);
}
