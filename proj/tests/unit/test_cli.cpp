#include <doctest.h>

#include "commands.hpp"
#include "io.hpp"
#include "schema.hpp"

#include "kll/error.hpp"

#include <fstream>

using namespace kll;
using namespace kll::cli;

namespace {

json load(const std::string& rel) {
    std::ifstream f(std::string(KLL_CORPUS_DIR) + "/" + rel);
    return json::parse(f);
}

std::string schema_error(const json& doc, const std::string& schema) {
    try {
        SchemaRegistry::builtin().validate(doc, schema);
    } catch (const SchemaError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("schema errors carry JSON pointers") {
    CHECK(schema_error(json::parse(R"({"poly": [1, 0, 1]})"), "field.schema.json").empty());
    CHECK(schema_error(json::parse(R"({"poly": [1, "x"]})"), "field.schema.json").find("/poly/1") != std::string::npos);
    CHECK(schema_error(json::parse(R"({"primes": [2]})"), "field.schema.json").find("/poly") != std::string::npos);
    CHECK(schema_error(json::parse(R"({"poly": ["1/2", 1]})"), "field.schema.json").find("/poly/0") != std::string::npos);
    const json orb = load("orbifolds/theta_222.json");
    CHECK(schema_error(orb, "orbifold.schema.json").empty());
    json bad = orb;
    bad["locus"]["edges"][1]["order"] = 1;
    CHECK(schema_error(bad, "orbifold.schema.json").find("/locus/edges/1/order") != std::string::npos);
    json tuple = load("quotients/hall_5_7.json");
    tuple["generators"][0][1][2] = "seven";
    CHECK(schema_error(tuple, "quotient.schema.json").find("/generators/0/1/2") != std::string::npos);
}

TEST_CASE("every corpus file validates") {
    for (const auto* f : {"orbifolds/hopf_link.json", "orbifolds/fibred_circles.json", "quotients/klein_normalizer.json",
                          "quotients/gaussian_mod_3.json", "presentations/a5.json"}) {
        const std::string rel(f);
        const std::string schema = rel.rfind("orbifolds", 0) == 0   ? "orbifold.schema.json"
                                   : rel.rfind("quotients", 0) == 0 ? "quotient.schema.json"
                                                                    : "presentation.schema.json";
        CHECK_MESSAGE(schema_error(load(rel), schema).empty(), rel);
    }
    CHECK(schema_error(load("graphs/family_cycles.json"), "graph_family.schema.json").empty());
    CHECK(schema_error(load("trivalent/petersen.json"), "graph.schema.json").empty());
}

TEST_CASE("documented command examples") {
    const RunOptions opt;
    const auto f = run_command("field", json::parse(R"({"poly": [1,0,-2,-1,0,1], "primes": [11]})"), opt);
    CHECK(f["signature"] == ojson::array({3, 1}));
    int norm121 = 0;
    for (const auto& i : f["primes"][0]["ideals"]) norm121 += i["norm"] == "121";
    CHECK(norm121 == 1);

    const auto c = run_command("cheeger", json{{"cycle", 6}}, opt);
    CHECK(c["h"] == "2/3");

    const auto t = run_command("tower", json{{"n1", 50}, {"depth", 10}}, opt);
    CHECK(t["all_hold"] == true);
    CHECK(t["levels"].size() == 10);
}

TEST_CASE("reports are deterministic") {
    RunOptions one, four;
    four.threads = 4;
    const json in = load("quotients/a5_klein_pullback.json");
    const auto a = run_command("quotient", in, one).dump();
    CHECK(a == run_command("quotient", in, four).dump());
    CHECK(run_command("count", json{{"mod", 6}, {"dump", true}}, one).dump() ==
          run_command("count", json{{"mod", 6}, {"dump", true}}, four).dump());
}

TEST_CASE("quotient modes") {
    const RunOptions opt;
    CHECK(run_command("quotient", load("quotients/a5_klein_pullback.json"), opt)["index"] == 15);
    const auto n = run_command("quotient", load("quotients/klein_normalizer.json"), opt);
    CHECK(n["witness_order"] == 16);
    CHECK(n["quotient_order"] == "12");
    const auto d = run_command("quotient", load("quotients/diagonal_5_5.json"), opt);
    CHECK(d["image_order"] == 60);
    CHECK(d["onto"] == false);
    const auto r = run_command("quotient", load("quotients/gaussian_mod_3.json"), opt);
    CHECK(r["group"] == "SL(2, F_9 = F_3[t]/(t^2 + 1))");
    RunOptions tight;
    tight.budget = Budget{}.with_cap(1000);
    CHECK_THROWS_AS(run_command("quotient", load("quotients/hall_5_7.json"), tight), BudgetExceeded);
}

TEST_CASE("other commands") {
    const RunOptions opt;
    const auto o = run_command("orbifold", load("orbifolds/fibred_circles.json"), opt);
    CHECK(o["fibration"]["satisfied"] == true);
    CHECK(o["homology"]["holds"] == true);
    const auto g = run_command("graph", load("trivalent/petersen.json"), opt);
    CHECK(g["girth"] == 5);
    CHECK(g["short_cycle"]["holds"] == true);
    const auto a = run_command("algebra", json{{"a", -1}, {"b", -1}}, opt);
    CHECK(a["real_places_ramified"] == 1);
    CHECK(a["finite_ramified"] == 1);
    const auto ord = run_command("order", json::parse(R"({"field": [0, 1], "a": [1, 1, 0, 1], "b": [1, 0, 1, 1]})"), opt);
    CHECK(ord["trace_identities"] == true);
    CHECK(ord["order"]["all_integral"] == true);
    CHECK(ord["jorgensen"]["inverts_a"] == true);
    const auto cnt = run_command("count", json{{"mod", 2}}, opt);
    CHECK(cnt["subgroups"] == 6);
    const auto fam = run_command("cheeger", json{{"cycle_family", {4, 16}}}, opt);
    CHECK(fam["verdict"] == "h -> 0 trend");
    CHECK_THROWS_AS(run_command("field", json::parse(R"({"poly": [0, 0, 1]})"), opt), ReduciblePolynomial);
    CHECK_THROWS_AS(run_command("nonsense", json::object(), opt), InvalidArgument);
}

TEST_CASE("worked-example corpus") {
    const RunOptions opt;
    const VerifyOutcome ok = verify_examples(builtin_corpus(), opt);
    CHECK(ok.all_passed);
    CHECK(ok.report["passed"] == 7);

    json corrupt = builtin_corpus();
    corrupt["examples"][2]["expect"]["rows"][0]["abs_norm"] = "5";
    corrupt["examples"][5]["kind"] = "nope";
    const VerifyOutcome bad = verify_examples(corrupt, opt);
    CHECK_FALSE(bad.all_passed);
    CHECK(bad.report["failed"] == 2);
    CHECK(bad.report["examples"][2]["name"] == "tau_n norms");
    CHECK(bad.report["examples"][2]["pass"] == false);
    CHECK(bad.report["examples"][0]["pass"] == true);

    const VerifyOutcome empty = verify_examples(json{{"examples", json::array()}}, opt);
    CHECK(empty.all_passed);
    CHECK(empty.empty);
    CHECK(empty.report.contains("warning"));
    CHECK_THROWS_AS(verify_examples(json::array(), opt), SchemaError);
}
