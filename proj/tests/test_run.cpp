#include <doctest.h>

#include "qhs/errors.hpp"
#include "qhs/run.hpp"

using namespace qhs;
using nlohmann::json;

namespace {

json quintic_config(int order) {
    return json{{"command", "gw"},
                {"space", {{"kind", "projective_product"}, {"dims", {4}}}},
                {"bundle", {{5}}},
                {"order", order}};
}

std::string row_value(const json& doc, const std::string& name, const std::string& degree) {
    for (const auto& r : doc["rows"])
        if (r["name"] == name && r["degree"] == degree) return r["value"].get<std::string>();
    return "";
}

}  // namespace

TEST_CASE("gw command reproduces the line count") {
    RunResult res = run_config(quintic_config(3));
    CHECK(res.exit_code == 0);
    CHECK(row_value(res.doc, "n_d", "(1)") == "2875");
    CHECK(row_value(res.doc, "n_d", "(2)") == "609250");
    CHECK(row_value(res.doc, "classical", "(0)") == "5");
    CHECK(res.doc["status"] == "ok");
}

TEST_CASE("flag relations command") {
    json cfg{{"command", "flag-relations"}, {"space", {{"kind", "flag_a"}, {"n", 3}}}};
    RunResult res = run_config(cfg);
    CHECK(res.exit_code == 0);
    int relation_rows = 0;
    for (const auto& r : res.doc["rows"])
        if (r["name"].get<std::string>().rfind("I", 0) == 0) ++relation_rows;
    CHECK(relation_rows == 3);
}

TEST_CASE("verify command on the line") {
    json cfg{{"command", "verify-classp"},
             {"space", {{"kind", "projective_product"}, {"dims", {1}}}},
             {"order", 2},
             {"zorder", 2},
             {"eps_seed", 5}};
    RunResult res = run_config(cfg);
    CHECK(res.exit_code == 0);
    CHECK(res.doc["status"] == "ok");
    CHECK(res.doc.contains("eps"));
}

TEST_CASE("oracle command") {
    json cfg{{"command", "oracle"},
             {"space", {{"kind", "grassmannian"}, {"k", 2}, {"n", 5}}},
             {"bundle", {{5}}}};
    RunResult res = run_config(cfg);
    CHECK(res.exit_code == 0);
    CHECK(row_value(res.doc, "euler_sym(5)", "-") == "2875");
}

TEST_CASE("recursion command dumps table and restrictions") {
    json cfg{{"command", "recursion"},
             {"space", {{"kind", "projective_product"}, {"dims", {1}}}},
             {"order", 2},
             {"eps_seed", 3}};
    RunResult res = run_config(cfg);
    CHECK(res.exit_code == 0);
    bool has_coefficient = false, has_restriction = false;
    for (const auto& r : res.doc["rows"]) {
        std::string name = r["name"].get<std::string>();
        if (name.rfind("C[", 0) == 0) has_coefficient = true;
        if (name.rfind("S[", 0) == 0) has_restriction = true;
    }
    CHECK(has_coefficient);
    CHECK(has_restriction);
}

TEST_CASE("config validation failures") {
    CHECK_THROWS_AS(run_config(json{{"command", "gw"}}), ConfigError);
    CHECK_THROWS_AS(run_config(json{{"command", "nope"},
                                    {"space", {{"kind", "flag_a"}, {"n", 2}}}}),
                    ConfigError);
    CHECK_THROWS_AS(run_config(json{{"command", "gw"},
                                    {"space", {{"kind", "projective_product"}, {"dims", {4}}}},
                                    {"bundle", {{5}}},
                                    {"order", -1}}),
                    ConfigError);
    // mismatched torus parameter count
    CHECK_THROWS_AS(run_config(json{{"command", "verify-classp"},
                                    {"space", {{"kind", "projective_product"}, {"dims", {1}}}},
                                    {"eps", {"1", "2", "3"}}}),
                    ConfigError);
}

TEST_CASE("degenerate explicit parameters are rejected for retry exhaustion") {
    // distinct parameters whose pairwise sums collide: the divisor
    // restrictions at {1,4} and {2,3} coincide
    json cfg{{"command", "recursion"},
             {"space", {{"kind", "grassmannian"}, {"k", 2}, {"n", 4}}},
             {"order", 1},
             {"eps", {"1", "2", "3", "4"}}};
    CHECK_THROWS_AS(run_config(cfg), DegenerateParameterError);
}

TEST_CASE("explicit torus parameters are honored") {
    json cfg{{"command", "recursion"},
             {"space", {{"kind", "projective_product"}, {"dims", {1}}}},
             {"order", 1},
             {"eps", {"0", "1/3"}}};
    RunResult res = run_config(cfg);
    CHECK(res.doc["eps"] == json::array({"0", "1/3"}));
}

TEST_CASE("identical configurations give identical bytes") {
    json cfg{{"command", "verify-classp"},
             {"space", {{"kind", "projective_product"}, {"dims", {1}}}},
             {"order", 2},
             {"zorder", 2},
             {"eps_seed", 11}};
    RunResult a = run_config(cfg);
    RunResult b = run_config(cfg);
    CHECK(a.doc.dump(2) == b.doc.dump(2));
    CHECK(a.csv == b.csv);
    CHECK(to_csv(a.doc) == a.csv);
}

TEST_CASE("csv mirrors the row values") {
    RunResult res = run_config(quintic_config(1));
    CHECK(res.csv.find("row,(1),n_d,\"2875\"") != std::string::npos);
    CHECK(res.csv.rfind("kind,degree,name,value,provenance", 0) == 0);
}

TEST_CASE("ifun command emits both series with their checks") {
    json cfg{{"command", "ifun"},
             {"space", {{"kind", "projective_product"}, {"dims", {4}}}},
             {"bundle", {{5}}},
             {"order", 2}};
    RunResult res = run_config(cfg);
    CHECK(res.exit_code == 0);
    bool primed_row = false, unprimed_row = false;
    for (const auto& r : res.doc["rows"]) {
        if (r["name"] == "Phi'_d") primed_row = true;
        if (r["name"] == "Phi_d") unprimed_row = true;
    }
    CHECK(primed_row);
    CHECK(unprimed_row);
    for (const auto& c : res.doc["checks"]) CHECK(c["pass"].get<bool>());
}

TEST_CASE("mirror command reports the change of variables") {
    json cfg{{"command", "mirror"},
             {"space", {{"kind", "projective_product"}, {"dims", {4}}}},
             {"bundle", {{5}}},
             {"order", 2}};
    RunResult res = run_config(cfg);
    CHECK(res.exit_code == 0);
    CHECK(row_value(res.doc, "f_{-1}", "-") == "0");
    std::string f1 = row_value(res.doc, "f_1", "-");
    CHECK(f1.find("770") != std::string::npos);
}
