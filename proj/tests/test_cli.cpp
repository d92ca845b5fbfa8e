#include <doctest.h>

#include <sstream>

#include "cli.hpp"
#include "matchfree/constructions.hpp"

using namespace matchfree;
using matchfree::io::Json;

namespace {

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

Outcome call(std::vector<std::string> args, const std::string& stdin_text = {}) {
    std::istringstream in(stdin_text);
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, in, out, err);
    return {code, out.str(), err.str()};
}

Json call_json(std::vector<std::string> args, const std::string& stdin_text = {}) {
    const Outcome o = call(std::move(args), stdin_text);
    REQUIRE(o.code == 0);
    return Json::parse(o.out);
}

}  // namespace

TEST_CASE("construct emits the family document") {
    const Json q = call_json({"construct", "--family", "Q", "--s", "3", "--c", "1"});
    CHECK(q["n"] == 7);
    CHECK(q["sets"].size() == 104);
    CHECK(io::family_from_json(q) == family_Q(3, 1));
    CHECK(call_json({"construct", "--family", "kleitman", "--n", "5", "--s", "2"})["sets"].size() == 16);
    CHECK(call_json({"construct", "--family", "A", "--n", "6", "--k", "2", "--i", "2", "--s", "3"})["sets"].size() == 10);
    CHECK(io::family_from_json(call_json({"construct", "--family", "P_general", "--s", "3", "--m", "2", "--l", "2"})) ==
          family_P(3, 1));
    CHECK(call({"construct", "--family", "Z", "--s", "3", "--c", "1"}).code == 2);
    CHECK(call({"construct", "--family", "P", "--s", "3", "--c", "3"}).code == 2);
}

TEST_CASE("round trip through nu, d and certify for the generators") {
    const std::pair<const char*, int> expected_d[] = {{"P", 0}, {"Pprime", 0}, {"Q", 1}, {"W", 2}};
    for (const auto& [name, d] : expected_d) {
        const std::string doc = call({"construct", "--family", name, "--s", "3", "--c", "1"}).out;
        const Json n = call_json({"nu"}, doc);
        CHECK(n["size"] == 2);
        CHECK(n["witness"].size() == 2);
        CHECK(call_json({"d", "--s", "3", "--c", "1"}, doc)["d"] == d);
        const Json cert = call_json({"certify", "--family", name, "--s", "3", "--c", "1", "--input", "-"}, doc);
        CHECK(cert["verified"] == true);
    }
}

TEST_CASE("certify reports exact weights") {
    const Json c = call_json({"certify", "--family", "Q", "--s", "3", "--c", "1"});
    CHECK(c["total"] == Json::parse(R"({"num":11,"den":4})"));
    CHECK(c["weights"][0] == Json::parse(R"({"num":1,"den":2})"));
    CHECK(c["weights"][6] == Json::parse(R"({"num":1,"den":4})"));
    CHECK(call_json({"certify", "--family", "W", "--s", "20", "--c", "10"})["verified"] == true);
    const Outcome bad = call({"certify", "--family", "P", "--s", "3", "--c", "1", "--input", "-"}, R"({"n":7,"sets":[[2,3]]})");
    CHECK(bad.code == 1);
    CHECK(Json::parse(bad.out)["verified"] == false);
}

TEST_CASE("nu and the empty set flag") {
    const std::string doc = R"({"n":3,"sets":[[],[1],[2]]})";
    CHECK(call({"nu"}, doc).code == 2);
    CHECK(call_json({"nu", "--allow-empty"}, doc)["size"] == 3);
    CHECK(call_json({"nu"}, R"({"n":4,"sets":[]})")["size"] == 0);
}

TEST_CASE("shift command") {
    const Json closure = call_json({"shift"}, R"({"n":4,"sets":[[3,4]]})");
    CHECK(closure == Json::parse(R"({"n":4,"sets":[[1,2]]})"));
    const Json once = call_json({"shift", "--i", "1", "--j", "2"}, R"({"n":4,"sets":[[2,3]]})");
    CHECK(once == Json::parse(R"({"n":4,"sets":[[1,3]]})"));
    CHECK(call({"shift", "--i", "2", "--j", "2"}, R"({"n":4,"sets":[[2,3]]})").code == 2);
    CHECK(call({"shift", "--i", "1"}, R"({"n":4,"sets":[[2,3]]})").code == 2);
}

TEST_CASE("malformed input exits with 2") {
    CHECK(call({"nu"}, "not json").code == 2);
    CHECK(call({"nu"}, R"({"n":3})").code == 2);
    CHECK(call({"nu"}, R"({"n":3,"sets":[[4]]})").code == 2);
    CHECK(call({"nu"}, R"({"n":3,"sets":[[1,1]]})").code == 2);
    CHECK(call({"nu"}, R"({"n":63,"sets":[]})").code == 2);
    CHECK(call({"nu", "--input", "/nonexistent/file.json"}).code == 2);
    CHECK(call({}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);
    CHECK(call({"regime-map", "--s-max", "1"}).code == 2);
    CHECK(call({"oracle", "--n", "12", "--s", "3"}).code == 2);
    CHECK(call({"--help"}).code == 0);
}

TEST_CASE("d reports an undefined value") {
    std::string all = R"({"n":7,"sets":[)";
    for (int a = 1; a <= 7; ++a) {
        for (int b = a + 1; b <= 7; ++b) all += "[" + std::to_string(a) + "," + std::to_string(b) + "],";
    }
    all.back() = ']';
    all += "}";
    const Outcome o = call({"d", "--s", "3", "--c", "1"}, all);
    CHECK(o.code == 1);
    CHECK(Json::parse(o.out)["d"].is_null());
}

TEST_CASE("formulas command") {
    const Json f = call_json({"formulas", "--s", "3", "--c", "1"});
    CHECK(f["comp"]["P"] == 23);
    CHECK(f["comp"]["Pprime"] == 26);
    CHECK(f["comp"]["Q"] == 24);
    CHECK(f["comp"]["W"] == 24);
    CHECK(f["winners"] == "P");
    CHECK(f["N"] == 23);
    CHECK(call_json({"formulas", "--s", "3", "--c", "2"})["pprime_le_p"].is_null());
}

TEST_CASE("regime map") {
    const Outcome csv = call({"regime-map", "--s-max", "12", "--format", "csv"});
    CHECK(csv.code == 0);
    std::istringstream lines(csv.out);
    std::string line;
    int count = 0;
    while (std::getline(lines, line)) ++count;
    CHECK(count == 67);
    const Json rows = call_json({"regime-map", "--s-max", "12", "--format", "json"});
    CHECK(rows.size() == 66);
    CHECK(rows[0]["winners"] == "P|Pprime|Q|W");
}

TEST_CASE("oracle command") {
    const Json r = call_json({"oracle", "--n", "5", "--s", "2", "--mode", "full", "--expect", "16"});
    CHECK(r["value"] == 16);
    CHECK(r["mode"] == "full");
    CHECK(r["blocker"]["sets"].size() == 15);
    CHECK(call({"oracle", "--n", "7", "--s", "3", "--expect", "104"}).code == 1);
    CHECK(call_json({"oracle", "--n", "7", "--s", "3", "--mode", "truncated"})["value"] == 41);
    CHECK(call_json({"oracle", "--n", "6", "--s", "3", "--uniform", "2"})["value"] == 10);
    CHECK(call({"oracle", "--n", "5", "--s", "2", "--mode", "lp"}).code == 2);
}

TEST_CASE("audit-bounds output and determinism") {
    const std::vector<std::string> args = {"audit-bounds", "--s", "3", "--c", "2", "--trials", "20000", "--seed", "0x5EED"};
    const Outcome a = call(args);
    const Outcome b = call(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const Json j = Json::parse(a.out);
    int bounds = 0;
    int mc = 0;
    for (const auto& e : j) {
        if (e["kind"] == "bound") {
            ++bounds;
            CHECK(e["holds"] == true);
        } else {
            ++mc;
            CHECK(e["kind"] == "montecarlo");
        }
    }
    CHECK(bounds > 0);
    CHECK(mc == 3);
    CHECK(call({"audit-bounds", "--s", "9", "--c", "1"}).code == 2);
    const Outcome input = call({"audit-bounds", "--s", "3", "--c", "1", "--trials", "0", "--input", "-"},
                               call({"construct", "--family", "W", "--s", "3", "--c", "1"}).out);
    CHECK(input.code == 0);
}

TEST_CASE("verify suites") {
    const Outcome claims = call({"verify", "--suite", "claims"});
    CHECK(claims.code == 0);
    CHECK(Json::parse(claims.out)["ok"] == true);
    const Outcome bounds = call({"verify", "--suite", "bounds", "--count", "60"});
    CHECK(bounds.code == 0);

    // Every main-statement cell and the full/shifted cross-check pass; the
    // truncated bound fails at s = 2 (the truncated star has 11 members, the
    // formula allows 10), so the suite exits 1 there.
    const Outcome theorem = call({"verify", "--suite", "theorem", "--s-max", "4"});
    const Json t = Json::parse(theorem.out);
    CHECK(theorem.code == 1);
    bool mains_ok = true;
    int mains = 0;
    for (const auto& c : t["checks"]) {
        const std::string name = c["name"];
        if (name.rfind("main", 0) == 0 || name.rfind("full_vs_shifted", 0) == 0) {
            mains_ok = mains_ok && c["ok"] == true;
            mains += name.rfind("main", 0) == 0 ? 1 : 0;
        }
    }
    CHECK(mains == 4);
    CHECK(mains_ok);
    CHECK(t["checks"].back()["name"] == "truncated(s=2,c=1)");
    CHECK(call({"verify", "--suite", "nothing"}).code == 2);
}

TEST_CASE("identical invocations give identical output") {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"construct", "--family", "W", "--s", "4", "--c", "2"},
          std::vector<std::string>{"regime-map", "--s-max", "20", "--format", "json"},
          std::vector<std::string>{"oracle", "--n", "6", "--s", "3", "--mode", "full"}}) {
        CHECK(call(args).out == call(args).out);
    }
}
