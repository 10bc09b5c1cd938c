#include "wahl/io.hpp"
#include "wahl/reference_checks.hpp"

#include <catch_amalgamated.hpp>

#include <sstream>

using namespace wahl;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

CurveConfig parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

} // namespace

TEST_CASE("configuration JSON round trip", "[io]") {
    for (auto where : {SecondPoint::OnFirstOnly, SecondPoint::OnSecondOnly, SecondPoint::AtCrossing}) {
        auto c = two_point_blowup(where);
        auto back = config_from_json(to_json(c));
        CHECK(back == c);
        CHECK(same_intersection_data(back, c));
    }
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        auto c = random_exceptional_curve(rng, 5);
        REQUIRE(config_from_json(parse_json_text(to_json(c).dump())) == c);
    }
}

TEST_CASE("configuration defaults", "[io]") {
    auto c = parse_text(R"({"vertices": [{"id": 3, "self_int": -4}, {"id": 5, "self_int": -1}],
                           "edges": [{"a": 3, "b": 5}]})");
    CHECK(c.curve(3).k_degree == 2);
    CHECK(c.curve(5).k_degree == -1);
    CHECK(c.curve(3).mult == 0);
    CHECK(c.intersection(3, 5) == 1);
}

TEST_CASE("malformed JSON reports line and column", "[io]") {
    try {
        parse_text("{\n  \"vertices\": [\n}\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() == 1);
        CHECK(std::string(e.what()).find("line 3, column 1") != std::string::npos);
    }
}

TEST_CASE("missing or mistyped fields are rejected", "[io]") {
    CHECK_THROWS_AS(parse_text("{}"), ParseError);
    CHECK_THROWS_AS(parse_text(R"({"vertices": 3})"), ParseError);
    CHECK_THROWS_AS(parse_text(R"({"vertices": [{"id": 0}]})"), ParseError);
    CHECK_THROWS_AS(parse_text(R"({"vertices": [{"id": "x", "self_int": -1}]})"), ParseError);
    CHECK_THROWS_AS(parse_text(R"({"vertices": [{"id": 0, "self_int": -1}], "edges": [{"a": 0, "b": 9}]})"), ParseError);
    try {
        parse_text(R"({"vertices": [{"id": 0, "self_int": -1}, {"id": 1}]})");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("vertex 1") != std::string::npos);
        CHECK(std::string(e.what()).find("self_int") != std::string::npos);
    }
}

TEST_CASE("atlas record counts and content", "[io]") {
    std::ostringstream one;
    write_atlas(one, 1);
    auto l1 = lines_of(one.str());
    REQUIRE(l1.size() == 1);
    auto j = Json::parse(l1[0]);
    CHECK(j["p"] == 2);
    CHECK(j["q"] == 1);
    CHECK(j["ell"] == 1);
    CHECK(j["b"] == Json::array({4}));
    CHECK(j["discrepancies"] == Json::array({"-1/2"}));
    CHECK(j["det"] == 4);
    CHECK(j["checksum_ok"] == true);

    std::ostringstream two;
    write_atlas(two, 2);
    CHECK(lines_of(two.str()).size() == 3);

    std::ostringstream twelve;
    write_atlas(twelve, 12);
    auto l12 = lines_of(twelve.str());
    CHECK(l12.size() == 4095);
    for (const auto& line : l12) {
        auto r = Json::parse(line);
        REQUIRE(r["b"].size() == r["ell"].get<std::size_t>());
        REQUIRE(r["discrepancies"].size() == r["ell"].get<std::size_t>());
    }

    std::ostringstream again;
    write_atlas(again, 12);
    CHECK(again.str() == twelve.str());
}

TEST_CASE("oversized integers are written as strings", "[io]") {
    Integer big = Integer(1) << 80;
    CHECK(integer_json(big).is_string());
    CHECK(integer_json(big).get<std::string>() == big.str());
    CHECK(integer_json(Integer(-12)) == -12);
}

TEST_CASE("trace JSONL ends with a status line", "[io]") {
    auto trace = contract_all(two_point_blowup(SecondPoint::AtCrossing));
    std::ostringstream os;
    write_trace_jsonl(os, trace);
    auto lines = lines_of(os.str());
    REQUIRE(lines.size() == trace.steps.size() + 1);
    for (std::size_t k = 0; k + 1 < lines.size(); ++k) {
        auto j = Json::parse(lines[k]);
        CHECK(j["step"] == k + 1);
        CHECK_FALSE(j.contains("status"));
    }
    auto fin = Json::parse(lines.back());
    CHECK(fin["status"] == "CONTRACTED_TO_POINT");
    CHECK(fin["steps"] == 3);

    std::ostringstream text;
    write_trace_text(text, trace);
    CHECK(text.str().find("status: CONTRACTED_TO_POINT after 3 step(s)") != std::string::npos);
}

TEST_CASE("oracle JSONL has one record per configuration", "[io]") {
    auto rep = case_oracle(4);
    std::ostringstream os;
    write_oracle_jsonl(os, rep);
    auto lines = lines_of(os.str());
    CHECK(lines.size() == rep.records.size());
    for (const auto& line : lines) {
        auto j = Json::parse(line);
        REQUIRE(j.contains("verdict"));
        REQUIRE(j.contains("case"));
        REQUIRE(j["classes"].is_array());
    }
}

TEST_CASE("bound and surface encoders", "[io]") {
    auto j = to_json(inequality_chain(5, 27, 16));
    CHECK(j["feasible"] == true);
    CHECK(j["p_max"] == "16/1");
    auto s = to_json(surface_examples(SurfaceKind::Horikawa, 3));
    CHECK(s["kind"] == "HORIKAWA");
    CHECK(s["ell"] == 2);
    std::ostringstream table;
    write_bounds_table(table, 5);
    CHECK(lines_of(table.str()).size() == 6);
}

TEST_CASE("reference checks pass", "[io][reference]") {
    auto all = run_reference_checks();
    CHECK(all.size() == 26);
    for (const auto& r : all) {
        INFO(r.group << "/" << r.name << ": " << r.detail);
        CHECK(r.passed);
    }
    auto only = run_reference_checks("bounds");
    CHECK(only.size() == 3);
    for (const auto& r : only) CHECK(r.group == "bounds");
    CHECK_THROWS_AS(run_reference_checks("nosuchgroup"), DomainError);
}

TEST_CASE("a sign-flipped discrepancy is caught", "[io][reference]") {
    ReferenceHooks hooks;
    hooks.discrepancies = [](const TString& t) {
        auto a = discrepancies(t);
        for (auto& x : a) x = -x;
        return a;
    };
    auto results = run_reference_checks("discrepancy", hooks);
    auto it = std::find_if(results.begin(), results.end(), [](const CheckResult& r) { return r.name == "base_discrepancy"; });
    REQUIRE(it != results.end());
    CHECK_FALSE(it->passed);
    CHECK(it->detail == "1/2");
}
