#include <doctest.h>

#include <string>
#include <vector>

#include <json.hpp>

#include "sofree/sofree.h"

namespace {

nlohmann::json take(char* s) {
    REQUIRE(s != nullptr);
    auto j = nlohmann::json::parse(s);
    sofree_string_free(s);
    return j;
}

int collect(const char* line, void* user) {
    static_cast<std::vector<std::string>*>(user)->push_back(line);
    return 0;
}

int stop_after_two(const char*, void* user) {
    return ++*static_cast<int*>(user) >= 2;
}

}  // namespace

TEST_CASE("c api: models") {
    CHECK(std::string(sofree_version()) == SOFREE_VERSION);
    sofree_model* m = nullptr;
    REQUIRE(sofree_model_open("semicircular", 0, &m) == SOFREE_OK);
    char* s = nullptr;
    REQUIRE(sofree_model_json(m, &s) == SOFREE_OK);
    auto doc = take(s);
    CHECK(doc["rule"] == "semicircular");

    sofree_model* again = nullptr;
    CHECK(sofree_model_parse(doc.dump().c_str(), &again) == SOFREE_OK);
    sofree_model_free(again);
    sofree_model_free(m);
    sofree_model_free(nullptr);

    sofree_model* bad = nullptr;
    CHECK(sofree_model_open("no_such_model", 0, &bad) == SOFREE_E_ARGUMENT);
    CHECK(bad == nullptr);
    CHECK(std::string(sofree_last_error()).find("no_such_model") != std::string::npos);
    CHECK(sofree_model_parse("{\"alphabet\": []}", &bad) == SOFREE_E_ARGUMENT);
    CHECK(std::string(sofree_last_error()).find("/alphabet") != std::string::npos);
    CHECK(sofree_model_open(nullptr, 0, &bad) == SOFREE_E_ARGUMENT);
}

TEST_CASE("c api: enumerate") {
    long long count = 0;
    CHECK(sofree_enumerate("nc", 0, 4, 0, nullptr, nullptr, &count) == SOFREE_OK);
    CHECK(count == 14);
    CHECK(sofree_enumerate("snc", 2, 2, 0, nullptr, nullptr, &count) == SOFREE_OK);
    CHECK(count == 18);
    std::vector<std::string> lines;
    CHECK(sofree_enumerate("psnc", 1, 1, 0, collect, &lines, &count) == SOFREE_OK);
    REQUIRE(lines.size() == 2);
    auto first = nlohmann::json::parse(lines[0]);
    CHECK(first["index"] == 0);
    CHECK(first.contains("partition"));

    int seen = 0;
    CHECK(sofree_enumerate("snc", 2, 2, 0, stop_after_two, &seen, &count) == SOFREE_OK);
    CHECK(seen == 2);

    CHECK(sofree_enumerate("pairings", 1, 2, 0, nullptr, nullptr, &count) == SOFREE_E_ARGUMENT);
    CHECK(sofree_enumerate("bogus", 1, 1, 0, nullptr, nullptr, &count) == SOFREE_E_ARGUMENT);
    CHECK(sofree_enumerate("snc", 40, 40, 0, nullptr, nullptr, &count) == SOFREE_E_CAP);
    CHECK(std::string(sofree_last_error()).size() > 0);
}

TEST_CASE("c api: transforms and checks") {
    sofree_model* s = nullptr;
    REQUIRE(sofree_model_open("semicircular", 16, &s) == SOFREE_OK);
    char* out = nullptr;
    REQUIRE(sofree_transform(s, "c2m", 2, 4, 1, &out) == SOFREE_OK);
    auto t = take(out);
    CHECK(t["roundtrip"]["pass"] == true);
    CHECK(t["operation"] == "transform");

    REQUIRE(sofree_square(s, "forward", 4, &out) == SOFREE_OK);
    auto sq = take(out);
    CHECK(sq.dump().find("square") != std::string::npos);

    REQUIRE(sofree_check("even", s, nullptr, 6, &out) == SOFREE_OK);
    CHECK(take(out)["pass"] == true);

    sofree_model* p = nullptr;
    REQUIRE(sofree_model_open("free_poisson", 16, &p) == SOFREE_OK);
    REQUIRE(sofree_check("even", p, nullptr, 6, &out) == SOFREE_CHECK_FAILED);
    CHECK(take(out)["pass"] == false);

    CHECK(sofree_transform(s, "sideways", 1, 4, 0, &out) == SOFREE_E_ARGUMENT);
    CHECK(sofree_transform(s, "m2c", 1, 40, 0, &out) != SOFREE_OK);
    CHECK(sofree_check("series", nullptr, nullptr, 4, &out) == SOFREE_E_ARGUMENT);

    sofree_model* h = nullptr;
    REQUIRE(sofree_model_open("haar_unitary", 12, &h) == SOFREE_OK);
    REQUIRE(sofree_check("rdiag", h, nullptr, 6, &out) == SOFREE_OK);
    CHECK(take(out)["pass"] == true);

    sofree_model_free(h);
    sofree_model_free(p);
    sofree_model_free(s);
}

TEST_CASE("c api: render and acceptance") {
    char* out = nullptr;
    REQUIRE(sofree_render_svg("(1,3)(2)", 2, 1, &out) == SOFREE_OK);
    std::string svg = out;
    sofree_string_free(out);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(sofree_render_svg("(1,3)(2,4)", 4, 2, &out) != SOFREE_OK);
    CHECK(sofree_render_svg("(1,2", 2, 1, &out) == SOFREE_E_ARGUMENT);

    CHECK(sofree_acceptance_count() == 11);
    REQUIRE(sofree_acceptance_run(5, &out) == SOFREE_OK);
    auto r = take(out);
    CHECK(r.dump().find("true") != std::string::npos);
    CHECK(sofree_acceptance_run(99, &out) == SOFREE_E_ARGUMENT);
}
