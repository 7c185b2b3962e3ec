#include <doctest.h>

#include "sofree/cumulants.hpp"
#include "sofree/dist.hpp"
#include "sofree/special.hpp"

using namespace sofree;

namespace {

nlohmann::json circular_tables(int trunc) {
    nlohmann::json first = nlohmann::json::object(), second = nlohmann::json::object();
    auto alpha = builtin("circular", trunc);
    for (const auto& w : words_up_to(*alpha, trunc)) {
        std::string t = alpha->word_text(w);
        first[t] = (t == "c.c*" || t == "c*.c") ? "1" : "0";
    }
    return {{"alphabet", {{{"name", "c"}, {"family", "c"}, {"star", "c*"}}, {{"name", "c*"}, {"family", "c"}, {"star", "c"}}}},
            {"truncation", trunc},
            {"side", "cumulants"},
            {"first", first},
            {"second", "zero"}};
}

}  // namespace

TEST_CASE("builtin values") {
    auto s = builtin("semicircular", 12);
    CHECK(s->phi(s->parse_word("s.s.s.s")) == 2);
    CHECK(s->phi(s->parse_word("s.s.s")) == 0);

    auto u = builtin("haar_unitary", 12);
    CHECK(u->phi2(u->parse_word("u.u.u"), u->parse_word("u*.u*.u*")) == 3);
    CHECK(u->phi2(u->parse_word("u.u"), u->parse_word("u*")) == 0);

    auto p = builtin("free_poisson", 10);
    for (int n = 1; n <= 8; ++n) CHECK(p->phi(Word(static_cast<std::size_t>(n), 0)) == catalan(n));
    auto p2 = builtin("free_poisson:2", 6);
    CHECK(p2->phi(Word{0, 0}) == 6);  // lambda + lambda^2

    CHECK(is_builtin_name("free_poisson:3/2"));
    CHECK_FALSE(is_builtin_name("gaussian"));
    CHECK_THROWS_AS(builtin("free_poisson:-1", 4), Error);
    CHECK(builtin("semicircular", 4, "x")->word_text(Word{0, 0}) == "x.x");
}

TEST_CASE("emit and reload") {
    for (const char* name : {"semicircular", "haar_unitary", "circular", "free_poisson:3/2"}) {
        auto m = builtin(name, 8);
        auto back = load_model(emit_model(*m));
        for (const auto& w : words_up_to(*m, 6)) CHECK(back->phi(w) == m->phi(w));
    }
    auto t = load_model(circular_tables(6));
    auto again = load_model_text(emit_model(*t).dump());
    CHECK(emit_model(*again) == emit_model(*t));

    nlohmann::json fp = {{"free_product", {{{"rule", "semicircular"}}, {{"rule", "haar_unitary"}}}}};
    auto m = load_model(fp);
    CHECK(m->phi(m->parse_word("s.u.s.u*")) == 0);
    CHECK(m->phi(m->parse_word("s.u.s.u*.s.s")) == 0);
    CHECK(m->phi(m->parse_word("s.u.s.s.u*.s")) == 1);
    auto e = emit_model(*m);
    CHECK(e["free_product"][1]["rule"] == "haar_unitary");
    CHECK(emit_model(*load_model(e)) == e);
}

TEST_CASE("load errors carry a pointer") {
    auto doc = circular_tables(4);
    doc["first"].erase("c.c*.c*");
    try {
        load_model(doc);
        FAIL("accepted an incomplete table");
    } catch (const LoadError& e) {
        CHECK(e.pointer() == "/first");
        CHECK(std::string(e.what()).find("c.c*.c*") != std::string::npos);
    }

    doc = circular_tables(4);
    doc["first"]["c.c*"] = "one";
    try {
        load_model(doc);
        FAIL("accepted a bad rational");
    } catch (const LoadError& e) {
        CHECK(e.pointer() == "/first/c.c*");
    }

    doc = circular_tables(4);
    doc["alphabet"][1]["star"] = "c*";
    CHECK_THROWS_AS(load_model(doc), LoadError);

    nlohmann::json bad = {{"free_product", {{{"rule", "semicircular"}}, {{"rule", "nope"}}}}};
    try {
        load_model(bad);
        FAIL("accepted an unknown rule");
    } catch (const LoadError& e) {
        CHECK(e.pointer().rfind("/free_product/1", 0) == 0);
    }
    CHECK_THROWS_AS(load_model_text("{"), LoadError);
    CHECK_THROWS_AS(resolve_model("/nonexistent/model.json"), Error);
}

TEST_CASE("circular as tables") {
    auto t = load_model(circular_tables(8));
    auto c = builtin("circular", 8);
    for (const auto& w : words_up_to(*c, 6)) CHECK(t->phi(w) == c->phi(w));
    for (const auto& [a, b] : word_pairs_up_to(*c, 6)) CHECK(t->phi2(a, b) == c->phi2(a, b));

    auto bt = determining_of_r_diagonal(*t, 4), bc = determining_of_r_diagonal(*builtin("circular", 12), 4);
    CHECK(bt.first == bc.first);
    CHECK(bt.second == bc.second);
    auto sq = square_cumulants(bt);
    for (int n = 1; n <= 4; ++n) CHECK(sq.first[static_cast<std::size_t>(n)] == 1);
    for (int p = 1; p < 4; ++p)
        for (int q = 1; p + q <= 4; ++q) CHECK(sq.second[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] == 0);
}

TEST_CASE("special classes among builtins") {
    CHECK(verify_even(*builtin("semicircular", 10), 8).ok);
    auto fp = verify_even(*builtin("free_poisson", 10), 8);
    CHECK_FALSE(fp.ok);
    CHECK_FALSE(fp.violation.empty());
    CHECK(verify_r_diagonal(*builtin("haar_unitary", 10), 8).ok);
    CHECK(verify_r_diagonal(*builtin("circular", 10), 8).ok);
    CHECK(verify_r_diagonal(*builtin("circular_product", 10), 6).ok);
}

TEST_CASE("haar determining sequence") {
    // u u* = 1: kappa_1 = 1 and nothing else.
    SquareTables one;
    one.order = 6;
    one.first.assign(7, Rational(0));
    one.first[1] = 1;
    one.second = seq::make_grid(6, 6);
    auto beta = determining_from_square(one);
    for (int n = 1; n <= 6; ++n) CHECK(beta.first[static_cast<std::size_t>(n)] == (n % 2 ? 1 : -1) * catalan(n - 1));
    auto direct = determining_of_r_diagonal(*builtin("haar_unitary", 12), 6);
    CHECK(direct.first == beta.first);
    CHECK(direct.second == beta.second);
}
