#include <doctest.h>

#include <algorithm>
#include <set>

#include "sofree/annular.hpp"
#include "sofree/cumulants.hpp"
#include "sofree/dist.hpp"
#include "sofree/engines.hpp"

using namespace sofree;

namespace {

Word W(const Model& m, const char* text) { return m.parse_word(text); }

std::vector<std::vector<int>> compositions(int n) {
    std::vector<std::vector<int>> out;
    for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
        std::vector<int> parts;
        int run = 1;
        for (int i = 0; i < n - 1; ++i) {
            if (mask >> i & 1u) {
                parts.push_back(run);
                run = 1;
            } else {
                ++run;
            }
        }
        parts.push_back(run);
        out.push_back(parts);
    }
    return out;
}

std::vector<Word> split(const Word& w, const std::vector<int>& sizes) {
    std::vector<Word> g;
    std::size_t pos = 0;
    for (int s : sizes) {
        g.emplace_back(w.begin() + static_cast<long>(pos), w.begin() + static_cast<long>(pos) + s);
        pos += static_cast<std::size_t>(s);
    }
    return g;
}

// Two self-adjoint letters with arbitrary tracial cumulants.
ModelPtr generic_pair() {
    std::vector<Letter> ab{{"a", "f", "a"}, {"b", "f", "b"}};
    auto first = [](const Word& w) {
        // depends only on the cyclic class through the multiset and length
        long as = std::count(w.begin(), w.end(), 0);
        return frac(static_cast<long>(w.size()) + 2 * as, 3 + as);
    };
    auto second = [](const Word& x, const Word& y) {
        long as = std::count(x.begin(), x.end(), 0) + std::count(y.begin(), y.end(), 0);
        return frac(1 + as, static_cast<long>(x.size() * y.size()) + 1);
    };
    return std::make_shared<RuleModel>("generic", ab, 10, first, second);
}

}  // namespace

TEST_CASE("multiplicative extension") {
    auto x = PartitionedPermutation::parse("[{1,2,4|3,5,6|7} ; (1,2,4)(3)(5,6)(7)]");
    CHECK(kappa_expression(x) == "k3(1,2,4)*k1,2(3|5,6)*k1(7)");

    auto fp = builtin("free_poisson:3/2", 8);
    for (int n = 1; n <= 6; ++n) {
        Word w(static_cast<std::size_t>(n), 0);
        CHECK(kappa_multiplicative(Permutation::full_cycle(n), w, *fp) == frac(3, 2));
    }
    auto s = builtin("semicircular", 8);
    CHECK(kappa_multiplicative(Permutation::parse("(1,2)(3,4)"), W(*s, "s.s.s.s"), *s) == 1);

    // A block holding three cycles is rejected.
    auto bad = PartitionedPermutation::parse("[{1,2,3} ; (1)(2)(3)]");
    CHECK_THROWS_AS(kappa_multiplicative(bad, W(*s, "s.s.s"), *s), Error);
}

TEST_CASE("first-order moments from cumulants") {
    auto s = builtin("semicircular", 12);
    CHECK(phi_from_kappa(W(*s, "s.s"), *s) == 1);
    CHECK(s->phi(W(*s, "s.s.s.s")) == 2);

    auto c = builtin("circular", 12);
    for (int n = 1; n <= 5; ++n) {
        Word w;
        for (int k = 0; k < n; ++k) w.insert(w.end(), {0, 1});
        CHECK(phi_from_kappa(w, *c) == catalan(n));
    }
    auto u = builtin("haar_unitary", 8);
    CHECK(u->phi(W(*u, "u.u*")) == 1);
    CHECK_THROWS_AS(phi_from_kappa(Word(13, 0), *s), Error);
}

TEST_CASE("fluctuation moments from cumulants") {
    auto s = builtin("semicircular", 8);
    CHECK(s->phi2(Word{}, W(*s, "s")) == 0);
    CHECK(phi2_from_kappa(W(*s, "s"), W(*s, "s"), *s) == 1);

    auto h = builtin("circular_product", 8);
    auto hh = [&](int k) {
        Word w;
        for (int i = 0; i < k; ++i) w.insert(w.end(), {0, 1});
        return w;
    };
    CHECK(phi2_from_kappa(hh(1), hh(1), *h) == 3);
    CHECK(phi2_from_kappa(hh(1), hh(2), *h) == 20);
    CHECK(phi2_from_kappa(hh(2), hh(2), *h) == 150);
}

TEST_CASE("cumulants from moments") {
    auto catalan_moments = std::make_shared<MomentRuleModel>(
        "poisson", std::vector<Letter>{{"a", "a", "a"}}, 8, [](const Word& w) { return catalan(static_cast<long>(w.size())); },
        [](const Word&, const Word&) { return Rational(0); });
    for (const auto& [w, v] : kappa_from_phi(*catalan_moments, 8)) CHECK(v == 1);

    auto semi_moments = std::make_shared<MomentRuleModel>(
        "semi", std::vector<Letter>{{"s", "s", "s"}}, 8,
        [](const Word& w) { return w.size() % 2 ? Rational(0) : catalan(static_cast<long>(w.size() / 2)); },
        [](const Word& a, const Word& b) {
            static auto ref = builtin("semicircular", 8);
            return ref->phi2(a, b);
        });
    for (const auto& [w, v] : kappa_from_phi(*semi_moments, 8)) CHECK(v == (w.size() == 2 ? 1 : 0));
    for (const auto& [k, v] : kappa2_from_phi(*semi_moments, 6)) CHECK(v == 0);

    auto u = builtin("haar_unitary", 8);
    CHECK(u->kappa(W(*u, "u.u*")) == 1);
    CHECK(u->kappa2(W(*u, "u"), W(*u, "u*")) == 0);
    // kappa_{2,2}(u, u*, u, u*): fixed by the inversion, compared with an independent sum.
    Rational k22 = u->kappa2(W(*u, "u.u*"), W(*u, "u.u*"));
    engine::Options lower;
    lower.skip_top = true;
    CHECK(k22 == u->phi2(W(*u, "u.u*"), W(*u, "u.u*")) - engine::annulus(*u, W(*u, "u.u*"), W(*u, "u.u*"), lower));
    CHECK(k22 == 1);
}

TEST_CASE("round trips") {
    auto g = generic_pair();
    auto phi1 = phi_table(*g, 6);
    auto phi2 = phi2_table(*g, 6);
    std::unordered_map<Word, Rational, WordHash> f1, f2;
    for (const auto& [w, v] : phi1) f1[w] = v;
    for (const auto& [k, v] : phi2) f2[pair_key(k.first, k.second)] = v;
    TableModel t(g->alphabet(), 6, true, std::move(f1), std::move(f2));
    for (const auto& [w, v] : kappa_from_phi(t, 6)) CHECK(v == g->kappa(w));
    for (const auto& [k, v] : kappa2_from_phi(t, 6)) CHECK(v == g->kappa2(k.first, k.second));
}

TEST_CASE("tracial rotation invariance") {
    auto h = builtin("circular_product", 8);
    for (const auto& w : words_up_to(*h, 7)) {
        Word r = w;
        for (std::size_t k = 1; k < w.size(); ++k) {
            std::rotate(r.begin(), r.begin() + 1, r.end());
            CHECK(h->phi(r) == h->phi(w));
        }
    }
}

TEST_CASE("products as arguments, first order") {
    CHECK(paa_first_terms({2, 2}).size() == 10);
    auto g = generic_pair();
    for (const auto& w : words_up_to(*g, 4))
        CHECK(products_as_arguments_first(split(w, std::vector<int>(w.size(), 1)), *g) == g->kappa(w));

    for (int n = 1; n <= 8; ++n)
        for (const auto& comp : compositions(n)) {
            auto a = paa_first_terms(comp, PaaForm::separation);
            auto b = paa_first_terms(comp, PaaForm::join);
            auto c = paa_first_terms(comp, PaaForm::o_form);
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            std::sort(c.begin(), c.end());
            CHECK(a == b);
            CHECK(a == c);
        }

    // Against the cumulant of the product element, through a grouped model.
    Word w = W(*g, "a.b.b.a.b");
    for (const auto& comp : compositions(5)) {
        auto groups = split(w, comp);
        std::vector<std::pair<std::string, Word>> letters;
        Word gw;
        for (std::size_t i = 0; i < groups.size(); ++i) {
            letters.emplace_back("g" + std::to_string(i), groups[i]);
            gw.push_back(static_cast<int>(i));
        }
        GroupedModel gm(g, letters, 5);
        CHECK(products_as_arguments_first(groups, *g) == gm.kappa(gw));
    }
}

TEST_CASE("products as arguments, second order") {
    std::set<std::string> terms;
    for (const auto& t : paa_second_terms({2}, {1})) terms.insert(kappa_expression(t));
    CHECK(terms == std::set<std::string>{"k3(1,3,2)", "k2,1(1,2|3)", "k1,1(1|3)*k1(2)", "k1(1)*k1,1(2|3)"});

    auto g = generic_pair();
    for (const auto& [a, b] : word_pairs_up_to(*g, 4))
        CHECK(products_as_arguments_second(split(a, std::vector<int>(a.size(), 1)),
                                           split(b, std::vector<int>(b.size(), 1)), *g) == g->kappa2(a, b));

    Word l = W(*g, "a.b.a"), r = W(*g, "b.b");
    for (const auto& lc : compositions(3))
        for (const auto& rc : compositions(2)) {
            auto lg = split(l, lc), rg = split(r, rc);
            std::vector<std::pair<std::string, Word>> letters;
            Word lw, rw;
            for (const auto& x : lg) {
                lw.push_back(static_cast<int>(letters.size()));
                letters.emplace_back("g" + std::to_string(letters.size()), x);
            }
            for (const auto& x : rg) {
                rw.push_back(static_cast<int>(letters.size()));
                letters.emplace_back("g" + std::to_string(letters.size()), x);
            }
            GroupedModel gm(g, letters, 5);
            CHECK(products_as_arguments_second(lg, rg, *g) == gm.kappa2(lw, rw));
        }
}

TEST_CASE("free families") {
    auto u = builtin("haar_unitary", 8);
    auto ba = std::make_shared<RuleModel>(
        "ba", std::vector<Letter>{{"b", "ba", "b"}, {"a", "ba", "a"}}, 8,
        [](const Word& w) { return w.size() == 1 ? frac(1, 3) : Rational(0); },
        [](const Word& x, const Word& y) { return x.size() == 1 && y.size() == 1 ? frac(5, 7) : Rational(0); });
    FreeProduct fp({u, ba});
    Word w = fp.parse_word("u.b.u*.a");
    auto x = PartitionedPermutation::parse("[{1,3|2,4} ; (1,3)(2)(4)]");
    CHECK(kappa_multiplicative(x, w, fp) == u->kappa(W(*u, "u.u*")) * frac(5, 7));
    CHECK(kappa_multiplicative(Permutation::parse("(1,2)(3,4)"), w, fp) == 0);
    Word single = fp.parse_word("b.a");
    CHECK(kappa_multiplicative(Permutation::parse("(1,2)"), single, fp) == ba->kappa(ba->parse_word("b.a")));
    CHECK(fp.phi(fp.parse_word("u.b")) == 0);
    // kappa_{1,1}(u b u*, a) = kappa_2(u, u*) phi2(b, a)
    std::vector<Word> left{fp.parse_word("u.b.u*")}, right{fp.parse_word("a")};
    CHECK(products_as_arguments_second(left, right, fp) == fp.phi2(fp.parse_word("b"), fp.parse_word("a")));
}
