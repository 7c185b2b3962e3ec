#include <doctest.h>

#include "sofree/annular.hpp"
#include "sofree/cumulants.hpp"
#include "sofree/dist.hpp"
#include "sofree/special.hpp"

using namespace sofree;

namespace {

// One self-adjoint letter from cumulant sequences, unspecified entries zero.
ModelPtr sequence_model(std::vector<Rational> first, std::map<std::pair<int, int>, Rational> second, int trunc,
                        bool moments = false) {
    SequenceModel::Data d;
    d.first = std::move(first);
    d.first.resize(static_cast<std::size_t>(trunc + 1));
    for (int s = 2; s <= trunc; ++s)
        for (int p = 1; p < s; ++p) {
            auto it = second.find({p, s - p});
            d.second[{p, s - p}] = it == second.end() ? Rational(0) : it->second;
        }
    return std::make_shared<SequenceModel>("seq", "x", std::move(d), moments, trunc);
}

Rational sq_entry(const seq::Grid& g, int p, int q) { return g[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)]; }

}  // namespace

TEST_CASE("even elements") {
    CHECK(verify_even(*builtin("semicircular", 8), 8).ok);
    auto fp = verify_even(*builtin("free_poisson", 8), 8);
    CHECK_FALSE(fp.ok);
    CHECK(fp.violation == "phi(x^1) = 1");
    CHECK(verify_even(*hermitization(builtin("circular", 12), 8), 8).ok);
    CHECK_THROWS_AS(verify_even(*builtin("circular", 8), 4), Error);

    // kappa_{1,1} may be nonzero; an odd total may not.
    CHECK(verify_even(*sequence_model({0, 0, 1}, {{{1, 1}, 1}}, 4), 4).ok);
    auto v = verify_even(*sequence_model({0, 0, 1}, {{{1, 2}, 1}}, 4), 4);
    CHECK_FALSE(v.ok);
    CHECK(v.violation == "kappa_1,2 = 1");
}

TEST_CASE("R-diagonal elements") {
    CHECK(verify_r_diagonal(*builtin("circular", 8), 6).ok);
    CHECK(verify_r_diagonal(*builtin("haar_unitary", 8), 6).ok);
    CHECK(verify_r_diagonal(*builtin("circular_product", 8), 6).ok);
    auto u2 = haar_exponents({2, -2}, 8);
    CHECK_FALSE(verify_r_diagonal(*u2, 4).ok);
    CHECK_FALSE(verify_r_diagonal(*u2, 4, "u^2").ok);
}

TEST_CASE("determining sequences") {
    auto c = determining_of_r_diagonal(*builtin("circular", 16), 5);
    for (int n = 1; n <= 5; ++n) CHECK(c.first[static_cast<std::size_t>(n)] == (n == 1 ? 1 : 0));
    for (int p = 1; p < 5; ++p)
        for (int q = 1; p + q <= 5; ++q) CHECK(sq_entry(c.second, p, q) == 0);

    auto h = determining_of_r_diagonal(*builtin("circular_product", 16), 4);
    for (int n = 1; n <= 4; ++n) CHECK(h.first[static_cast<std::size_t>(n)] == 1);
    for (int p = 1; p < 4; ++p)
        for (int q = 1; p + q <= 4; ++q) CHECK(sq_entry(h.second, p, q) == 0);

    auto u = determining_of_r_diagonal(*builtin("haar_unitary", 16), 5);
    for (int n = 1; n <= 5; ++n) CHECK(u.first[static_cast<std::size_t>(n)] == (n % 2 ? 1 : -1) * catalan(n - 1));

    auto s = determining_of_even(*builtin("semicircular", 16), 6);
    for (int n = 1; n <= 6; ++n) CHECK(s.first[static_cast<std::size_t>(n)] == (n == 1 ? 1 : 0));
    for (int p = 1; p < 6; ++p)
        for (int q = 1; p + q <= 6; ++q) CHECK(sq_entry(s.second, p, q) == (p == q ? p : 0));

    auto a = determining_of_even(*hermitization(builtin("circular", 16), 10), 5);
    CHECK(a.first == c.first);
    CHECK(a.second == c.second);

    CHECK_THROWS_AS(determining_of_even(*builtin("free_poisson", 8), 3), Error);
    CHECK_THROWS_AS(determining_of_r_diagonal(*haar_exponents({2, -2}, 8), 2, "u^2"), Error);
}

TEST_CASE("determining sequence with one fluctuation") {
    // kappa_2 = 1, kappa_{2,2} = 5/3, nothing else.
    auto x = sequence_model({0, 0, 1}, {{{2, 2}, frac(5, 3)}}, 8);
    auto d = determining_of_even(*x, 2);
    Word four(4, 0);
    Rational spokes;
    for (const auto& pi : snc_plus_all({2, 2})) spokes += kappa_multiplicative(pi, four, *x);
    CHECK(spokes == 1);
    CHECK(sq_entry(d.second, 1, 1) == frac(5, 3) + spokes);
}

TEST_CASE("square transforms") {
    auto c = square_cumulants(determining_of_r_diagonal(*builtin("circular", 16), 4));
    for (int p = 1; p < 4; ++p)
        for (int q = 1; p + q <= 4; ++q) CHECK(sq_entry(c.second, p, q) == 0);
    auto s = square_cumulants(determining_of_even(*builtin("semicircular", 16), 6));
    for (int p = 1; p < 6; ++p)
        for (int q = 1; p + q <= 6; ++q) CHECK(sq_entry(s.second, p, q) == p * binomial(p + q - 1, p));
    auto h = square_cumulants(determining_of_r_diagonal(*builtin("circular_product", 16), 4));
    CHECK(sq_entry(h.second, 1, 1) == 1);
    CHECK(sq_entry(h.second, 1, 2) == 4);
    CHECK(sq_entry(h.second, 2, 2) == 18);
    CHECK(sq_entry(h.second, 1, 3) == 15);

    // Inverse pair at order 8.
    for (const char* name : {"semicircular", "circular"}) {
        auto m = builtin(name, 24);
        auto d = std::string(name) == "semicircular" ? determining_of_even(*m, 8) : determining_of_r_diagonal(*m, 8);
        auto back = determining_from_square(square_cumulants(d));
        CHECK(back.first == d.first);
        CHECK(back.second == d.second);
    }
    // a a* = 1 gives the Haar sequence.
    SquareTables unit;
    unit.order = 5;
    unit.first.assign(6, Rational(0));
    unit.first[1] = 1;
    unit.second = seq::make_grid(5, 5);
    auto hu = determining_from_square(unit);
    auto ref = determining_of_r_diagonal(*builtin("haar_unitary", 16), 5);
    CHECK(hu.first == ref.first);
    CHECK(hu.second == ref.second);
}

TEST_CASE("MT2 and MT3 against products as arguments") {
    // x^2 and a a* as grouped letters.
    auto s = builtin("semicircular", 12);
    auto sd = square_cumulants(determining_of_even(*s, 5));
    auto c = builtin("circular", 12);
    auto cd = square_cumulants(determining_of_r_diagonal(*c, 5));
    for (int p = 1; p < 5; ++p)
        for (int q = 1; p + q <= 5; ++q) {
            std::vector<Word> l(static_cast<std::size_t>(p), Word{0, 0}), r(static_cast<std::size_t>(q), Word{0, 0});
            CHECK(products_as_arguments_second(l, r, *s) == sq_entry(sd.second, p, q));
            std::vector<Word> lc(static_cast<std::size_t>(p), Word{0, 1}), rc(static_cast<std::size_t>(q), Word{0, 1});
            CHECK(products_as_arguments_second(lc, rc, *c) == sq_entry(cd.second, p, q));
        }

    // Odd-odd second-order cumulants do not reach the square.
    for (const Rational& k11 : {Rational(1), Rational(-1)}) {
        auto x = sequence_model({0, 0, 1}, {{{1, 1}, k11}}, 10);
        auto xd = square_cumulants(determining_of_even(*x, 4));
        for (int p = 1; p < 4; ++p)
            for (int q = 1; p + q <= 4; ++q) {
                std::vector<Word> l(static_cast<std::size_t>(p), Word{0, 0}), r(static_cast<std::size_t>(q), Word{0, 0});
                CHECK(products_as_arguments_second(l, r, *x) == sq_entry(xd.second, p, q));
                CHECK(sq_entry(xd.second, p, q) == sq_entry(sd.second, p, q));
            }
    }
}

TEST_CASE("MT1 checker") {
    auto rep = check_mt1(builtin("circular", 8), builtin("free_poisson", 8), 6);
    CHECK(rep.ok);
    CHECK(rep.violations.empty());
    CHECK(rep.cumulants > 0);
    CHECK(rep.lemma_checks > 0);
    CHECK(check_mt1(builtin("haar_unitary", 8), builtin("semicircular", 8), 6).ok);
    CHECK_THROWS_AS(check_mt1(builtin("semicircular", 8), builtin("free_poisson", 8), 4), Error);
}

TEST_CASE("hermitization") {
    auto a = hermitization(builtin("circular", 16), 10);
    for (int n = 1; n <= 5; ++n) {
        CHECK(a->phi(Word(static_cast<std::size_t>(2 * n), 0)) == catalan(n));
        CHECK(a->phi(Word(static_cast<std::size_t>(2 * n - 1), 0)) == 0);
    }
    auto u = builtin("haar_unitary", 16);
    auto au = hermitization(u, 8);
    Word uu{0, 1};
    CHECK(au->phi2(Word(2, 0), Word(2, 0)) == u->phi2(uu, uu));
    CHECK(au->phi2(Word(1, 0), Word(3, 0)) == 0);
}

TEST_CASE("products of free elements") {
    auto c1 = builtin("circular", 12, "a"), c2 = builtin("circular", 12, "b");
    auto p1 = builtin("free_poisson", 12, "p"), p2 = builtin("free_poisson", 12, "q");
    CHECK(product_free_moments(2, {p1, p2}, 1, 1) == 3);
    CHECK(product_free_moments(2, {p1, p2}, 1, 2) == 20);
    CHECK(product_free_moments(2, {p1, p2}, 2, 2) == 150);
    for (int p = 1; p <= 3; ++p)
        for (int q = 1; p + q <= 4; ++q)
            CHECK(product_free_moments(1, {p1}, p, q) == p1->phi2(Word(static_cast<std::size_t>(p), 0), Word(static_cast<std::size_t>(q), 0)));
    auto p3 = builtin("free_poisson", 12, "r");
    for (int p = 1; p < 3; ++p)
        for (int q = 1; p + q <= 3; ++q)
            CHECK(product_free_moments(3, {p1, p2, p3}, p, q) == static_cast<long>(enumerate_snc_k_alt({p, q}, 3).size()));

    for (int p = 1; p < 5; ++p)
        for (int q = 1; p + q <= 5; ++q) {
            CHECK(product_free_cumulants(2, {c1, c2}, p, q) == 0);
            CHECK(product_free_cumulants(1, {p1}, p, q) == 0);
        }
    auto noisy = sequence_model({0, 1, 1}, {{{1, 1}, 1}}, 6);
    CHECK_THROWS_AS(product_free_moments(2, {noisy, p2}, 1, 1), Error);
    CHECK_THROWS_AS(product_free_moments(2, {p1}, 1, 1), Error);
}

TEST_CASE("conjugation by a circular") {
    auto s = conjugation_by_circular(builtin("semicircular", 16), 4);
    CHECK(s.matches);
    CHECK(s.first[2] == 1);
    CHECK(s.first[4] == 2);
    CHECK(s.first[3] == 0);
    CHECK(sq_entry(s.second, 1, 1) == 1);

    // The unit has no fluctuations.
    auto one = sequence_model(std::vector<Rational>(13, Rational(1)), {}, 12, true);
    auto quiet = conjugation_by_circular(one, 4);
    CHECK(quiet.matches);
    for (int n = 1; n <= 4; ++n) CHECK(quiet.first[static_cast<std::size_t>(n)] == 1);
    for (int p = 1; p < 4; ++p)
        for (int q = 1; p + q <= 4; ++q) CHECK(sq_entry(quiet.second, p, q) == 0);

    // Moments of h h* for two free circulars; only entries up to total 3 are read.
    auto hh = sequence_model({1, 1, 3, 12}, {{{1, 1}, 3}, {{1, 2}, 20}, {{2, 1}, 20}}, 9, true);
    auto t = conjugation_by_circular(hh, 3);
    CHECK(t.matches);
    CHECK(sq_entry(t.second, 1, 2) == 20);
}

TEST_CASE("powers of a Haar unitary") {
    CHECK(haar_power_cumulant(2, {1}, {-1}) == 1);
    for (int m = 1; m <= 2; ++m)
        for (int n = 1; n <= 2; ++n)
            CHECK(haar_power_cumulant(1, std::vector<int>(static_cast<std::size_t>(m), 1),
                                      std::vector<int>(static_cast<std::size_t>(n), -1)) == 0);
    CHECK(haar_power_cumulant(3, {1, 1}, {-1, -1}) == 4);
    CHECK(haar_power_cumulant(3, {1, 1}, {-1}) == 0);
    CHECK(haar_power_cumulant_paa(2, {1}, {-1}) == 1);
    CHECK(haar_power_cumulant_paa(3, {1, -1}, {1}) == haar_power_cumulant(3, {1, -1}, {1}));

    auto t = haar_c_table(4);
    CHECK(t.sign_pattern_ok);
    auto u = builtin("haar_unitary", 8);
    CHECK(sq_entry(t.c, 1, 1) == u->kappa2(Word{0, 1}, Word{0, 1}));
}
