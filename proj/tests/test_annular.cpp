#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "sofree/annular.hpp"

using namespace sofree;

namespace {

std::vector<Permutation> all_perms(int n) {
    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 0);
    std::vector<Permutation> out;
    do out.emplace_back(img);
    while (std::next_permutation(img.begin(), img.end()));
    return out;
}

long catalan_rec(int n) {
    std::vector<long> c(static_cast<std::size_t>(n + 1), 0);
    c[0] = 1;
    for (int k = 1; k <= n; ++k)
        for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(k)] += c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(k - 1 - i)];
    return c[static_cast<std::size_t>(n)];
}

Permutation P(const char* s, int n) { return Permutation::parse(s, n); }

// 2k (1-based) is the 0-based odd point 2k-1.
bool fixes_even_steps(const Permutation& p, const Permutation& g) {
    for (int k = 1; k < p.size(); k += 2)
        if (p(k) != g(k)) return false;
    return true;
}

std::vector<Shape> doubled_shapes(int max_half_total) {
    std::vector<Shape> out;
    for (int p = 1; p < max_half_total; ++p)
        for (int q = 1; p + q <= max_half_total; ++q) out.push_back({2 * p, 2 * q});
    return out;
}

}  // namespace

TEST_CASE("disc geodesics and NC(n)") {
    CHECK(is_geodesic(Permutation::identity(5), Permutation::full_cycle(5)));
    CHECK_FALSE(is_geodesic(P("(1,3,2)", 3), Permutation::full_cycle(3)));
    int nc4 = 0;
    for (const auto& p : all_perms(4)) nc4 += is_noncrossing_disc(p);
    CHECK(nc4 == 14);

    auto one = enumerate_nc(1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].is_identity());
    CHECK(enumerate_nc(4).size() == 14);
    CHECK(enumerate_nc(6).size() == 132);
    for (int n = 1; n <= 10; ++n) CHECK(static_cast<long>(enumerate_nc(n).size()) == catalan_rec(n));
    auto six = enumerate_nc(6);
    CHECK(std::is_sorted(six.begin(), six.end()));
    CHECK_THROWS_AS(enumerate_nc(15), CapExceeded);
    Caps small;
    small.disc = 5;
    CHECK_THROWS_AS(enumerate_nc(6, small), CapExceeded);
}

TEST_CASE("kreweras complement") {
    for (int n = 1; n <= 6; ++n) CHECK(kreweras_disc(Permutation::full_cycle(n)).is_identity());
    CHECK(kreweras_disc(P("(1,2)(3,4)", 4)).to_string() == "(1)(2,4)(3)");
    for (int n = 1; n <= 8; ++n)
        for (const auto& p : enumerate_nc(n)) CHECK(p.length() + kreweras_disc(p).length() == n - 1);
}

TEST_CASE("annular non-crossing") {
    CHECK(is_annular_nc(P("(1,5)(2,6)(3,4,7,8)", 8), {5, 3}));
    for (int m = 1; m <= 3; ++m)
        for (int n = 1; n <= 3; ++n) CHECK_FALSE(is_annular_nc(gamma_of({m, n}), {m, n}));
    CHECK(is_annular_nc(P("(1,3)", 4), {2, 2}));

    auto s11 = enumerate_snc({1, 1});
    REQUIRE(s11.size() == 1);
    CHECK(s11[0].to_string() == "(1,2)");
    CHECK(enumerate_snc({1, 2}).size() == 4);
    CHECK(enumerate_snc({2, 2}).size() == 18);
    CHECK(enumerate_snc({1, 3}).size() == 15);
    for (int p = 1; p < 5; ++p)
        for (int q = 1; p + q <= 5; ++q)
            CHECK(2 * enumerate_snc({p, q}).size() == enumerate_annular_pairings({2 * p, 2 * q}).size());
    CHECK_THROWS_AS(enumerate_snc({8, 7}), CapExceeded);

    // #(pi) + #(gamma pi^-1) = m + n
    for (int m = 1; m < 10; ++m)
        for (int n = 1; m + n <= 10 && n <= m; ++n) {
            auto g = gamma_of({m, n});
            for (const auto& p : enumerate_snc({m, n}))
                CHECK(p.num_cycles() + compose(g, p.inverse()).num_cycles() == m + n);
        }
}

TEST_CASE("annular pairings") {
    auto two = enumerate_annular_pairings({2, 2});
    std::set<std::string> got;
    for (const auto& p : two) got.insert(p.to_string());
    CHECK(got == std::set<std::string>{"(1,3)(2,4)", "(1,4)(2,3)"});
    auto four = enumerate_annular_pairings({4, 4});
    CHECK(four.size() == 36);
    for (const auto& p : four)
        for (const auto& c : p.cycles()) CHECK(c.size() == 2);
    CHECK_THROWS_AS(enumerate_annular_pairings({3, 2}), Error);
}

TEST_CASE("unfold") {
    auto pi = P("(1,5)(2,6)(3,4,7,8)", 8);
    CHECK(unfold(pi, {5, 3}, 3).to_string() == "(1,2,3,4,7,8,6,5)");
    for (const auto& p : enumerate_snc({2, 2})) {
        for (int k = 0; k < 4; ++k) {
            bool crossing = (k < 2) != (p(k) < 2);
            if (!crossing) {
                CHECK_THROWS_AS(unfold(p, {2, 2}, k), Error);
                continue;
            }
            auto gt = unfold(p, {2, 2}, k);
            CHECK(gt.num_cycles() == 1);
            CHECK(is_geodesic(p, gt));
        }
    }
}

TEST_CASE("partitioned annular sets") {
    auto prime11 = enumerate_ps_nc_prime({1, 1});
    REQUIRE(prime11.size() == 1);
    CHECK(prime11[0].to_string() == "[{1,2} ; (1)(2)]");
    CHECK(enumerate_ps_nc_prime({1, 2}).size() == 3);
    CHECK(enumerate_ps_nc({1, 1}).size() == 2);
    CHECK(enumerate_ps_nc({1, 2}).size() == 7);

    for (int m = 1; m < 6; ++m)
        for (int n = 1; m + n <= 6; ++n) {
            auto g = gamma_of({m, n});
            for (const auto& x : enumerate_ps_nc_prime({m, n})) {
                auto kr = compose(x.permutation().inverse(), g);
                CHECK(pp_length(x) + kr.length() == m + n);
            }
            auto all = enumerate_ps_nc({m, n});
            std::set<PartitionedPermutation> uniq(all.begin(), all.end());
            CHECK(uniq.size() == all.size());
            CHECK(all.size() == enumerate_snc({m, n}).size() + enumerate_ps_nc_prime({m, n}).size());
        }
}

TEST_CASE("parity classes") {
    CHECK_FALSE(is_even_cycles(Permutation::identity(3)));
    CHECK(is_even_cycles(P("(1,2)(3,4)", 4)));
    auto fig8 = P("(1,14,15,12)(2,3)(4,5,18,13)(6,7)(8,9,10,11,16,17)", 18);
    auto fig10 = P("(1,13,14,15,11,12)(2,3)(4,5,6,18)(7,10,16,17)(8,9)", 18);
    CHECK(is_even_cycles(fig8));
    CHECK(classify_parity(fig8, {12, 6}) == Parity::reversing);
    CHECK(classify_parity(fig10, {12, 6}) == Parity::preserving);
    CHECK(classify_parity(P("(1,3)", 4), {2, 2}) == Parity::not_even);
    CHECK(classify_parity(P("(1,2)(3,4)", 4), {2, 2}) == Parity::reversing);  // gamma itself, a disc product
    CHECK(classify_parity(P("(1,3)(2,4)", 6), {4, 2}) == Parity::not_annular);
    CHECK_THROWS_AS(classify_parity(P("(1,3)", 4), {1, 3}), Error);
}

TEST_CASE("all-through sets") {
    auto s = snc_all({1, 1});
    REQUIRE(s.size() == 1);
    CHECK(s[0].to_string() == "(1,2)");
    for (int p = 1; p < 5; ++p)
        for (int q = 1; p + q <= 5; ++q)
            for (const auto& pi : snc_all({p, q}))
                for (const auto& c : kreweras(pi, Shape{p, q}).cycles()) {
                    CHECK(c.size() <= 2);
                    if (c.size() == 2) CHECK(is_through(c, {p, q}));
                }
    // The spokes of the semicircle: parity-preserving all-through pairings of (2k,2k) number k.
    for (int k = 1; k <= 3; ++k) {
        int pairings = 0;
        for (const auto& pi : snc_plus_all({2 * k, 2 * k})) {
            CHECK(is_plus_all(pi, {2 * k, 2 * k}));
            bool pairing = true;
            for (const auto& c : pi.cycles()) pairing = pairing && c.size() == 2;
            pairings += pairing;
        }
        CHECK(pairings == k);
    }
}

TEST_CASE("separation lemmas on doubled shapes") {
    for (Shape s : doubled_shapes(4)) {
        auto g = gamma_of(s);
        for (const auto& pi : enumerate_snc(s)) {
            Parity par = classify_parity(pi, s);
            bool sep = separates_odd(pi, g);
            bool pairing = true;
            for (const auto& c : pi.cycles()) pairing = pairing && c.size() == 2;
            if (par == Parity::reversing && sep) {
                CHECK(fixes_even_steps(pi, g));
                CHECK_FALSE(pairing);
            }
            if (par == Parity::preserving && sep)
                for (int k = 1; k < pi.size(); k += 2)
                    if ((k < s.m) == (pi(k) < s.m)) CHECK(pi(k) == g(k));
            if (par == Parity::preserving && is_plus_all(pi, s)) CHECK(sep);
        }
    }
}

TEST_CASE("disc doubling") {
    for (int n = 1; n <= 5; ++n) CHECK(hat_double(Permutation::full_cycle(n)) == Permutation::full_cycle(2 * n));
    CHECK(hat_double(Permutation::identity(2)).to_string() == "(1,4)(2,3)");
    for (int n = 1; n <= 6; ++n)
        for (const auto& p : enumerate_nc(n)) {
            auto h = hat_double(p);
            CHECK(is_noncrossing_disc(h));
            CHECK(is_even_cycles(h));
            CHECK(undouble(h) == p);
        }
    CHECK_THROWS_AS(hat_double(P("(1,3)(2,4)", 4)), Error);
}

TEST_CASE("annular doubling") {
    auto fig8 = P("(1,14,15,12)(2,3)(4,5,18,13)(6,7)(8,9,10,11,16,17)", 18);
    auto chk = check_map(fig8, {12, 6});
    CHECK(chk.to_string() == "(1)(2,9)(3)(4,5,8)(6,7)");
    CHECK(uncheck(chk, {6, 3}) == fig8);

    for (int p = 1; p < 4; ++p)
        for (int q = 1; p + q <= 4; ++q) {
            Shape half{p, q}, dbl{2 * p, 2 * q};
            auto g = gamma_of(dbl);
            std::set<Permutation> image;
            for (const auto& sigma : enumerate_snc(half)) {
                auto pi = uncheck(sigma, half);
                CHECK(classify_parity(pi, dbl) == Parity::reversing);
                CHECK(separates_odd(pi, g));
                CHECK(fixes_even_steps(pi, g));
                CHECK(check_map(pi, dbl) == sigma);
                image.insert(pi);
            }
            for (const auto& pi : enumerate_snc(dbl))
                if (classify_parity(pi, dbl) == Parity::reversing && separates_odd(pi, g)) CHECK(image.count(pi) == 1);
        }
    CHECK_THROWS_AS(check_map(P("(1,3)(2,4)", 4), {2, 2}), Error);
}

TEST_CASE("doubling partitioned permutations") {
    // Each singleton doubles to a pair of neighbours; the joined block covers all four points.
    auto x = enumerate_ps_nc_prime({1, 1}).at(0);
    auto h = hat_partitioned(x, {1, 1});
    CHECK(h.to_string() == "[{1,2,3,4} ; (1,2)(3,4)]");
    for (int p = 1; p < 5; ++p)
        for (int q = 1; p + q <= 5; ++q) {
            Shape half{p, q}, dbl{2 * p, 2 * q};
            for (const auto& y : enumerate_ps_nc_prime(half)) {
                auto d = hat_partitioned(y, half);
                CHECK(is_even_cycles(d.permutation()));
                CHECK(separates_odd(d.permutation(), gamma_of(dbl)));
                CHECK(unhat_partitioned(d, dbl) == y);
            }
        }
}

TEST_CASE("grouping of the parity-preserving set") {
    // Brute force on (2,2): the separating members of S_NC^+(2,2).
    Shape dbl{2, 2};
    auto g = gamma_of(dbl);
    std::vector<Permutation> separating;
    for (const auto& pi : enumerate_snc(dbl))
        if (classify_parity(pi, dbl) == Parity::preserving && separates_odd(pi, g)) separating.push_back(pi);
    auto u = enumerate_ps_nc_prime({1, 1}).at(0);
    auto grouped = snc_grouped(u, {1, 1});
    CHECK(grouped == separating);
    std::vector<std::string> text;
    for (const auto& pi : grouped) text.push_back(pi.to_string());
    CHECK(text == std::vector<std::string>{"(1,2,4,3)", "(1,3,4,2)", "(1,3)(2,4)"});
    CHECK(snc_plus_separating(dbl) == separating);

    for (int p = 1; p < 4; ++p)
        for (int q = 1; p + q <= 4; ++q) {
            Shape half{p, q}, d{2 * p, 2 * q};
            std::multiset<Permutation> covered;
            for (const auto& y : enumerate_ps_nc_prime(half))
                for (const auto& pi : snc_grouped(y, half)) {
                    CHECK(classify_parity(pi, d) == Parity::preserving);
                    covered.insert(pi);
                }
            auto sep = snc_plus_separating(d);
            CHECK(covered.size() == sep.size());
            CHECK(std::equal(covered.begin(), covered.end(), sep.begin(), sep.end()));
        }
}

TEST_CASE("k-structure") {
    for (int k = 1; k <= 3; ++k)
        for (int p = 1; p <= 2; ++p)
            for (int q = 1; q <= 2; ++q) CHECK(k_structure(gamma_of({k * p, k * q}), {k * p, k * q}, k).alternating);

    for (int p = 1; p < 4; ++p)
        for (int q = 1; p + q <= 4; ++q) {
            Shape s{2 * p, 2 * q};
            auto g = gamma_of(s);
            for (const auto& sigma : enumerate_snc(s)) {
                auto ks = k_structure(sigma, s, 2);
                auto kr = k_structure(compose(sigma.inverse(), g), s, 2);
                CHECK(ks.alternating == kr.preserving);
                CHECK((ks.alternating && ks.equal) == kr.completing);
            }
        }

    for (int p = 1; p < 4; ++p)
        for (int q = 1; p + q <= 4; ++q) {
            CHECK(enumerate_snc_k_alt({p, q}, 1) == enumerate_snc({p, q}));
            CHECK(enumerate_snc_k_alt_eq({p, q}, 2).size() == enumerate_snc({p, q}).size());
        }
}
