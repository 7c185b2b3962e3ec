#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "sofree/perm.hpp"

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

// Restricted-growth strings give every set partition once.
std::vector<SetPartition> all_partitions(int n) {
    std::vector<SetPartition> out;
    std::vector<int> a(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int i, int mx) {
        if (i == n) {
            out.emplace_back(a);
            return;
        }
        for (int v = 0; v <= mx + 1; ++v) {
            a[static_cast<std::size_t>(i)] = v;
            rec(i + 1, std::max(mx, v));
        }
    };
    a[0] = 0;
    rec(1, 0);
    return out;
}

std::vector<PartitionedPermutation> all_pp(int n) {
    std::vector<PartitionedPermutation> out;
    auto parts = all_partitions(n);
    for (const auto& p : all_perms(n))
        for (const auto& u : parts)
            if (SetPartition::of_cycles(p).refines(u)) out.emplace_back(u, p);
    return out;
}

// Cycle count by repeated application, independent of Permutation::cycles.
int slow_cycles(const Permutation& p) {
    int n = p.size(), c = 0;
    for (int i = 0; i < n; ++i) {
        int j = p(i);
        bool smallest = true;
        while (j != i) {
            if (j < i) smallest = false;
            j = p(j);
        }
        if (smallest) ++c;
    }
    return c;
}

}  // namespace

TEST_CASE("compose and inverse") {
    auto t = Permutation::parse("(1,2)");
    CHECK(compose(t, t).is_identity());
    auto pi = Permutation::parse("(1,2)(3,4)");
    CHECK(compose(pi.inverse(), Permutation::full_cycle(4)).to_string() == "(1)(2,4)(3)");
    auto g3 = Permutation::full_cycle(3);
    CHECK(compose(g3, Permutation::identity(3)) == g3);
    CHECK_THROWS_AS(compose(g3, Permutation::identity(4)), Error);
}

TEST_CASE("lengths") {
    CHECK(Permutation::identity(5).length() == 0);
    for (int n = 1; n <= 7; ++n) CHECK(Permutation::full_cycle(n).length() == n - 1);
    CHECK(gamma_annulus(5, 3).length() == 6);
    CHECK(gamma_annulus(1, 1).to_string() == "(1)(2)");
    CHECK(gamma_annulus(5, 3).to_string() == "(1,2,3,4,5)(6,7,8)");
    CHECK(gamma_annulus(2, 2).to_string() == "(1,2)(3,4)");
    for (const auto& p : all_perms(5)) CHECK(p.length() + slow_cycles(p) == 5);
}

TEST_CASE("random group laws") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + static_cast<int>(rng() % 12);
        auto rnd = [&] {
            std::vector<int> v(static_cast<std::size_t>(n));
            std::iota(v.begin(), v.end(), 0);
            std::shuffle(v.begin(), v.end(), rng);
            return Permutation(v);
        };
        auto a = rnd(), b = rnd(), c = rnd();
        CHECK((a * b) * c == a * (b * c));
        CHECK((a.inverse() * a).is_identity());
        CHECK(Permutation::parse(a.to_string(), n) == a);
    }
}

TEST_CASE("text forms") {
    auto p = Permutation::parse(" (3, 1)(2) ");
    CHECK(p.to_string() == "(1,3)(2)");
    CHECK(Permutation::parse("(1,2)", 4).to_string() == "(1,2)(3)(4)");
    CHECK_THROWS_AS(Permutation::parse("(1,2"), Error);
    CHECK_THROWS_AS(Permutation::parse("(1,1)"), Error);
    CHECK_THROWS_AS(Permutation::parse("(0)"), Error);
    CHECK_THROWS_AS(Permutation::parse("(5)", 3), Error);
    CHECK_THROWS_AS(Permutation(std::vector<int>{0, 0}), Error);

    auto u = SetPartition::parse("{3,1|2,4}");
    CHECK(u.to_string() == "{1,3|2,4}");
    CHECK(SetPartition::parse(u.to_string()) == u);
    CHECK_THROWS_AS(SetPartition::parse("{1,2|2}"), Error);
    CHECK_THROWS_AS(SetPartition::parse("{1,3}"), Error);

    auto x = PartitionedPermutation::parse("[{1,2|3,4} ; (1,2)(3)(4)]");
    CHECK(x.to_string() == "[{1,2|3,4} ; (1,2)(3)(4)]");
    CHECK(PartitionedPermutation::parse(x.to_string()) == x);
    CHECK_THROWS_AS(PartitionedPermutation::parse("[{1|2,3} ; (1,2)(3)]"), Error);
}

TEST_CASE("partition join") {
    auto pi = Permutation::parse("(1,3)(2)(4)");
    auto z = SetPartition::of_cycles(pi);
    CHECK(partition_join(z, z) == z);
    auto a = SetPartition::parse("{1,2|3,4}");
    auto b = SetPartition::parse("{2,3|1|4}");
    CHECK(partition_join(a, b) == SetPartition::one(4));
    for (const auto& v : all_partitions(5)) CHECK(partition_join(SetPartition::singletons(5), v) == v);
    CHECK_THROWS_AS(partition_join(a, SetPartition::one(3)), Error);
}

TEST_CASE("partitioned permutation lengths") {
    auto pi = Permutation::parse("(1,2,4)(3)(5,6)");
    CHECK(pp_length({SetPartition::of_cycles(pi), pi}) == pi.length());
    for (int m = 1; m <= 3; ++m)
        for (int n = 1; n <= 3; ++n)
            CHECK(pp_length({SetPartition::one(m + n), gamma_annulus(m, n)}) == m + n);
    // 2(n-1) - (n-1), computed rather than assumed.
    for (int n = 1; n <= 6; ++n) {
        auto g = Permutation::full_cycle(n);
        int brute = 2 * (n - SetPartition::one(n).num_blocks()) - (n - slow_cycles(g));
        CHECK(pp_length({SetPartition::one(n), g}) == brute);
        CHECK(brute == n - 1);
    }
}

TEST_CASE("pp products") {
    auto e = PartitionedPermutation(SetPartition::singletons(3), Permutation::identity(3));
    auto y = PartitionedPermutation::parse("[{1,3|2} ; (1,3)(2)]");
    CHECK(pp_product(e, y) == y);

    for (int n = 1; n <= 5; ++n) {
        auto all = all_pp(n);
        for (const auto& x : all)
            for (const auto& z : all) CHECK(pp_product(x, z).length() <= x.length() + z.length());
    }
}

TEST_CASE("exact factorizations of (1_4, gamma_4)") {
    auto g = Permutation::full_cycle(4);
    PartitionedPermutation target(SetPartition::one(4), g);
    auto all = all_pp(4);
    int count = 0;
    for (const auto& x : all)
        for (const auto& y : all)
            if (is_exact_factorization(x, y, target)) {
                ++count;
                // Both factors are of the form (0_pi, pi) with pi non-crossing.
                CHECK(x.partition() == SetPartition::of_cycles(x.permutation()));
                CHECK(y.permutation() == compose(x.permutation().inverse(), g));
            }
    CHECK(count == 14);

    PartitionedPermutation id2(SetPartition::singletons(2), Permutation::identity(2));
    CHECK_FALSE(is_exact_factorization(id2, id2, {SetPartition::one(2), Permutation::full_cycle(2)}));
}

TEST_CASE("separation and induced permutations") {
    CHECK(separates_points(Permutation::identity(4), {0, 1, 2, 3}));
    CHECK_FALSE(separates_points(Permutation::parse("(1)(2,4)(3)"), {1, 3}));
    CHECK(separates_points(gamma_annulus(2, 2), {0, 2}));

    auto g4 = Permutation::full_cycle(4);
    CHECK(induced_permutation(g4, {0, 2}).to_string() == "(1,3)(2)(4)");
    auto s = Permutation::parse("(1,2)(3,4)");
    CHECK(induced_permutation(s, {0, 1}) == Permutation::parse("(1,2)", 4));

    for (int n = 1; n <= 6; ++n)
        for (const auto& p : all_perms(n))
            for (unsigned mask = 1; mask < (1u << n); ++mask) {
                std::vector<int> a;
                for (int i = 0; i < n; ++i)
                    if (mask >> i & 1u) a.push_back(i);
                CHECK(separates_points(p, a) == induced_permutation(p, a).is_identity());
            }
}
