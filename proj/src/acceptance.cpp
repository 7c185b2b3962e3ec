#include "sofree/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "sofree/annular.hpp"
#include "sofree/cumulants.hpp"
#include "sofree/dist.hpp"
#include "sofree/series.hpp"
#include "sofree/special.hpp"

namespace sofree::acceptance {

namespace {

class Recorder {
public:
    explicit Recorder(Criterion& c) : c_(c) {}

    void eq(const std::string& label, const Rational& expected, const Rational& actual) {
        add(label, to_text(expected), to_text(actual), expected == actual);
    }
    void eq(const std::string& label, long expected, long actual) {
        add(label, std::to_string(expected), std::to_string(actual), expected == actual);
    }
    void eq(const std::string& label, const std::string& expected, const std::string& actual) {
        add(label, expected, actual, expected == actual);
    }
    // A property over a whole range: `failure` is empty when it holds.
    void holds(const std::string& label, const std::string& expected, const std::string& failure,
               const std::string& summary) {
        add(label, expected, failure.empty() ? summary : failure, failure.empty());
    }
    void add(const std::string& label, std::string expected, std::string actual, bool pass) {
        c_.checks.push_back({label, std::move(expected), std::move(actual), pass});
    }

private:
    Criterion& c_;
};

std::string shape_text(int m, int n) { return "(" + std::to_string(m) + "," + std::to_string(n) + ")"; }

template <class T>
std::vector<T> sorted(std::vector<T> v) {
    std::sort(v.begin(), v.end());
    return v;
}

template <class T>
bool has_duplicates(const std::vector<T>& sorted_v) {
    return std::adjacent_find(sorted_v.begin(), sorted_v.end()) != sorted_v.end();
}

// All compositions of n, as part sizes.
std::vector<std::vector<int>> compositions(int n) {
    std::vector<std::vector<int>> out;
    for (long mask = 0; mask < (1L << (n - 1)); ++mask) {
        std::vector<int> parts{1};
        for (int k = 0; k < n - 1; ++k) {
            if (mask >> k & 1)
                parts.push_back(1);
            else
                ++parts.back();
        }
        out.push_back(parts);
    }
    return out;
}

std::vector<Word> split(const Word& w, const std::vector<int>& sizes, std::size_t from = 0) {
    std::vector<Word> out;
    for (int s : sizes) {
        out.emplace_back(w.begin() + static_cast<long>(from), w.begin() + static_cast<long>(from) + s);
        from += static_cast<std::size_t>(s);
    }
    return out;
}

// Least rotation, so that rules built on it are tracial.
Word least_rotation(const Word& w) {
    Word best = w;
    Word r = w;
    for (std::size_t k = 1; k < w.size(); ++k) {
        std::rotate(r.begin(), r.begin() + 1, r.end());
        best = std::min(best, r);
    }
    return best;
}

long word_code(const Word& w) {
    long h = 0;
    for (int x : least_rotation(w)) h = 3 * h + x + 1;
    return h;
}

// Arbitrary nonzero values with no structure beyond traciality.
Rational generic_first(const Word& w) {
    long h = word_code(w);
    return frac(1 + (7 * h) % 9, 1 + h % 4 + static_cast<long>(w.size()));
}

Rational generic_second(const Word& a, const Word& b) {
    long x = word_code(a), y = word_code(b);
    long s = x + y, p = (x % 5) * (y % 5);
    return frac(((3 * s + p) % 7) - 3, 2 + s % 3);
}

std::vector<Letter> generic_alphabet() { return {{"a", "a", "a*"}, {"a*", "a", "a"}}; }

ModelPtr generic_cumulant_model(int trunc) {
    return std::make_shared<RuleModel>("generic", generic_alphabet(), trunc, generic_first, generic_second);
}

ModelPtr generic_moment_model(int trunc) {
    return std::make_shared<MomentRuleModel>("generic_moments", generic_alphabet(), trunc, generic_first,
                                             generic_second);
}

using Map = std::unordered_map<Word, Rational, WordHash>;

std::pair<Map, Map> as_maps(const Table1& t1, const Table2& t2) {
    Map a, b;
    for (const auto& [w, v] : t1) a.emplace(w, v);
    for (const auto& [ww, v] : t2) b.emplace(pair_key(ww.first, ww.second), v);
    return {a, b};
}

// First difference between two tables, or "".
template <class K>
std::string first_difference(const std::map<K, Rational>& want, const std::map<K, Rational>& got,
                             const std::function<std::string(const K&)>& show) {
    if (want.size() != got.size())
        return "table sizes " + std::to_string(want.size()) + " vs " + std::to_string(got.size());
    for (const auto& [k, v] : want) {
        auto it = got.find(k);
        if (it == got.end()) return "missing " + show(k);
        if (it->second != v) return show(k) + ": " + to_text(v) + " vs " + to_text(it->second);
    }
    return "";
}

std::string perm_count(std::size_t n, const char* what) { return std::to_string(n) + " " + what; }

long nc_pairings(int n) {
    long c = 0;
    for (const auto& p : enumerate_nc(n)) {
        bool pairing = true;
        for (const auto& cyc : p.cycles()) pairing = pairing && cyc.size() == 2;
        c += pairing ? 1 : 0;
    }
    return c;
}

// ---- 1 ---------------------------------------------------------------------

void counting(Recorder& r) {
    for (int n = 1; n <= 12; ++n)
        r.eq("|NC(" + std::to_string(n) + ")| = Catalan(" + std::to_string(n) + ")", catalan(n).get_num().get_si(),
             static_cast<long>(enumerate_nc(n).size()));
    r.eq("|NC(4)|", 14L, static_cast<long>(enumerate_nc(4).size()));
    const std::vector<std::pair<Shape, long>> known{{{1, 1}, 1}, {{1, 2}, 4}, {{2, 2}, 18}, {{1, 3}, 15}};
    for (const auto& [s, v] : known)
        r.eq("|S_NC" + shape_text(s.m, s.n) + "|", v, static_cast<long>(enumerate_snc(s).size()));
    for (int p = 1; p <= 4; ++p)
        for (int q = 1; p + q <= 5; ++q) {
            long pairings = static_cast<long>(enumerate_annular_pairings({2 * p, 2 * q}).size());
            long snc = static_cast<long>(enumerate_snc({p, q}).size());
            r.add("|S_NC" + shape_text(p, q) + "| = |NC2" + shape_text(2 * p, 2 * q) + "|/2",
                  std::to_string(pairings) + "/2", std::to_string(snc), 2 * snc == pairings);
        }
}

// ---- 2 ---------------------------------------------------------------------

void oracles(Recorder& r) {
    for (int t = 2; t <= 8; ++t)
        for (int m = 1; m < t; ++m) {
            Shape s{m, t - m};
            auto cut = sorted(enumerate_snc(s));
            auto brute = enumerate_snc_bruteforce(s);
            std::string fail = cut == sorted(brute) ? "" : "sets differ";
            if (fail.empty() && has_duplicates(cut)) fail = "duplicates";
            r.holds("cut enumeration = S_{m+n} filtration on " + shape_text(s.m, s.n), "same set", fail,
                    perm_count(cut.size(), "permutations"));
        }

    const int order = 8;
    auto show1 = [](const Word& w) { return "word of length " + std::to_string(w.size()); };
    auto show2 = [](const std::pair<Word, Word>& w) {
        return "pair " + shape_text(static_cast<int>(w.first.size()), static_cast<int>(w.second.size()));
    };
    {
        // cumulants -> moments -> cumulants
        auto base = generic_cumulant_model(order);
        Table1 k1 = kappa_from_phi(*base, order);
        Table2 k2 = kappa2_from_phi(*base, order);
        auto [f, s] = as_maps(phi_table(*base, order), phi2_table(*base, order));
        TableModel moments(generic_alphabet(), order, true, f, s);
        r.holds("kappa -> phi -> kappa, first order, length <= 8", "identity",
                first_difference<Word>(k1, kappa_from_phi(moments, order), show1),
                std::to_string(k1.size()) + " words");
        r.holds("kappa -> phi -> kappa, second order, total <= 8", "identity",
                first_difference<std::pair<Word, Word>>(k2, kappa2_from_phi(moments, order), show2),
                std::to_string(k2.size()) + " pairs");
    }
    {
        // moments -> cumulants -> moments
        auto base = generic_moment_model(order);
        Table1 m1 = phi_table(*base, order);
        Table2 m2 = phi2_table(*base, order);
        auto [f, s] = as_maps(kappa_from_phi(*base, order), kappa2_from_phi(*base, order));
        TableModel cumulants(generic_alphabet(), order, false, f, s);
        r.holds("phi -> kappa -> phi, first order, length <= 8", "identity",
                first_difference<Word>(m1, phi_table(cumulants, order), show1), std::to_string(m1.size()) + " words");
        r.holds("phi -> kappa -> phi, second order, total <= 8", "identity",
                first_difference<std::pair<Word, Word>>(m2, phi2_table(cumulants, order), show2),
                std::to_string(m2.size()) + " pairs");
    }

    // Products as arguments against cumulants of the grouped letters.
    const int len = 7;
    auto base = generic_cumulant_model(2 * len);
    std::mt19937 rng(20240611);
    Word w;
    for (int k = 0; k < len; ++k) w.push_back(static_cast<int>(rng() % 2));
    auto grouped = [&](const std::vector<Word>& groups) {
        std::vector<std::pair<std::string, Word>> letters;
        for (std::size_t k = 0; k < groups.size(); ++k) letters.emplace_back("g" + std::to_string(k + 1), groups[k]);
        return GroupedModel(base, letters, len);
    };
    std::string fail1;
    long n1 = 0;
    for (int n = 1; n <= len && fail1.empty(); ++n)
        for (const auto& sizes : compositions(n)) {
            Word prefix(w.begin(), w.begin() + n);
            auto groups = split(prefix, sizes);
            auto g = grouped(groups);
            Word letters(groups.size());
            for (std::size_t k = 0; k < letters.size(); ++k) letters[k] = static_cast<int>(k);
            Rational want = g.kappa(letters);
            for (PaaForm form : {PaaForm::separation, PaaForm::join, PaaForm::o_form}) {
                Rational got = products_as_arguments_first(groups, *base, form);
                ++n1;
                if (got != want && fail1.empty())
                    fail1 = "length " + std::to_string(n) + ", " + std::to_string(groups.size()) +
                            " groups: " + to_text(want) + " vs " + to_text(got);
            }
        }
    r.holds("products as arguments, first order, length <= 7, three forms", "equal to grouped-letter cumulants",
            fail1, std::to_string(n1) + " cumulants");

    std::string fail2;
    long n2 = 0;
    for (int t = 2; t <= len && fail2.empty(); ++t)
        for (int a = 1; a < t; ++a)
            for (const auto& ls : compositions(a))
                for (const auto& rs : compositions(t - a)) {
                    Word prefix(w.begin(), w.begin() + t);
                    auto left = split(prefix, ls);
                    auto right = split(prefix, rs, static_cast<std::size_t>(a));
                    std::vector<Word> all = left;
                    all.insert(all.end(), right.begin(), right.end());
                    auto g = grouped(all);
                    Word wl, wr;
                    for (std::size_t k = 0; k < left.size(); ++k) wl.push_back(static_cast<int>(k));
                    for (std::size_t k = 0; k < right.size(); ++k) wr.push_back(static_cast<int>(left.size() + k));
                    Rational want = g.kappa2(wl, wr);
                    Rational got = products_as_arguments_second(left, right, *base);
                    ++n2;
                    if (got != want && fail2.empty())
                        fail2 = "sides " + shape_text(a, t - a) + ": " + to_text(want) + " vs " + to_text(got);
                }
    r.holds("products as arguments, second order, total length <= 7", "equal to grouped-letter cumulants", fail2,
            std::to_string(n2) + " cumulants");
}

// ---- 3 ---------------------------------------------------------------------

void bijections(Recorder& r) {
    {
        auto pi = Permutation::parse("(1,14,15,12)(2,3)(4,5,18,13)(6,7)(8,9,10,11,16,17)", 18);
        auto want = Permutation::parse("(1)(2,9)(3)(4,5,8)(6,7)", 9);
        r.eq("check map of the (12,6) example", want.to_string(), check_map(pi, {12, 6}).to_string());
        r.eq("uncheck of (1)(2,9)(3)(4,5,8)(6,7)", pi.to_string(), uncheck(want, {6, 3}).to_string());
    }
    r.eq("hat_double of (1)(2)", Permutation::parse("(1,4)(2,3)", 4).to_string(),
         hat_double(Permutation::identity(2)).to_string());

    for (int n = 1; n <= 6; ++n) {
        auto dom = enumerate_nc(n);
        std::vector<Permutation> target, image;
        for (const auto& p : enumerate_nc(2 * n))
            if (is_even_cycles(p) && separates_odd(p, Permutation::full_cycle(2 * n))) target.push_back(p);
        std::string fail;
        for (const auto& s : dom) {
            auto h = hat_double(s);
            if (undouble(h) != s && fail.empty()) fail = "undouble fails at " + s.to_string();
            image.push_back(h);
        }
        image = sorted(image);
        if (fail.empty() && has_duplicates(image)) fail = "not injective";
        if (fail.empty() && image != sorted(target)) fail = "image differs from the even separating part of NC(2n)";
        r.holds("hat_double: NC(" + std::to_string(n) + ") onto even NC(" + std::to_string(2 * n) +
                    ") separating odd points",
                "bijection", fail, perm_count(dom.size(), "elements"));
    }

    for (int p = 1; p <= 5; ++p)
        for (int q = 1; p + q <= 6; ++q) {
            Shape half{p, q}, doubled{2 * p, 2 * q};
            auto gamma = gamma_of(doubled);
            std::vector<Permutation> dom;
            for_each_snc(doubled, [&](const Permutation& x) {
                if (classify_parity(x, doubled) == Parity::reversing && separates_odd(x, gamma)) dom.push_back(x);
            });
            auto snc = enumerate_snc(half);
            std::string fail;
            std::vector<Permutation> image;
            for (const auto& x : dom) {
                auto c = check_map(x, doubled);
                if (uncheck(c, half) != x && fail.empty()) fail = "uncheck(check) fails at " + x.to_string();
                image.push_back(c);
            }
            for (const auto& s : snc)
                if (check_map(uncheck(s, half), doubled) != s && fail.empty())
                    fail = "check(uncheck) fails at " + s.to_string();
            image = sorted(image);
            if (fail.empty() && has_duplicates(image)) fail = "not injective";
            if (fail.empty() && image != sorted(snc)) fail = "image differs from S_NC" + shape_text(p, q);
            r.holds("check map: S_NC^-" + shape_text(2 * p, 2 * q) + " separating O onto S_NC" + shape_text(p, q),
                    "bijection", fail, perm_count(dom.size(), "elements"));
        }

    for (int p = 1; p <= 5; ++p)
        for (int q = 1; p + q <= 6; ++q) {
            Shape half{p, q}, doubled{2 * p, 2 * q};
            auto gamma = gamma_of(doubled);
            std::vector<PartitionedPermutation> target, image;
            for (auto& x : enumerate_ps_nc_prime(doubled))
                if (is_even_cycles(x.permutation()) && separates_odd(x.permutation(), gamma))
                    target.push_back(std::move(x));
            auto dom = enumerate_ps_nc_prime(half);
            std::string fail;
            for (const auto& x : dom) {
                auto h = hat_partitioned(x, half);
                if (unhat_partitioned(h, doubled) != x && fail.empty()) fail = "inverse fails at " + x.to_string();
                image.push_back(std::move(h));
            }
            image = sorted(image);
            if (fail.empty() && has_duplicates(image)) fail = "not injective";
            if (fail.empty() && image != sorted(target)) fail = "image differs from the even separating part";
            r.holds("hat_partitioned: PS_NC" + shape_text(p, q) + "' onto even PS_NC" + shape_text(2 * p, 2 * q) +
                        "' separating O",
                    "bijection", fail, perm_count(dom.size(), "elements"));
        }

    for (int p = 1; p <= 5; ++p)
        for (int q = 1; p + q <= 6; ++q) {
            Shape half{p, q}, doubled{2 * p, 2 * q};
            auto gamma = gamma_of(doubled);
            auto pool = snc_plus(doubled);
            std::vector<GroupedTest> tests;
            for (const auto& x : enumerate_ps_nc_prime(half)) tests.emplace_back(x, half);
            std::string fail;
            std::size_t total = 0;
            for (const auto& pi : pool) {
                int hits = 0;
                for (const auto& t : tests) hits += t.contains(pi) ? 1 : 0;
                int want = separates_odd(pi, gamma) ? 1 : 0;
                total += static_cast<std::size_t>(want);
                if (hits != want && fail.empty())
                    fail = pi.to_string() + " lies in " + std::to_string(hits) + " grouped sets";
            }
            r.holds("S_NC^+" + shape_text(2 * p, 2 * q) + " separating O is the disjoint union of grouped sets",
                    "disjoint union", fail, perm_count(total, "elements"));
        }
}

// ---- 4 ---------------------------------------------------------------------

Rational paa_square(const Model& m, const Word& pair, int p, int q) {
    return products_as_arguments_second(std::vector<Word>(static_cast<std::size_t>(p), pair),
                                        std::vector<Word>(static_cast<std::size_t>(q), pair), m);
}

void squares(Recorder& r) {
    auto c = builtin("circular");
    auto sq_c = square_cumulants(determining_of_r_diagonal(*c, 8));
    Word cc{c->letter_index("c"), c->letter_index("c*")};
    for (int p = 1; p <= 4; ++p)
        for (int q = 1; q <= 4; ++q) {
            const Rational& v = sq_c.second[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
            r.eq("kappa_" + shape_text(p, q) + "(cc*) from the determining sequence", Rational(0), v);
            r.eq("kappa_" + shape_text(p, q) + "(cc*) by products as arguments", v, paa_square(*c, cc, p, q));
        }
    auto s = builtin("semicircular");
    auto sq_s = square_cumulants(determining_of_even(*s, 8));
    Word ss{0, 0};
    for (int p = 1; p <= 4; ++p)
        for (int q = 1; q <= 4; ++q) {
            const Rational& v = sq_s.second[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
            r.eq("kappa_" + shape_text(p, q) + "(s^2) = p binom(p+q-1,p)", Rational(p) * binomial(p + q - 1, p), v);
            r.eq("kappa_" + shape_text(p, q) + "(s^2) by products as arguments", v, paa_square(*s, ss, p, q));
        }
}

// ---- 5 ---------------------------------------------------------------------

ModelPtr two_circulars() {
    return std::make_shared<FreeProduct>(std::vector<ModelPtr>{builtin("circular", 32, "c1"), builtin("circular", 32, "c2")});
}

void hh_star(Recorder& r) {
    std::vector<ModelPtr> poissons{builtin("free_poisson", 32, "p1"), builtin("free_poisson", 32, "p2")};
    auto fp = two_circulars();
    Word hhs = fp->parse_word("c1.c2.c2*.c1*");
    auto power = [&](int k) {
        Word w;
        for (int i = 0; i < k; ++i) w.insert(w.end(), hhs.begin(), hhs.end());
        return w;
    };
    const std::vector<std::tuple<int, int, long>> want{{1, 1, 3}, {1, 2, 20}, {2, 2, 150}};
    for (const auto& [p, q, v] : want) {
        r.eq("phi2" + shape_text(p, q) + "(hh*) by the k-alternating sum", Rational(v),
             product_free_moments(2, poissons, p, q));
        r.eq("phi2" + shape_text(p, q) + "(hh*) by the word engine", Rational(v), fp->phi2(power(p), power(q)));
    }
    for (int n = 1; n <= 4; ++n)
        r.eq("kappa_" + std::to_string(n) + "(hh*) = Catalan(" + std::to_string(n) + ")", catalan(n),
             products_as_arguments_first(std::vector<Word>(static_cast<std::size_t>(n), hhs), *fp));
}

// ---- 6 ---------------------------------------------------------------------

void mt1(Recorder& r) {
    const std::vector<std::pair<std::string, std::string>> pairs{
        {"circular", "free_poisson"}, {"haar_unitary", "semicircular"}, {"circular_product", "free_poisson"}};
    for (const auto& [a, b] : pairs) {
        auto rep = check_mt1(builtin(a), builtin(b), 6);
        std::string summary = std::to_string(rep.cumulants) + " cumulants, " + std::to_string(rep.terms) +
                              " terms, " + std::to_string(rep.lemma_checks) + " lemma checks";
        r.holds("MT1 for r = " + a + ", b = " + b + ", order 6", "all non-alternating cumulants vanish",
                rep.ok ? "" : rep.violations.front(), summary);
    }
}

// ---- 7 ---------------------------------------------------------------------

std::string signs_text(const std::vector<int>& l, const std::vector<int>& rr) {
    std::string s = "(";
    for (int x : l) s += x > 0 ? "+" : "-";
    s += "|";
    for (int x : rr) s += x > 0 ? "+" : "-";
    return s + ")";
}

void haar_powers(Recorder& r) {
    for (int p = 1; p <= 3; ++p)
        for (int m = 1; m <= 3; ++m)
            for (int n = 1; n <= 3; ++n) {
                std::vector<int> l(static_cast<std::size_t>(m), 1), rr(static_cast<std::size_t>(n), -1);
                r.eq("kappa_" + shape_text(m, n) + "(u^" + std::to_string(p) + ", ..., u^-" + std::to_string(p) + ")",
                     Rational((p - 1) * n * (m == n ? 1 : 0)), haar_power_cumulant(p, l, rr));
            }
    std::mt19937 rng(7);
    for (int trial = 0; trial < 3; ++trial) {
        int m = 1 + static_cast<int>(rng() % 3);
        int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(4 - m));
        std::vector<int> l, rr;
        for (int i = 0; i < m; ++i) l.push_back(rng() % 2 ? 1 : -1);
        for (int i = 0; i < n; ++i) rr.push_back(rng() % 2 ? 1 : -1);
        Rational k1 = haar_power_cumulant(1, l, rr), k2 = haar_power_cumulant(2, l, rr);
        for (int p = 3; p <= 4; ++p) {
            Rational kp = haar_power_cumulant(p, l, rr);
            r.eq("linear law in p for signs " + signs_text(l, rr) + ", p = " + std::to_string(p),
                 Rational(p) * (k2 - k1) + (2 * k1 - k2), kp);
            r.eq("products as arguments for signs " + signs_text(l, rr) + ", p = " + std::to_string(p), kp,
                 haar_power_cumulant_paa(p, l, rr));
        }
    }
}

// ---- 8 ---------------------------------------------------------------------

ModelPtr hh_star_table(int order) {
    DeterminingSequence beta = make_determining(order);
    for (int n = 1; n <= order; ++n) beta.first[static_cast<std::size_t>(n)] = 1;
    auto sq = square_cumulants(beta);
    SequenceModel::Data data;
    data.first = sq.first;
    for (int p = 1; p <= order; ++p)
        for (int q = 1; p + q <= order; ++q)
            data.second[{p, q}] = sq.second[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
    return std::make_shared<SequenceModel>("hh*", "a", std::move(data), false, order);
}

void conjugation(Recorder& r) {
    for (const auto& [name, a] : std::vector<std::pair<std::string, ModelPtr>>{
             {"semicircular", builtin("semicircular")}, {"hh* table", hh_star_table(16)}}) {
        auto t = conjugation_by_circular(a, 5);
        for (int p = 1; p <= 4; ++p)
            for (int q = 1; p + q <= 5; ++q) {
                Word wp(static_cast<std::size_t>(p), 0), wq(static_cast<std::size_t>(q), 0);
                r.eq("kappa_" + shape_text(p, q) + "(cac*) = phi2(a^p, a^q), a = " + name, a->phi2(wp, wq),
                     t.second[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)]);
            }
        r.holds("conjugation table self-check, a = " + name, "matches", t.matches ? "" : t.mismatches.front(),
                "matches");
    }
    auto fp = std::make_shared<FreeProduct>(std::vector<ModelPtr>{builtin("haar_unitary"), builtin("semicircular")});
    std::vector<Word> left{fp->parse_word("u.s.u*")}, right{fp->parse_word("s")};
    Rational k11 = products_as_arguments_second(left, right, *fp);
    r.eq("kappa_(1,1)(usu*, s)", Rational(1), k11);
    r.eq("kappa_(1,1)(usu*, s) = kappa_2(u,u*) phi2(s,s)",
         fp->kappa(fp->parse_word("u.u*")) * fp->phi2(fp->parse_word("s"), fp->parse_word("s")), k11);
}

// ---- 9 ---------------------------------------------------------------------

void h3(Recorder& r) {
    auto fp = std::make_shared<FreeProduct>(std::vector<ModelPtr>{
        builtin("circular", 32, "c1"), builtin("circular", 32, "c2"), builtin("circular", 32, "c3")});
    Word h = fp->parse_word("c1.c2.c3"), hs = fp->parse_word("c3*.c2*.c1*");
    auto alt = [&](int n) {
        std::vector<Word> g;
        for (int i = 0; i < n; ++i) {
            g.push_back(h);
            g.push_back(hs);
        }
        return g;
    };
    for (int n = 1; n <= 4; ++n) {
        Rational k = products_as_arguments_first(alt(n), *fp);
        r.eq("kappa_" + std::to_string(2 * n) + "(h3, h3*, ...) = |NC2(" + std::to_string(2 * n) + ")|",
             Rational(nc_pairings(2 * n)), k);
        r.eq("kappa_" + std::to_string(2 * n) + "(h3, h3*, ...) = Catalan(" + std::to_string(n) + ")", catalan(n), k);
    }
    for (int p = 1; p <= 3; ++p)
        for (int q = 1; p + q <= 4; ++q) {
            long pairings = static_cast<long>(enumerate_annular_pairings({2 * p, 2 * q}).size());
            r.eq("kappa_" + shape_text(2 * p, 2 * q) + "(h3, h3*, ...) = |NC2" + shape_text(2 * p, 2 * q) + "|/2",
                 frac(pairings, 2), products_as_arguments_second(alt(p), alt(q), *fp));
        }
}

// ---- 10 --------------------------------------------------------------------

void residual1(Recorder& r, const std::string& label, const seq::Seq& k, const seq::Seq& b, int cutoff) {
    auto res = check_first_order_relation(k, b, cutoff);
    r.holds(label, "zero to degree " + std::to_string(cutoff), res.is_zero() ? "" : res.to_string(), "zero");
}

void residual2(Recorder& r, const std::string& label, const seq::Seq& k, const seq::Grid& k2, const seq::Grid& b2,
               int cutoff) {
    auto res = check_second_order_relation(k, k2, b2, cutoff);
    r.holds(label, "zero for p, q <= " + std::to_string(cutoff), res.is_zero() ? "" : res.to_string(), "zero");
}

void series(Recorder& r) {
    const int cut = 8;
    const std::size_t len = 2 * cut + 2;

    // Semicircular: B = 1, C(z) = 1/(z-1), B(z,w) = 1/(1-zw)^2 and
    // C(z,w) = 1/(zw-z-w)^2.
    seq::Seq beta(len), kappa(len, Rational(1));
    beta[1] = 1;
    seq::Grid beta2 = seq::make_grid(cut, cut), kappa2 = seq::make_grid(cut, cut);
    for (int p = 1; p <= cut; ++p) {
        beta2[static_cast<std::size_t>(p)][static_cast<std::size_t>(p)] = p;
        for (int q = 1; q <= cut; ++q)
            kappa2[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = Rational(p) * binomial(p + q - 1, p);
    }
    // The closed forms against the sequence transform.
    DeterminingSequence d = make_determining(2 * cut);
    d.first = seq::Seq(beta.begin(), beta.begin() + 2 * cut + 1);
    for (int p = 1; p <= cut; ++p) d.second[static_cast<std::size_t>(p)][static_cast<std::size_t>(p)] = p;
    auto sq = square_cumulants(d);
    std::string fail;
    for (int p = 1; p <= cut && fail.empty(); ++p)
        for (int q = 1; q <= cut; ++q)
            if (sq.second[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] !=
                kappa2[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)])
                fail = "kappa_" + shape_text(p, q) + " differs";
    r.holds("semicircular: coefficients of 1/(zw-z-w)^2 equal the square transform of B(z,w) = 1/(1-zw)^2",
            "equal for p, q <= 8", fail, "equal");
    residual1(r, "semicircular: first-order relation", kappa, beta, cut);
    residual2(r, "semicircular: second-order relation", kappa, kappa2, beta2, cut);

    // Circular: kappa_n(cc*) = 1, kappa_{p,q}(cc*) = 0, beta_1 = 1 only.
    seq::Grid zero = seq::make_grid(cut, cut);
    residual1(r, "circular: first-order relation", kappa, beta, cut);
    residual2(r, "circular: second-order relation", kappa, zero, zero, cut);

    // Haar: uu* = 1; beta from the inverse square transform.
    SquareTables unit;
    unit.order = 2 * cut;
    unit.first = seq::Seq(len);
    unit.first[1] = 1;
    unit.second = seq::make_grid(2 * cut, 2 * cut);
    auto hb = determining_from_square(unit);
    {
        std::string bad;
        for (int n = 1; n <= 2 * cut && bad.empty(); ++n)
            if (hb.first[static_cast<std::size_t>(n)] != catalan(n - 1) * (n % 2 ? 1 : -1))
                bad = "beta_" + std::to_string(n) + " = " + to_text(hb.first[static_cast<std::size_t>(n)]);
        r.holds("Haar: beta_n = (-1)^(n-1) Catalan(n-1)", "signed Catalan numbers", bad, "n <= 16");
    }
    seq::Seq hk(len);
    hk[1] = 1;
    seq::Grid hb2 = seq::make_grid(cut, cut);
    for (int p = 1; p <= cut; ++p)
        for (int q = 1; q <= cut; ++q)
            hb2[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] =
                hb.second[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
    residual1(r, "Haar: first-order relation", hk, hb.first, cut);
    residual2(r, "Haar: second-order relation", hk, zero, hb2, cut);

    // hh*: moments against cumulants.
    const int mc = 5;
    auto table = hh_star_table(2 * mc + 2);
    const auto& data = std::static_pointer_cast<const SequenceModel>(table)->data();
    seq::Seq kn(data.first.begin(), data.first.begin() + 2 * mc + 2);
    seq::Seq mn = seq::moments_from_cumulants(kn);
    seq::Grid k2 = seq::make_grid(mc, mc);
    for (int p = 1; p <= mc; ++p)
        for (int q = 1; q <= mc; ++q) k2[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = data.second.at({p, q});
    seq::Grid m2 = seq::phi2_from_kappa2(kn, mn, k2);
    residual1(r, "hh*: G and R, first order", mn, kn, mc);
    residual2(r, "hh*: G and R, second order", mn, m2, k2, mc);
}

// ---- 11 --------------------------------------------------------------------

void hermitization_checks(Recorder& r) {
    const int order = 6;
    for (const char* name : {"circular", "haar_unitary"}) {
        auto a = builtin(name);
        auto herm = hermitization(a, 2 * order);
        auto da = determining_of_r_diagonal(*a, order);
        auto dA = determining_of_even(*herm, order);
        for (int n = 1; n <= order; ++n)
            r.eq(std::string(name) + ": beta_" + std::to_string(n) + " of A and a",
                 da.first[static_cast<std::size_t>(n)], dA.first[static_cast<std::size_t>(n)]);
        for (int p = 1; p < order; ++p)
            for (int q = 1; p + q <= order; ++q)
                r.eq(std::string(name) + ": beta_" + shape_text(p, q) + " of A and a",
                     da.second[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)],
                     dA.second[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)]);

        int al = a->alphabet()[0].name == a->alphabet()[0].star ? 1 : 0;
        int as = a->star_of(al);
        for (int p = 1; p <= 3; ++p)
            for (int q = 1; q <= 3; ++q) {
                Word w1, w2;
                for (int i = 0; i < 2 * p; ++i) w1.push_back(i % 2 ? as : al);
                for (int i = 0; i < 2 * q; ++i) w2.push_back(i % 2 ? as : al);
                Shape s{2 * p, 2 * q};
                Word all(static_cast<std::size_t>(s.total()), 0);
                Rational rhs = herm->kappa2(Word(static_cast<std::size_t>(2 * p), 0), Word(static_cast<std::size_t>(2 * q), 0));
                for (const auto& pi : snc_plus_all(s)) rhs += kappa_multiplicative(pi, all, *herm);
                r.eq(std::string(name) + ": kappa_" + shape_text(2 * p, 2 * q) +
                         " of a = that of A plus the all-through parity-preserving sum",
                     a->kappa2(w1, w2), rhs);
            }
    }
}

struct Entry {
    const char* title;
    void (*run)(Recorder&);
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> e{
        {"counting", counting},
        {"oracle equivalence", oracles},
        {"bijections", bijections},
        {"squares of circular and semicircular", squares},
        {"second-order moments of hh*", hh_star},
        {"MT1 checker", mt1},
        {"powers of a Haar unitary", haar_powers},
        {"conjugation by a circular", conjugation},
        {"three circulars", h3},
        {"generating series", series},
        {"hermitization", hermitization_checks},
    };
    return e;
}

}  // namespace

bool Criterion::pass() const {
    if (!error.empty() || checks.empty()) return false;
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

int criterion_count() { return static_cast<int>(entries().size()); }

Criterion run_criterion(int id) {
    if (id < 1 || id > criterion_count()) throw Error("no acceptance criterion " + std::to_string(id));
    const Entry& e = entries()[static_cast<std::size_t>(id - 1)];
    Criterion c;
    c.id = id;
    c.title = e.title;
    auto t0 = std::chrono::steady_clock::now();
    Recorder r(c);
    try {
        e.run(r);
    } catch (const std::exception& ex) {
        c.error = ex.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return c;
}

std::string summary_line(const Criterion& c, bool with_time) {
    long failed = std::count_if(c.checks.begin(), c.checks.end(), [](const Check& k) { return !k.pass; });
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.1f s", c.seconds);
    std::ostringstream os;
    os << "criterion " << c.id << " (" << c.title << "): " << (c.pass() ? "PASS" : "FAIL") << ", " << c.checks.size()
       << " checks";
    if (failed) os << ", " << failed << " failed";
    if (!c.error.empty()) os << ", error: " << c.error;
    if (with_time) os << ", " << secs;
    return os.str();
}

nlohmann::json to_json(const Criterion& c) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& k : c.checks)
        checks.push_back({{"label", k.label}, {"expected", k.expected}, {"actual", k.actual}, {"pass", k.pass}});
    nlohmann::json j{{"id", c.id}, {"title", c.title}, {"pass", c.pass()}, {"checks", checks}};
    if (!c.error.empty()) j["error"] = c.error;
    return j;
}

}  // namespace sofree::acceptance
