#include "sofree/special.hpp"

#include <algorithm>

#include "sofree/annular.hpp"
#include "sofree/cumulants.hpp"
#include "sofree/dist.hpp"
#include "sofree/engines.hpp"

namespace sofree {

namespace {

bool alternates(const Word& w) {
    if (w.size() % 2) return false;
    for (std::size_t k = 0; k < w.size(); ++k)
        if (w[k] == w[(k + 1) % w.size()]) return false;
    return true;
}

int pick_letter(const Model& m, std::string_view letter) {
    if (!letter.empty()) {
        int l = m.letter_index(letter);
        if (m.star_of(l) == l) throw Error("letter '" + std::string(letter) + "' is self-adjoint");
        return l;
    }
    for (int l = 0; l < m.num_letters(); ++l)
        if (m.star_of(l) != l) return l;
    throw Error("model has no letter with a distinct adjoint");
}

// Words of length n over {a, b} in binary order; a for bit 0.
std::vector<Word> two_letter_words(int a, int b, int n) {
    std::vector<Word> out;
    for (long mask = 0; mask < (1L << n); ++mask) {
        Word w(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) w[static_cast<std::size_t>(k)] = (mask >> (n - 1 - k)) & 1 ? b : a;
        out.push_back(std::move(w));
    }
    return out;
}

Word alternating(int a, int as, int len) {
    Word w;
    for (int k = 0; k < len; ++k) w.push_back(k % 2 ? as : a);
    return w;
}

std::string power_text(const char* f, int p) { return std::string(f) + "(x^" + std::to_string(p) + ")"; }

int self_adjoint_letter(const Model& m) {
    if (m.num_letters() != 1 || m.star_of(0) != 0) throw Error("expected a single self-adjoint letter");
    return 0;
}

}  // namespace

Verdict verify_even(const Model& m, int order) {
    self_adjoint_letter(m);
    for (int n = 1; n <= order; n += 2) {
        const Rational& v = m.phi(Word(static_cast<std::size_t>(n), 0));
        if (sgn(v) != 0) return {false, power_text("phi", n) + " = " + to_text(v)};
    }
    for (int total = 2; total <= order; ++total)
        for (int p = 1; p < total; ++p) {
            int q = total - p;
            if (total % 2 == 0) continue;
            // Parity of the total: phi2(s, s) = 1 for the semicircle, kappa_1,1(A, A) = -1 for a hermitization.
            const Rational& v = m.kappa2(Word(static_cast<std::size_t>(p), 0), Word(static_cast<std::size_t>(q), 0));
            if (sgn(v) != 0)
                return {false, "kappa_" + std::to_string(p) + "," + std::to_string(q) + " = " + to_text(v)};
        }
    return {};
}

Verdict verify_r_diagonal(const Model& m, int order, std::string_view letter) {
    int a = pick_letter(m, letter), as = m.star_of(a);
    std::vector<std::vector<Word>> words(static_cast<std::size_t>(order + 1));
    for (int n = 1; n <= order; ++n) {
        words[static_cast<std::size_t>(n)] = two_letter_words(a, as, n);
        for (const auto& w : words[static_cast<std::size_t>(n)]) {
            if (alternates(w)) continue;
            const Rational& v = m.kappa(w);
            if (sgn(v) != 0) return {false, "kappa(" + m.word_text(w) + ") = " + to_text(v)};
        }
    }
    for (int total = 2; total <= order; ++total)
        for (int p = 1; p < total; ++p)
            for (const auto& w1 : words[static_cast<std::size_t>(p)])
                for (const auto& w2 : words[static_cast<std::size_t>(total - p)]) {
                    if (alternates(w1) && alternates(w2)) continue;
                    const Rational& v = m.kappa2(w1, w2);
                    if (sgn(v) != 0)
                        return {false, "kappa2(" + m.word_text(w1) + " | " + m.word_text(w2) + ") = " + to_text(v)};
                }
    return {};
}

DeterminingSequence make_determining(int order) {
    DeterminingSequence d;
    d.order = order;
    d.first.assign(static_cast<std::size_t>(order + 1), Rational(0));
    d.second = seq::make_grid(order, order);
    return d;
}

DeterminingSequence determining_of_r_diagonal(const Model& m, int order, std::string_view letter) {
    // Full verification at 2*order would dwarf the computation itself; the
    // vanishing pattern is checked up to length 6.
    auto v = verify_r_diagonal(m, std::min(2 * order, 6), letter);
    if (!v.ok) throw Error("not R-diagonal: " + v.violation);
    int a = pick_letter(m, letter), as = m.star_of(a);
    auto d = make_determining(order);
    for (int n = 1; n <= order; ++n) d.first[static_cast<std::size_t>(n)] = m.kappa(alternating(a, as, 2 * n));
    for (int p = 1; p < order; ++p)
        for (int q = 1; p + q <= order; ++q)
            d.second[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] =
                m.kappa2(alternating(a, as, 2 * p), alternating(a, as, 2 * q));
    return d;
}

DeterminingSequence determining_of_even(const Model& m, int order) {
    auto v = verify_even(m, 2 * order);
    if (!v.ok) throw Error("not even: " + v.violation);
    auto d = make_determining(order);
    for (int n = 1; n <= order; ++n) d.first[static_cast<std::size_t>(n)] = m.kappa(Word(static_cast<std::size_t>(2 * n), 0));
    for (int p = 1; p < order; ++p)
        for (int q = 1; p + q <= order; ++q) {
            Shape s{2 * p, 2 * q};
            Rational plus;
            engine::Observer obs = [&](const std::vector<int>& img, const std::pair<int, int>*, const Rational& term) {
                if (is_plus_all(Permutation(img), s)) plus += term;
            };
            engine::Options opt;
            opt.snc_only = true;
            opt.observer = &obs;
            Word w1(static_cast<std::size_t>(2 * p), 0), w2(static_cast<std::size_t>(2 * q), 0);
            engine::annulus(m, w1, w2, opt);
            d.second[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = m.kappa2(w1, w2) + plus;
        }
    return d;
}

SquareTables square_cumulants(const DeterminingSequence& beta) {
    SquareTables t;
    t.order = beta.order;
    t.first = seq::moments_from_cumulants(beta.first);
    t.second = seq::phi2_from_kappa2(beta.first, t.first, beta.second, beta.order);
    return t;
}

DeterminingSequence determining_from_square(const SquareTables& t) {
    DeterminingSequence d;
    d.order = t.order;
    seq::Seq k = t.first;
    k[0] = 1;
    d.first = seq::cumulants_from_moments(k);
    d.second = seq::kappa2_from_phi2(d.first, k, t.second, t.order);
    return d;
}

// ---- MT1 ------------------------------------------------------------------

Mt1Report check_mt1(const ModelPtr& r, const ModelPtr& b, int order, std::string_view r_letter) {
    auto v = verify_r_diagonal(*r, std::min(order, 6), r_letter);
    if (!v.ok) throw Error("precondition failed, r is not R-diagonal: " + v.violation);
    auto joint = std::make_shared<FreeProduct>(std::vector<ModelPtr>{r, b});
    const int a = joint->letter_index(r->alphabet()[static_cast<std::size_t>(pick_letter(*r, r_letter))].name);
    const int as = joint->star_of(a);
    const int bl = r->num_letters(), bs = joint->star_of(bl);
    const Word plus{a, bl}, minus{bs, as};

    Mt1Report rep;
    auto expand = [&](const std::vector<int>& eps) {
        Word w;
        for (int e : eps) {
            const Word& g = e > 0 ? plus : minus;
            w.insert(w.end(), g.begin(), g.end());
        }
        return w;
    };
    auto eps_text = [](const std::vector<int>& e) {
        std::string s;
        for (int x : e) s += x > 0 ? "x" : "x*";
        return s;
    };
    // Lemma: for a starred group i, pi(2i) = gamma(2i) and the next group is unstarred.
    auto lemma = [&](const std::vector<int>& img, const std::vector<int>& eps, int offset, int groups,
                     const std::string& where) {
        for (int g = 0; g < groups; ++g) {
            if (eps[static_cast<std::size_t>(offset + g)] > 0) continue;
            ++rep.lemma_checks;
            int pt = 2 * (offset + g) + 1;
            int next_pt = 2 * offset + (2 * g + 2) % (2 * groups);
            int next_group = offset + (g + 1) % groups;
            if (img[static_cast<std::size_t>(pt)] != next_pt || eps[static_cast<std::size_t>(next_group)] < 0) {
                rep.ok = false;
                if (rep.violations.size() < 20)
                    rep.violations.push_back("lemma fails in " + where + " at " + Permutation(img).to_string());
            }
        }
    };

    for (int n = 1; n <= order; ++n)
        for (long mask = 0; mask < (1L << n); ++mask) {
            std::vector<int> eps;
            for (int k = 0; k < n; ++k) eps.push_back((mask >> (n - 1 - k)) & 1 ? -1 : 1);
            Word w = expand(eps);
            std::vector<int> ends;
            for (int g = 0; g < n; ++g) ends.push_back(2 * g + 1);
            std::string where = "kappa(" + eps_text(eps) + ")";
            engine::Observer obs = [&](const std::vector<int>& img, const std::pair<int, int>*, const Rational&) {
                ++rep.terms;
                lemma(img, eps, 0, n, where);
            };
            engine::Options opt;
            opt.kr_separates = &ends;
            opt.observer = &obs;
            Rational val = engine::disc(*joint, w, opt);
            ++rep.cumulants;
            Word pattern(eps.begin(), eps.end());
            if (sgn(val) != 0 && !alternates(pattern)) {
                rep.ok = false;
                rep.violations.push_back(where + " = " + to_text(val));
            }
        }
    for (int total = 2; total <= order; ++total)
        for (int p = 1; p < total; ++p) {
            int q = total - p;
            for (long mask = 0; mask < (1L << total); ++mask) {
                std::vector<int> eps;
                for (int k = 0; k < total; ++k) eps.push_back((mask >> (total - 1 - k)) & 1 ? -1 : 1);
                std::vector<int> e1(eps.begin(), eps.begin() + p), e2(eps.begin() + p, eps.end());
                Word w1 = expand(e1), w2 = expand(e2);
                std::vector<int> ends;
                for (int g = 0; g < total; ++g) ends.push_back(2 * g + 1);
                std::string where = "kappa2(" + eps_text(e1) + " | " + eps_text(e2) + ")";
                engine::Observer obs = [&](const std::vector<int>& img, const std::pair<int, int>*, const Rational&) {
                    ++rep.terms;
                    lemma(img, eps, 0, p, where);
                    lemma(img, eps, p, q, where);
                };
                engine::Options opt;
                opt.kr_separates = &ends;
                opt.observer = &obs;
                Rational val = engine::annulus(*joint, w1, w2, opt);
                ++rep.cumulants;
                Word p1(e1.begin(), e1.end()), p2(e2.begin(), e2.end());
                if (sgn(val) != 0 && !(alternates(p1) && alternates(p2))) {
                    rep.ok = false;
                    rep.violations.push_back(where + " = " + to_text(val));
                }
            }
        }
    return rep;
}

// ---- hermitization --------------------------------------------------------

ModelPtr hermitization(const ModelPtr& r, int order, std::string_view letter) {
    int a = pick_letter(*r, letter), as = r->star_of(a);
    SequenceModel::Data data;
    data.first.assign(static_cast<std::size_t>(order + 1), Rational(0));
    for (int n = 2; n <= order; n += 2) data.first[static_cast<std::size_t>(n)] = r->phi(alternating(a, as, n));
    for (int p = 1; p < order; ++p)
        for (int q = 1; p + q <= order; ++q) {
            Rational v;
            if (p % 2 == 0 && q % 2 == 0) v = r->phi2(alternating(a, as, p), alternating(a, as, q));
            data.second[{p, q}] = v;
        }
    return std::make_shared<SequenceModel>("hermitization", "A", std::move(data), true, order);
}

// ---- products of free variables -------------------------------------------

namespace {

void require_no_second_order(const std::vector<ModelPtr>& factors, int total) {
    for (const auto& f : factors) {
        if (f->second_order_zero(f->family_of(0))) continue;
        for (int t = 2; t <= std::min(total, f->truncation()); ++t)
            for (int r = 1; r < t; ++r) {
                const Rational& v = f->kappa2(Word(static_cast<std::size_t>(r), 0), Word(static_cast<std::size_t>(t - r), 0));
                if (sgn(v) != 0)
                    throw Error("factor '" + f->kind() + "' has a nonzero second-order cumulant at (" +
                                std::to_string(r) + "," + std::to_string(t - r) + ")");
            }
    }
}

Rational kreweras_sum(const std::vector<Permutation>& perms, int k, const std::vector<ModelPtr>& factors, Shape s) {
    auto g = gamma_of(s);
    Rational total;
    for (const auto& pi : perms) {
        Rational term(1);
        for (const auto& c : kreweras(pi, g).cycles()) {
            int f = c[0] % k;
            for (int x : c)
                if (x % k != f) throw Error("Kreweras complement is not k-preserving");
            const auto& fac = *factors[static_cast<std::size_t>(f)];
            term *= fac.kappa(Word(c.size(), 0));
            if (sgn(term) == 0) break;
        }
        total += term;
    }
    return total;
}

void check_factors(int k, const std::vector<ModelPtr>& factors, int p, int q) {
    if (k < 1 || static_cast<int>(factors.size()) != k) throw Error("need exactly k factor models");
    if (p < 1 || q < 1) throw Error("p and q must be positive");
    require_no_second_order(factors, k * (p + q));
}

}  // namespace

Rational product_free_moments(int k, const std::vector<ModelPtr>& factors, int p, int q) {
    check_factors(k, factors, p, q);
    return kreweras_sum(enumerate_snc_k_alt(Shape{p, q}, k), k, factors, Shape{k * p, k * q});
}

Rational product_free_cumulants(int k, const std::vector<ModelPtr>& factors, int p, int q) {
    check_factors(k, factors, p, q);
    return kreweras_sum(enumerate_snc_k_alt_eq(Shape{p, q}, k), k, factors, Shape{k * p, k * q});
}

// ---- conjugation ----------------------------------------------------------

ConjugationTable conjugation_by_circular(const ModelPtr& a, int order) {
    self_adjoint_letter(*a);
    std::string cname = "c";
    while (a->alphabet()[0].name == cname || a->alphabet()[0].family == cname) cname += "c";
    BuiltinSpec cs;
    cs.kind = "circular";
    cs.letter = cname;
    cs.truncation = 3 * order;
    auto joint = std::make_shared<FreeProduct>(std::vector<ModelPtr>{build(cs), a});
    const Word group{0, 2, 1};  // c a c*

    ConjugationTable t;
    t.order = order;
    t.first.assign(static_cast<std::size_t>(order + 1), Rational(0));
    t.second = seq::make_grid(order, order);
    for (int n = 1; n <= order; ++n) {
        std::vector<Word> groups(static_cast<std::size_t>(n), group);
        t.first[static_cast<std::size_t>(n)] = products_as_arguments_first(groups, *joint);
        const Rational& want = a->phi(Word(static_cast<std::size_t>(n), 0));
        if (t.first[static_cast<std::size_t>(n)] != want) {
            t.matches = false;
            t.mismatches.push_back("kappa_" + std::to_string(n) + "(cac*) != phi(a^" + std::to_string(n) + ")");
        }
    }
    for (int p = 1; p < order; ++p)
        for (int q = 1; p + q <= order; ++q) {
            std::vector<Word> left(static_cast<std::size_t>(p), group), right(static_cast<std::size_t>(q), group);
            Rational v = products_as_arguments_second(left, right, *joint);
            const Rational& want = a->phi2(Word(static_cast<std::size_t>(p), 0), Word(static_cast<std::size_t>(q), 0));
            if (v != want) {
                t.matches = false;
                t.mismatches.push_back("kappa_" + std::to_string(p) + "," + std::to_string(q) + "(cac*) != phi2");
            }
            t.second[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = std::move(v);
        }
    return t;
}

// ---- Haar powers ----------------------------------------------------------

Rational haar_power_cumulant(int p, const std::vector<int>& left_signs, const std::vector<int>& right_signs) {
    if (p < 1) throw Error("power must be positive");
    if (left_signs.empty()) throw Error("left side is empty");
    auto m = haar_exponents({p, -p}, static_cast<int>(left_signs.size() + right_signs.size()));
    int plus = m->letter_index("u^" + std::to_string(p)), minus = m->letter_index("u^" + std::to_string(-p));
    auto word = [&](const std::vector<int>& s) {
        Word w;
        for (int x : s) w.push_back(x > 0 ? plus : minus);
        return w;
    };
    if (right_signs.empty()) return m->kappa(word(left_signs));
    return m->kappa2(word(left_signs), word(right_signs));
}

Rational haar_power_cumulant_paa(int p, const std::vector<int>& left_signs, const std::vector<int>& right_signs) {
    auto m = builtin("haar_unitary", p * static_cast<int>(left_signs.size() + right_signs.size()));
    auto groups = [&](const std::vector<int>& s) {
        std::vector<Word> g;
        for (int x : s) g.emplace_back(static_cast<std::size_t>(p), x > 0 ? 0 : 1);
        return g;
    };
    if (right_signs.empty()) return products_as_arguments_first(groups(left_signs), *m);
    return products_as_arguments_second(groups(left_signs), groups(right_signs), *m);
}

HaarCTable haar_c_table(int order) {
    auto m = builtin("haar_unitary", 2 * order);
    HaarCTable t;
    t.c = seq::make_grid(order, order);
    for (int p = 1; p < order; ++p)
        for (int q = 1; p + q <= order; ++q) {
            Rational k = m->kappa2(alternating(0, 1, 2 * p), alternating(0, 1, 2 * q));
            Rational c = (p + q) % 2 ? Rational(-k) : k;
            if (sgn(c) <= 0) t.sign_pattern_ok = false;
            t.c[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] = c;
        }
    return t;
}

}  // namespace sofree
