#include "sofree/cumulants.hpp"

#include <algorithm>
#include <numeric>

#include "sofree/annular.hpp"

namespace sofree {

namespace {

Word restrict_word(const Word& w, const Cycle& c) {
    Word out;
    out.reserve(c.size());
    for (int x : c) out.push_back(w[static_cast<std::size_t>(x)]);
    return out;
}

std::string cycle_args(const Cycle& c) {
    std::string s;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (k) s += ',';
        s += std::to_string(c[k] + 1);
    }
    return s;
}

// Cycles of x grouped by block; each group sorted by cycle minimum.
std::vector<std::vector<Cycle>> cycles_by_block(const PartitionedPermutation& x) {
    const auto& u = x.partition();
    std::vector<std::vector<Cycle>> out(static_cast<std::size_t>(u.num_blocks()));
    for (auto& c : x.permutation().cycles()) out[static_cast<std::size_t>(u.block_of(c[0]))].push_back(c);
    for (const auto& b : out)
        if (b.size() > 2) throw Error("a block joins more than two cycles; only one or two are allowed");
    return out;
}

}  // namespace

Rational kappa_multiplicative(const PartitionedPermutation& x, const Word& w, const Model& m) {
    if (static_cast<int>(w.size()) != x.permutation().size()) throw Error("kappa_multiplicative: size mismatch");
    Rational out(1);
    for (const auto& block : cycles_by_block(x)) {
        const Rational& v = block.size() == 1 ? m.kappa(restrict_word(w, block[0]))
                                              : m.kappa2(restrict_word(w, block[0]), restrict_word(w, block[1]));
        out *= v;
        if (sgn(out) == 0) break;
    }
    return out;
}

Rational kappa_multiplicative(const Permutation& p, const Word& w, const Model& m) {
    return engine::kappa_of_perm(m, w, p.images());
}

std::string kappa_expression(const PartitionedPermutation& x) {
    std::string out;
    for (const auto& block : cycles_by_block(x)) {
        if (!out.empty()) out += '*';
        if (block.size() == 1) {
            out += "k" + std::to_string(block[0].size()) + "(" + cycle_args(block[0]) + ")";
        } else {
            out += "k" + std::to_string(block[0].size()) + "," + std::to_string(block[1].size()) + "(" +
                   cycle_args(block[0]) + "|" + cycle_args(block[1]) + ")";
        }
    }
    return out;
}

Rational phi_from_kappa(const Word& w, const Model& m) {
    if (static_cast<int>(w.size()) > m.truncation()) throw Error("word exceeds model truncation");
    return engine::disc(m, w);
}

Rational phi2_from_kappa(const Word& w1, const Word& w2, const Model& m) {
    if (static_cast<int>(w1.size() + w2.size()) > m.truncation()) throw Error("words exceed model truncation");
    return engine::annulus(m, w1, w2);
}

std::vector<Word> words_up_to(const Model& m, int order) {
    std::vector<Word> out;
    std::vector<Word> layer{Word{}};
    for (int len = 1; len <= order; ++len) {
        std::vector<Word> next;
        for (const auto& w : layer)
            for (int l = 0; l < m.num_letters(); ++l) {
                Word x = w;
                x.push_back(l);
                next.push_back(std::move(x));
            }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

std::vector<std::pair<Word, Word>> word_pairs_up_to(const Model& m, int order) {
    auto words = words_up_to(m, order - 1);
    std::vector<std::pair<Word, Word>> out;
    for (int total = 2; total <= order; ++total)
        for (const auto& a : words)
            for (const auto& b : words)
                if (static_cast<int>(a.size() + b.size()) == total) out.emplace_back(a, b);
    return out;
}

Table1 kappa_from_phi(const Model& m, int order) {
    Table1 t;
    for (const auto& w : words_up_to(m, order)) t[w] = m.kappa(w);
    return t;
}

Table2 kappa2_from_phi(const Model& m, int order) {
    Table2 t;
    for (const auto& [a, b] : word_pairs_up_to(m, order)) t[{a, b}] = m.kappa2(a, b);
    return t;
}

Table1 phi_table(const Model& m, int order) {
    Table1 t;
    for (const auto& w : words_up_to(m, order)) t[w] = m.phi(w);
    return t;
}

Table2 phi2_table(const Model& m, int order) {
    Table2 t;
    for (const auto& [a, b] : word_pairs_up_to(m, order)) t[{a, b}] = m.phi2(a, b);
    return t;
}

std::vector<int> group_ends(const std::vector<int>& sizes) {
    std::vector<int> ends;
    int pos = 0;
    for (int s : sizes) {
        if (s < 1) throw Error("empty group");
        pos += s;
        ends.push_back(pos - 1);
    }
    return ends;
}

namespace {

std::vector<int> sizes_of(const std::vector<Word>& groups) {
    std::vector<int> s;
    for (const auto& g : groups) s.push_back(static_cast<int>(g.size()));
    return s;
}

Word concat(const std::vector<Word>& groups) {
    Word w;
    for (const auto& g : groups) w.insert(w.end(), g.begin(), g.end());
    return w;
}

SetPartition interval_partition(const std::vector<int>& sizes) {
    std::vector<int> lab;
    for (std::size_t g = 0; g < sizes.size(); ++g)
        for (int k = 0; k < sizes[g]; ++k) lab.push_back(static_cast<int>(g));
    return SetPartition(lab);
}

bool selected(const Permutation& p, const std::vector<int>& sizes, PaaForm form) {
    int n = p.size();
    auto gamma = Permutation::full_cycle(n);
    auto ends = group_ends(sizes);
    switch (form) {
        case PaaForm::separation:
            return separates_points(kreweras(p, gamma), ends);
        case PaaForm::join:
            return partition_join(SetPartition::of_cycles(p), interval_partition(sizes)).num_blocks() == 1;
        case PaaForm::o_form: {
            std::vector<int> starts;
            for (int e : ends) starts.push_back(gamma(e));
            return separates_points(compose(gamma, p.inverse()), starts);
        }
    }
    return false;
}

}  // namespace

std::vector<Permutation> paa_first_terms(const std::vector<int>& group_sizes, PaaForm form) {
    int n = std::accumulate(group_sizes.begin(), group_sizes.end(), 0);
    std::vector<Permutation> out;
    for (const auto& p : enumerate_nc(n))
        if (selected(p, group_sizes, form)) out.push_back(p);
    return out;
}

Rational products_as_arguments_first(const std::vector<Word>& groups, const Model& m, PaaForm form) {
    Word w = concat(groups);
    if (w.empty()) throw Error("products as arguments: no letters");
    if (static_cast<int>(w.size()) > m.truncation()) throw Error("words exceed model truncation");
    if (form == PaaForm::separation) {
        auto ends = group_ends(sizes_of(groups));
        engine::Options opt;
        opt.kr_separates = &ends;
        return engine::disc(m, w, opt);
    }
    Rational total;
    for (const auto& p : paa_first_terms(sizes_of(groups), form)) total += engine::kappa_of_perm(m, w, p.images());
    return total;
}

Rational products_as_arguments_second(const std::vector<Word>& left, const std::vector<Word>& right, const Model& m,
                                      const engine::Observer* observer) {
    Word a = concat(left), b = concat(right);
    if (a.empty() || b.empty()) throw Error("products as arguments: empty side");
    if (static_cast<int>(a.size() + b.size()) > m.truncation()) throw Error("words exceed model truncation");
    auto ends = group_ends(sizes_of(left));
    for (int e : group_ends(sizes_of(right))) ends.push_back(e + static_cast<int>(a.size()));
    engine::Options opt;
    opt.kr_separates = &ends;
    opt.observer = observer;
    return engine::annulus(m, a, b, opt);
}

std::vector<PartitionedPermutation> paa_second_terms(const std::vector<int>& left_sizes,
                                                     const std::vector<int>& right_sizes) {
    Shape s{std::accumulate(left_sizes.begin(), left_sizes.end(), 0),
            std::accumulate(right_sizes.begin(), right_sizes.end(), 0)};
    auto ends = group_ends(left_sizes);
    for (int e : group_ends(right_sizes)) ends.push_back(e + s.m);
    auto gamma = gamma_of(s);
    std::vector<PartitionedPermutation> out;
    for (auto& x : enumerate_ps_nc(s))
        if (separates_points(kreweras(x.permutation(), gamma), ends)) out.push_back(std::move(x));
    return out;
}

}  // namespace sofree
