#include "sofree/annular.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace sofree {

namespace {

using Labels = std::vector<int>;

// Every non-crossing partition of {0..L-1} in label form. A point either
// opens a block or joins an open one; joining closes every block opened
// after it, which is exactly what non-crossing forbids to reuse.
void nc_labels(int L, const std::function<void(const Labels&, int)>& f) {
    if (L == 0) {
        f({}, 0);
        return;
    }
    Labels lab(static_cast<std::size_t>(L), -1);
    std::vector<int> stack;
    int nblocks = 0;
    std::function<void(int)> rec = [&](int t) {
        if (t == L) {
            f(lab, nblocks);
            return;
        }
        // open a new block
        lab[static_cast<std::size_t>(t)] = nblocks;
        stack.push_back(nblocks++);
        rec(t + 1);
        stack.pop_back();
        --nblocks;
        // join an open block, closing everything above it
        std::vector<int> saved = stack;
        for (int d = static_cast<int>(saved.size()) - 1; d >= 0; --d) {
            lab[static_cast<std::size_t>(t)] = saved[static_cast<std::size_t>(d)];
            stack.assign(saved.begin(), saved.begin() + d + 1);
            rec(t + 1);
        }
        stack = saved;
    };
    rec(0);
}

// Images on `ground` points for the blocks `lab` over positions whose
// points are given by `pts` (a position may own several consecutive points).
void images_from_labels(const Labels& lab, int nblocks, const std::vector<std::vector<int>>& pts,
                        std::vector<int>& img) {
    std::vector<int> first(static_cast<std::size_t>(nblocks), -1), last(static_cast<std::size_t>(nblocks), -1);
    for (std::size_t t = 0; t < lab.size(); ++t) {
        int b = lab[t];
        for (int x : pts[t]) {
            if (first[static_cast<std::size_t>(b)] == -1) first[static_cast<std::size_t>(b)] = x;
            else img[static_cast<std::size_t>(last[static_cast<std::size_t>(b)])] = x;
            last[static_cast<std::size_t>(b)] = x;
        }
    }
    for (int b = 0; b < nblocks; ++b)
        img[static_cast<std::size_t>(last[static_cast<std::size_t>(b)])] = first[static_cast<std::size_t>(b)];
}

void require_cap(int size, int cap, const char* what) {
    if (size > cap)
        throw CapExceeded(std::string(what) + ": size " + std::to_string(size) + " exceeds cap " +
                          std::to_string(cap));
}

void require_shape(Shape s) {
    if (s.m < 1 || s.n < 1) throw Error("annulus sides must be positive");
}

bool on_outer(int x, Shape s) { return x < s.m; }

std::vector<Permutation> sorted(std::vector<Permutation> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

const Caps& default_caps() {
    static const Caps caps{};
    return caps;
}

Permutation gamma_of(Shape s) { return gamma_annulus(s.m, s.n); }

bool is_geodesic(const Permutation& p, const Permutation& gamma) {
    return p.length() + kreweras(p, gamma).length() == gamma.length();
}

bool is_noncrossing_disc(const Permutation& p) { return is_geodesic(p, Permutation::full_cycle(p.size())); }

Permutation kreweras(const Permutation& p, const Permutation& gamma) { return compose(p.inverse(), gamma); }
Permutation kreweras_disc(const Permutation& p) { return kreweras(p, Permutation::full_cycle(p.size())); }
Permutation kreweras(const Permutation& p, Shape s) { return kreweras(p, gamma_of(s)); }

void for_each_nc_on_frame(const std::vector<int>& frame, int ground,
                          const std::function<void(const std::vector<int>&)>& f) {
    std::vector<std::vector<int>> pts;
    for (int x : frame) pts.push_back({x});
    std::vector<int> img(static_cast<std::size_t>(ground));
    std::iota(img.begin(), img.end(), 0);
    nc_labels(static_cast<int>(frame.size()), [&](const Labels& lab, int nb) {
        images_from_labels(lab, nb, pts, img);
        f(img);
    });
}

std::vector<Permutation> enumerate_nc(int n, const Caps& caps) {
    if (n < 1) throw Error("enumerate_nc: n must be positive");
    require_cap(n, caps.disc, "enumerate_nc");
    std::vector<int> frame(static_cast<std::size_t>(n));
    std::iota(frame.begin(), frame.end(), 0);
    std::vector<Permutation> out;
    for_each_nc_on_frame(frame, n, [&](const std::vector<int>& img) { out.emplace_back(img); });
    return sorted(std::move(out));
}

bool is_through(const Cycle& c, Shape s) {
    bool outer = false, inner = false;
    for (int x : c) (on_outer(x, s) ? outer : inner) = true;
    return outer && inner;
}

AnnularClass classify_annular(const Permutation& p, Shape s) {
    require_shape(s);
    if (p.size() != s.total()) throw Error("classify_annular: size does not match shape");
    AnnularClass out;
    for (const auto& c : p.cycles())
        if (is_through(c, s)) out.through_cycles.push_back(c);
    auto g = gamma_of(s);
    int lhs = p.length() + kreweras(p, g).length();
    if (!out.through_cycles.empty() && lhs == g.length() + 2) out.tag = AnnularTag::annular_nc;
    else if (out.through_cycles.empty() && lhs == g.length()) out.tag = AnnularTag::disc_nc;
    return out;
}

bool is_annular_nc(const Permutation& p, Shape s) { return classify_annular(p, s).tag == AnnularTag::annular_nc; }

void for_each_snc(Shape s, const std::function<void(const Permutation&)>& f, const Caps& caps) {
    require_shape(s);
    require_cap(s.total(), caps.annulus, "enumerate_snc");
    const int N = s.total();
    auto g = gamma_of(s);
    std::vector<int> img(static_cast<std::size_t>(N));
    for (int i = 0; i < s.m; ++i) {
        for (int j = s.m; j < N; ++j) {
            // Frame of gamma~: i, j, gamma(j), ..., gamma^-1(j), gamma(i), ..., gamma^-1(i).
            // Positions 0 and 1 of the frame are merged since p(i) = j.
            std::vector<std::vector<int>> pts;
            pts.push_back({i, j});
            for (int x = g(j); x != j; x = g(x)) pts.push_back({x});
            for (int x = g(i); x != i; x = g(x)) pts.push_back({x});
            nc_labels(static_cast<int>(pts.size()), [&](const Labels& lab, int nb) {
                std::iota(img.begin(), img.end(), 0);
                images_from_labels(lab, nb, pts, img);
                // Canonical cut: i is the smallest outer point sent inward.
                for (int a = 0; a < i; ++a)
                    if (img[static_cast<std::size_t>(a)] >= s.m) return;
                Permutation p(img);
                if (p.length() + kreweras(p, g).length() != g.length() + 2) return;
                f(p);
            });
        }
    }
}

std::vector<Permutation> enumerate_snc(Shape s, const Caps& caps) {
    std::vector<Permutation> out;
    for_each_snc(s, [&](const Permutation& p) { out.push_back(p); }, caps);
    return sorted(std::move(out));
}

std::vector<Permutation> enumerate_snc_bruteforce(Shape s) {
    require_shape(s);
    if (s.total() > 9) throw CapExceeded("brute-force S_NC is limited to 9 points");
    std::vector<int> img(static_cast<std::size_t>(s.total()));
    std::iota(img.begin(), img.end(), 0);
    std::vector<Permutation> out;
    do {
        Permutation p(img);
        if (is_annular_nc(p, s)) out.push_back(p);
    } while (std::next_permutation(img.begin(), img.end()));
    return out;  // next_permutation already walks in lexicographic order
}

std::vector<Permutation> enumerate_annular_pairings(Shape s, const Caps& caps) {
    require_shape(s);
    if (s.m % 2 || s.n % 2) throw Error("annular pairings need both sides even");
    std::vector<Permutation> out;
    for_each_snc(s, [&](const Permutation& p) {
        for (int i = 0; i < p.size(); ++i)
            if (p(i) == i || p(p(i)) != i) return;
        out.push_back(p);
    }, caps);
    return sorted(std::move(out));
}

Permutation unfold(const Permutation& p, Shape s, int k) {
    require_shape(s);
    if (p.size() != s.total()) throw Error("unfold: size does not match shape");
    if (k < 0 || k >= p.size()) throw Error("unfold: point out of range");
    if (on_outer(k, s) == on_outer(p(k), s)) throw Error("unfold: k and p(k) lie on the same circle");
    auto g = gamma_of(s);
    int j = g.inverse()(p(k));
    auto t = Permutation::identity(s.total()).images();
    std::swap(t[static_cast<std::size_t>(k)], t[static_cast<std::size_t>(j)]);
    return compose(g, Permutation(t));
}

std::vector<PartitionedPermutation> enumerate_ps_nc_prime(Shape s, const Caps& caps) {
    require_shape(s);
    require_cap(s.total(), caps.psnc, "enumerate_ps_nc_prime");
    auto left = enumerate_nc(s.m, caps);
    auto right = enumerate_nc(s.n, caps);
    std::vector<PartitionedPermutation> out;
    for (const auto& a : left)
        for (const auto& b : right) {
            std::vector<int> img(a.images());
            for (int v : b.images()) img.push_back(v + s.m);
            Permutation pi(img);
            auto cyc = pi.cycles();
            std::vector<int> lab(static_cast<std::size_t>(pi.size()));
            for (std::size_t c = 0; c < cyc.size(); ++c)
                for (int x : cyc[c]) lab[static_cast<std::size_t>(x)] = static_cast<int>(c);
            for (std::size_t c1 = 0; c1 < cyc.size(); ++c1) {
                if (!on_outer(cyc[c1][0], s)) continue;
                for (std::size_t c2 = 0; c2 < cyc.size(); ++c2) {
                    if (on_outer(cyc[c2][0], s)) continue;
                    auto joined = lab;
                    for (int x : cyc[c2]) joined[static_cast<std::size_t>(x)] = static_cast<int>(c1);
                    out.emplace_back(SetPartition(joined), pi);
                }
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<PartitionedPermutation> enumerate_ps_nc(Shape s, const Caps& caps) {
    require_cap(s.total(), caps.psnc, "enumerate_ps_nc");
    std::vector<PartitionedPermutation> out;
    for (const auto& p : enumerate_snc(s, caps)) out.emplace_back(SetPartition::of_cycles(p), p);
    for (auto& x : enumerate_ps_nc_prime(s, caps)) out.push_back(std::move(x));
    return out;
}

bool is_even_cycles(const Permutation& p) {
    for (const auto& c : p.cycles())
        if (c.size() % 2) return false;
    return true;
}

const char* parity_name(Parity p) {
    switch (p) {
        case Parity::reversing: return "reversing";
        case Parity::preserving: return "preserving";
        case Parity::not_even: return "not-even";
        case Parity::not_annular: return "not-annular";
    }
    return "?";
}

Parity classify_parity(const Permutation& p, Shape s) {
    require_shape(s);
    if (s.m % 2 || s.n % 2) throw Error("classify_parity needs both sides even");
    if (p.size() != s.total()) return Parity::not_annular;
    if (classify_annular(p, s).tag == AnnularTag::not_noncrossing) return Parity::not_annular;
    if (!is_even_cycles(p)) return Parity::not_even;
    for (int k = 0; k < p.size(); ++k)
        if ((p(k) - k) % 2 == 0) return Parity::preserving;
    return Parity::reversing;
}

std::vector<Permutation> snc_all(Shape s, const Caps& caps) {
    std::vector<Permutation> out;
    for_each_snc(s, [&](const Permutation& p) {
        for (const auto& c : p.cycles())
            if (!is_through(c, s)) return;
        out.push_back(p);
    }, caps);
    return sorted(std::move(out));
}

bool is_plus_all(const Permutation& p, Shape s) {
    if (!is_even_cycles(p)) return false;
    for (const auto& c : p.cycles())
        if (!is_through(c, s)) return false;
    for (int k = 0; k < p.size(); ++k)
        if (on_outer(k, s) != on_outer(p(k), s) && (p(k) - k) % 2 != 0) return false;
    return true;
}

std::vector<Permutation> snc_plus_all(Shape s, const Caps& caps) {
    if (s.m % 2 || s.n % 2) throw Error("snc_plus_all needs both sides even");
    std::vector<Permutation> out;
    for_each_snc(s, [&](const Permutation& p) {
        if (is_plus_all(p, s)) out.push_back(p);
    }, caps);
    return sorted(std::move(out));
}

std::vector<int> odd_points(int size) {
    std::vector<int> out;
    for (int x = 0; x < size; x += 2) out.push_back(x);  // 1-based 1,3,5,...
    return out;
}

bool separates_odd(const Permutation& p, const Permutation& gamma) {
    return separates_points(compose(gamma, p.inverse()), odd_points(p.size()));
}

// 1-based helpers keep the doubling formulas readable.
namespace {

Permutation double_with(const Permutation& sigma, const Permutation& g2) {
    int n = sigma.size();
    std::vector<int> img(static_cast<std::size_t>(2 * n), -1);
    for (int k = 1; k <= n; ++k) {
        int two_k = 2 * k;
        int next = g2(two_k - 1) + 1;  // gamma(2k), 1-based
        img[static_cast<std::size_t>(two_k - 1)] = next - 1;
        img[static_cast<std::size_t>(next - 1)] = 2 * (sigma(k - 1) + 1) - 1;
    }
    return Permutation(img);
}

Permutation halve_with(const Permutation& pi) {
    int n = pi.size() / 2;
    std::vector<int> img(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        int v = pi(pi(2 * k - 1)) + 1;
        if (v % 2) throw Error("check map: pi^2(2k) is odd");
        img[static_cast<std::size_t>(k - 1)] = v / 2 - 1;
    }
    return Permutation(img);
}

}  // namespace

Permutation hat_double(const Permutation& sigma) {
    if (!is_noncrossing_disc(sigma)) throw Error("hat_double: input is not non-crossing");
    return double_with(sigma, Permutation::full_cycle(2 * sigma.size()));
}

Permutation undouble(const Permutation& pi_hat) {
    if (pi_hat.size() % 2) throw Error("undouble: odd size");
    return halve_with(pi_hat);
}

Permutation uncheck(const Permutation& sigma, Shape half) {
    require_shape(half);
    if (sigma.size() != half.total()) throw Error("uncheck: size does not match shape");
    return double_with(sigma, gamma_of({2 * half.m, 2 * half.n}));
}

Permutation check_map(const Permutation& pi, Shape doubled) {
    require_shape(doubled);
    if (doubled.m % 2 || doubled.n % 2) throw Error("check_map: sides must be even");
    if (pi.size() != doubled.total()) throw Error("check_map: size does not match shape");
    if (!is_annular_nc(pi, doubled)) throw Error("check_map: input is not in S_NC");
    if (classify_parity(pi, doubled) != Parity::reversing) throw Error("check_map: input is not parity reversing");
    if (!separates_odd(pi, gamma_of(doubled))) throw Error("check_map: gamma pi^-1 does not separate O");
    return halve_with(pi);
}

std::vector<int> double_set(const std::vector<int>& v, Shape half) {
    auto g2 = gamma_of({2 * half.m, 2 * half.n});
    std::vector<int> out;
    for (int k0 : v) {
        int e = 2 * (k0 + 1) - 1;  // 0-based index of 2k
        out.push_back(e);
        out.push_back(g2(e));
    }
    std::sort(out.begin(), out.end());
    return out;
}

PartitionedPermutation hat_partitioned(const PartitionedPermutation& x, Shape half) {
    require_shape(half);
    if (x.size() != half.total()) throw Error("hat_partitioned: size does not match shape");
    auto sigma_hat = uncheck(x.permutation(), half);
    std::vector<std::vector<int>> blocks;
    for (const auto& b : x.partition().blocks()) blocks.push_back(double_set(b, half));
    return {SetPartition::from_blocks(2 * half.total(), blocks), sigma_hat};
}

PartitionedPermutation unhat_partitioned(const PartitionedPermutation& y, Shape doubled) {
    require_shape(doubled);
    if (doubled.m % 2 || doubled.n % 2) throw Error("unhat_partitioned: sides must be even");
    auto sigma = halve_with(y.permutation());
    std::vector<int> lab(static_cast<std::size_t>(sigma.size()));
    for (int k = 0; k < sigma.size(); ++k) lab[static_cast<std::size_t>(k)] = y.partition().block_of(2 * k + 1);
    return {SetPartition(lab), sigma};
}

std::vector<Permutation> snc_plus(Shape doubled, const Caps& caps) {
    if (doubled.m % 2 || doubled.n % 2) throw Error("snc_plus: sides must be even");
    std::vector<Permutation> out;
    for_each_snc(doubled, [&](const Permutation& p) {
        if (classify_parity(p, doubled) == Parity::preserving) out.push_back(p);
    }, caps);
    return sorted(std::move(out));
}

std::vector<Permutation> snc_plus_separating(Shape doubled, const Caps& caps) {
    if (doubled.m % 2 || doubled.n % 2) throw Error("snc_plus_separating: sides must be even");
    auto g = gamma_of(doubled);
    std::vector<Permutation> out;
    for_each_snc(doubled, [&](const Permutation& p) {
        if (classify_parity(p, doubled) == Parity::preserving && separates_odd(p, g)) out.push_back(p);
    }, caps);
    return sorted(std::move(out));
}

GroupedTest::GroupedTest(const PartitionedPermutation& u_sigma, Shape half)
    : doubled_{2 * half.m, 2 * half.n}, hat_(hat_partitioned(u_sigma, half).permutation()) {
    auto cyc = SetPartition::of_cycles(u_sigma.permutation());
    std::vector<int> joined;
    for (const auto& b : u_sigma.partition().blocks()) {
        std::set<int> ids;
        for (int x : b) ids.insert(cyc.block_of(x));
        if (ids.size() == 2) joined = b;
    }
    if (joined.empty()) throw Error("grouped set: (U, sigma) joins no two cycles");
    joined_.assign(static_cast<std::size_t>(doubled_.total()), 0);
    for (int x : double_set(joined, half)) {
        joined_[static_cast<std::size_t>(x)] = 1;
        ++joined_size_;
    }
}

bool GroupedTest::contains(const Permutation& pi) const {
    int through = 0;
    for (const auto& c : pi.cycles()) {
        if (is_through(c, doubled_)) {
            for (int x : c)
                if (!joined_[static_cast<std::size_t>(x)]) return false;
            through += static_cast<int>(c.size());
        } else {
            if (joined_[static_cast<std::size_t>(c[0])]) return false;
            for (int x : c)
                if (hat_(x) != pi(x)) return false;
        }
    }
    return through == joined_size_;
}

bool in_grouped(const Permutation& pi, const PartitionedPermutation& u_sigma, Shape half) {
    return GroupedTest(u_sigma, half).contains(pi);
}

std::vector<Permutation> snc_grouped(const PartitionedPermutation& u_sigma, Shape half,
                                     const std::vector<Permutation>& pool) {
    GroupedTest t(u_sigma, half);
    std::vector<Permutation> out;
    for (const auto& p : pool)
        if (t.contains(p)) out.push_back(p);
    return out;
}

std::vector<Permutation> snc_grouped(const PartitionedPermutation& u_sigma, Shape half, const Caps& caps) {
    return snc_grouped(u_sigma, half, snc_plus({2 * half.m, 2 * half.n}, caps));
}

KStructure k_structure(const Permutation& p, Shape s, int k) {
    require_shape(s);
    if (k < 1 || s.m % k || s.n % k) throw Error("k_structure: sides must be multiples of k");
    if (p.size() != s.total()) throw Error("k_structure: size does not match shape");
    KStructure r;
    r.divisible = r.equal = r.alternating = r.preserving = true;
    for (const auto& c : p.cycles()) {
        if (c.size() % static_cast<std::size_t>(k)) r.divisible = false;
        if (c.size() != static_cast<std::size_t>(k)) r.equal = false;
    }
    for (int i = 0; i < p.size(); ++i) {
        if ((p(i) - i - 1) % k != 0) r.alternating = false;
        if ((p(i) - i) % k != 0) r.preserving = false;
    }
    if (r.preserving) {
        std::vector<int> marks;
        for (int t = k - 1; t < p.size(); t += k) marks.push_back(t);
        r.completing = separates_points(kreweras(p, s), marks);
    }
    return r;
}

std::vector<Permutation> enumerate_snc_k_alt(Shape base, int k, const Caps& caps) {
    Shape s{k * base.m, k * base.n};
    std::vector<Permutation> out;
    for_each_snc(s, [&](const Permutation& p) {
        if (k_structure(p, s, k).alternating) out.push_back(p);
    }, caps);
    return sorted(std::move(out));
}

std::vector<Permutation> enumerate_snc_k_alt_eq(Shape base, int k, const Caps& caps) {
    Shape s{k * base.m, k * base.n};
    std::vector<Permutation> out;
    for_each_snc(s, [&](const Permutation& p) {
        auto r = k_structure(p, s, k);
        if (r.alternating && r.equal) out.push_back(p);
    }, caps);
    return sorted(std::move(out));
}

}  // namespace sofree
