#include "sofree/engines.hpp"

#include <algorithm>
#include <map>

#include "sofree/perm.hpp"

namespace sofree::engine {

namespace {

using std::size_t;

const Rational kZero(0);

// Non-crossing search over frame positions. A position may carry more than
// one point (the merged cut of the annulus); block points are kept in frame
// order, which is cycle order.
class Search {
public:
    using Filter = std::function<bool(const std::vector<int>& img, int nblocks)>;
    using Emit = std::function<void(const Search&, const std::vector<int>& img)>;

    Search(const Model& m, const Word& letters, std::vector<std::vector<int>> pos, int zero_budget)
        : m_(m), letters_(letters), pos_(std::move(pos)), budget_(zero_budget) {
        size_t L = pos_.size();
        blocks_.resize(L);
        img_.resize(letters_.size());
        for (size_t x = 0; x < letters_.size(); ++x) img_[x] = static_cast<int>(x);
        prod_.reserve(L + 1);
    }

    bool skip_single = false;
    Filter filter;
    Emit emit;

    void run() {
        prod_.assign(1, Rational(1));
        zeros_ = 0;
        nblocks_ = 0;
        stack_.clear();
        rec(0);
    }

    // Leaf accessors.
    int nblocks() const { return nblocks_; }
    const std::vector<int>& block_points(int b) const { return blocks_[static_cast<size_t>(b)].pts; }
    const Rational& block_value(int b) const { return *blocks_[static_cast<size_t>(b)].val; }
    bool block_zero(int b) const { return blocks_[static_cast<size_t>(b)].zero; }
    int zeros() const { return zeros_; }
    const Rational& product() const { return prod_.back(); }  // nonzero factors only
    Word block_word(int b) const { return word_of(blocks_[static_cast<size_t>(b)].pts); }

private:
    struct Block {
        std::vector<int> pts;
        int family = -1;
        bool dead = false;   // mixed families or too large: cumulant is zero
        bool zero = false;   // counted in zeros_
        bool closed = false;
        const Rational* val = nullptr;
    };

    int family_at(int x) const { return m_.family_of(letters_[static_cast<size_t>(x)]); }

    Word word_of(const std::vector<int>& pts) const {
        size_t start = static_cast<size_t>(std::min_element(pts.begin(), pts.end()) - pts.begin());
        Word w(pts.size());
        for (size_t k = 0; k < pts.size(); ++k)
            w[k] = letters_[static_cast<size_t>(pts[(start + k) % pts.size()])];
        return w;
    }

    // Mark block b zero; false when the budget is exhausted.
    bool mark_zero(Block& b) {
        if (b.zero) return true;
        if (zeros_ >= budget_) return false;
        b.zero = true;
        b.val = &kZero;
        ++zeros_;
        return true;
    }
    void unmark_zero(Block& b, bool was) {
        if (!was && b.zero) {
            b.zero = false;
            --zeros_;
        }
    }

    // Evaluate a finished block. Returns false to prune.
    bool close(Block& b) {
        b.closed = true;
        if (b.dead) return true;  // already counted
        const Rational& v = m_.kappa(word_of(b.pts));
        if (sgn(v) == 0) {
            if (!mark_zero(b)) return false;
            return true;
        }
        b.val = &v;
        prod_.push_back(prod_.back() * v);
        return true;
    }
    void unclose(Block& b) {
        b.closed = false;
        if (b.dead) return;
        if (b.zero) {
            b.zero = false;
            --zeros_;
        } else {
            prod_.pop_back();
        }
        b.val = nullptr;
    }

    // Add the points of position t to block b; false to prune.
    bool add(Block& b, size_t t, bool& was_dead, bool& was_zero) {
        was_dead = b.dead;
        was_zero = b.zero;
        for (int x : pos_[t]) {
            int f = family_at(x);
            if (b.family == -1) b.family = f;
            else if (b.family != f) b.dead = true;
            b.pts.push_back(x);
        }
        int cap = b.family >= 0 ? m_.max_block(b.family) : 0;
        if (cap > 0 && static_cast<int>(b.pts.size()) > cap) b.dead = true;
        if (b.dead && !was_dead) return mark_zero(b);
        return true;
    }
    void remove(Block& b, size_t t, int old_family, bool was_dead, bool was_zero) {
        b.pts.resize(b.pts.size() - pos_[t].size());
        b.family = old_family;
        b.dead = was_dead;
        unmark_zero(b, was_zero);
    }

    void leaf() {
        if (skip_single && nblocks_ == 1) return;
        for (int b = 0; b < nblocks_; ++b) {
            const auto& pts = blocks_[static_cast<size_t>(b)].pts;
            for (size_t k = 0; k + 1 < pts.size(); ++k) img_[static_cast<size_t>(pts[k])] = pts[k + 1];
            img_[static_cast<size_t>(pts.back())] = pts.front();
        }
        if (filter && !filter(img_, nblocks_)) return;
        // Close what is still open, remembering what to undo.
        size_t closed = 0;
        bool ok = true;
        for (; closed < stack_.size(); ++closed) {
            if (!close(blocks_[static_cast<size_t>(stack_[closed])])) {
                ok = false;
                blocks_[static_cast<size_t>(stack_[closed])].closed = false;
                break;
            }
        }
        if (ok) emit(*this, img_);
        for (size_t k = closed; k-- > 0;) unclose(blocks_[static_cast<size_t>(stack_[k])]);
    }

    void rec(size_t t) {
        if (t == pos_.size()) {
            leaf();
            return;
        }
        // Open a new block.
        {
            Block& b = blocks_[static_cast<size_t>(nblocks_)];
            b = Block{};
            bool wd, wz;
            if (add(b, t, wd, wz)) {
                stack_.push_back(nblocks_++);
                rec(t + 1);
                --nblocks_;
                stack_.pop_back();
            }
            remove(b, t, -1, wd, wz);
        }
        // Join an open block; everything above it closes for good.
        std::vector<int> saved = stack_;
        size_t closed = 0;  // blocks closed so far, from the top
        for (int d = static_cast<int>(saved.size()) - 1; d >= 0; --d) {
            if (d + 1 < static_cast<int>(saved.size())) {
                // close saved[d+1]
                Block& c = blocks_[static_cast<size_t>(saved[static_cast<size_t>(d + 1)])];
                if (!close(c)) {
                    c.closed = false;
                    break;
                }
                ++closed;
            }
            Block& b = blocks_[static_cast<size_t>(saved[static_cast<size_t>(d)])];
            int fam = b.family;
            bool wd, wz;
            if (add(b, t, wd, wz)) {
                stack_.assign(saved.begin(), saved.begin() + d + 1);
                rec(t + 1);
            }
            remove(b, t, fam, wd, wz);
        }
        for (size_t k = closed; k-- > 0;) unclose(blocks_[static_cast<size_t>(saved[saved.size() - 1 - k])]);
        stack_ = saved;
    }

    const Model& m_;
    const Word& letters_;
    std::vector<std::vector<int>> pos_;
    int budget_;
    std::vector<Block> blocks_;
    std::vector<int> stack_;
    std::vector<Rational> prod_;
    std::vector<int> img_;
    int nblocks_ = 0;
    int zeros_ = 0;
};

// Cycle labels of img^-1 o gamma, using gamma given by images.
int kr_labels(const std::vector<int>& img, const std::vector<int>& gamma, std::vector<int>& lab) {
    size_t n = img.size();
    std::vector<int> inv(n);
    for (size_t x = 0; x < n; ++x) inv[static_cast<size_t>(img[x])] = static_cast<int>(x);
    lab.assign(n, -1);
    int c = 0;
    for (size_t x = 0; x < n; ++x) {
        if (lab[x] != -1) continue;
        for (size_t y = x; lab[y] == -1; y = static_cast<size_t>(inv[static_cast<size_t>(gamma[y])])) lab[y] = c;
        ++c;
    }
    return c;
}

bool separated(const std::vector<int>& lab, const std::vector<int>& pts) {
    std::vector<char> seen(lab.size() + 1, 0);
    for (int x : pts) {
        int l = lab[static_cast<size_t>(x)];
        if (seen[static_cast<size_t>(l)]) return false;
        seen[static_cast<size_t>(l)] = 1;
    }
    return true;
}

std::vector<int> gamma_images(int m, int n) {
    std::vector<int> g(static_cast<size_t>(m + n));
    for (int x = 0; x < m; ++x) g[static_cast<size_t>(x)] = (x + 1) % m;
    for (int x = 0; x < n; ++x) g[static_cast<size_t>(m + x)] = m + (x + 1) % n;
    return g;
}

std::vector<int> cycle_images(int n) {
    std::vector<int> g(static_cast<size_t>(n));
    for (int x = 0; x < n; ++x) g[static_cast<size_t>(x)] = (x + 1) % n;
    return g;
}

bool has_second_order(const Model& m, const Word& w) {
    for (int x : w)
        if (!m.second_order_zero(m.family_of(x))) return true;
    return false;
}

// One circle of a PS' element: pi_side in NC(side) together with one marked
// block (the one joined across). `rest` is the product of the other blocks.
struct SideTerm {
    Word word;
    Rational rest;
    bool full = false;       // the marked block is the whole circle
    int block_min = 0;
    int element = 0;         // index into the element list (observer only)
};

struct Side {
    std::vector<SideTerm> terms;
    std::vector<std::vector<int>> images;  // local images per element (observer only)
};

Side collect_side(const Model& m, const Word& w, int offset, const std::vector<int>* sep, bool keep_images) {
    int len = static_cast<int>(w.size());
    std::vector<std::vector<int>> pos;
    for (int x = 0; x < len; ++x) pos.push_back({x});
    std::vector<int> local_sep;
    if (sep)
        for (int x : *sep)
            if (x >= offset && x < offset + len) local_sep.push_back(x - offset);
    auto g = cycle_images(len);

    Side side;
    Search s(m, w, pos, 1);
    std::vector<int> lab;
    if (sep)
        s.filter = [&](const std::vector<int>& img, int) {
            kr_labels(img, g, lab);
            return separated(lab, local_sep);
        };
    s.emit = [&](const Search& st, const std::vector<int>& img) {
        int element = static_cast<int>(side.images.size());
        bool any = false;
        for (int b = 0; b < st.nblocks(); ++b) {
            if (st.zeros() == 1 && !st.block_zero(b)) continue;
            Rational rest(1);
            for (int c = 0; c < st.nblocks(); ++c)
                if (c != b) rest *= st.block_value(c);
            if (sgn(rest) == 0) continue;
            const auto& pts = st.block_points(b);
            SideTerm t;
            t.word = st.block_word(b);
            t.rest = std::move(rest);
            t.full = static_cast<int>(pts.size()) == len;
            t.block_min = *std::min_element(pts.begin(), pts.end()) + offset;
            t.element = element;
            side.terms.push_back(std::move(t));
            any = true;
        }
        if (keep_images && any) {
            std::vector<int> shifted(img.size());
            for (size_t x = 0; x < img.size(); ++x) shifted[x] = img[x] + offset;
            side.images.push_back(std::move(shifted));
        } else if (keep_images) {
            side.images.emplace_back();  // keep indices aligned
        }
    };
    s.run();
    return side;
}

Rational ps_prime_part(const Model& m, const Word& w1, const Word& w2, const Options& opt) {
    bool observe = opt.observer != nullptr;
    Side a = collect_side(m, w1, 0, opt.kr_separates, observe);
    Side b = collect_side(m, w2, static_cast<int>(w1.size()), opt.kr_separates, observe);
    Rational total;
    if (!observe) {
        // Aggregate by marked-block word; kappa2 depends on nothing else.
        auto group = [](const Side& s, std::map<Word, Rational>& partial, std::map<Word, Rational>& full) {
            for (const auto& t : s.terms) (t.full ? full : partial)[t.word] += t.rest;
        };
        std::map<Word, Rational> pa, fa, pb, fb;
        group(a, pa, fa);
        group(b, pb, fb);
        auto add = [&](const std::map<Word, Rational>& x, const std::map<Word, Rational>& y) {
            for (const auto& [wx, cx] : x)
                for (const auto& [wy, cy] : y) {
                    const Rational& k = m.kappa2(wx, wy);
                    if (sgn(k) != 0) total += cx * cy * k;
                }
        };
        add(pa, pb);
        add(pa, fb);
        add(fa, pb);
        if (!opt.skip_top) add(fa, fb);
        return total;
    }
    for (const auto& ta : a.terms)
        for (const auto& tb : b.terms) {
            if (opt.skip_top && ta.full && tb.full) continue;
            const Rational& k = m.kappa2(ta.word, tb.word);
            if (sgn(k) == 0) continue;
            Rational term = ta.rest * tb.rest * k;
            std::vector<int> img = a.images[static_cast<size_t>(ta.element)];
            const auto& ib = b.images[static_cast<size_t>(tb.element)];
            img.insert(img.end(), ib.begin(), ib.end());
            std::pair<int, int> joined{ta.block_min, tb.block_min};
            (*opt.observer)(img, &joined, term);
            total += term;
        }
    return total;
}

Rational snc_part(const Model& m, const Word& w1, const Word& w2, const Options& opt) {
    const int M = static_cast<int>(w1.size()), N = static_cast<int>(w2.size()), T = M + N;
    Word w = w1;
    w.insert(w.end(), w2.begin(), w2.end());
    auto g = gamma_images(M, N);
    Rational total;
    std::vector<int> lab;
    for (int i = 0; i < M; ++i)
        for (int j = M; j < T; ++j) {
            std::vector<std::vector<int>> pos;
            pos.push_back({i, j});
            for (int x = g[static_cast<size_t>(j)]; x != j; x = g[static_cast<size_t>(x)]) pos.push_back({x});
            for (int x = g[static_cast<size_t>(i)]; x != i; x = g[static_cast<size_t>(x)]) pos.push_back({x});
            Search s(m, w, std::move(pos), 0);
            s.filter = [&](const std::vector<int>& img, int nblocks) {
                for (int a = 0; a < i; ++a)
                    if (img[static_cast<size_t>(a)] >= M) return false;  // counted at a smaller cut
                int kc = kr_labels(img, g, lab);
                if (nblocks + kc != T) return false;
                return !opt.kr_separates || separated(lab, *opt.kr_separates);
            };
            s.emit = [&](const Search& st, const std::vector<int>& img) {
                if (opt.observer) (*opt.observer)(img, nullptr, st.product());
                total += st.product();
            };
            s.run();
        }
    return total;
}

}  // namespace

Rational disc(const Model& m, const Word& w, const Options& opt) {
    if (w.empty()) return Rational(1);
    const int n = static_cast<int>(w.size());
    std::vector<std::vector<int>> pos;
    for (int x = 0; x < n; ++x) pos.push_back({x});
    auto g = cycle_images(n);
    Rational total;
    std::vector<int> lab;
    Search s(m, w, std::move(pos), 0);
    s.skip_single = opt.skip_top;
    if (opt.kr_separates)
        s.filter = [&](const std::vector<int>& img, int) {
            kr_labels(img, g, lab);
            return separated(lab, *opt.kr_separates);
        };
    s.emit = [&](const Search& st, const std::vector<int>& img) {
        if (opt.observer) (*opt.observer)(img, nullptr, st.product());
        total += st.product();
    };
    s.run();
    return total;
}

Rational annulus(const Model& m, const Word& w1, const Word& w2, const Options& opt) {
    if (w1.empty() || w2.empty()) return Rational(0);
    Rational total = snc_part(m, w1, w2, opt);
    Word all = w1;
    all.insert(all.end(), w2.begin(), w2.end());
    if (!opt.snc_only && has_second_order(m, all)) total += ps_prime_part(m, w1, w2, opt);
    return total;
}

Rational kappa_of_perm(const Model& m, const Word& w, const std::vector<int>& img) {
    if (img.size() != w.size()) throw Error("kappa_of_perm: size mismatch");
    Permutation p(img);
    Rational out(1);
    for (const auto& c : p.cycles()) {
        Word sub;
        for (int x : c) sub.push_back(w[static_cast<size_t>(x)]);
        out *= m.kappa(sub);
        if (sgn(out) == 0) break;
    }
    return out;
}

}  // namespace sofree::engine
