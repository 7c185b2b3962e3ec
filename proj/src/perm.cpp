#include "sofree/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace sofree {

namespace {

void skip_ws(std::string_view s, std::size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

int read_int(std::string_view s, std::size_t& i) {
    skip_ws(s, i);
    std::size_t start = i;
    long v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        v = v * 10 + (s[i] - '0');
        if (v > 1000000) throw Error("point index too large in '" + std::string(s) + "'");
        ++i;
    }
    if (i == start) throw Error("expected a point index at offset " + std::to_string(start) + " in '" +
                                std::string(s) + "'");
    if (v < 1) throw Error("point indices are 1-based");
    return static_cast<int>(v);
}

std::string join_points(const std::vector<int>& pts, char sep) {
    std::string out;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        if (k) out += sep;
        out += std::to_string(pts[k] + 1);
    }
    return out;
}

}  // namespace

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
    std::vector<char> seen(img_.size(), 0);
    for (int v : img_) {
        if (v < 0 || v >= size() || seen[static_cast<std::size_t>(v)])
            throw Error("image list is not a bijection");
        seen[static_cast<std::size_t>(v)] = 1;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 0);
    Permutation p;
    p.img_ = std::move(img);
    return p;
}

Permutation Permutation::full_cycle(int n) {
    std::vector<int> img(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) img[static_cast<std::size_t>(i)] = (i + 1) % n;
    Permutation p;
    p.img_ = std::move(img);
    return p;
}

Permutation Permutation::from_cycles(int n, const std::vector<Cycle>& cycles) {
    std::vector<int> img(static_cast<std::size_t>(n), -1);
    for (const auto& c : cycles) {
        for (std::size_t k = 0; k < c.size(); ++k) {
            int a = c[k], b = c[(k + 1) % c.size()];
            if (a < 0 || a >= n || b < 0 || b >= n) throw Error("cycle point out of range");
            if (img[static_cast<std::size_t>(a)] != -1) throw Error("point repeated in cycle notation");
            img[static_cast<std::size_t>(a)] = b;
        }
    }
    for (int i = 0; i < n; ++i)
        if (img[static_cast<std::size_t>(i)] == -1) img[static_cast<std::size_t>(i)] = i;
    return Permutation(std::move(img));
}

Permutation Permutation::parse(std::string_view text, int n) {
    std::vector<Cycle> cycles;
    int maxpt = 0;
    std::size_t i = 0;
    skip_ws(text, i);
    while (i < text.size()) {
        if (text[i] != '(') throw Error("expected '(' in permutation '" + std::string(text) + "'");
        ++i;
        Cycle c;
        for (;;) {
            int v = read_int(text, i);
            maxpt = std::max(maxpt, v);
            c.push_back(v - 1);
            skip_ws(text, i);
            if (i < text.size() && text[i] == ',') {
                ++i;
                continue;
            }
            if (i < text.size() && text[i] == ')') {
                ++i;
                break;
            }
            throw Error("unterminated cycle in '" + std::string(text) + "'");
        }
        cycles.push_back(std::move(c));
        skip_ws(text, i);
    }
    if (n == 0) n = maxpt;
    if (maxpt > n) throw Error("permutation mentions point " + std::to_string(maxpt) + " beyond size " +
                               std::to_string(n));
    if (n == 0) throw Error("empty permutation text");
    return from_cycles(n, cycles);
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) inv[static_cast<std::size_t>(img_[i])] = static_cast<int>(i);
    Permutation p;
    p.img_ = std::move(inv);
    return p;
}

std::vector<Cycle> Permutation::cycles() const {
    std::vector<Cycle> out;
    std::vector<char> seen(img_.size(), 0);
    for (int i = 0; i < size(); ++i) {
        if (seen[static_cast<std::size_t>(i)]) continue;
        Cycle c;
        for (int j = i; !seen[static_cast<std::size_t>(j)]; j = img_[static_cast<std::size_t>(j)]) {
            seen[static_cast<std::size_t>(j)] = 1;
            c.push_back(j);
        }
        out.push_back(std::move(c));
    }
    return out;
}

int Permutation::num_cycles() const {
    int count = 0;
    std::vector<char> seen(img_.size(), 0);
    for (int i = 0; i < size(); ++i) {
        if (seen[static_cast<std::size_t>(i)]) continue;
        ++count;
        for (int j = i; !seen[static_cast<std::size_t>(j)]; j = img_[static_cast<std::size_t>(j)])
            seen[static_cast<std::size_t>(j)] = 1;
    }
    return count;
}

bool Permutation::is_identity() const {
    for (int i = 0; i < size(); ++i)
        if (img_[static_cast<std::size_t>(i)] != i) return false;
    return true;
}

std::string Permutation::to_string() const {
    std::string out;
    for (const auto& c : cycles()) out += "(" + join_points(c, ',') + ")";
    return out;
}

Permutation compose(const Permutation& p, const Permutation& q) {
    if (p.size() != q.size())
        throw Error("compose: size mismatch " + std::to_string(p.size()) + " vs " + std::to_string(q.size()));
    std::vector<int> img(static_cast<std::size_t>(p.size()));
    for (int i = 0; i < p.size(); ++i) img[static_cast<std::size_t>(i)] = p(q(i));
    return Permutation(std::move(img));
}

int length_metric(const Permutation& p) { return p.length(); }

Permutation gamma_annulus(int m, int n) {
    if (m < 1 || n < 1) throw Error("annulus sides must be positive");
    std::vector<int> img(static_cast<std::size_t>(m + n));
    for (int i = 0; i < m; ++i) img[static_cast<std::size_t>(i)] = (i + 1) % m;
    for (int i = 0; i < n; ++i) img[static_cast<std::size_t>(m + i)] = m + (i + 1) % n;
    return Permutation(std::move(img));
}

// ---------------------------------------------------------------------------

SetPartition::SetPartition(const std::vector<int>& block_of) : label_(block_of.size()) {
    std::vector<std::pair<int, int>> remap;
    for (std::size_t i = 0; i < block_of.size(); ++i) {
        int lab = -1;
        for (const auto& [from, to] : remap)
            if (from == block_of[i]) lab = to;
        if (lab < 0) {
            lab = static_cast<int>(remap.size());
            remap.emplace_back(block_of[i], lab);
        }
        label_[i] = lab;
    }
    nblocks_ = static_cast<int>(remap.size());
}

SetPartition SetPartition::singletons(int n) {
    std::vector<int> lab(static_cast<std::size_t>(n));
    std::iota(lab.begin(), lab.end(), 0);
    return SetPartition(lab);
}

SetPartition SetPartition::one(int n) { return SetPartition(std::vector<int>(static_cast<std::size_t>(n), 0)); }

SetPartition SetPartition::from_blocks(int n, const std::vector<std::vector<int>>& blocks) {
    std::vector<int> lab(static_cast<std::size_t>(n), -1);
    int b = 0;
    for (const auto& blk : blocks) {
        if (blk.empty()) throw Error("empty block");
        for (int v : blk) {
            if (v < 0 || v >= n) throw Error("block point out of range");
            if (lab[static_cast<std::size_t>(v)] != -1) throw Error("blocks are not disjoint");
            lab[static_cast<std::size_t>(v)] = b;
        }
        ++b;
    }
    for (int v : lab)
        if (v == -1) throw Error("blocks do not cover the ground set");
    return SetPartition(lab);
}

SetPartition SetPartition::of_cycles(const Permutation& p) {
    std::vector<int> lab(static_cast<std::size_t>(p.size()), -1);
    int b = 0;
    for (const auto& c : p.cycles()) {
        for (int v : c) lab[static_cast<std::size_t>(v)] = b;
        ++b;
    }
    return SetPartition(lab);
}

SetPartition SetPartition::parse(std::string_view text, int n) {
    std::size_t i = 0;
    skip_ws(text, i);
    if (i >= text.size() || text[i] != '{') throw Error("expected '{' in partition '" + std::string(text) + "'");
    ++i;
    std::vector<std::vector<int>> blocks(1);
    int maxpt = 0;
    for (;;) {
        int v = read_int(text, i);
        maxpt = std::max(maxpt, v);
        blocks.back().push_back(v - 1);
        skip_ws(text, i);
        if (i < text.size() && text[i] == ',') {
            ++i;
        } else if (i < text.size() && text[i] == '|') {
            ++i;
            blocks.emplace_back();
        } else if (i < text.size() && text[i] == '}') {
            ++i;
            break;
        } else {
            throw Error("malformed partition '" + std::string(text) + "'");
        }
    }
    skip_ws(text, i);
    if (i != text.size()) throw Error("trailing text after partition");
    if (n == 0) n = maxpt;
    return from_blocks(n, blocks);
}

std::vector<std::vector<int>> SetPartition::blocks() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(nblocks_));
    for (int i = 0; i < size(); ++i) out[static_cast<std::size_t>(label_[static_cast<std::size_t>(i)])].push_back(i);
    return out;  // canonical labels already order blocks by minimum
}

bool SetPartition::refines(const SetPartition& coarser) const {
    if (size() != coarser.size()) return false;
    std::vector<int> target(static_cast<std::size_t>(nblocks_), -1);
    for (int i = 0; i < size(); ++i) {
        int& t = target[static_cast<std::size_t>(label_[static_cast<std::size_t>(i)])];
        if (t == -1) t = coarser.block_of(i);
        else if (t != coarser.block_of(i)) return false;
    }
    return true;
}

std::string SetPartition::to_string() const {
    std::string out = "{";
    auto bl = blocks();
    for (std::size_t k = 0; k < bl.size(); ++k) {
        if (k) out += "|";
        out += join_points(bl[k], ',');
    }
    return out + "}";
}

SetPartition partition_join(const SetPartition& u, const SetPartition& v) {
    if (u.size() != v.size())
        throw Error("partition_join: size mismatch " + std::to_string(u.size()) + " vs " + std::to_string(v.size()));
    int n = u.size();
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    auto unite_by = [&](const SetPartition& p) {
        std::vector<int> first(static_cast<std::size_t>(p.num_blocks()), -1);
        for (int i = 0; i < n; ++i) {
            int& f = first[static_cast<std::size_t>(p.block_of(i))];
            if (f == -1) f = i;
            else parent[static_cast<std::size_t>(find(i))] = find(f);
        }
    };
    unite_by(u);
    unite_by(v);
    std::vector<int> lab(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) lab[static_cast<std::size_t>(i)] = find(i);
    return SetPartition(lab);
}

// ---------------------------------------------------------------------------

PartitionedPermutation::PartitionedPermutation(SetPartition u, Permutation pi) : u_(std::move(u)), pi_(std::move(pi)) {
    if (u_.size() != pi_.size()) throw Error("partitioned permutation: size mismatch");
    if (!SetPartition::of_cycles(pi_).refines(u_)) throw Error("partitioned permutation: a cycle is split by U");
}

PartitionedPermutation PartitionedPermutation::parse(std::string_view text) {
    std::size_t i = 0;
    skip_ws(text, i);
    if (i >= text.size() || text[i] != '[') throw Error("expected '[' in partitioned permutation");
    std::size_t semi = text.find(';', i);
    std::size_t close = text.rfind(']');
    if (semi == std::string_view::npos || close == std::string_view::npos || close < semi)
        throw Error("malformed partitioned permutation '" + std::string(text) + "'");
    auto part_text = text.substr(i + 1, semi - i - 1);
    auto perm_text = text.substr(semi + 1, close - semi - 1);
    SetPartition u = SetPartition::parse(part_text);
    Permutation pi = Permutation::parse(perm_text, u.size());
    if (pi.size() != u.size()) throw Error("partitioned permutation: size mismatch");
    return PartitionedPermutation(u, pi);
}

std::string PartitionedPermutation::to_string() const { return "[" + u_.to_string() + " ; " + pi_.to_string() + "]"; }

int pp_length(const PartitionedPermutation& x) { return x.length(); }

PartitionedPermutation pp_product(const PartitionedPermutation& x, const PartitionedPermutation& y) {
    if (x.size() != y.size()) throw Error("pp_product: size mismatch");
    return PartitionedPermutation(partition_join(x.partition(), y.partition()),
                                  compose(x.permutation(), y.permutation()));
}

bool is_exact_factorization(const PartitionedPermutation& x, const PartitionedPermutation& y,
                            const PartitionedPermutation& target) {
    if (x.size() != y.size() || x.size() != target.size()) return false;
    if (!(pp_product(x, y) == target)) return false;
    return target.length() == x.length() + y.length();
}

bool separates_points(const Permutation& s, const std::vector<int>& a) {
    std::vector<int> cyc(static_cast<std::size_t>(s.size()), -1);
    int id = 0;
    for (const auto& c : s.cycles()) {
        for (int v : c) cyc[static_cast<std::size_t>(v)] = id;
        ++id;
    }
    std::vector<char> used(static_cast<std::size_t>(id), 0);
    for (int v : a) {
        if (v < 0 || v >= s.size()) throw Error("separates_points: point out of range");
        char& u = used[static_cast<std::size_t>(cyc[static_cast<std::size_t>(v)])];
        if (u) return false;
        u = 1;
    }
    return true;
}

Permutation induced_permutation(const Permutation& s, const std::vector<int>& a) {
    if (a.empty()) throw Error("induced_permutation: empty subset");
    std::vector<char> in(static_cast<std::size_t>(s.size()), 0);
    for (int v : a) {
        if (v < 0 || v >= s.size()) throw Error("induced_permutation: point out of range");
        in[static_cast<std::size_t>(v)] = 1;
    }
    auto img = Permutation::identity(s.size()).images();
    for (int v : a) {
        int w = s(v);
        while (!in[static_cast<std::size_t>(w)]) w = s(w);
        img[static_cast<std::size_t>(v)] = w;
    }
    return Permutation(std::move(img));
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int v : p.images()) {
        h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace sofree
