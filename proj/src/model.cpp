#include "sofree/model.hpp"

#include <algorithm>
#include <set>

#include "sofree/engines.hpp"
#include "sofree/perm.hpp"
#include "sofree/seq.hpp"

namespace sofree {

std::size_t WordHash::operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull ^ w.size();
    for (int v : w) {
        h ^= static_cast<std::size_t>(v + 2);
        h *= 1099511628211ull;
    }
    return h;
}

Word pair_key(const Word& w1, const Word& w2) {
    Word key;
    key.reserve(w1.size() + w2.size() + 1);
    key.insert(key.end(), w1.begin(), w1.end());
    key.push_back(-1);
    key.insert(key.end(), w2.begin(), w2.end());
    return key;
}

const Rational* Memo::find(const Word& key) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_.find(key);
    return it == map_.end() ? nullptr : &it->second;
}

const Rational& Memo::insert(const Word& key, Rational value) const {
    std::lock_guard<std::mutex> lock(mu_);
    return map_.emplace(key, std::move(value)).first->second;
}

std::size_t Memo::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return map_.size();
}

Model::Model(std::vector<Letter> alphabet, int truncation) : alphabet_(std::move(alphabet)), truncation_(truncation) {
    if (alphabet_.empty()) throw Error("model alphabet is empty");
    if (truncation_ < 1) throw Error("model truncation must be positive");
    std::set<std::string> names;
    for (const auto& l : alphabet_) {
        if (l.name.empty() || l.name.find('.') != std::string::npos || l.name.find('|') != std::string::npos)
            throw Error("invalid letter name '" + l.name + "'");
        if (!names.insert(l.name).second) throw Error("duplicate letter '" + l.name + "'");
    }
    for (const auto& l : alphabet_) {
        int s = -1;
        for (std::size_t k = 0; k < alphabet_.size(); ++k)
            if (alphabet_[k].name == (l.star.empty() ? l.name : l.star)) s = static_cast<int>(k);
        if (s < 0) throw Error("letter '" + l.name + "' has unknown adjoint '" + l.star + "'");
        star_.push_back(s);
        auto it = std::find(family_names_.begin(), family_names_.end(), l.family);
        if (it == family_names_.end()) {
            family_.push_back(static_cast<int>(family_names_.size()));
            family_names_.push_back(l.family);
        } else {
            family_.push_back(static_cast<int>(it - family_names_.begin()));
        }
    }
    for (std::size_t k = 0; k < star_.size(); ++k) {
        if (star_[static_cast<std::size_t>(star_[k])] != static_cast<int>(k))
            throw Error("adjoint pairing is not involutive at '" + alphabet_[k].name + "'");
        if (family_[static_cast<std::size_t>(star_[k])] != family_[k])
            throw Error("letter '" + alphabet_[k].name + "' and its adjoint lie in different families");
    }
}

int Model::letter_index(std::string_view name) const {
    for (std::size_t k = 0; k < alphabet_.size(); ++k)
        if (alphabet_[k].name == name) return static_cast<int>(k);
    throw Error("unknown letter '" + std::string(name) + "'");
}

Word Model::parse_word(std::string_view text) const {
    Word w;
    if (text.empty()) return w;
    std::size_t start = 0;
    while (true) {
        auto dot = text.find('.', start);
        auto piece = text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
        w.push_back(letter_index(piece));
        if (dot == std::string_view::npos) break;
        start = dot + 1;
    }
    return w;
}

std::string Model::word_text(const Word& w) const {
    std::string out;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) out += '.';
        out += alphabet_[static_cast<std::size_t>(w[k])].name;
    }
    return out;
}

Word Model::star_word(const Word& w) const {
    Word out(w.rbegin(), w.rend());
    for (int& x : out) x = star_of(x);
    return out;
}

bool Model::single_family(const Word& w) const {
    for (int x : w)
        if (family_of(x) != family_of(w[0])) return false;
    return true;
}

bool Model::single_family(const Word& a, const Word& b) const {
    return single_family(a) && single_family(b) && family_of(a[0]) == family_of(b[0]);
}

void Model::check_truncation(std::size_t len) const {
    if (len > static_cast<std::size_t>(truncation_))
        throw Error("word length " + std::to_string(len) + " exceeds model truncation " +
                    std::to_string(truncation_));
}

namespace {
const Rational& zero() {
    static const Rational z(0);
    return z;
}
const Rational& one() {
    static const Rational o(1);
    return o;
}
}  // namespace

const Rational& Model::kappa(const Word& w) const {
    if (w.empty()) throw Error("cumulant of an empty word");
    if (!single_family(w)) return zero();
    int fam = family_of(w[0]);
    if (max_block(fam) > 0 && static_cast<int>(w.size()) > max_block(fam)) return zero();
    check_truncation(w.size());
    if (auto* v = kappa_memo_.find(w)) return *v;
    return kappa_memo_.insert(w, compute_kappa(w));
}

const Rational& Model::kappa2(const Word& w1, const Word& w2) const {
    if (w1.empty() || w2.empty()) throw Error("second-order cumulant with an empty side");
    if (!single_family(w1, w2)) return zero();
    if (second_order_zero(family_of(w1[0]))) return zero();
    check_truncation(w1.size() + w2.size());
    auto key = pair_key(w1, w2);
    if (auto* v = kappa2_memo_.find(key)) return *v;
    return kappa2_memo_.insert(key, compute_kappa2(w1, w2));
}

const Rational& Model::phi(const Word& w) const {
    if (w.empty()) return one();
    check_truncation(w.size());
    if (auto* v = phi_memo_.find(w)) return *v;
    return phi_memo_.insert(w, compute_phi(w));
}

const Rational& Model::phi2(const Word& w1, const Word& w2) const {
    if (w1.empty() || w2.empty()) return zero();
    check_truncation(w1.size() + w2.size());
    auto key = pair_key(w1, w2);
    if (auto* v = phi2_memo_.find(key)) return *v;
    return phi2_memo_.insert(key, compute_phi2(w1, w2));
}

std::size_t Model::memo_entries() const {
    return kappa_memo_.size() + kappa2_memo_.size() + phi_memo_.size() + phi2_memo_.size();
}

Rational Model::compute_kappa(const Word& w) const {
    engine::Options opt;
    opt.skip_top = true;
    return phi(w) - engine::disc(*this, w, opt);
}

Rational Model::compute_kappa2(const Word& w1, const Word& w2) const {
    engine::Options opt;
    opt.skip_top = true;
    return phi2(w1, w2) - engine::annulus(*this, w1, w2, opt);
}

Rational Model::compute_phi(const Word& w) const { return engine::disc(*this, w); }

Rational Model::compute_phi2(const Word& w1, const Word& w2) const { return engine::annulus(*this, w1, w2); }

// ---------------------------------------------------------------------------

RuleModel::RuleModel(std::string kind, std::vector<Letter> alphabet, int truncation, First first, Second second,
                     int max_block, bool second_zero)
    : Model(std::move(alphabet), truncation),
      kind_(std::move(kind)),
      first_(std::move(first)),
      second_(std::move(second)),
      max_block_(max_block),
      second_zero_(second_zero) {}

MomentRuleModel::MomentRuleModel(std::string kind, std::vector<Letter> alphabet, int truncation, First first,
                                 Second second)
    : Model(std::move(alphabet), truncation), kind_(std::move(kind)), first_(std::move(first)), second_(std::move(second)) {}

// ---------------------------------------------------------------------------

SequenceModel::SequenceModel(std::string kind, std::string letter, Data data, bool moments, int truncation)
    : Model({Letter{letter, kind, letter}}, truncation), kind_(std::move(kind)), data_(std::move(data)), moments_(moments) {
    if (!data_.first.empty() && data_.first.size() < 2) throw Error("sequence model needs entries from n = 1");
}

const Rational& SequenceModel::first_at(std::size_t n) const {
    if (n >= data_.first.size())
        throw Error(kind_ + ": first-order table stops at " + std::to_string(data_.first.size() - 1));
    return data_.first[n];
}

const Rational& SequenceModel::second_at(std::size_t p, std::size_t q) const {
    auto it = data_.second.find({static_cast<int>(p), static_cast<int>(q)});
    if (it == data_.second.end())
        throw Error(kind_ + ": no second-order entry at (" + std::to_string(p) + "," + std::to_string(q) + ")");
    return it->second;
}

Rational SequenceModel::compute_kappa(const Word& w) const {
    if (!moments_) return first_at(w.size());
    // Moment side given: invert the whole prefix once through the memo.
    std::vector<Rational> m(w.size() + 1);
    m[0] = 1;
    for (std::size_t n = 1; n <= w.size(); ++n) m[n] = first_at(n);
    return seq::cumulants_from_moments(m)[w.size()];
}

Rational SequenceModel::compute_kappa2(const Word& a, const Word& b) const {
    if (!moments_) return second_at(a.size(), b.size());
    int P = static_cast<int>(a.size()), Q = static_cast<int>(b.size());
    std::vector<Rational> m(static_cast<std::size_t>(P + Q + 1));
    m[0] = 1;
    for (int n = 1; n <= P + Q; ++n) m[static_cast<std::size_t>(n)] = first_at(static_cast<std::size_t>(n));
    auto k = seq::cumulants_from_moments(m);
    seq::Grid g(static_cast<std::size_t>(P + 1), std::vector<Rational>(static_cast<std::size_t>(Q + 1)));
    for (int p = 1; p <= P; ++p)
        for (int q = 1; q <= Q; ++q)
            g[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] =
                second_at(static_cast<std::size_t>(p), static_cast<std::size_t>(q));
    return seq::kappa2_from_phi2(k, m, g)[static_cast<std::size_t>(P)][static_cast<std::size_t>(Q)];
}

Rational SequenceModel::compute_phi(const Word& w) const {
    if (moments_) return first_at(w.size());
    std::vector<Rational> k(w.size() + 1);
    for (std::size_t n = 1; n <= w.size(); ++n) k[n] = first_at(n);
    return seq::moments_from_cumulants(k)[w.size()];
}

Rational SequenceModel::compute_phi2(const Word& a, const Word& b) const {
    if (moments_) return second_at(a.size(), b.size());
    int P = static_cast<int>(a.size()), Q = static_cast<int>(b.size());
    std::vector<Rational> k(static_cast<std::size_t>(P + Q + 1));
    for (int n = 1; n <= P + Q; ++n) k[static_cast<std::size_t>(n)] = first_at(static_cast<std::size_t>(n));
    auto m = seq::moments_from_cumulants(k);
    seq::Grid g(static_cast<std::size_t>(P + 1), std::vector<Rational>(static_cast<std::size_t>(Q + 1)));
    for (int p = 1; p <= P; ++p)
        for (int q = 1; q <= Q; ++q)
            g[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] =
                second_at(static_cast<std::size_t>(p), static_cast<std::size_t>(q));
    return seq::phi2_from_kappa2(k, m, g)[static_cast<std::size_t>(P)][static_cast<std::size_t>(Q)];
}

// ---------------------------------------------------------------------------

TableModel::TableModel(std::vector<Letter> alphabet, int truncation, bool moments,
                       std::unordered_map<Word, Rational, WordHash> first,
                       std::unordered_map<Word, Rational, WordHash> second)
    : Model(std::move(alphabet), truncation), moments_(moments), first_(std::move(first)), second_(std::move(second)) {}

namespace {
const Rational& table_lookup(const std::unordered_map<Word, Rational, WordHash>& t, const Word& key, const Model& m,
                             const char* what, const std::string& text) {
    auto it = t.find(key);
    if (it == t.end()) throw Error(std::string("table model has no ") + what + " entry for '" + text + "'");
    (void)m;
    return it->second;
}
}  // namespace

Rational TableModel::compute_kappa(const Word& w) const {
    if (moments_) return Model::compute_kappa(w);
    return table_lookup(first_, w, *this, "kappa", word_text(w));
}

Rational TableModel::compute_kappa2(const Word& a, const Word& b) const {
    if (moments_) return Model::compute_kappa2(a, b);
    return table_lookup(second_, pair_key(a, b), *this, "kappa2", word_text(a) + "|" + word_text(b));
}

Rational TableModel::compute_phi(const Word& w) const {
    if (!moments_ || !single_family(w)) return Model::compute_phi(w);
    return table_lookup(first_, w, *this, "phi", word_text(w));
}

Rational TableModel::compute_phi2(const Word& a, const Word& b) const {
    if (!moments_ || !single_family(a, b)) return Model::compute_phi2(a, b);
    return table_lookup(second_, pair_key(a, b), *this, "phi2", word_text(a) + "|" + word_text(b));
}

// ---------------------------------------------------------------------------

namespace {
std::vector<Letter> concat_alphabets(const std::vector<ModelPtr>& parts) {
    std::vector<Letter> out;
    for (const auto& p : parts)
        for (const auto& l : p->alphabet()) out.push_back(l);
    return out;
}
int min_truncation(const std::vector<ModelPtr>& parts) {
    if (parts.empty()) throw Error("free product of no models");
    int t = parts[0]->truncation();
    for (const auto& p : parts) t = std::min(t, p->truncation());
    return t;
}
}  // namespace

FreeProduct::FreeProduct(std::vector<ModelPtr> parts)
    : Model(concat_alphabets(parts), min_truncation(parts)), parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i)
        for (int l = 0; l < parts_[i]->num_letters(); ++l) {
            part_of_letter_.push_back(static_cast<int>(i));
            local_letter_.push_back(l);
        }
    part_of_family_.assign(families().size(), -1);
    local_family_.assign(families().size(), -1);
    for (int l = 0; l < num_letters(); ++l) {
        int f = family_of(l);
        int part = part_of_letter_[static_cast<std::size_t>(l)];
        int& owner = part_of_family_[static_cast<std::size_t>(f)];
        if (owner != -1 && owner != part)
            throw Error("family '" + families()[static_cast<std::size_t>(f)] + "' appears in two free factors");
        owner = part;
        local_family_[static_cast<std::size_t>(f)] =
            parts_[static_cast<std::size_t>(part)]->family_of(local_letter_[static_cast<std::size_t>(l)]);
    }
}

std::pair<const Model*, Word> FreeProduct::localize(const Word& w) const {
    const Model* m = parts_[static_cast<std::size_t>(part_of_letter_[static_cast<std::size_t>(w[0])])].get();
    Word local(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) local[k] = local_letter_[static_cast<std::size_t>(w[k])];
    return {m, local};
}

int FreeProduct::max_block(int family) const {
    const auto& p = parts_[static_cast<std::size_t>(part_of_family_[static_cast<std::size_t>(family)])];
    return p->max_block(local_family_[static_cast<std::size_t>(family)]);
}

bool FreeProduct::second_order_zero(int family) const {
    const auto& p = parts_[static_cast<std::size_t>(part_of_family_[static_cast<std::size_t>(family)])];
    return p->second_order_zero(local_family_[static_cast<std::size_t>(family)]);
}

bool FreeProduct::tracial() const {
    for (const auto& p : parts_)
        if (!p->tracial()) return false;
    return true;
}

Rational FreeProduct::compute_kappa(const Word& w) const {
    auto [m, local] = localize(w);
    return m->kappa(local);
}

Rational FreeProduct::compute_kappa2(const Word& a, const Word& b) const {
    auto [m, la] = localize(a);
    auto lb = localize(b).second;
    return m->kappa2(la, lb);
}

// ---------------------------------------------------------------------------

namespace {
std::vector<Letter> grouped_alphabet(const std::vector<std::pair<std::string, Word>>& letters) {
    std::vector<Letter> out;
    for (const auto& [name, w] : letters) {
        if (w.empty()) throw Error("grouped letter '" + name + "' is empty");
        out.push_back({name, "grouped", name});
    }
    return out;
}
}  // namespace

GroupedModel::GroupedModel(ModelPtr base, std::vector<std::pair<std::string, Word>> letters, int truncation)
    : Model(grouped_alphabet(letters), truncation), base_(std::move(base)) {
    for (auto& [name, w] : letters) {
        for (int x : w)
            if (x < 0 || x >= base_->num_letters()) throw Error("grouped letter '" + name + "' uses an unknown letter");
        expansion_.push_back(w);
    }
}

Word GroupedModel::expand(const Word& w) const {
    Word out;
    for (int x : w) {
        const auto& e = expansion_[static_cast<std::size_t>(x)];
        out.insert(out.end(), e.begin(), e.end());
    }
    return out;
}

Rational GroupedModel::compute_phi(const Word& w) const { return base_->phi(expand(w)); }

Rational GroupedModel::compute_phi2(const Word& a, const Word& b) const { return base_->phi2(expand(a), expand(b)); }

}  // namespace sofree
