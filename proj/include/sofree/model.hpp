#pragma once

// Second-order *-distributions over a finite alphabet.
//
// A model answers four questions about words: kappa, kappa2, phi and phi2.
// Subclasses supply one side (cumulants or moments) for words inside a
// single family; the other side, and everything about mixed words, comes
// from the moment-cumulant formula with mixed cumulants set to zero.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sofree/rational.hpp"

namespace sofree {

using Word = std::vector<int>;

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept;
};

struct Letter {
    std::string name;
    std::string family;
    std::string star;  // name of the adjoint letter; equal to name when self-adjoint
};

// Write-once memo. Values are computed outside the lock; a concurrent
// duplicate computation yields the same value and the first insert wins.
class Memo {
public:
    const Rational* find(const Word& key) const;
    const Rational& insert(const Word& key, Rational value) const;
    std::size_t size() const;

private:
    mutable std::mutex mu_;
    mutable std::unordered_map<Word, Rational, WordHash> map_;
};

class Model {
public:
    explicit Model(std::vector<Letter> alphabet, int truncation);
    virtual ~Model() = default;
    Model(const Model&) = delete;
    Model& operator=(const Model&) = delete;

    const std::vector<Letter>& alphabet() const { return alphabet_; }
    int num_letters() const { return static_cast<int>(alphabet_.size()); }
    int letter_index(std::string_view name) const;
    int star_of(int letter) const { return star_[static_cast<std::size_t>(letter)]; }
    int family_of(int letter) const { return family_[static_cast<std::size_t>(letter)]; }
    const std::vector<std::string>& families() const { return family_names_; }
    int truncation() const { return truncation_; }

    // "c.c*.c" <-> word
    Word parse_word(std::string_view text) const;
    std::string word_text(const Word& w) const;
    Word star_word(const Word& w) const;  // (x1...xn)* = xn*...x1*

    bool single_family(const Word& w) const;
    bool single_family(const Word& a, const Word& b) const;

    // Mixed cumulants vanish; empty arguments are rejected.
    const Rational& kappa(const Word& w) const;
    const Rational& kappa2(const Word& w1, const Word& w2) const;
    // phi of the empty word is 1; phi2 with an empty side is 0.
    const Rational& phi(const Word& w) const;
    const Rational& phi2(const Word& w1, const Word& w2) const;

    // Largest nonzero cumulant length within the family (0: unbounded).
    virtual int max_block(int /*family*/) const { return 0; }
    // True when every second-order cumulant inside the family vanishes.
    virtual bool second_order_zero(int /*family*/) const { return false; }
    virtual bool tracial() const { return true; }
    // True when the model is defined by moments rather than cumulants.
    virtual bool moment_primary() const { return false; }
    virtual std::string kind() const = 0;

    std::size_t memo_entries() const;

    // Builtin description ("" for table-defined models); set once at build.
    const std::string& origin() const { return origin_; }
    void set_origin(std::string o) { origin_ = std::move(o); }

protected:
    // Single-family, nonempty words only. The defaults invert the other side.
    virtual Rational compute_kappa(const Word& w) const;
    virtual Rational compute_kappa2(const Word& w1, const Word& w2) const;
    // Any words. The defaults sum cumulants.
    virtual Rational compute_phi(const Word& w) const;
    virtual Rational compute_phi2(const Word& w1, const Word& w2) const;

    void check_truncation(std::size_t len) const;

private:
    std::vector<Letter> alphabet_;
    std::vector<int> star_;
    std::vector<int> family_;
    std::vector<std::string> family_names_;
    int truncation_;
    std::string origin_;
    Memo kappa_memo_, kappa2_memo_, phi_memo_, phi2_memo_;
};

using ModelPtr = std::shared_ptr<const Model>;

// Key for pair memos: w1, separator, w2.
Word pair_key(const Word& w1, const Word& w2);

// ---- concrete models ------------------------------------------------------

// Cumulants given by callables on single-family words.
class RuleModel : public Model {
public:
    using First = std::function<Rational(const Word&)>;
    using Second = std::function<Rational(const Word&, const Word&)>;
    RuleModel(std::string kind, std::vector<Letter> alphabet, int truncation, First first, Second second,
              int max_block = 0, bool second_zero = false);
    int max_block(int) const override { return max_block_; }
    bool second_order_zero(int) const override { return second_zero_; }
    std::string kind() const override { return kind_; }

protected:
    Rational compute_kappa(const Word& w) const override { return first_(w); }
    Rational compute_kappa2(const Word& a, const Word& b) const override { return second_(a, b); }

private:
    std::string kind_;
    First first_;
    Second second_;
    int max_block_;
    bool second_zero_;
};

// Moments given by callables; cumulants by inversion.
class MomentRuleModel : public Model {
public:
    using First = std::function<Rational(const Word&)>;
    using Second = std::function<Rational(const Word&, const Word&)>;
    MomentRuleModel(std::string kind, std::vector<Letter> alphabet, int truncation, First first, Second second);
    bool moment_primary() const override { return true; }
    std::string kind() const override { return kind_; }

protected:
    Rational compute_phi(const Word& w) const override { return first_(w); }
    Rational compute_phi2(const Word& a, const Word& b) const override { return second_(a, b); }

private:
    std::string kind_;
    First first_;
    Second second_;
};

// A single self-adjoint letter described by sequences. Exactly one side
// (cumulants or moments) is given; missing entries beyond the tables throw.
class SequenceModel : public Model {
public:
    struct Data {
        std::vector<Rational> first;                 // index n (entry 0 unused)
        std::map<std::pair<int, int>, Rational> second;
    };
    SequenceModel(std::string kind, std::string letter, Data data, bool moments, int truncation);
    bool moment_primary() const override { return moments_; }
    std::string kind() const override { return kind_; }
    const Data& data() const { return data_; }

protected:
    Rational compute_kappa(const Word& w) const override;
    Rational compute_kappa2(const Word& a, const Word& b) const override;
    Rational compute_phi(const Word& w) const override;
    Rational compute_phi2(const Word& a, const Word& b) const override;

private:
    const Rational& first_at(std::size_t n) const;
    const Rational& second_at(std::size_t p, std::size_t q) const;
    std::string kind_;
    Data data_;
    bool moments_;
};

// Explicit tables keyed by words, either cumulants or moments.
class TableModel : public Model {
public:
    TableModel(std::vector<Letter> alphabet, int truncation, bool moments,
               std::unordered_map<Word, Rational, WordHash> first, std::unordered_map<Word, Rational, WordHash> second);
    bool moment_primary() const override { return moments_; }
    bool tracial() const override { return tracial_; }
    std::string kind() const override { return "table"; }
    const std::unordered_map<Word, Rational, WordHash>& first_table() const { return first_; }
    const std::unordered_map<Word, Rational, WordHash>& second_table() const { return second_; }
    void set_tracial(bool t) { tracial_ = t; }

protected:
    Rational compute_kappa(const Word& w) const override;
    Rational compute_kappa2(const Word& a, const Word& b) const override;
    Rational compute_phi(const Word& w) const override;
    Rational compute_phi2(const Word& a, const Word& b) const override;

private:
    bool moments_;
    bool tracial_ = true;
    std::unordered_map<Word, Rational, WordHash> first_, second_;
};

// Mutually free families. Letters keep their names; family names must differ.
class FreeProduct : public Model {
public:
    explicit FreeProduct(std::vector<ModelPtr> parts);
    int max_block(int family) const override;
    bool second_order_zero(int family) const override;
    bool tracial() const override;
    std::string kind() const override { return "free_product"; }
    const std::vector<ModelPtr>& parts() const { return parts_; }

protected:
    Rational compute_kappa(const Word& w) const override;
    Rational compute_kappa2(const Word& a, const Word& b) const override;

private:
    std::pair<const Model*, Word> localize(const Word& w) const;
    std::vector<ModelPtr> parts_;
    std::vector<int> part_of_letter_, local_letter_;
    std::vector<int> part_of_family_, local_family_;
};

// Letters are words over a base model; moments come from concatenation.
// All grouped letters form one family.
class GroupedModel : public Model {
public:
    GroupedModel(ModelPtr base, std::vector<std::pair<std::string, Word>> letters, int truncation);
    bool moment_primary() const override { return true; }
    std::string kind() const override { return "grouped"; }
    const Model& base() const { return *base_; }
    Word expand(const Word& w) const;

protected:
    Rational compute_phi(const Word& w) const override;
    Rational compute_phi2(const Word& a, const Word& b) const override;

private:
    ModelPtr base_;
    std::vector<Word> expansion_;
};

}  // namespace sofree
