#pragma once

// Permutations, set partitions and partitioned permutations.
//
// Points are 0-based inside the library and 1-based in every text form.
// Composition follows (p*q)(i) = p(q(i)).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sofree {

// Raised for malformed input text and violated preconditions.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when an enumeration would exceed its configured cap.
class CapExceeded : public Error {
public:
    using Error::Error;
};

using Cycle = std::vector<int>;

class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images);  // validates bijectivity

    static Permutation identity(int n);
    static Permutation full_cycle(int n);  // gamma_n = (1,2,...,n)
    static Permutation from_cycles(int n, const std::vector<Cycle>& cycles);
    // Cycle notation such as "(1,2)(3)(4,5)". Points absent from the text
    // are fixed; `n` of 0 means "largest point mentioned".
    static Permutation parse(std::string_view text, int n = 0);

    int size() const { return static_cast<int>(img_.size()); }
    int operator()(int i) const { return img_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& images() const { return img_; }

    Permutation inverse() const;
    // Cycles starting at their minimum, sorted by minimum.
    std::vector<Cycle> cycles() const;
    int num_cycles() const;
    int length() const { return size() - num_cycles(); }  // |p|
    bool is_identity() const;

    std::string to_string() const;  // canonical cycle notation, 1-based

    friend bool operator==(const Permutation& a, const Permutation& b) { return a.img_ == b.img_; }
    friend bool operator!=(const Permutation& a, const Permutation& b) { return a.img_ != b.img_; }
    friend bool operator<(const Permutation& a, const Permutation& b) { return a.img_ < b.img_; }

private:
    std::vector<int> img_;
};

Permutation compose(const Permutation& p, const Permutation& q);
inline Permutation operator*(const Permutation& p, const Permutation& q) { return compose(p, q); }
int length_metric(const Permutation& p);

// gamma_{m,n} = (1..m)(m+1..m+n).
Permutation gamma_annulus(int m, int n);

class SetPartition {
public:
    SetPartition() = default;
    // block_of[i] is any label; labels are renumbered canonically.
    explicit SetPartition(const std::vector<int>& block_of);

    static SetPartition singletons(int n);
    static SetPartition one(int n);
    static SetPartition from_blocks(int n, const std::vector<std::vector<int>>& blocks);
    static SetPartition of_cycles(const Permutation& p);  // 0_pi
    static SetPartition parse(std::string_view text, int n = 0);  // "{1,2|3,4}"

    int size() const { return static_cast<int>(label_.size()); }
    int block_of(int i) const { return label_[static_cast<std::size_t>(i)]; }
    int num_blocks() const { return nblocks_; }
    int length() const { return size() - nblocks_; }  // |U|
    std::vector<std::vector<int>> blocks() const;  // sorted, each sorted
    // Every block of *this lies inside a block of `coarser`.
    bool refines(const SetPartition& coarser) const;

    std::string to_string() const;

    friend bool operator==(const SetPartition& a, const SetPartition& b) { return a.label_ == b.label_; }
    friend bool operator!=(const SetPartition& a, const SetPartition& b) { return a.label_ != b.label_; }
    friend bool operator<(const SetPartition& a, const SetPartition& b) { return a.label_ < b.label_; }

private:
    std::vector<int> label_;  // canonical: first occurrence order
    int nblocks_ = 0;
};

SetPartition partition_join(const SetPartition& u, const SetPartition& v);

// (U, pi) with every cycle of pi inside a block of U.
class PartitionedPermutation {
public:
    PartitionedPermutation() = default;
    PartitionedPermutation(SetPartition u, Permutation pi);

    static PartitionedPermutation parse(std::string_view text);  // "[{..} ; (..)]"

    const SetPartition& partition() const { return u_; }
    const Permutation& permutation() const { return pi_; }
    int size() const { return pi_.size(); }
    int length() const { return 2 * u_.length() - pi_.length(); }

    std::string to_string() const;

    friend bool operator==(const PartitionedPermutation& a, const PartitionedPermutation& b) {
        return a.u_ == b.u_ && a.pi_ == b.pi_;
    }
    friend bool operator<(const PartitionedPermutation& a, const PartitionedPermutation& b) {
        if (a.pi_ != b.pi_) return a.pi_ < b.pi_;
        return a.u_ < b.u_;
    }

private:
    SetPartition u_;
    Permutation pi_;
};

int pp_length(const PartitionedPermutation& x);
PartitionedPermutation pp_product(const PartitionedPermutation& x, const PartitionedPermutation& y);
bool is_exact_factorization(const PartitionedPermutation& x, const PartitionedPermutation& y,
                            const PartitionedPermutation& target);

// `a` holds 0-based points.
bool separates_points(const Permutation& s, const std::vector<int>& a);
// The induced permutation on `a`, extended by fixed points outside `a` so it
// stays a permutation of the same ground set.
Permutation induced_permutation(const Permutation& s, const std::vector<int>& a);

struct PermutationHash {
    std::size_t operator()(const Permutation& p) const noexcept;
};

}  // namespace sofree
