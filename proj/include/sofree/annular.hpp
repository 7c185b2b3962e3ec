#pragma once

// Non-crossing discs and annuli, parity classes, doubling maps and the
// k-structure predicates used by the product theorem.

#include <functional>
#include <vector>

#include "sofree/perm.hpp"

namespace sofree {

struct Caps {
    int disc = 14;
    int annulus = 14;  // m + n
    int psnc = 12;     // m + n for partitioned enumerations
};

// Process-wide defaults; callers may pass their own.
const Caps& default_caps();

struct Shape {
    int m = 1;  // outer circle
    int n = 1;  // inner circle
    int total() const { return m + n; }
};

Permutation gamma_of(Shape s);

// |gamma| == |p| + |p^-1 gamma|, for any gamma on the same ground set.
bool is_geodesic(const Permutation& p, const Permutation& gamma);
bool is_noncrossing_disc(const Permutation& p);
Permutation kreweras(const Permutation& p, const Permutation& gamma);
Permutation kreweras_disc(const Permutation& p);
Permutation kreweras(const Permutation& p, Shape s);

// NC(n) as permutations, lexicographic on images.
std::vector<Permutation> enumerate_nc(int n, const Caps& caps = default_caps());
// Unordered streaming form; `frame` lists the points in cyclic order and
// the callback receives images of the NC permutation relative to it.
void for_each_nc_on_frame(const std::vector<int>& frame, int ground,
                          const std::function<void(const std::vector<int>&)>& f);

enum class AnnularTag { disc_nc, annular_nc, not_noncrossing };

struct AnnularClass {
    AnnularTag tag = AnnularTag::not_noncrossing;
    std::vector<Cycle> through_cycles;
};

bool is_through(const Cycle& c, Shape s);
AnnularClass classify_annular(const Permutation& p, Shape s);
bool is_annular_nc(const Permutation& p, Shape s);

// S_NC(m,n), lexicographic on images.
std::vector<Permutation> enumerate_snc(Shape s, const Caps& caps = default_caps());
// Streaming form of the cut enumeration; each element exactly once.
void for_each_snc(Shape s, const std::function<void(const Permutation&)>& f, const Caps& caps = default_caps());
// Filtration of the whole symmetric group; only for small shapes.
std::vector<Permutation> enumerate_snc_bruteforce(Shape s);

// Annular non-crossing pairings (at least one through pair); sides even.
std::vector<Permutation> enumerate_annular_pairings(Shape s, const Caps& caps = default_caps());

// gamma~ = gamma_{m,n} (k, gamma^-1 p(k)); k and p(k) on different circles.
Permutation unfold(const Permutation& p, Shape s, int k);

std::vector<PartitionedPermutation> enumerate_ps_nc_prime(Shape s, const Caps& caps = default_caps());
std::vector<PartitionedPermutation> enumerate_ps_nc(Shape s, const Caps& caps = default_caps());

bool is_even_cycles(const Permutation& p);

enum class Parity { reversing, preserving, not_even, not_annular };
const char* parity_name(Parity p);
Parity classify_parity(const Permutation& p, Shape s);

// Elements of S_NC whose cycles all meet both circles.
std::vector<Permutation> snc_all(Shape s, const Caps& caps = default_caps());
// Even, all through, every crossing step keeps the parity of the point.
std::vector<Permutation> snc_plus_all(Shape s, const Caps& caps = default_caps());
bool is_plus_all(const Permutation& p, Shape s);

// Odd positions {1,3,5,...} (1-based) as 0-based points.
std::vector<int> odd_points(int size);
// gamma p^-1 separates the odd points.
bool separates_odd(const Permutation& p, const Permutation& gamma);

// Disc double: pi(2k) = gamma(2k), pi(gamma(2k)) = 2 sigma(k).
Permutation hat_double(const Permutation& sigma);
Permutation undouble(const Permutation& pi_hat);

// Annular double of sigma on shape (p,q), living on (2p,2q).
Permutation uncheck(const Permutation& sigma, Shape half);
// Inverse of uncheck on S_NC^-(2p,2q) with gamma pi^-1 separating O.
Permutation check_map(const Permutation& pi, Shape doubled);

// Double of a set V: {2k, gamma(2k) : k in V}, 0-based in and out.
std::vector<int> double_set(const std::vector<int>& v, Shape half);
PartitionedPermutation hat_partitioned(const PartitionedPermutation& x, Shape half);
PartitionedPermutation unhat_partitioned(const PartitionedPermutation& y, Shape doubled);

// S_NC^+(2p,2q): even and parity preserving.
std::vector<Permutation> snc_plus(Shape doubled, const Caps& caps = default_caps());
// The elements of S_NC^+(2p,2q) with gamma pi^-1 separating O.
std::vector<Permutation> snc_plus_separating(Shape doubled, const Caps& caps = default_caps());

// Membership in the set grouped under (U, sigma) in PS_NC(p,q)': non-through
// cycles are doubles of cycles of sigma and the through cycles cover the
// double of the joined block. The argument is assumed to lie in S_NC^+.
class GroupedTest {
public:
    GroupedTest(const PartitionedPermutation& u_sigma, Shape half);
    bool contains(const Permutation& pi) const;

private:
    Shape doubled_;
    Permutation hat_;
    std::vector<char> joined_;
    int joined_size_ = 0;
};

// Members of S_NC^+(2p,2q) grouped under (U, sigma); `pool` defaults to all of S_NC^+.
std::vector<Permutation> snc_grouped(const PartitionedPermutation& u_sigma, Shape half,
                                     const Caps& caps = default_caps());
std::vector<Permutation> snc_grouped(const PartitionedPermutation& u_sigma, Shape half,
                                     const std::vector<Permutation>& pool);
bool in_grouped(const Permutation& pi, const PartitionedPermutation& u_sigma, Shape half);

struct KStructure {
    bool divisible = false;
    bool equal = false;
    bool alternating = false;
    bool preserving = false;
    bool completing = false;
};

// s is the scaled shape (kp, kq).
KStructure k_structure(const Permutation& p, Shape s, int k);
std::vector<Permutation> enumerate_snc_k_alt(Shape base, int k, const Caps& caps = default_caps());
std::vector<Permutation> enumerate_snc_k_alt_eq(Shape base, int k, const Caps& caps = default_caps());

}  // namespace sofree
