#pragma once

// Moment-cumulant calculus on words: multiplicative extensions, both
// transforms, and cumulants with products as arguments.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sofree/engines.hpp"
#include "sofree/model.hpp"
#include "sofree/perm.hpp"

namespace sofree {

using Table1 = std::map<Word, Rational>;
using Table2 = std::map<std::pair<Word, Word>, Rational>;

// kappa_(U,pi)(w). Blocks must be single cycles or unions of two cycles; a
// joined block is read as kappa_{r,s} with the cycle of smaller minimum first.
Rational kappa_multiplicative(const PartitionedPermutation& x, const Word& w, const Model& m);
Rational kappa_multiplicative(const Permutation& p, const Word& w, const Model& m);
// The same product written out, e.g. "k3(1,3,2)*k1,1(4|5)".
std::string kappa_expression(const PartitionedPermutation& x);

// Sums of cumulants, whatever side the model was defined on.
Rational phi_from_kappa(const Word& w, const Model& m);
Rational phi2_from_kappa(const Word& w1, const Word& w2, const Model& m);

// Every word over the alphabet up to the given length, shortlex order.
std::vector<Word> words_up_to(const Model& m, int order);
// Pairs with |w1| + |w2| <= order.
std::vector<std::pair<Word, Word>> word_pairs_up_to(const Model& m, int order);

// Tables of all cumulants (resp. moments) up to the order.
Table1 kappa_from_phi(const Model& m, int order);
Table2 kappa2_from_phi(const Model& m, int order);
Table1 phi_table(const Model& m, int order);
Table2 phi2_table(const Model& m, int order);

// Which form of the constraint selects the pi's; all three agree.
enum class PaaForm { separation, join, o_form };

// kappa_k(g_1, ..., g_k) where each argument is the product of its group.
Rational products_as_arguments_first(const std::vector<Word>& groups, const Model& m,
                                     PaaForm form = PaaForm::separation);
// kappa_{r,s}(g_1 ... g_r ; h_1 ... h_s).
Rational products_as_arguments_second(const std::vector<Word>& left, const std::vector<Word>& right, const Model& m,
                                      const engine::Observer* observer = nullptr);

// The pi in NC(n) (resp. (V,pi) in PS_NC(p,q)) selected by the constraint for
// the given group sizes.
std::vector<Permutation> paa_first_terms(const std::vector<int>& group_sizes, PaaForm form = PaaForm::separation);
std::vector<PartitionedPermutation> paa_second_terms(const std::vector<int>& left_sizes,
                                                     const std::vector<int>& right_sizes);

// Last point of each group, 0-based.
std::vector<int> group_ends(const std::vector<int>& sizes);

}  // namespace sofree
