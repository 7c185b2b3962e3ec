#pragma once

// Summation engines behind the moment-cumulant formulas.
//
// The search walks non-crossing structures position by position and
// drops a branch as soon as a finished block has a zero cumulant, a
// block mixes families, or a block outgrows its family's largest nonzero
// cumulant. Pair-only families therefore cost about as much as pairings.

#include <functional>
#include <vector>

#include "sofree/model.hpp"

namespace sofree::engine {

// Called for each nonzero term. `joined` is null for a plain permutation,
// otherwise the two cycle minima merged into one block.
using Observer = std::function<void(const std::vector<int>& img, const std::pair<int, int>* joined,
                                    const Rational& term)>;

struct Options {
    bool skip_top = false;                      // omit (1, gamma)
    const std::vector<int>* kr_separates = nullptr;  // pi^-1 gamma separates these points
    const Observer* observer = nullptr;
    bool snc_only = false;                      // annulus: skip the PS' part
};

// Sum over NC(n) of kappa_pi(w).
Rational disc(const Model& m, const Word& w, const Options& opt = {});
// Sum over S_NC(m,n) of kappa_pi plus sum over PS_NC(m,n)' of kappa_(U,pi).
Rational annulus(const Model& m, const Word& w1, const Word& w2, const Options& opt = {});

// kappa_pi(w) for a permutation on |w| points, each cycle read from its minimum.
Rational kappa_of_perm(const Model& m, const Word& w, const std::vector<int>& img);

}  // namespace sofree::engine
