#pragma once

// Even and R-diagonal elements: verification, determining sequences, the
// square transforms, MT1 as a checker, hermitization, products of free
// variables, conjugation by a circular and powers of a Haar unitary.

#include <string>
#include <string_view>
#include <vector>

#include "sofree/model.hpp"
#include "sofree/seq.hpp"

namespace sofree {

struct Verdict {
    bool ok = true;
    std::string violation;  // first offending quantity, e.g. "phi(x^1) = 1"
};

// Single self-adjoint letter; up to total length `order`. Odd moments must
// vanish and kappa_{p,q} must vanish whenever p + q is odd.
Verdict verify_even(const Model& m, int order);
// `letter` names a (default: the first letter that is not self-adjoint).
Verdict verify_r_diagonal(const Model& m, int order, std::string_view letter = {});

// beta_n for 1 <= n <= order and beta_{p,q} for p + q <= order.
struct DeterminingSequence {
    int order = 0;
    seq::Seq first;
    seq::Grid second;
};
DeterminingSequence make_determining(int order);

DeterminingSequence determining_of_r_diagonal(const Model& m, int order, std::string_view letter = {});
DeterminingSequence determining_of_even(const Model& m, int order);

// Cumulants of a a* (or x^2): kappa_n for n <= order, kappa_{p,q} for p + q <= order.
struct SquareTables {
    int order = 0;
    seq::Seq first;
    seq::Grid second;
};
SquareTables square_cumulants(const DeterminingSequence& beta);
DeterminingSequence determining_from_square(const SquareTables& t);

// Every *-cumulant of x = r b up to the order, via products as arguments,
// must follow the R-diagonal pattern; each nonzero term is checked against
// the lemma that a starred group closes on its own neighbour.
struct Mt1Report {
    bool ok = true;
    std::vector<std::string> violations;
    long cumulants = 0;     // cumulants evaluated
    long terms = 0;         // nonzero terms inspected
    long lemma_checks = 0;  // starred groups checked in those terms
};
Mt1Report check_mt1(const ModelPtr& r, const ModelPtr& b, int order, std::string_view r_letter = {});

// Even element A with phi(A^2n) = phi((a a*)^n), fluctuations alike; valid
// for words of length up to `order`.
ModelPtr hermitization(const ModelPtr& r, int order, std::string_view letter = {});

// a = a_1 ... a_k, factors free with vanishing second order. Each factor
// is its model's first letter.
Rational product_free_moments(int k, const std::vector<ModelPtr>& factors, int p, int q);
Rational product_free_cumulants(int k, const std::vector<ModelPtr>& factors, int p, int q);

// Cumulants of c a c* with c circular and free from a.
struct ConjugationTable {
    int order = 0;
    seq::Seq first;        // kappa_n(cac*)
    seq::Grid second;      // kappa_{p,q}(cac*)
    bool matches = true;   // equal to phi(a^n) and phi2(a^p, a^q)
    std::vector<std::string> mismatches;
};
ConjugationTable conjugation_by_circular(const ModelPtr& a, int order);

// kappa_{m,n}(u^{s_1 p}, ..., u^{s_m p} ; u^{t_1 p}, ...), signs +1 / -1.
Rational haar_power_cumulant(int p, const std::vector<int>& left_signs, const std::vector<int>& right_signs);
// The same through products as arguments on the letters u, u*.
Rational haar_power_cumulant_paa(int p, const std::vector<int>& left_signs, const std::vector<int>& right_signs);

// c_{m,n} = (-1)^{m+n} kappa_{2m,2n}(u, u*, ...) for m + n <= order.
// The sign pattern is checked; the values are only reported.
struct HaarCTable {
    seq::Grid c;
    bool sign_pattern_ok = true;
};
HaarCTable haar_c_table(int order);

}  // namespace sofree
