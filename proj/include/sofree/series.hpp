#pragma once

// Truncated formal power series in one and two variables with exact
// coefficients. A series knows the last degree it is exact to (its cutoff);
// every operation reports the cutoff its result is still exact to.

#include <string>
#include <vector>

#include <json.hpp>

#include "sofree/rational.hpp"
#include "sofree/seq.hpp"

namespace sofree {

class Series1 {
public:
    Series1() = default;
    explicit Series1(int cutoff);  // zero series
    Series1(std::vector<Rational> coeffs, int cutoff);

    static Series1 monomial(int degree, Rational c, int cutoff);
    static Series1 constant(Rational c, int cutoff) { return monomial(0, std::move(c), cutoff); }

    int cutoff() const { return cutoff_; }
    const Rational& operator[](int d) const;  // zero past the stored terms
    void set(int d, Rational c);
    bool is_zero() const;

    Series1 truncated(int cutoff) const;
    Series1 shifted(int k) const;  // t^k f, exact to cutoff + k

    friend Series1 operator+(const Series1& a, const Series1& b);
    friend Series1 operator-(const Series1& a, const Series1& b);
    friend Series1 operator*(const Series1& a, const Series1& b);
    Series1 scaled(const Rational& c) const;

    Series1 reciprocal() const;         // nonzero constant term
    Series1 compose(const Series1& inner) const;  // inner(0) == 0
    Series1 derive() const;             // exact to cutoff - 1
    Series1 log1p() const;              // log(1 + f), f(0) == 0

    nlohmann::json to_json() const;     // sparse {"degree": "num/den"}
    std::string to_string(const char* var = "t") const;

private:
    std::vector<Rational> c_;
    int cutoff_ = 0;
};

class Series2 {
public:
    Series2() = default;
    Series2(int cu, int cv);

    int cutoff_u() const { return cu_; }
    int cutoff_v() const { return cv_; }
    const Rational& at(int i, int j) const;
    void set(int i, int j, Rational c);
    bool is_zero() const;

    Series2 truncated(int cu, int cv) const;
    Series2 shifted(int ku, int kv) const;

    friend Series2 operator+(const Series2& a, const Series2& b);
    friend Series2 operator-(const Series2& a, const Series2& b);
    friend Series2 operator*(const Series2& a, const Series2& b);
    Series2 scaled(const Rational& c) const;

    Series2 derive_u() const;
    Series2 derive_v() const;
    Series2 log1p() const;               // f(0,0) == 0
    // B(f(u), g(v)) with f(0) == g(0) == 0.
    Series2 compose(const Series1& f, const Series1& g) const;
    Series2 swapped() const;             // F(v, u)

    static Series2 product(const Series1& f, const Series1& g);  // f(u) g(v)

    nlohmann::json to_json() const;      // sparse {"i,j": "num/den"}
    std::string to_string() const;

private:
    std::vector<std::vector<Rational>> c_;
    int cu_ = 0, cv_ = 0;
};

// With u = 1/z: C = u (1 + sum kappa_n u^n) and B(t) = sum beta_n t^(n-1).
// Returns u/C + u B(C) - 1, which must vanish. Both sequences need indices
// up to cutoff. The same identity links moments (as kappa) and cumulants
// (as beta).
Series1 check_first_order_relation(const seq::Seq& kappa, const seq::Seq& beta, int cutoff);

// Coefficient (p, q) of the result is that of u^(p+1) v^(q+1) in
//   C(u,v) - u^2 v^2 C_u C_v B(C(u), C(v)) - u^2 v^2 d_u d_v log D(u,v)
// where C(u,v) = uv sum kappa2_{p,q} u^p v^q, B(s,t) = sum beta2_{p,q} s^(p-1) t^(q-1)
// and D = (C(u) - C(v)) / (u - v), whose constant term is 1. The part of the
// log that depends on one variable only is dropped: the mixed derivative
// kills it. Valid for p, q <= cutoff; `kappa` must reach 2 * cutoff.
// With max_total >= 0 only p + q <= max_total is checked, and the tables
// need only reach that total.
Series2 check_second_order_relation(const seq::Seq& kappa, const seq::Grid& kappa2, const seq::Grid& beta2,
                                    int cutoff, int max_total = -1);

// (F(u) - F(v)) / (u - v) by exact division; throws if it does not divide.
Series2 divided_difference(const Series1& f);

}  // namespace sofree
