#include "sofree/rational.hpp"

#include <stdexcept>

namespace sofree {

std::string to_wire(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_text(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_str();
}

Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty rational");
    for (char c : s) {
        if (!(c == '-' || c == '+' || c == '/' || (c >= '0' && c <= '9')))
            throw std::invalid_argument("malformed rational '" + s + "'");
    }
    if (s.front() == '+') s.erase(s.begin());
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational '" + s + "'");
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

Rational frac(long a, long b) {
    if (b == 0) throw std::invalid_argument("zero denominator");
    Rational r(a, b);
    r.canonicalize();
    return r;
}

Rational binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return Rational(0);
    mpz_class z;
    mpz_bin_uiui(z.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(z);
}

Rational catalan(long n) {
    if (n < 0) return Rational(0);
    return binomial(2 * n, n) / Rational(n + 1);
}

}  // namespace sofree
