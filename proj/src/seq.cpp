#include "sofree/seq.hpp"

#include <algorithm>
#include <stdexcept>

#include "sofree/perm.hpp"

namespace sofree::seq {

Grid make_grid(int p, int q) {
    return Grid(static_cast<std::size_t>(p + 1), std::vector<Rational>(static_cast<std::size_t>(q + 1)));
}

namespace {

using std::size_t;

// powers[s][j] = [x^j] M(x)^s for j <= limit, M(x) = sum m_g x^g.
std::vector<Seq> powers(const Seq& m, size_t smax, size_t limit) {
    std::vector<Seq> pw(smax + 1, Seq(limit + 1));
    pw[0][0] = 1;
    for (size_t s = 1; s <= smax; ++s)
        for (size_t j = 0; j <= limit; ++j)
            for (size_t g = 0; g <= j && g < m.size(); ++g)
                if (sgn(pw[s - 1][j - g]) != 0) pw[s][j] += m[g] * pw[s - 1][j - g];
    return pw;
}

// W(n,a) = (n/a) [x^{n-a}] M^a: sum over a-subsets of the n-cycle of the
// products of moments of the gaps.
Grid gap_weights(const Seq& m, size_t nmax) {
    auto pw = powers(m, nmax, nmax);
    Grid w(nmax + 1, Seq(nmax + 1));
    for (size_t n = 1; n <= nmax; ++n)
        for (size_t a = 1; a <= n; ++a)
            w[n][a] = frac(static_cast<long>(n), static_cast<long>(a)) * pw[a][n - a];
    return w;
}

// T(a,b): sum over S_NC(a,b) with every cycle through of kappa_pi.
// A cyclic arrangement of k through blocks on the annulus with a_i outer and
// b_i inner points; (ab/k) counts rotations on both circles.
Grid through_sums(const Seq& kappa, size_t A, size_t B, size_t total) {
    size_t kmax = std::min(A, B);
    // P[k][a][b] = sum over compositions of a, b into k positive parts of prod kappa_{a_i+b_i}
    std::vector<Grid> P(kmax + 1, Grid(A + 1, Seq(B + 1)));
    for (size_t a = 1; a <= A; ++a)
        for (size_t b = 1; b <= B && a + b <= total; ++b) P[1][a][b] = kappa[a + b];
    for (size_t k = 2; k <= kmax; ++k)
        for (size_t a = k; a <= A; ++a)
            for (size_t b = k; b <= B && a + b <= total; ++b)
                for (size_t a1 = 1; a1 + (k - 1) <= a; ++a1)
                    for (size_t b1 = 1; b1 + (k - 1) <= b; ++b1) {
                        const Rational& rest = P[k - 1][a - a1][b - b1];
                        if (sgn(rest) != 0) P[k][a][b] += kappa[a1 + b1] * rest;
                    }
    Grid t(A + 1, Seq(B + 1));
    for (size_t a = 1; a <= A; ++a)
        for (size_t b = 1; b <= B; ++b)
            for (size_t k = 1; k <= std::min(a, b); ++k)
                if (sgn(P[k][a][b]) != 0)
                    t[a][b] += frac(static_cast<long>(a * b), static_cast<long>(k)) * P[k][a][b];
    return t;
}

size_t check_lengths(const Seq& kappa, const Seq& moments, size_t P, size_t Q, int max_total) {
    size_t total = max_total < 0 ? P + Q : std::min(P + Q, static_cast<size_t>(max_total));
    if (kappa.size() < total + 1 || moments.size() < std::min(total, std::max(P, Q)) + 1)
        throw Error("sequence transform needs first-order data up to " + std::to_string(total));
    return total;
}

// Everything except the kappa2 part, plus the kappa2 part restricted to
// the cells already present in `k2`.
Grid assemble(const Seq& kappa, const Seq& moments, const Grid& k2, size_t P, size_t Q, size_t total, bool solve) {
    auto t = through_sums(kappa, P, Q, total);
    auto w = gap_weights(moments, std::min(total, std::max(P, Q)));
    Grid out(P + 1, Seq(Q + 1));
    Grid solved = solve ? Grid(P + 1, Seq(Q + 1)) : k2;
    for (size_t p = 1; p <= P; ++p)
        for (size_t q = 1; q <= Q && p + q <= total; ++q) {
            Rational s;
            for (size_t a = 1; a <= p; ++a)
                for (size_t b = 1; b <= q; ++b) {
                    if (sgn(t[a][b]) != 0) s += t[a][b] * w[p][a] * w[q][b];
                    if (a == p && b == q) continue;
                    if (sgn(solved[a][b]) != 0) s += solved[a][b] * w[p][a] * w[q][b];
                }
            if (solve) {
                solved[p][q] = k2[p][q] - s;
                out[p][q] = solved[p][q];
            } else {
                out[p][q] = s + solved[p][q];
            }
        }
    return out;
}

}  // namespace

Seq moments_from_cumulants(const Seq& kappa) {
    size_t N = kappa.empty() ? 0 : kappa.size() - 1;
    Seq m(N + 1);
    m[0] = 1;
    // pw[s][j] grows as moments become known; recomputed per n is O(N^4),
    // fine for the orders used here.
    for (size_t n = 1; n <= N; ++n) {
        auto pw = powers(m, n, n);
        Rational s;
        for (size_t k = 1; k <= n; ++k)
            if (sgn(kappa[k]) != 0) s += kappa[k] * pw[k][n - k];
        m[n] = s;
    }
    return m;
}

Seq cumulants_from_moments(const Seq& moments) {
    if (moments.empty() || moments[0] != 1) throw Error("moment sequence must start with 1");
    size_t N = moments.size() - 1;
    auto pw = powers(moments, N, N);
    Seq k(N + 1);
    for (size_t n = 1; n <= N; ++n) {
        Rational s = moments[n];
        for (size_t j = 1; j < n; ++j)
            if (sgn(k[j]) != 0) s -= k[j] * pw[j][n - j];
        k[n] = s;
    }
    return k;
}

Grid phi2_from_kappa2(const Seq& kappa, const Seq& moments, const Grid& kappa2, int max_total) {
    size_t P = kappa2.size() - 1, Q = kappa2.at(0).size() - 1;
    size_t total = check_lengths(kappa, moments, P, Q, max_total);
    return assemble(kappa, moments, kappa2, P, Q, total, false);
}

Grid kappa2_from_phi2(const Seq& kappa, const Seq& moments, const Grid& phi2, int max_total) {
    size_t P = phi2.size() - 1, Q = phi2.at(0).size() - 1;
    size_t total = check_lengths(kappa, moments, P, Q, max_total);
    return assemble(kappa, moments, phi2, P, Q, total, true);
}

}  // namespace sofree::seq
