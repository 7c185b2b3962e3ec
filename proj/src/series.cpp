#include "sofree/series.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace sofree {

namespace {

const Rational& zero_q() {
    static const Rational z(0);
    return z;
}

void append_term(std::ostringstream& os, bool& first, const Rational& c, const std::string& mono) {
    if (c == 0) return;
    Rational a = abs(c);
    if (first) {
        if (c < 0) os << "-";
    } else {
        os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (mono.empty()) {
        os << to_text(a);
    } else if (a == 1) {
        os << mono;
    } else {
        os << to_text(a) << "*" << mono;
    }
}

std::string power_text(const char* var, int d) {
    if (d == 0) return "";
    if (d == 1) return var;
    return std::string(var) + "^" + std::to_string(d);
}

std::string join_mono(const std::string& a, const std::string& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    return a + "*" + b;
}

}  // namespace

// ---- Series1 ------------------------------------------------------------

Series1::Series1(int cutoff) : c_(static_cast<std::size_t>(std::max(cutoff, -1) + 1)), cutoff_(cutoff) {
    if (cutoff < 0) throw std::invalid_argument("series cutoff must be nonnegative");
}

Series1::Series1(std::vector<Rational> coeffs, int cutoff) : Series1(cutoff) {
    for (std::size_t d = 0; d < coeffs.size() && d < c_.size(); ++d) c_[d] = coeffs[d];
}

Series1 Series1::monomial(int degree, Rational c, int cutoff) {
    Series1 s(cutoff);
    if (degree <= cutoff) s.c_[static_cast<std::size_t>(degree)] = std::move(c);
    return s;
}

const Rational& Series1::operator[](int d) const {
    if (d < 0) return zero_q();
    if (d > cutoff_) throw std::out_of_range("series coefficient past its cutoff");
    return c_[static_cast<std::size_t>(d)];
}

void Series1::set(int d, Rational c) {
    if (d < 0 || d > cutoff_) throw std::out_of_range("series degree out of range");
    c_[static_cast<std::size_t>(d)] = std::move(c);
}

bool Series1::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r == 0; });
}

Series1 Series1::truncated(int cutoff) const {
    if (cutoff > cutoff_) throw std::invalid_argument("cannot extend a truncated series");
    return Series1(c_, cutoff);
}

Series1 Series1::shifted(int k) const {
    Series1 s(cutoff_ + k);
    for (int d = k; d <= s.cutoff_; ++d) s.c_[static_cast<std::size_t>(d)] = (*this)[d - k];
    return s;
}

Series1 operator+(const Series1& a, const Series1& b) {
    Series1 s(std::min(a.cutoff_, b.cutoff_));
    for (int d = 0; d <= s.cutoff_; ++d) s.c_[static_cast<std::size_t>(d)] = a[d] + b[d];
    return s;
}

Series1 operator-(const Series1& a, const Series1& b) {
    Series1 s(std::min(a.cutoff_, b.cutoff_));
    for (int d = 0; d <= s.cutoff_; ++d) s.c_[static_cast<std::size_t>(d)] = a[d] - b[d];
    return s;
}

Series1 operator*(const Series1& a, const Series1& b) {
    Series1 s(std::min(a.cutoff_, b.cutoff_));
    for (int i = 0; i <= s.cutoff_; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; i + j <= s.cutoff_; ++j) s.c_[static_cast<std::size_t>(i + j)] += a[i] * b[j];
    }
    return s;
}

Series1 Series1::scaled(const Rational& c) const {
    Series1 s(cutoff_);
    for (int d = 0; d <= cutoff_; ++d) s.c_[static_cast<std::size_t>(d)] = c * (*this)[d];
    return s;
}

Series1 Series1::reciprocal() const {
    if (c_[0] == 0) throw std::domain_error("reciprocal of a series with zero constant term");
    Series1 g(cutoff_);
    Rational inv = 1 / c_[0];
    g.c_[0] = inv;
    for (int n = 1; n <= cutoff_; ++n) {
        Rational acc = 0;
        for (int k = 1; k <= n; ++k) acc += (*this)[k] * g[n - k];
        g.c_[static_cast<std::size_t>(n)] = -inv * acc;
    }
    return g;
}

Series1 Series1::compose(const Series1& inner) const {
    if (inner[0] != 0) throw std::domain_error("composition needs an inner series without constant term");
    int cut = std::min(cutoff_, inner.cutoff_);
    Series1 out = constant(c_[0], cut);
    Series1 power = constant(Rational(1), cut);
    Series1 in = inner.truncated(cut);
    for (int n = 1; n <= cut; ++n) {
        power = power * in;
        if (c_[static_cast<std::size_t>(n)] != 0) out = out + power.scaled(c_[static_cast<std::size_t>(n)]);
    }
    return out;
}

Series1 Series1::derive() const {
    if (cutoff_ == 0) throw std::domain_error("derivative of a series exact only to degree 0");
    Series1 s(cutoff_ - 1);
    for (int d = 0; d < cutoff_; ++d) s.c_[static_cast<std::size_t>(d)] = Rational(d + 1) * (*this)[d + 1];
    return s;
}

Series1 Series1::log1p() const {
    if (c_[0] != 0) throw std::domain_error("log1p needs a series without constant term");
    Series1 out(cutoff_);
    Series1 power = constant(Rational(1), cutoff_);
    for (int n = 1; n <= cutoff_; ++n) {
        power = power * (*this);
        out = out + power.scaled(frac(n % 2 == 1 ? 1 : -1, n));
    }
    return out;
}

nlohmann::json Series1::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (int d = 0; d <= cutoff_; ++d)
        if ((*this)[d] != 0) j[std::to_string(d)] = to_wire((*this)[d]);
    return j;
}

std::string Series1::to_string(const char* var) const {
    std::ostringstream os;
    bool first = true;
    for (int d = 0; d <= cutoff_; ++d) append_term(os, first, (*this)[d], power_text(var, d));
    if (first) os << "0";
    os << " + O(" << power_text(var, cutoff_ + 1) << ")";
    return os.str();
}

// ---- Series2 ------------------------------------------------------------

Series2::Series2(int cu, int cv) : cu_(cu), cv_(cv) {
    if (cu < 0 || cv < 0) throw std::invalid_argument("series cutoff must be nonnegative");
    c_.assign(static_cast<std::size_t>(cu + 1), std::vector<Rational>(static_cast<std::size_t>(cv + 1)));
}

const Rational& Series2::at(int i, int j) const {
    if (i < 0 || j < 0) return zero_q();
    if (i > cu_ || j > cv_) throw std::out_of_range("series coefficient past its cutoff");
    return c_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

void Series2::set(int i, int j, Rational c) {
    if (i < 0 || j < 0 || i > cu_ || j > cv_) throw std::out_of_range("series degree out of range");
    c_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::move(c);
}

bool Series2::is_zero() const {
    for (const auto& row : c_)
        for (const auto& x : row)
            if (x != 0) return false;
    return true;
}

Series2 Series2::truncated(int cu, int cv) const {
    if (cu > cu_ || cv > cv_) throw std::invalid_argument("cannot extend a truncated series");
    Series2 s(cu, cv);
    for (int i = 0; i <= cu; ++i)
        for (int j = 0; j <= cv; ++j) s.set(i, j, at(i, j));
    return s;
}

Series2 Series2::shifted(int ku, int kv) const {
    Series2 s(cu_ + ku, cv_ + kv);
    for (int i = ku; i <= s.cu_; ++i)
        for (int j = kv; j <= s.cv_; ++j) s.set(i, j, at(i - ku, j - kv));
    return s;
}

Series2 operator+(const Series2& a, const Series2& b) {
    Series2 s(std::min(a.cu_, b.cu_), std::min(a.cv_, b.cv_));
    for (int i = 0; i <= s.cu_; ++i)
        for (int j = 0; j <= s.cv_; ++j) s.set(i, j, a.at(i, j) + b.at(i, j));
    return s;
}

Series2 operator-(const Series2& a, const Series2& b) {
    Series2 s(std::min(a.cu_, b.cu_), std::min(a.cv_, b.cv_));
    for (int i = 0; i <= s.cu_; ++i)
        for (int j = 0; j <= s.cv_; ++j) s.set(i, j, a.at(i, j) - b.at(i, j));
    return s;
}

Series2 operator*(const Series2& a, const Series2& b) {
    Series2 s(std::min(a.cu_, b.cu_), std::min(a.cv_, b.cv_));
    for (int i1 = 0; i1 <= s.cu_; ++i1)
        for (int j1 = 0; j1 <= s.cv_; ++j1) {
            const Rational& x = a.at(i1, j1);
            if (x == 0) continue;
            for (int i2 = 0; i1 + i2 <= s.cu_; ++i2)
                for (int j2 = 0; j1 + j2 <= s.cv_; ++j2)
                    s.c_[static_cast<std::size_t>(i1 + i2)][static_cast<std::size_t>(j1 + j2)] += x * b.at(i2, j2);
        }
    return s;
}

Series2 Series2::scaled(const Rational& c) const {
    Series2 s(cu_, cv_);
    for (int i = 0; i <= cu_; ++i)
        for (int j = 0; j <= cv_; ++j) s.set(i, j, c * at(i, j));
    return s;
}

Series2 Series2::derive_u() const {
    if (cu_ == 0) throw std::domain_error("derivative of a series exact only to degree 0");
    Series2 s(cu_ - 1, cv_);
    for (int i = 0; i < cu_; ++i)
        for (int j = 0; j <= cv_; ++j) s.set(i, j, Rational(i + 1) * at(i + 1, j));
    return s;
}

Series2 Series2::derive_v() const { return swapped().derive_u().swapped(); }

Series2 Series2::swapped() const {
    Series2 s(cv_, cu_);
    for (int i = 0; i <= cu_; ++i)
        for (int j = 0; j <= cv_; ++j) s.set(j, i, at(i, j));
    return s;
}

Series2 Series2::log1p() const {
    if (at(0, 0) != 0) throw std::domain_error("log1p needs a series without constant term");
    Series2 out(cu_, cv_);
    Series2 power(cu_, cv_);
    power.set(0, 0, Rational(1));
    for (int n = 1; n <= cu_ + cv_; ++n) {
        power = power * (*this);
        out = out + power.scaled(frac(n % 2 == 1 ? 1 : -1, n));
    }
    return out;
}

Series2 Series2::product(const Series1& f, const Series1& g) {
    Series2 s(f.cutoff(), g.cutoff());
    for (int i = 0; i <= f.cutoff(); ++i)
        for (int j = 0; j <= g.cutoff(); ++j) s.set(i, j, f[i] * g[j]);
    return s;
}

Series2 Series2::compose(const Series1& f, const Series1& g) const {
    if (f[0] != 0 || g[0] != 0) throw std::domain_error("composition needs inner series without constant term");
    int cu = std::min(cu_, f.cutoff()), cv = std::min(cv_, g.cutoff());
    std::vector<Series1> fp{Series1::constant(Rational(1), cu)}, gp{Series1::constant(Rational(1), cv)};
    for (int p = 1; p <= cu; ++p) fp.push_back(fp.back() * f.truncated(cu));
    for (int q = 1; q <= cv; ++q) gp.push_back(gp.back() * g.truncated(cv));
    Series2 out(cu, cv);
    for (int p = 0; p <= cu; ++p)
        for (int q = 0; q <= cv; ++q)
            if (at(p, q) != 0)
                out = out + product(fp[static_cast<std::size_t>(p)], gp[static_cast<std::size_t>(q)]).scaled(at(p, q));
    return out;
}

nlohmann::json Series2::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (int i = 0; i <= cu_; ++i)
        for (int k = 0; k <= cv_; ++k)
            if (at(i, k) != 0) j[std::to_string(i) + "," + std::to_string(k)] = to_wire(at(i, k));
    return j;
}

std::string Series2::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int d = 0; d <= cu_ + cv_; ++d)
        for (int i = std::max(0, d - cv_); i <= std::min(d, cu_); ++i)
            append_term(os, first, at(i, d - i), join_mono(power_text("u", i), power_text("v", d - i)));
    if (first) os << "0";
    os << " + O(" << power_text("u", cu_ + 1) << ", " << power_text("v", cv_ + 1) << ")";
    return os.str();
}

// ---- relations ------------------------------------------------------------

Series2 divided_difference(const Series1& f) {
    int c = f.cutoff();
    if (c < 1) throw std::invalid_argument("divided difference needs a series exact to degree 1");
    // G = F(u) - F(v); H = G / (u - v) satisfies H[a][b] = sum_k G[a+1+k][b-k].
    auto g = [&](int i, int j) -> Rational {
        Rational r = 0;
        if (j == 0) r += f[i];
        if (i == 0) r -= f[j];
        return r;
    };
    int half = (c - 1) / 2;
    Series2 h(half, half);
    for (int a = 0; a <= half; ++a)
        for (int b = 0; b <= half; ++b) {
            Rational acc = 0;
            for (int k = 0; k <= b; ++k) acc += g(a + 1 + k, b - k);
            h.set(a, b, acc);
        }
    // (u - v) H must give back G wherever both are known.
    for (int i = 0; i <= half; ++i)
        for (int j = 0; j <= half; ++j)
            if (h.at(i - 1, j) - h.at(i, j - 1) != g(i, j))
                throw std::logic_error("divided difference: no exact division by (u - v)");
    return h;
}

Series1 check_first_order_relation(const seq::Seq& kappa, const seq::Seq& beta, int cutoff) {
    if (cutoff < 1) throw std::invalid_argument("cutoff must be positive");
    if (static_cast<int>(kappa.size()) < cutoff + 1 || static_cast<int>(beta.size()) < cutoff + 1)
        throw std::invalid_argument("first-order relation: sequences too short for the cutoff");
    Series1 k = Series1::constant(Rational(1), cutoff);
    for (int n = 1; n <= cutoff; ++n) k.set(n, kappa[static_cast<std::size_t>(n)]);
    Series1 c = k.shifted(1);
    // u B(C) is only needed to degree cutoff, so B to degree cutoff - 1.
    Series1 b(cutoff - 1);
    for (int n = 1; n <= cutoff; ++n) b.set(n - 1, beta[static_cast<std::size_t>(n)]);
    Series1 residual = k.reciprocal() + b.compose(c).shifted(1) - Series1::constant(Rational(1), cutoff);
    return residual.truncated(cutoff);
}

Series2 check_second_order_relation(const seq::Seq& kappa_in, const seq::Grid& kappa2_in, const seq::Grid& beta2_in,
                                    int cutoff, int max_total) {
    const int n = cutoff;
    if (n < 1) throw std::invalid_argument("cutoff must be positive");
    const bool tri = max_total >= 0;
    auto reaches = [n, tri, max_total](const seq::Grid& g) {
        for (int p = 1; p <= n; ++p)
            for (int q = 1; q <= n; ++q)
                if ((!tri || p + q <= max_total) &&
                    (static_cast<int>(g.size()) <= p || static_cast<int>(g[static_cast<std::size_t>(p)].size()) <= q))
                    return false;
        return true;
    };
    const int need = tri ? std::min(2 * n, max_total) : 2 * n;
    if (static_cast<int>(kappa_in.size()) < need + 1 || !reaches(kappa2_in) || !reaches(beta2_in))
        throw std::invalid_argument("second-order relation: tables too short for the cutoff");
    // Entries outside the triangle only reach residuals outside it; pad with zeros.
    seq::Seq kappa(static_cast<std::size_t>(2 * n + 1));
    for (int k = 1; k <= need; ++k) kappa[static_cast<std::size_t>(k)] = kappa_in[static_cast<std::size_t>(k)];
    seq::Grid kappa2 = seq::make_grid(n, n), beta2 = seq::make_grid(n, n);
    for (int p = 1; p <= n; ++p)
        for (int q = 1; q <= n; ++q)
            if (!tri || p + q <= max_total) {
                kappa2[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] =
                    kappa2_in[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
                beta2[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)] =
                    beta2_in[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
            }

    const int m = n + 1;  // the u^(p+1) v^(q+1) coefficients are needed up to p, q = n
    Series1 c(2 * n + 1);
    c.set(1, Rational(1));
    for (int k = 1; k <= 2 * n; ++k) c.set(k + 1, kappa[static_cast<std::size_t>(k)]);

    Series2 lhs(m, m);
    for (int p = 1; p <= n; ++p)
        for (int q = 1; q <= n; ++q) lhs.set(p + 1, q + 1, kappa2[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)]);

    // dC/dz = -u^2 dC/du; the two signs cancel.
    Series1 cm = c.truncated(m);
    Series1 dc = cm.derive();
    Series2 b(n - 1, n - 1);
    for (int p = 1; p <= n; ++p)
        for (int q = 1; q <= n; ++q) b.set(p - 1, q - 1, beta2[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)]);
    Series2 first = (Series2::product(dc, dc) * b.compose(cm, cm)).shifted(2, 2);

    Series2 d = divided_difference(c);
    Series2 unit(d.cutoff_u(), d.cutoff_v());
    unit.set(0, 0, Rational(1));
    Series2 second = (d - unit).log1p().derive_u().derive_v().shifted(2, 2);

    Series2 full = (lhs - first - second).truncated(m, m);
    Series2 out(n, n);
    for (int p = 0; p <= n; ++p)
        for (int q = 0; q <= n; ++q)
            if (!tri || p + q <= max_total) out.set(p, q, full.at(p + 1, q + 1));
    // Terms with a bare u or v would have no kappa2 counterpart.
    for (int i = 0; i <= m; ++i)
        if (full.at(i, 0) != 0 || full.at(0, i) != 0)
            throw std::logic_error("second-order relation: nonzero term without a uv factor");
    return out;
}

}  // namespace sofree
