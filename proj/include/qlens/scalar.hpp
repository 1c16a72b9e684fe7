/**
 * Exact coefficient ring Q[p^±1, q^±1, u^±1].
 *
 * Elements are finite sums  sum r · p^a q^b u^c  with rational r.  The unit
 * u stands for the phase e^{iθ/2}; conjugation fixes p, q and inverts u.
 * Working with the half-angle keeps every phase exponent that occurs in the
 * gluing maps (including β n²/2 for odd n) integral.
 */
#ifndef QLENS_SCALAR_HPP
#define QLENS_SCALAR_HPP

#include <gmpxx.h>

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qlens {

using Rational = mpq_class;

inline Rational rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

struct NumericValue {
    double re = 0.0;
    double im = 0.0;
};

class Scalar {
  public:
    // exponent triple (a, b, c) of p^a q^b u^c
    using Key = std::array<int, 3>;

    Scalar() = default;

    static Scalar zero() { return Scalar(); }

    static Scalar one() { return of(1); }

    static Scalar of(const Rational& r) { return monomial(0, 0, 0, r); }

    static Scalar of(long n, long d = 1) { return of(rational(n, d)); }

    static Scalar monomial(int a, int b, int c, const Rational& coeff) {
        Scalar s;
        if (coeff != 0) s.terms_[{a, b, c}] = coeff;
        return s;
    }

    static Scalar p(int e = 1) { return monomial(e, 0, 0, 1); }
    static Scalar q(int e = 1) { return monomial(0, e, 0, 1); }
    static Scalar u(int e = 1) { return monomial(0, 0, e, 1); }

    const std::map<Key, Rational>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first == Key{0, 0, 0} &&
               terms_.begin()->second == 1;
    }

    // true when the scalar is a single monomial r p^a q^b u^c
    bool is_monomial() const { return terms_.size() == 1; }

    Scalar& operator+=(const Scalar& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }

    Scalar& operator-=(const Scalar& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }

    Scalar operator-() const {
        Scalar r;
        for (const auto& [k, c] : terms_) r.terms_[k] = -c;
        return r;
    }

    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        Scalar r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_)
                r.add_term({ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]}, ca * cb);
        return r;
    }

    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool operator==(const Scalar& o) const { return terms_ == o.terms_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // complex conjugation: p, q and rational coefficients are real, u is a phase
    Scalar conj() const {
        Scalar r;
        for (const auto& [k, c] : terms_) r.terms_[{k[0], k[1], -k[2]}] = c;
        return r;
    }

    // substitution u -> u^-1 (same as conj on this ring; kept for readability
    // at call sites that mean the θ -> -θ parameter change)
    Scalar invert_u() const { return conj(); }

    // substitution u -> u^s, used when an expression stated for the angle θ
    // has to be read at the angle sθ
    Scalar substitute_u_power(int s) const {
        Scalar r;
        for (const auto& [k, c] : terms_) r.add_term({k[0], k[1], k[2] * s}, c);
        return r;
    }

    Scalar pow(int e) const {
        if (e < 0) throw std::domain_error("Scalar::pow: negative exponent");
        Scalar r = one();
        Scalar base = *this;
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    NumericValue eval(double p_val, double q_val, double theta_val) const {
        if (!(p_val > 0.0 && p_val < 1.0) || !(q_val > 0.0 && q_val < 1.0))
            throw std::domain_error("Scalar::eval: p and q must lie in (0,1)");
        std::complex<double> acc(0.0, 0.0);
        for (const auto& [k, c] : terms_) {
            double r = c.get_d();
            std::complex<double> phase = std::polar(1.0, 0.5 * theta_val * k[2]);
            acc += r * std::pow(p_val, k[0]) * std::pow(q_val, k[1]) * phase;
        }
        return {acc.real(), acc.imag()};
    }

    /**
     * Text form: terms joined by " + ", each term a signed rational followed
     * by optional "p^a q^b u^c" factors, e.g. "3/2 p^-1 u^5 + -1 q^2".
     * parse(str(s)) == s exactly.
     */
    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << c.get_str();
            if (k[0] != 0) os << " p^" << k[0];
            if (k[1] != 0) os << " q^" << k[1];
            if (k[2] != 0) os << " u^" << k[2];
        }
        return os.str();
    }

    static Scalar parse(const std::string& text) {
        Scalar out;
        size_t pos = 0;
        while (pos < text.size()) {
            size_t next = text.find(" + ", pos);
            std::string piece =
                text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
            out += parse_term(piece);
            if (next == std::string::npos) break;
            pos = next + 3;
        }
        return out;
    }

  private:
    void add_term(const Key& k, const Rational& c) {
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            if (c != 0) terms_[k] = c;
            return;
        }
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }

    static Scalar parse_term(const std::string& piece) {
        std::istringstream is(piece);
        std::string tok;
        if (!(is >> tok)) return Scalar::zero();
        Rational coeff(tok);
        coeff.canonicalize();
        int a = 0, b = 0, c = 0;
        while (is >> tok) {
            if (tok.size() < 3 || tok[1] != '^')
                throw std::invalid_argument("Scalar::parse: bad factor '" + tok + "'");
            int e = std::atoi(tok.c_str() + 2);
            switch (tok[0]) {
                case 'p': a = e; break;
                case 'q': b = e; break;
                case 'u': c = e; break;
                default: throw std::invalid_argument("Scalar::parse: bad variable '" + tok + "'");
            }
        }
        return monomial(a, b, c, coeff);
    }

    std::map<Key, Rational> terms_;
};

inline Scalar operator*(const Rational& r, const Scalar& s) { return Scalar::of(r) * s; }

/**
 * Gaussian binomial [n m] in the given variable (any invertible monomial,
 * normally p, q, p^-1 or q^-1).  Division-free: uses the recurrence
 * [n m] = var^{n-m} [n-1 m-1] + [n-1 m].
 */
inline Scalar qbinom(int n, int m, const Scalar& var) {
    if (n < 0 || m < 0 || m > n) throw std::domain_error("qbinom: need 0 <= m <= n");
    // row-by-row Pascal walk
    std::vector<Scalar> row(static_cast<size_t>(n) + 1, Scalar::zero());
    row[0] = Scalar::one();
    for (int i = 1; i <= n; ++i) {
        for (int j = std::min(i, m); j >= 1; --j)
            row[j] = var.pow(i - j) * row[j - 1] + row[j];
    }
    return row[m];
}

}  // namespace qlens

#endif
