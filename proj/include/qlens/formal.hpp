/**
 * Formal words in the lens-space generators xi, z, a, b and their stars,
 * with Scalar coefficients.  One relation table serves both the exact glued
 * evaluation and the truncated operator evaluation.
 */
#ifndef QLENS_FORMAL_HPP
#define QLENS_FORMAL_HPP

#include <functional>
#include <string>
#include <vector>

#include "qlens/scalar.hpp"

namespace qlens {

enum class LSym { Xi, Z, Zs, A, As, B, Bs };

inline LSym lsym_star(LSym s) {
    switch (s) {
        case LSym::Xi: return LSym::Xi;
        case LSym::Z: return LSym::Zs;
        case LSym::Zs: return LSym::Z;
        case LSym::A: return LSym::As;
        case LSym::As: return LSym::A;
        case LSym::B: return LSym::Bs;
        case LSym::Bs: return LSym::B;
    }
    return s;
}

struct FormalTerm {
    Scalar c;
    std::vector<LSym> w;
};

struct FormalSum {
    std::vector<FormalTerm> terms;

    static FormalSum zero() { return {}; }
    static FormalSum one() { return {{FormalTerm{Scalar::one(), {}}}}; }
    static FormalSum gen(LSym s) { return {{FormalTerm{Scalar::one(), {s}}}}; }

    /** base^e with the convention base^-e = (base*)^e. */
    static FormalSum genpow(LSym s, int e) {
        FormalTerm t{Scalar::one(), {}};
        LSym g = e >= 0 ? s : lsym_star(s);
        for (int i = 0; i < std::abs(e); ++i) t.w.push_back(g);
        return {{t}};
    }

    friend FormalSum operator+(FormalSum a, const FormalSum& b) {
        a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
        return a;
    }
    friend FormalSum operator-(FormalSum a, const FormalSum& b) {
        for (const auto& t : b.terms) a.terms.push_back({-t.c, t.w});
        return a;
    }
    friend FormalSum operator*(const Scalar& s, const FormalSum& f) {
        FormalSum r;
        for (const auto& t : f.terms) r.terms.push_back({s * t.c, t.w});
        return r;
    }
    friend FormalSum operator*(const FormalSum& a, const FormalSum& b) {
        FormalSum r;
        for (const auto& ta : a.terms)
            for (const auto& tb : b.terms) {
                FormalTerm t{ta.c * tb.c, ta.w};
                t.w.insert(t.w.end(), tb.w.begin(), tb.w.end());
                r.terms.push_back(std::move(t));
            }
        return r;
    }
    FormalSum pow(int e) const {
        FormalSum r = one();
        for (int i = 0; i < e; ++i) r = r * (*this);
        return r;
    }
};

/** Evaluation context: generator images, scalar action, additive fold. */
template <class T>
struct FormalCtx {
    std::function<T(LSym)> gen;
    std::function<T(const Scalar&, const T&)> scale;
    T unit;
};

template <class T>
T eval_formal(const FormalSum& f, const FormalCtx<T>& ctx) {
    bool first = true;
    T acc = ctx.unit;  // placeholder; overwritten on the first term
    for (const auto& t : f.terms) {
        T prod = ctx.unit;
        for (LSym s : t.w) prod = prod * ctx.gen(s);
        prod = ctx.scale(t.c, prod);
        acc = first ? prod : T(acc + prod);
        first = false;
    }
    if (first) return ctx.scale(Scalar::zero(), ctx.unit);
    return acc;
}

struct NamedRelation {
    std::string id;
    FormalSum lhs, rhs;
};

/**
 * The defining relations of the charge-β lens algebra, with e^{iθ} = u².
 * The self-adjointness of xi is structural and asserted separately.
 */
inline std::vector<NamedRelation> lens_relations(int beta) {
    using S = FormalSum;
    const S one = S::one();
    const S xi = S::gen(LSym::Xi), z = S::gen(LSym::Z), zs = S::gen(LSym::Zs);
    const S a = S::gen(LSym::A), as = S::gen(LSym::As), b = S::gen(LSym::B),
            bs = S::gen(LSym::Bs);
    const S eta = one - z * zs - xi;  // 1 - z z* - xi

    std::vector<NamedRelation> rels;
    rels.push_back({"a.xi_z", xi * z, Scalar::p() * (z * xi)});
    rels.push_back({"a.zs_z",
                    zs * z - Scalar::q() * (z * zs),
                    (Scalar::one() - Scalar::q()) * one -
                        (Scalar::p() - Scalar::q()) * xi});
    rels.push_back({"b.eta_xi", eta * xi, S::zero()});
    rels.push_back({"c.xi_a", xi * a, Scalar::p(beta) * (a * xi)});
    rels.push_back({"c.xi_b", xi * b, b * xi});
    rels.push_back({"c.z_a", z * a, Scalar::u(-2) * (a * z)});
    rels.push_back({"c.z_b", z * b, Scalar::u(2) * (b * z)});
    rels.push_back({"d.z_as",
                    z * as - Scalar::u(2) * (as * z),
                    (Scalar::p(beta) - Scalar::one()) *
                        (xi * S::genpow(LSym::Z, 1 - beta) * b)});
    rels.push_back({"e.zs_b",
                    zs * b - Scalar::u(-2) * (b * zs),
                    (Scalar::one() - Scalar::q(beta)) *
                        (S::genpow(LSym::Z, beta - 1) * eta * as)});
    rels.push_back({"f.a_b", a * b, Scalar::u(2 * beta) * (b * a)});
    rels.push_back({"f.a_bs", a * bs, Scalar::u(-2 * beta) * (bs * a)});
    rels.push_back({"g.b_a", b * a, S::genpow(LSym::Z, beta)});

    auto signed_sum = [&](const Scalar& binom_var, const auto& expfun, const S& t) {
        S acc = S::zero();
        for (int m = 0; m <= beta; ++m) {
            Scalar c = qbinom(beta, m, binom_var) * expfun(m);
            if (m % 2 == 1) c = -c;
            acc = acc + c * t.pow(m);
        }
        return acc;
    };
    rels.push_back({"h.as_a", as * a,
                    signed_sum(Scalar::p(-1),
                               [&](int m) { return Scalar::p(beta * m - m * (m - 1) / 2); },
                               xi)});
    rels.push_back({"i.a_as", a * as,
                    signed_sum(Scalar::p(),
                               [&](int m) { return Scalar::p(-beta * m + m * (m + 1) / 2); },
                               xi)});
    rels.push_back({"j.bs_b", bs * b,
                    signed_sum(Scalar::q(-1),
                               [&](int m) { return Scalar::q(beta * m - m * (m - 1) / 2); },
                               eta)});
    rels.push_back({"k.b_bs", b * bs,
                    signed_sum(Scalar::q(),
                               [&](int m) { return Scalar::q(-beta * m + m * (m + 1) / 2); },
                               eta)});
    return rels;
}

/** Consequences of the defining relations, including xi a^n = u^{βn(n+1)} xi z^{βn} b^-n. */
inline std::vector<NamedRelation> lens_derived_relations(int beta, int nmax = 4) {
    using S = FormalSum;
    const S one = S::one();
    const S xi = S::gen(LSym::Xi), z = S::gen(LSym::Z), zs = S::gen(LSym::Zs);
    const S a = S::gen(LSym::A), b = S::gen(LSym::B);
    const S eta = one - z * zs - xi;

    std::vector<NamedRelation> rels;
    rels.push_back({"pa.eta_z", eta * z, Scalar::q() * (z * eta)});
    rels.push_back({"pb.eta_a", eta * a, a * eta});
    rels.push_back({"pc.eta_b", eta * b, Scalar::q(beta) * (b * eta)});
    for (int n = -nmax; n <= nmax; ++n) {
        rels.push_back({"pd.xi_a^" + std::to_string(n),
                        xi * S::genpow(LSym::A, n),
                        Scalar::u(beta * n * (n + 1)) *
                            (xi * S::genpow(LSym::Z, beta * n) * S::genpow(LSym::B, -n))});
    }
    return rels;
}

/** The charge-1 relations in a, b alone (z = ba, xi = 1 - aa*). */
inline std::vector<NamedRelation> heegaard_relations() {
    using S = FormalSum;
    const S one = S::one();
    const S a = S::gen(LSym::A), as = S::gen(LSym::As), b = S::gen(LSym::B),
            bs = S::gen(LSym::Bs);
    std::vector<NamedRelation> rels;
    rels.push_back({"h.as_a", as * a - Scalar::p() * (a * as),
                    (Scalar::one() - Scalar::p()) * one});
    rels.push_back({"h.bs_b", bs * b - Scalar::q() * (b * bs),
                    (Scalar::one() - Scalar::q()) * one});
    rels.push_back({"h.a_b", a * b, Scalar::u(2) * (b * a)});
    rels.push_back({"h.a_bs", a * bs, Scalar::u(-2) * (bs * a)});
    rels.push_back({"h.spheres", (one - a * as) * (one - b * bs), S::zero()});
    return rels;
}

}  // namespace qlens

#endif
