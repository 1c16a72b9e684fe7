/**
 * Z-graded O(U(1))-comodule structure.
 *
 * The Hopf algebra H = O(U(1)) is spanned by the group-likes u^n, so every
 * coaction appearing here sends a generator w to w ⊗ u^{deg w}; the coaction
 * data reduces to the Z-grading and convolution of maps H -> P reduces to the
 * pointwise product.  Coinvariants are the degree-0 part.
 */
#ifndef QLENS_COMODULE_HPP
#define QLENS_COMODULE_HPP

#include <functional>
#include <map>
#include <sstream>

#include "qlens/check.hpp"
#include "qlens/ncalg.hpp"

namespace qlens {

/** Split into homogeneous components; the sum of the parts is the input. */
inline std::map<int, AlgElement> grade_decompose(const AlgElement& e) {
    std::map<int, AlgElement> out;
    const Algebra& A = e.algebra();
    for (const auto& [mo, c] : e.terms()) {
        int d = A.hdegree(mo);
        auto it = out.find(d);
        if (it == out.end()) it = out.emplace(d, AlgElement(&A)).first;
        it->second.add(mo, c);
    }
    return out;
}

inline bool is_homogeneous(const AlgElement& e, int degree) {
    const Algebra& A = e.algebra();
    for (const auto& [mo, c] : e.terms())
        if (A.hdegree(mo) != degree) return false;
    return true;
}

/** Map H -> P given lazily on the group-like basis u^n. */
struct HMap {
    std::function<AlgElement(int)> at;

    AlgElement operator()(int n) const { return at(n); }
};

/** A cleaving map together with its convolution inverse. */
struct CleavingPair {
    const Algebra* alg = nullptr;
    HMap gamma;
    HMap gamma_inv;
};

/**
 * Check the cleaving axioms on the window |n| <= nmax: colinearity
 * (gamma(u^n) homogeneous of degree n, the inverse of degree -n) and the
 * convolution-inverse law gamma^-1(u^n) gamma(u^n) = 1 = gamma(u^n) gamma^-1(u^n).
 */
inline CheckReport validate_cleaving(const CleavingPair& cp, int nmax) {
    CheckReport rep;
    const Algebra& A = *cp.alg;
    for (int n = -nmax; n <= nmax; ++n) {
        AlgElement g = cp.gamma(n), gi = cp.gamma_inv(n);
        std::ostringstream tag;
        tag << "n=" << n;
        if (!is_homogeneous(g, n)) rep.fail("gamma not colinear at " + tag.str());
        if (!is_homogeneous(gi, -n)) rep.fail("gamma_inv not of degree -n at " + tag.str());
        if (gi * g != A.one()) rep.fail("gamma_inv * gamma != 1 at " + tag.str());
        if (g * gi != A.one()) rep.fail("gamma * gamma_inv != 1 at " + tag.str());
    }
    return rep;
}

/** gamma(u^n) = h^n (resp. g^n, U^n); validated on the window. */
inline CleavingPair standard_cleaving(AlgKind kind, int nmax = 8) {
    if (kind != AlgKind::solid_torus_p && kind != AlgKind::solid_torus_q &&
        kind != AlgKind::torus)
        throw std::invalid_argument("standard_cleaving: no unitary degree-1 generator");
    const Algebra& A = instantiate_algebra(kind);
    CleavingPair cp{&A,
                    {[&A](int n) { return A.element(Mono{0, 0, n}); }},
                    {[&A](int n) { return A.element(Mono{0, 0, -n}); }}};
    CheckReport rep = validate_cleaving(cp, nmax);
    if (!rep.ok) throw std::logic_error("standard_cleaving: " + rep.notes.front());
    return cp;
}

/**
 * theta_gamma: e -> pairs (b, n) with e = sum b gamma(u^n) and deg b = 0.
 * With group-like u^n this is b_n = e_n gamma^-1(u^n) on each homogeneous
 * component e_n.
 */
inline std::vector<std::pair<AlgElement, int>> cleft_trivialize(const CleavingPair& cp,
                                                                const AlgElement& e) {
    std::vector<std::pair<AlgElement, int>> out;
    for (const auto& [n, comp] : grade_decompose(e)) {
        AlgElement b = comp * cp.gamma_inv(n);
        if (!is_homogeneous(b, 0))
            throw std::logic_error("cleft_trivialize: component not reduced to degree 0");
        out.emplace_back(std::move(b), n);
    }
    return out;
}

/** theta_gamma^-1: (b, n) pairs -> sum b gamma(u^n). */
inline AlgElement cleft_untrivialize(const CleavingPair& cp,
                                     const std::vector<std::pair<AlgElement, int>>& parts) {
    AlgElement out(cp.alg);
    for (const auto& [b, n] : parts) out += b * cp.gamma(n);
    return out;
}

/**
 * Twist a cleaving map by a gauge transformation Gamma: H -> B (convolution
 * invertible, coinvariant-valued): gamma'(u^n) = Gamma(u^n) gamma(u^n).
 * Throws if a Gamma value fails to be degree 0 or invertible on the window.
 */
inline CleavingPair gauge_transform(const CleavingPair& Gamma, const CleavingPair& gamma,
                                    int nmax = 8) {
    const Algebra& A = *gamma.alg;
    for (int n = -nmax; n <= nmax; ++n) {
        AlgElement G = Gamma.gamma(n), Gi = Gamma.gamma_inv(n);
        if (!is_homogeneous(G, 0) || !is_homogeneous(Gi, 0))
            throw std::domain_error("gauge_transform: gauge not coinvariant-valued");
        if (G * Gi != A.one() || Gi * G != A.one())
            throw std::domain_error("gauge_transform: gauge not convolution invertible");
    }
    HMap g{[Gamma, gamma](int n) { return Gamma.gamma(n) * gamma.gamma(n); }};
    HMap gi{[Gamma, gamma](int n) { return gamma.gamma_inv(n) * Gamma.gamma_inv(n); }};
    CleavingPair out{gamma.alg, g, gi};
    CheckReport rep = validate_cleaving(out, nmax);
    if (!rep.ok) throw std::logic_error("gauge_transform: result fails cleaving axioms");
    return out;
}

}  // namespace qlens

#endif
