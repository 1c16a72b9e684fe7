#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qlens/comodule.hpp"

using namespace qlens;

namespace {

AlgElement random_element(std::mt19937_64& rng, const Algebra& A, int maxdeg) {
    auto basis = A.basis_enumerate(maxdeg);
    std::uniform_int_distribution<size_t> pick(0, basis.size() - 1);
    std::uniform_int_distribution<int> nterms(1, 4), num(-3, 3);
    AlgElement e(&A);
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) e.add(basis[pick(rng)], Scalar::of(num(rng)));
    return e;
}

}  // namespace

TEST_CASE("grade decomposition", "[comodule]") {
    const Algebra& S = instantiate_algebra(AlgKind::solid_torus_p);
    AlgElement x = S.element(Mono{0, 1, 0}), h = S.element(Mono{0, 0, 1});

    auto gx = grade_decompose(x);
    REQUIRE(gx.size() == 1);
    REQUIRE(gx.at(0) == x);

    auto ghx = grade_decompose(h + x);
    REQUIRE(ghx.size() == 2);
    REQUIRE(ghx.at(1) == h);
    REQUIRE(ghx.at(0) == x);

    // components sum back and are supported on the right degrees
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        AlgElement e = random_element(rng, S, 5);
        AlgElement sum(&S);
        for (const auto& [n, comp] : grade_decompose(e)) {
            REQUIRE(is_homogeneous(comp, n));
            sum += comp;
        }
        REQUIRE(sum == e);
    }
}

TEST_CASE("standard cleaving maps", "[comodule]") {
    auto cp = standard_cleaving(AlgKind::solid_torus_p);
    const Algebra& S = *cp.alg;
    REQUIRE(cp.gamma(2) == S.element(Mono{0, 0, 2}));
    REQUIRE(cp.gamma(0) == S.one());
    for (int n = -6; n <= 6; ++n) REQUIRE(cp.gamma_inv(n) * cp.gamma(n) == S.one());
    REQUIRE(validate_cleaving(cp, 8).ok);

    auto cpt = standard_cleaving(AlgKind::torus);
    REQUIRE(cpt.gamma(3) == cpt.alg->element(Mono{0, 0, 3}));

    REQUIRE_THROWS_AS(standard_cleaving(AlgKind::disc_p), std::invalid_argument);
}

TEST_CASE("cleft trivialization", "[comodule]") {
    auto cp = standard_cleaving(AlgKind::solid_torus_p);
    const Algebra& S = *cp.alg;
    AlgElement x = S.element(Mono{0, 1, 0});

    auto parts = cleft_trivialize(cp, S.element(Mono{0, 1, 1}));  // x h
    REQUIRE(parts.size() == 1);
    REQUIRE(parts[0].second == 1);
    REQUIRE(parts[0].first == x);

    auto punit = cleft_trivialize(cp, S.one());
    REQUIRE(punit.size() == 1);
    REQUIRE(punit[0].second == 0);
    REQUIRE(punit[0].first == S.one());

    auto pxi = cleft_trivialize(cp, S.element(Mono{1, 0, -2}));  // xi h^-2
    REQUIRE(pxi.size() == 1);
    REQUIRE(pxi[0].second == -2);
    REQUIRE(pxi[0].first == S.element(Mono{1, 0, 0}));
}

TEST_CASE("trivialization round trip on random elements", "[comodule]") {
    auto cp = standard_cleaving(AlgKind::solid_torus_p);
    const Algebra& S = *cp.alg;
    std::mt19937_64 rng(13);
    for (int t = 0; t < 100; ++t) {
        AlgElement e = random_element(rng, S, 5);
        auto parts = cleft_trivialize(cp, e);
        for (const auto& [b, n] : parts) REQUIRE(is_homogeneous(b, 0));
        REQUIRE(cleft_untrivialize(cp, parts) == e);
    }
}

TEST_CASE("p0 gamma^-1(p1) lands in the coinvariants", "[comodule]") {
    auto cp = standard_cleaving(AlgKind::solid_torus_p);
    const Algebra& S = *cp.alg;
    for (const auto& mo : S.basis_enumerate(4)) {
        AlgElement p = S.element(mo);
        int d = S.hdegree(mo);
        REQUIRE(is_homogeneous(p * cp.gamma_inv(d), 0));
    }
}

TEST_CASE("gauge transformations", "[comodule]") {
    const Algebra& T = instantiate_algebra(AlgKind::torus);
    auto gamma = standard_cleaving(AlgKind::torus);

    // identity gauge Gamma = epsilon
    CleavingPair eps{&T, {[&T](int) { return T.one(); }}, {[&T](int) { return T.one(); }}};
    auto same = gauge_transform(eps, gamma, 6);
    for (int n = -6; n <= 6; ++n) REQUIRE(same.gamma(n) == gamma.gamma(n));

    // Gamma(u^n) = u^{beta n^2} V^{beta n} twists U^n to u^{beta n^2} V^{beta n} U^n
    int beta = 2;
    CleavingPair G{&T,
                   {[&T, beta](int n) {
                       return T.element(Mono{0, beta * n, 0}, Scalar::u(beta * n * n));
                   }},
                   {[&T, beta](int n) {
                       return T.element(Mono{0, -beta * n, 0}, Scalar::u(-beta * n * n));
                   }}};
    auto tw = gauge_transform(G, gamma, 6);
    for (int n = -6; n <= 6; ++n)
        REQUIRE(tw.gamma(n) == T.element(Mono{0, beta * n, n}, Scalar::u(beta * n * n)));
    REQUIRE(validate_cleaving(tw, 6).ok);

    // composing two gauges equals gauging by the pointwise product
    CleavingPair G2{&T,
                    {[&T](int n) { return T.element(Mono{0, n, 0}); }},
                    {[&T](int n) { return T.element(Mono{0, -n, 0}); }}};
    auto a = gauge_transform(G2, gauge_transform(G, gamma, 6), 6);
    CleavingPair Gprod{&T,
                       {[G, G2](int n) { return G2.gamma(n) * G.gamma(n); }},
                       {[G, G2](int n) { return G.gamma_inv(n) * G2.gamma_inv(n); }}};
    auto b = gauge_transform(Gprod, gamma, 6);
    for (int n = -6; n <= 6; ++n) REQUIRE(a.gamma(n) == b.gamma(n));

    // a non-invertible gauge value is rejected
    CleavingPair bad{&T,
                     {[&T](int n) {
                         return n == 1 ? T.element() : T.one();  // Gamma(u) = 0
                     }},
                     {[&T](int) { return T.one(); }}};
    REQUIRE_THROWS_AS(gauge_transform(bad, gamma, 2), std::domain_error);
}
