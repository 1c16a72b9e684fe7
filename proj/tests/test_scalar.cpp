#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "qlens/scalar.hpp"

using namespace qlens;

namespace {

Scalar random_scalar(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nterms(1, 4), expo(-3, 3), num(-5, 5);
    std::uniform_int_distribution<int> den(1, 4);
    Scalar s;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i)
        s += Scalar::monomial(expo(rng), expo(rng), expo(rng), rational(num(rng), den(rng)));
    return s;
}

}  // namespace

TEST_CASE("ring operations", "[scalar]") {
    // conj(u) = u^-1
    REQUIRE(Scalar::u().conj() == Scalar::u(-1));
    // (p + u)(p - u) = p^2 - u^2
    Scalar lhs = (Scalar::p() + Scalar::u()) * (Scalar::p() - Scalar::u());
    REQUIRE(lhs == Scalar::p(2) - Scalar::u(2));
    // u^3 u^-3 = 1
    REQUIRE((Scalar::u(3) * Scalar::u(-3)).is_one());
}

TEST_CASE("conjugation and commutativity properties", "[scalar]") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        Scalar s = random_scalar(rng), t = random_scalar(rng);
        REQUIRE(s.conj().conj() == s);
        REQUIRE((s * t).conj() == t.conj() * s.conj());
        REQUIRE((s * t).conj() == s.conj() * t.conj());
        REQUIRE(s * t == t * s);
    }
}

TEST_CASE("qbinom values and symmetry", "[scalar]") {
    REQUIRE(qbinom(5, 0, Scalar::p()).is_one());
    REQUIRE(qbinom(2, 1, Scalar::p()) == Scalar::one() + Scalar::p());
    // frozen expansion of [4 2]_p
    Scalar expect = Scalar::one() + Scalar::p() + Scalar::of(2) * Scalar::p(2) + Scalar::p(3) +
                    Scalar::p(4);
    REQUIRE(qbinom(4, 2, Scalar::p()) == expect);

    // independent recurrence [n m] = [n-1 m-1] + p^m [n-1 m]
    for (int n = 1; n <= 10; ++n)
        for (int m = 1; m < n; ++m)
            REQUIRE(qbinom(n, m, Scalar::p()) ==
                    qbinom(n - 1, m - 1, Scalar::p()) +
                        Scalar::p(m) * qbinom(n - 1, m, Scalar::p()));

    for (int n = 0; n <= 10; ++n)
        for (int m = 0; m <= n; ++m)
            REQUIRE(qbinom(n, m, Scalar::p()) == qbinom(n, n - m, Scalar::p()));

    REQUIRE_THROWS_AS(qbinom(2, 3, Scalar::p()), std::domain_error);
    REQUIRE_THROWS_AS(qbinom(-1, 0, Scalar::p()), std::domain_error);

    // result stays polynomial also in the inverse variable
    Scalar b = qbinom(4, 2, Scalar::p(-1));
    for (const auto& [k, c] : b.terms()) REQUIRE(k[0] <= 0);
}

TEST_CASE("numeric evaluation", "[scalar]") {
    auto v = Scalar::one().eval(0.5, 0.5, 1.0);
    REQUIRE(v.re == Catch::Approx(1.0));
    REQUIRE(v.im == Catch::Approx(0.0).margin(1e-15));

    // u^2 at theta = pi is e^{i pi} = -1
    auto w = Scalar::u(2).eval(0.5, 0.5, M_PI);
    REQUIRE(w.re == Catch::Approx(-1.0));
    REQUIRE(w.im == Catch::Approx(0.0).margin(1e-12));

    auto b = qbinom(2, 1, Scalar::p()).eval(0.5, 0.3, 0.7);
    REQUIRE(b.re == Catch::Approx(1.5));

    REQUIRE_THROWS_AS(Scalar::one().eval(1.5, 0.5, 0.0), std::domain_error);
    REQUIRE_THROWS_AS(Scalar::one().eval(0.5, 0.0, 0.0), std::domain_error);
}

TEST_CASE("eval is a ring homomorphism up to 1e-12", "[scalar]") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        Scalar s = random_scalar(rng), t = random_scalar(rng);
        auto vs = s.eval(0.6, 0.25, 1.3), vt = t.eval(0.6, 0.25, 1.3);
        auto vp = (s * t).eval(0.6, 0.25, 1.3);
        double prod_re = vs.re * vt.re - vs.im * vt.im;
        double prod_im = vs.re * vt.im + vs.im * vt.re;
        double mag = 1.0 + std::hypot(vs.re, vs.im) * std::hypot(vt.re, vt.im);
        REQUIRE(std::hypot(vp.re - prod_re, vp.im - prod_im) <= 1e-12 * mag);
    }
}

TEST_CASE("text round trip", "[scalar]") {
    Scalar s = Scalar::monomial(-1, 0, 5, rational(3, 2)) + Scalar::monomial(0, 2, 0, -1);
    REQUIRE(s.str() == "3/2 p^-1 u^5 + -1 q^2");
    REQUIRE(Scalar::parse(s.str()) == s);
    REQUIRE(Scalar::parse("0").is_zero());
    REQUIRE(Scalar::zero().str() == "0");

    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        Scalar r = random_scalar(rng);
        REQUIRE(Scalar::parse(r.str()) == r);
        REQUIRE(Scalar::parse(r.str()).str() == r.str());
    }
}
