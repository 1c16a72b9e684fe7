/**
 * Truncated Hilbert-space representations of the disc, torus, solid torus
 * and lens algebras, with relation-residual and independence certification.
 *
 * Shift families on N_0 (weighted unilateral shifts) are truncated to N
 * dimensions; identities that raise the index can leak at the top rows, so
 * residuals are measured on columns [lo, N-1-margin] with margin = beta + 1
 * (two-sided for Z-indexed truncations).  Cyclic (rational-angle) families
 * are exact at finite size and use no margin.
 */
#ifndef QLENS_REPS_HPP
#define QLENS_REPS_HPP

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "qlens/check.hpp"
#include "qlens/formal.hpp"

namespace qlens {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

enum class RepKind {
    disc_char,        // 1-dimensional boundary character
    disc_inf,         // weighted shift on N_0
    torus_rational,   // cyclic, angle 2 pi M / N_cyc
    torus_irrational, // Z-indexed shift
    solid_torus,      // weighted shift with the circle phase
    lens_prime,       // xi = 0, a diagonal
    lens_doubleprime, // xi = p^n, b diagonal
    lens_zero_rational,
    lens_zero_irrational,
};

struct RepSpec {
    RepKind kind;
    double p = 0.5, q = 1.0 / 3.0;
    double theta = 0.0;  // radians
    int beta = 0;
    int N = 64;          // truncation size (cyclic kinds: the cycle length)
    // family parameters
    double phi = 0.0;    // disc character angle
    double alpha = 0.0, beta_angle = 0.0;  // torus angles
    double mu = 0.0, nu = 0.0;             // lens angles
    int M = 1, Ncyc = 3;                   // rational angle 2 pi M / Ncyc
};

struct RepOperators {
    std::map<std::string, Matrix> op;
    int N = 0;
    int lo = 0, hi = 0;  // interior column window for residual checks

    const Matrix& at(const std::string& name) const { return op.at(name); }
};

namespace repdetail {

inline Matrix zero(int n) { return Matrix::Zero(n, n); }

inline Complex phase(double x) { return std::polar(1.0, x); }

/** weighted shift: (Av)_{n+step} = w(n) v_n on indices 0..N-1, truncated. */
inline Matrix shift(int N, int step, const std::function<Complex(int)>& w) {
    Matrix A = zero(N);
    for (int n = 0; n < N; ++n) {
        int m = n + step;
        if (m < 0 || m >= N) continue;
        A(m, n) = w(n);
    }
    return A;
}

inline Matrix diag(int N, const std::function<Complex(int)>& w) {
    Matrix A = zero(N);
    for (int n = 0; n < N; ++n) A(n, n) = w(n);
    return A;
}

/** cyclic shift: v_n -> w(n) v_{(n+step) mod N}. */
inline Matrix cyclic_shift(int N, int step, const std::function<Complex(int)>& w) {
    Matrix A = zero(N);
    for (int n = 0; n < N; ++n) A(((n + step) % N + N) % N, n) = w(n);
    return A;
}

inline double qfactor(double base, int from, int count) {
    // sqrt((1-base^{from+1}) ... (1-base^{from+count}))
    double acc = 1.0;
    for (int j = 1; j <= count; ++j) acc *= 1.0 - std::pow(base, from + j);
    return std::sqrt(acc);
}

}  // namespace repdetail

inline RepOperators build_rep(const RepSpec& spec) {
    using namespace repdetail;
    if (!(spec.p > 0 && spec.p < 1) || !(spec.q > 0 && spec.q < 1))
        throw std::domain_error("build_rep: p and q must lie in (0,1)");
    if (spec.beta < 0) throw std::domain_error("build_rep: beta >= 0");
    RepOperators R;
    const double p = spec.p, q = spec.q, th = spec.theta;
    const int beta = spec.beta;
    int margin = beta + 1;

    switch (spec.kind) {
        case RepKind::disc_char: {
            R.N = 1;
            R.lo = 0;
            R.hi = 0;
            R.op["x"] = diag(1, [&](int) { return phase(spec.phi); });
            R.op["xs"] = R.op["x"].adjoint();
            R.op["xi"] = zero(1);
            break;
        }
        case RepKind::disc_inf: {
            int N = spec.N;
            R.N = N;
            R.lo = 0;
            R.hi = N - 1 - 2;
            R.op["x"] = shift(N, 1, [&](int n) { return std::sqrt(1.0 - std::pow(p, n + 1)); });
            R.op["xs"] = R.op["x"].adjoint();
            R.op["xi"] = diag(N, [&](int n) { return std::pow(p, n); });
            break;
        }
        case RepKind::torus_rational: {
            int N = spec.Ncyc;
            R.N = N;
            R.lo = 0;
            R.hi = N - 1;  // cyclic: exact
            double ang = 2.0 * M_PI * spec.M / spec.Ncyc;
            R.op["U"] = diag(N, [&](int n) { return phase(spec.alpha / N + n * ang); });
            R.op["V"] = cyclic_shift(N, 1, [&](int) { return phase(spec.beta_angle / N); });
            R.op["Us"] = R.op["U"].adjoint();
            R.op["Vs"] = R.op["V"].adjoint();
            break;
        }
        case RepKind::torus_irrational: {
            int N = spec.N;
            R.N = N;
            R.lo = 2;
            R.hi = N - 3;
            int off = N / 2;  // indices n - off in Z
            R.op["U"] = diag(N, [&](int n) { return phase(spec.alpha + (n - off) * th); });
            R.op["V"] = shift(N, 1, [&](int) { return 1.0; });
            R.op["Us"] = R.op["U"].adjoint();
            R.op["Vs"] = R.op["V"].adjoint();
            break;
        }
        case RepKind::solid_torus: {
            int N = spec.N;
            R.N = N;
            R.lo = 0;
            R.hi = N - 1 - 2;
            R.op["x"] = shift(N, 1, [&](int n) { return std::sqrt(1.0 - std::pow(p, n + 1)); });
            R.op["xs"] = R.op["x"].adjoint();
            R.op["xi"] = diag(N, [&](int n) { return std::pow(p, n); });
            R.op["h"] = diag(N, [&](int n) { return phase(spec.alpha + n * th); });
            R.op["hs"] = R.op["h"].adjoint();
            break;
        }
        case RepKind::lens_prime: {
            int N = spec.N;
            if (N < beta + 2) throw std::domain_error("build_rep: N >= beta + 2 required");
            R.N = N;
            R.lo = 0;
            R.hi = N - 1 - margin;
            R.op["z"] = shift(N, 1, [&](int n) { return std::sqrt(1.0 - std::pow(q, n + 1)); });
            R.op["zs"] = R.op["z"].adjoint();
            R.op["xi"] = zero(N);
            R.op["a"] = diag(N, [&](int n) { return phase(spec.mu + n * th); });
            R.op["as"] = R.op["a"].adjoint();
            R.op["b"] = shift(N, beta, [&](int n) {
                return phase(-(spec.mu + n * th)) * qfactor(q, n, beta);
            });
            R.op["bs"] = R.op["b"].adjoint();
            break;
        }
        case RepKind::lens_doubleprime: {
            int N = spec.N;
            if (N < beta + 2) throw std::domain_error("build_rep: N >= beta + 2 required");
            R.N = N;
            R.lo = 0;
            R.hi = N - 1 - margin;
            R.op["z"] = shift(N, 1, [&](int n) { return std::sqrt(1.0 - std::pow(p, n + 1)); });
            R.op["zs"] = R.op["z"].adjoint();
            R.op["xi"] = diag(N, [&](int n) { return std::pow(p, n); });
            R.op["b"] = diag(N, [&](int n) { return phase(spec.mu - n * th); });
            R.op["bs"] = R.op["b"].adjoint();
            R.op["a"] = shift(N, beta, [&](int n) {
                return phase(-(spec.mu - (n + beta) * th)) * qfactor(p, n, beta);
            });
            R.op["as"] = R.op["a"].adjoint();
            break;
        }
        case RepKind::lens_zero_rational: {
            int N = spec.Ncyc;
            R.N = N;
            R.lo = 0;
            R.hi = N - 1;  // cyclic: exact
            double ang = 2.0 * M_PI * spec.M / spec.Ncyc;
            R.op["a"] = diag(N, [&](int n) { return phase(spec.mu / N + n * ang); });
            R.op["as"] = R.op["a"].adjoint();
            R.op["z"] = cyclic_shift(N, 1, [&](int) { return phase(spec.nu / N); });
            R.op["zs"] = R.op["z"].adjoint();
            R.op["xi"] = zero(N);
            R.op["b"] = cyclic_shift(N, beta, [&](int n) {
                return phase((spec.nu * beta - spec.mu) / N - n * ang);
            });
            R.op["bs"] = R.op["b"].adjoint();
            break;
        }
        case RepKind::lens_zero_irrational: {
            int N = spec.N;
            R.N = N;
            R.lo = margin + 1;
            R.hi = N - 1 - margin - 1;
            int off = N / 2;
            R.op["a"] = diag(N, [&](int n) { return phase(spec.mu + (n - off) * th); });
            R.op["as"] = R.op["a"].adjoint();
            R.op["z"] = shift(N, 1, [&](int) { return 1.0; });
            R.op["zs"] = R.op["z"].adjoint();
            R.op["xi"] = zero(N);
            R.op["b"] = shift(N, beta, [&](int n) {
                return phase(-(spec.mu + (n - off) * th));
            });
            R.op["bs"] = R.op["b"].adjoint();
            break;
        }
    }
    return R;
}

// ---------------------------------------------------------------------------
// Residuals
// ---------------------------------------------------------------------------

inline double interior_residual(const Matrix& A, const Matrix& B, int lo, int hi) {
    double r = 0.0;
    for (int j = lo; j <= hi; ++j)
        for (int i = 0; i < A.rows(); ++i) r = std::max(r, std::abs(A(i, j) - B(i, j)));
    return r;
}

inline FormalCtx<Matrix> matrix_ctx(const RepOperators& R, double p, double q, double theta) {
    auto gen = [&R](LSym s) -> Matrix {
        switch (s) {
            case LSym::Xi: return R.at("xi");
            case LSym::Z: return R.at("z");
            case LSym::Zs: return R.at("zs");
            case LSym::A: return R.at("a");
            case LSym::As: return R.at("as");
            case LSym::B: return R.at("b");
            case LSym::Bs: return R.at("bs");
        }
        throw std::logic_error("matrix_ctx: bad symbol");
    };
    auto scale = [p, q, theta](const Scalar& s, const Matrix& m) -> Matrix {
        auto v = s.eval(p, q, theta);
        return Complex(v.re, v.im) * m;
    };
    return FormalCtx<Matrix>{gen, scale, Matrix::Identity(R.N, R.N)};
}

/**
 * Max interior residual over every defining relation of the spec's algebra;
 * for the lens families this also includes the reduction claims of the
 * irreducible branches (xi = 0 with b = z^beta a*, and a = b* z^beta).
 */
inline double relation_residual(const RepSpec& spec) {
    RepOperators R = build_rep(spec);
    const int N = R.N;
    const double p = spec.p, q = spec.q, th = spec.theta;
    double res = 0.0;
    auto touch = [&](const Matrix& X, const Matrix& Y) {
        res = std::max(res, interior_residual(X, Y, R.lo, R.hi));
    };
    const Matrix I = Matrix::Identity(N, N);

    switch (spec.kind) {
        case RepKind::disc_char:
        case RepKind::disc_inf: {
            const Matrix &x = R.at("x"), &xs = R.at("xs"), &xi = R.at("xi");
            touch(xs * x - p * (x * xs), (1.0 - p) * I);
            touch(xi, I - x * xs);
            break;
        }
        case RepKind::torus_rational:
        case RepKind::torus_irrational: {
            const Matrix &U = R.at("U"), &V = R.at("V"), &Us = R.at("Us"), &Vs = R.at("Vs");
            double ang = spec.kind == RepKind::torus_rational
                             ? 2.0 * M_PI * spec.M / spec.Ncyc
                             : th;
            touch(U * Us, I);
            touch(Us * U, I);
            touch(V * Vs, I);
            touch(Vs * V, I);
            touch(U * V, repdetail::phase(ang) * (V * U));
            touch(U * Vs, repdetail::phase(-ang) * (Vs * U));
            break;
        }
        case RepKind::solid_torus: {
            const Matrix &x = R.at("x"), &xs = R.at("xs"), &h = R.at("h"), &hs = R.at("hs");
            touch(h * hs, I);
            touch(hs * h, I);
            touch(xs * x - p * (x * xs), (1.0 - p) * I);
            touch(h * x, repdetail::phase(th) * (x * h));
            touch(h * xs, repdetail::phase(-th) * (xs * h));
            break;
        }
        default: {
            // lens families: the full defining relation set; the rational
            // branch carries its own angle
            double th_eff = spec.kind == RepKind::lens_zero_rational
                                ? 2.0 * M_PI * spec.M / spec.Ncyc
                                : th;
            auto ctx = matrix_ctx(R, p, q, th_eff);
            for (const auto& rel : lens_relations(spec.beta)) {
                Matrix lhs = eval_formal(rel.lhs, ctx);
                Matrix rhs = eval_formal(rel.rhs, ctx);
                touch(lhs, rhs);
            }
            // xi is self-adjoint on the interior
            touch(R.at("xi"), Matrix(R.at("xi").adjoint()));
            // reduction claims of the irreducible branches
            const Matrix &z = R.at("z"), &a = R.at("a"), &as = R.at("as"), &b = R.at("b");
            const Matrix &bs = R.at("bs");
            Matrix zb = Matrix::Identity(N, N);
            for (int i = 0; i < spec.beta; ++i) zb = zb * z;
            if (spec.kind == RepKind::lens_prime || spec.kind == RepKind::lens_zero_rational ||
                spec.kind == RepKind::lens_zero_irrational) {
                touch(R.at("xi"), Matrix::Zero(N, N));
                touch(b, zb * as);
                touch(as * a, I);
                touch(a * as, I);
            }
            if (spec.kind == RepKind::lens_doubleprime) {
                touch(a, bs * zb);
                touch(bs * b, I);
                touch(b * bs, I);
                touch(R.at("xi"), I - z * R.at("zs"));
            }
            break;
        }
    }
    return res;
}

/** Adjoint pairs are conjugate transposes on the interior square. */
inline double adjointness_residual(const RepSpec& spec) {
    RepOperators R = build_rep(spec);
    double res = 0.0;
    auto pairwise = [&](const std::string& w, const std::string& ws) {
        if (!R.op.count(w)) return;
        const Matrix &A = R.at(w), &B = R.at(ws);
        for (int i = R.lo; i <= R.hi; ++i)
            for (int j = R.lo; j <= R.hi; ++j)
                res = std::max(res, std::abs(A(i, j) - std::conj(B(j, i))));
    };
    pairwise("x", "xs");
    pairwise("h", "hs");
    pairwise("U", "Us");
    pairwise("V", "Vs");
    pairwise("z", "zs");
    pairwise("a", "as");
    pairwise("b", "bs");
    pairwise("xi", "xi");
    return res;
}

// ---------------------------------------------------------------------------
// Independence certification
// ---------------------------------------------------------------------------

struct GramReport {
    int monomials = 0;
    int rank = 0;
    bool full_rank = false;
    std::vector<double> singular_values;
    std::vector<Complex> near_null;  // coefficients of a near-null combination, if any
};

/**
 * Flattened images of all basis words of degree <= D under a direct sum of
 * specs (all specs must represent the same algebra).  Lens families use the
 * two-sector word list xi^k z^m b^n (k > 0), eta^k z^m a^n (k >= 0); the
 * disc, torus and solid torus use their monomial bases.
 */
inline GramReport independence_gram(const std::vector<RepSpec>& specs, int D) {
    struct Entry {
        int family;  // 1/2 for lens sectors; 0 for plain monomials
        int k, m, n;
    };
    std::vector<Entry> words;
    RepKind kind = specs.at(0).kind;
    bool is_lens = kind == RepKind::lens_prime || kind == RepKind::lens_doubleprime ||
                   kind == RepKind::lens_zero_rational || kind == RepKind::lens_zero_irrational;
    bool is_disc = kind == RepKind::disc_char || kind == RepKind::disc_inf;
    bool is_torus = kind == RepKind::torus_rational || kind == RepKind::torus_irrational;
    if (is_lens) {
        for (int k = 1; 2 * k <= D; ++k)
            for (int m = -(D - 2 * k); m <= D - 2 * k; ++m)
                for (int n = -(D - 2 * k - std::abs(m)); n <= D - 2 * k - std::abs(m); ++n)
                    words.push_back({1, k, m, n});
        for (int k = 0; 2 * k <= D; ++k)
            for (int m = -(D - 2 * k); m <= D - 2 * k; ++m)
                for (int n = -(D - 2 * k - std::abs(m)); n <= D - 2 * k - std::abs(m); ++n)
                    words.push_back({2, k, m, n});
    } else {
        for (int k = 0; 2 * k <= (is_torus ? 0 : D); ++k)
            for (int m = -(D - 2 * k); m <= D - 2 * k; ++m) {
                int rem = D - 2 * k - std::abs(m);
                if (is_disc) {
                    words.push_back({0, k, m, 0});
                } else {
                    for (int n = -rem; n <= rem; ++n) words.push_back({0, k, m, n});
                }
            }
    }

    std::vector<RepOperators> reps;
    long total = 0;
    for (const auto& s : specs) {
        reps.push_back(build_rep(s));
        total += static_cast<long>(reps.back().N) * reps.back().N;
    }

    Eigen::MatrixXcd V(total, static_cast<long>(words.size()));
    auto mpow = [](const Matrix& A, const Matrix& As, int e) {
        Matrix r = Matrix::Identity(A.rows(), A.cols());
        const Matrix& base = e >= 0 ? A : As;
        for (int i = 0; i < std::abs(e); ++i) r = r * base;
        return r;
    };
    for (size_t w = 0; w < words.size(); ++w) {
        long off = 0;
        for (const auto& R : reps) {
            const int N = R.N;
            const Matrix I = Matrix::Identity(N, N);
            Matrix img;
            if (is_lens) {
                Matrix eta = I - R.at("z") * R.at("zs") - R.at("xi");
                Matrix acc = I;
                for (int i = 0; i < words[w].k; ++i)
                    acc = acc * (words[w].family == 1 ? R.at("xi") : eta);
                img = acc * mpow(R.at("z"), R.at("zs"), words[w].m);
                img = words[w].family == 1 ? img * mpow(R.at("b"), R.at("bs"), words[w].n)
                                           : img * mpow(R.at("a"), R.at("as"), words[w].n);
            } else if (is_torus) {
                img = mpow(R.at("V"), R.at("Vs"), words[w].m) *
                      mpow(R.at("U"), R.at("Us"), words[w].n);
            } else {
                Matrix acc = I;
                for (int i = 0; i < words[w].k; ++i) acc = acc * R.at("xi");
                img = acc * mpow(R.at("x"), R.at("xs"), words[w].m);
                if (R.op.count("h")) img = img * mpow(R.at("h"), R.at("hs"), words[w].n);
            }
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j) V(off + static_cast<long>(i) * N + j, w) = img(i, j);
            off += static_cast<long>(N) * N;
        }
    }

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(V, Eigen::ComputeThinV);
    GramReport rep;
    rep.monomials = static_cast<int>(words.size());
    const auto& sv = svd.singularValues();
    double smax = sv.size() ? sv(0) : 0.0;
    double tol = smax * 1e-8;
    for (int i = 0; i < sv.size(); ++i) {
        rep.singular_values.push_back(sv(i));
        if (sv(i) > tol) ++rep.rank;
    }
    rep.full_rank = (rep.rank == rep.monomials);
    if (!rep.full_rank && svd.computeV()) {
        auto v = svd.matrixV().col(sv.size() - 1);
        for (int i = 0; i < v.size(); ++i) rep.near_null.push_back(v(i));
    }
    return rep;
}

}  // namespace qlens

#endif
