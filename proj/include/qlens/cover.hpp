/**
 * Exact finite-dimensional covering and gluing machinery.
 *
 * Everything here is plain dense linear algebra over Q (gmp rationals): no
 * tolerances anywhere.  Subspaces are row spaces in canonical reduced row
 * echelon form, maps are matrices acting on column vectors.  Provides
 * covering completions and the comparison map, the completeness criteria,
 * gluings of module families with their projections, the cocycle
 * surjectivity conditions, and randomized checks of the exact-sequence and
 * kernel-intersection lemmas.
 */
#ifndef QLENS_COVER_HPP
#define QLENS_COVER_HPP

#include <gmpxx.h>

#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlens/check.hpp"

namespace qlens {

namespace linalg {

using Rat = mpq_class;

struct QMat {
    int rows = 0, cols = 0;
    std::vector<Rat> a;

    QMat() = default;
    QMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Rat(0)) {}

    static QMat identity(int n) {
        QMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    Rat& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Rat& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    bool is_zero() const {
        for (const auto& x : a)
            if (x != 0) return false;
        return true;
    }

    QMat operator*(const QMat& o) const {
        if (cols != o.rows) throw std::invalid_argument("QMat: dimension mismatch in product");
        QMat r(rows, o.cols);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                const Rat& v = at(i, k);
                if (v == 0) continue;
                for (int j = 0; j < o.cols; ++j) r.at(i, j) += v * o.at(k, j);
            }
        return r;
    }

    QMat operator-(const QMat& o) const {
        QMat r(rows, cols);
        for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] - o.a[i];
        return r;
    }

    bool operator==(const QMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

    QMat transpose() const {
        QMat r(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    static QMat vstack(const QMat& top, const QMat& bot) {
        if (top.rows == 0) return bot;
        if (bot.rows == 0) return top;
        if (top.cols != bot.cols) throw std::invalid_argument("QMat: vstack width mismatch");
        QMat r(top.rows + bot.rows, top.cols);
        std::copy(top.a.begin(), top.a.end(), r.a.begin());
        std::copy(bot.a.begin(), bot.a.end(), r.a.begin() + top.a.size());
        return r;
    }

    /** In-place reduced row echelon form; returns pivot columns. */
    std::vector<int> rref() {
        std::vector<int> pivots;
        int r = 0;
        for (int c = 0; c < cols && r < rows; ++c) {
            int sel = -1;
            for (int i = r; i < rows; ++i)
                if (at(i, c) != 0) {
                    sel = i;
                    break;
                }
            if (sel < 0) continue;
            if (sel != r)
                for (int j = 0; j < cols; ++j) std::swap(at(sel, j), at(r, j));
            Rat inv = at(r, c);
            for (int j = 0; j < cols; ++j) at(r, j) /= inv;
            for (int i = 0; i < rows; ++i) {
                if (i == r || at(i, c) == 0) continue;
                Rat f = at(i, c);
                for (int j = 0; j < cols; ++j) at(i, j) -= f * at(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    int rank() const {
        QMat copy = *this;
        return static_cast<int>(copy.rref().size());
    }

    /** Basis of {x : A x = 0} as rows. */
    QMat kernel() const {
        QMat R = *this;
        auto pivots = R.rref();
        std::vector<bool> is_pivot(cols, false);
        for (int p : pivots) is_pivot[static_cast<size_t>(p)] = true;
        std::vector<int> free_cols;
        for (int c = 0; c < cols; ++c)
            if (!is_pivot[static_cast<size_t>(c)]) free_cols.push_back(c);
        QMat K(static_cast<int>(free_cols.size()), cols);
        for (int fi = 0; fi < K.rows; ++fi) {
            int fc = free_cols[static_cast<size_t>(fi)];
            K.at(fi, fc) = 1;
            for (size_t r = 0; r < pivots.size(); ++r)
                K.at(fi, pivots[r]) = -R.at(static_cast<int>(r), fc);
        }
        return K;
    }

    /** Right inverse of a surjective map (A X = I); throws if not full row rank. */
    QMat right_inverse() const {
        if (rows == 0) return QMat(cols, 0);
        QMat aug(rows, cols + rows);
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols + i) = 1;
        }
        auto pivots = aug.rref();
        if (static_cast<int>(pivots.size()) != rows || pivots.back() >= cols)
            throw std::invalid_argument("QMat: right_inverse of a non-surjective map");
        QMat X(cols, rows);
        for (size_t r = 0; r < pivots.size(); ++r)
            for (int j = 0; j < rows; ++j) X.at(pivots[r], j) = aug.at(static_cast<int>(r), cols + j);
        return X;
    }
};

/** Row space in canonical (RREF) form; the ambient dimension is `cols`. */
class Subspace {
  public:
    Subspace() = default;

    explicit Subspace(QMat basis_rows) : basis_(std::move(basis_rows)) {
        auto piv = basis_.rref();
        QMat trimmed(static_cast<int>(piv.size()), basis_.cols);
        for (int i = 0; i < trimmed.rows; ++i)
            for (int j = 0; j < basis_.cols; ++j) trimmed.at(i, j) = basis_.at(i, j);
        basis_ = std::move(trimmed);
    }

    static Subspace zero(int ambient) { return Subspace(QMat(0, ambient)); }

    static Subspace full(int ambient) { return Subspace(QMat::identity(ambient)); }

    const QMat& basis() const { return basis_; }
    int dim() const { return basis_.rows; }
    int ambient() const { return basis_.cols; }

    bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

    friend Subspace operator+(const Subspace& a, const Subspace& b) {
        return Subspace(QMat::vstack(a.basis_, b.basis_));
    }

    /** Intersection via the double annihilator. */
    friend Subspace intersect(const Subspace& a, const Subspace& b) {
        QMat anns = QMat::vstack(a.annihilator(), b.annihilator());
        return Subspace(anns.kernel());
    }

    bool contains(const Subspace& o) const {
        return QMat::vstack(basis_, o.basis_).rank() == dim();
    }

    /** Image under a map acting on column vectors. */
    friend Subspace apply(const QMat& map, const Subspace& s) {
        return Subspace(s.basis_ * map.transpose());
    }

    /** {x : x in this and map x = 0}. */
    friend Subspace preimage_of_zero(const QMat& map, const Subspace& s) {
        // coefficient rows y with map (y B)^T = 0, i.e. (map B^T) y = 0
        QMat comp = map * s.basis_.transpose();
        QMat y = comp.kernel();
        return Subspace(y * s.basis_);
    }

  private:
    /** Rows f with B f^T = 0 (functionals vanishing on the space). */
    QMat annihilator() const { return basis_.kernel(); }

    QMat basis_;
};

}  // namespace linalg

using linalg::QMat;
using linalg::Subspace;

// ---------------------------------------------------------------------------
// Quotients
// ---------------------------------------------------------------------------

/** The canonical surjection Q^n -> Q^n / J as an explicit coordinate matrix. */
inline QMat quotient_map(const Subspace& J) {
    const QMat& R = J.basis();
    int n = J.ambient();
    std::vector<bool> is_pivot(static_cast<size_t>(n), false);
    std::vector<int> pivots;
    {
        int c = 0;
        for (int r = 0; r < R.rows; ++r) {
            while (c < n && R.at(r, c) == 0) ++c;
            pivots.push_back(c);
            is_pivot[static_cast<size_t>(c)] = true;
        }
    }
    std::vector<int> free_cols;
    for (int c = 0; c < n; ++c)
        if (!is_pivot[static_cast<size_t>(c)]) free_cols.push_back(c);
    QMat Q(static_cast<int>(free_cols.size()), n);
    // column j of Q = free coordinates of e_j reduced modulo J
    for (int j = 0; j < n; ++j) {
        if (!is_pivot[static_cast<size_t>(j)]) {
            for (size_t fi = 0; fi < free_cols.size(); ++fi)
                if (free_cols[fi] == j) Q.at(static_cast<int>(fi), j) = 1;
        } else {
            int r = 0;
            while (pivots[static_cast<size_t>(r)] != j) ++r;
            for (size_t fi = 0; fi < free_cols.size(); ++fi)
                Q.at(static_cast<int>(fi), j) = -R.at(r, free_cols[fi]);
        }
    }
    return Q;
}

// ---------------------------------------------------------------------------
// Covering completions
// ---------------------------------------------------------------------------

/**
 * A module with a family of submodules J_i and the induced quotient family
 * M_i = M/J_i, M_ij = M/(J_i + J_j) with canonical surjections.
 */
struct CoverInstance {
    int ambient = 0;
    std::vector<Subspace> J;

    int size() const { return static_cast<int>(J.size()); }

    bool is_cover() const {
        Subspace cap = J.at(0);
        for (size_t i = 1; i < J.size(); ++i) cap = intersect(cap, J[i]);
        return cap.dim() == 0;
    }

    QMat pi(int i) const { return quotient_map(J.at(static_cast<size_t>(i))); }

    QMat pi(int i, int j) const {
        return quotient_map(J.at(static_cast<size_t>(i)) + J.at(static_cast<size_t>(j)));
    }

    /** pi^i_j : M_i -> M_ij with pi^i_j . pi_i = pi_ij. */
    QMat pi_rel(int i, int j) const { return pi(i, j) * pi(i).right_inverse(); }
};

struct CompletionResult {
    int completion_dim = 0;
    Subspace completion;  // subspace of the direct sum of the M_i
    QMat kappa;           // M -> direct sum, m |-> (pi_i m)_i
    bool kappa_injective = false;
    bool complete = false;  // kappa bijective onto the completion
};

inline CompletionResult covering_completion(const CoverInstance& c) {
    int N = c.size();
    std::vector<QMat> pis;
    std::vector<int> offsets;
    int total = 0;
    for (int i = 0; i < N; ++i) {
        pis.push_back(c.pi(i));
        offsets.push_back(total);
        total += pis.back().rows;
    }

    // Psi : (+) M_i -> (+)_{i<j} M_ij, (m_i) |-> (pi^i_j m_i - pi^j_i m_j)
    int psirows = 0;
    std::vector<std::array<int, 2>> pairs;
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) pairs.push_back({i, j});
    QMat psi(0, total);
    for (auto [i, j] : pairs) {
        QMat pij = c.pi_rel(i, j), pji = c.pi_rel(j, i);
        QMat block(pij.rows, total);
        for (int r = 0; r < pij.rows; ++r) {
            for (int col = 0; col < pij.cols; ++col) block.at(r, offsets[i] + col) = pij.at(r, col);
            for (int col = 0; col < pji.cols; ++col)
                block.at(r, offsets[j] + col) -= pji.at(r, col);
        }
        psi = QMat::vstack(psi, block);
        psirows += pij.rows;
    }

    CompletionResult res;
    res.completion = (psirows == 0) ? Subspace::full(total) : Subspace(psi.kernel());
    res.completion_dim = res.completion.dim();

    QMat kappa(0, c.ambient);
    for (int i = 0; i < N; ++i) kappa = QMat::vstack(kappa, pis[i]);
    res.kappa = kappa;

    Subspace cap = c.J.at(0);
    for (int i = 1; i < N; ++i) cap = intersect(cap, c.J[static_cast<size_t>(i)]);
    res.kappa_injective = (kappa.kernel().rows == 0);
    if (res.kappa_injective != (cap.dim() == 0))
        throw std::logic_error("covering_completion: kappa injectivity disagrees with cap J_i");

    Subspace image = apply(kappa, Subspace::full(c.ambient));
    if (!res.completion.contains(image))
        throw std::logic_error("covering_completion: image of kappa escapes ker Psi");
    res.complete = res.kappa_injective && (image.dim() == res.completion_dim);
    return res;
}

inline bool is_complete_cover(const CoverInstance& c) {
    if (!c.is_cover()) throw std::domain_error("is_complete_cover: the J_i do not intersect at 0");
    return covering_completion(c).complete;
}

/** Ordered sufficiency criterion: cap_{i<k}(J_i + J_k) = (cap_{i<k} J_i) + J_k. */
inline bool check_seminet_criterion(const CoverInstance& c) {
    for (int k = 1; k < c.size(); ++k) {
        Subspace lhs = c.J[0] + c.J[static_cast<size_t>(k)];
        Subspace capj = c.J[0];
        for (int i = 1; i < k; ++i) {
            lhs = intersect(lhs, c.J[static_cast<size_t>(i)] + c.J[static_cast<size_t>(k)]);
            capj = intersect(capj, c.J[static_cast<size_t>(i)]);
        }
        if (lhs != capj + c.J[static_cast<size_t>(k)]) return false;
    }
    return true;
}

/** Necessary condition: cap_{i != k}(J_i + J_k) = (cap_{i != k} J_i) + J_k for all k. */
inline bool check_necessary_condition(const CoverInstance& c) {
    int N = c.size();
    if (N < 2) return true;
    for (int k = 0; k < N; ++k) {
        std::optional<Subspace> lhs, capj;
        for (int i = 0; i < N; ++i) {
            if (i == k) continue;
            Subspace s = c.J[static_cast<size_t>(i)] + c.J[static_cast<size_t>(k)];
            lhs = lhs ? intersect(*lhs, s) : s;
            capj = capj ? intersect(*capj, c.J[static_cast<size_t>(i)])
                        : c.J[static_cast<size_t>(i)];
        }
        if (*lhs != *capj + c.J[static_cast<size_t>(k)]) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Gluing
// ---------------------------------------------------------------------------

/**
 * Abstract gluing data: modules M_i (dimensions) and surjections
 * pi^i_j : M_i -> M_ij onto common targets, M_ij = M_ji, pi^i_i = id.
 */
struct GluingInstance {
    std::vector<int> dims;                        // dim M_i
    std::map<std::pair<int, int>, QMat> maps;     // (i,j), i != j  ->  pi^i_j
    std::map<std::pair<int, int>, int> target_dim;  // unordered pair (min,max) -> dim M_ij

    int size() const { return static_cast<int>(dims.size()); }

    const QMat& pi_rel(int i, int j) const { return maps.at({i, j}); }

    void validate() const {
        for (const auto& [key, m] : maps) {
            auto [i, j] = key;
            int td = target_dim.at({std::min(i, j), std::max(i, j)});
            if (m.rows != td || m.cols != dims.at(static_cast<size_t>(i)))
                throw std::invalid_argument("GluingInstance: map dimension mismatch");
            if (m.rank() != td) throw std::invalid_argument("GluingInstance: pi^i_j not surjective");
        }
    }
};

struct GluingResult {
    Subspace glued;           // subspace of (+) M_i
    std::vector<int> offsets;
    std::vector<QMat> p;      // coordinate projections (+) M_i -> M_i
    std::vector<bool> p_surjective;
    bool kernels_complete_cover = false;  // (ker p_i) complete covering of the gluing
};

inline GluingResult glue_modules(const GluingInstance& g) {
    g.validate();
    int N = g.size(), total = 0;
    std::vector<int> offsets;
    for (int i = 0; i < N; ++i) {
        offsets.push_back(total);
        total += g.dims[static_cast<size_t>(i)];
    }
    QMat phi(0, total);
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j) {
            const QMat& pij = g.pi_rel(i, j);
            const QMat& pji = g.pi_rel(j, i);
            QMat block(pij.rows, total);
            for (int r = 0; r < pij.rows; ++r) {
                for (int c = 0; c < pij.cols; ++c) block.at(r, offsets[i] + c) = pij.at(r, c);
                for (int c = 0; c < pji.cols; ++c) block.at(r, offsets[j] + c) -= pji.at(r, c);
            }
            phi = QMat::vstack(phi, block);
        }

    GluingResult res;
    res.glued = (phi.rows == 0) ? Subspace::full(total) : Subspace(phi.kernel());
    res.offsets = offsets;
    for (int i = 0; i < N; ++i) {
        QMat proj(g.dims[static_cast<size_t>(i)], total);
        for (int r = 0; r < proj.rows; ++r) proj.at(r, offsets[i] + r) = 1;
        res.p.push_back(proj);
        Subspace img = apply(proj, res.glued);
        res.p_surjective.push_back(img.dim() == g.dims[static_cast<size_t>(i)]);
    }

    // (ker p_i) is a complete covering of the glued module: verify through
    // the covering completion in glued coordinates
    int gdim = res.glued.dim();
    CoverInstance kc;
    kc.ambient = gdim;
    for (int i = 0; i < N; ++i) {
        // coefficient vectors y (w.r.t. the glued basis) with p_i(y . B) = 0
        QMat comp = res.p[static_cast<size_t>(i)] * res.glued.basis().transpose();
        kc.J.push_back(Subspace(comp.kernel()));
    }
    res.kernels_complete_cover = kc.is_cover() ? is_complete_cover(kc) : false;
    return res;
}

/** Hypotheses and conclusion of the cocycle surjectivity criterion. */
struct CocycleReport {
    bool kernel_images_match = true;  // pi^i_j(ker pi^i_k) = pi^j_i(ker pi^j_k)
    bool phi_well_defined = true;
    bool cocycle_holds = true;        // phi^j_{ik} = phi^k_{ij} . phi^i_{jk}
    bool deep_intersections = true;   // the |I| > 3 lattice condition
    bool hypotheses() const {
        return kernel_images_match && phi_well_defined && cocycle_holds && deep_intersections;
    }
    std::vector<bool> p_surjective;
    bool conclusion() const {
        for (bool b : p_surjective)
            if (!b) return false;
        return !p_surjective.empty();
    }
};

inline CocycleReport check_cocycle_surjectivity(const GluingInstance& g) {
    g.validate();
    CocycleReport rep;
    int N = g.size();

    auto ker_sub = [&](int i, int j) {  // ker pi^i_j as subspace of M_i
        return Subspace(g.pi_rel(i, j).kernel());
    };

    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (i == j) continue;
            for (int k = 0; k < N; ++k) {
                if (k == i || k == j) continue;
                Subspace a = apply(g.pi_rel(i, j), ker_sub(i, k));
                Subspace b = apply(g.pi_rel(j, i), ker_sub(j, k));
                if (a != b) rep.kernel_images_match = false;
            }
        }

    // phi^k_{ij} : M_j/(ker pi^j_i + ker pi^j_k) -> M_i/(ker pi^i_j + ker pi^i_k)
    auto phi_mat = [&](int k, int i, int j) {
        Subspace denom_j = ker_sub(j, i) + ker_sub(j, k);
        Subspace denom_i = ker_sub(i, j) + ker_sub(i, k);
        QMat Qj = quotient_map(denom_j), Qi = quotient_map(denom_i);
        QMat lift = Qj.right_inverse();
        QMat sec = g.pi_rel(i, j).right_inverse();
        QMat phi = Qi * sec * g.pi_rel(j, i) * lift;
        // well-definedness: the composite must kill ker Qj
        QMat W = Qi * sec * g.pi_rel(j, i);
        if (!(W * denom_j.basis().transpose()).is_zero()) rep.phi_well_defined = false;
        return phi;
    };

    for (int i = 0; i < N && rep.phi_well_defined; ++i)
        for (int j = 0; j < N; ++j) {
            if (j == i) continue;
            for (int k = 0; k < N; ++k) {
                if (k == i || k == j) continue;
                QMat lhs = phi_mat(j, i, k);            // phi^j_{ik} : M_k -> M_i
                QMat a = phi_mat(k, i, j);              // phi^k_{ij} : M_j -> M_i
                QMat b = phi_mat(i, j, k);              // phi^i_{jk} : M_k -> M_j
                if (!rep.phi_well_defined) break;
                if (!(lhs - a * b).is_zero()) rep.cocycle_holds = false;
            }
        }

    if (N > 3) {
        // for all 1 <= k < N and 1 <= i < k (1-based):
        // cap_{j<=i}(ker pi^{k+1}_j + ker pi^{k+1}_{i+1}) =
        //   (cap_{j<=i} ker pi^{k+1}_j) + ker pi^{k+1}_{i+1}
        for (int k = 1; k < N; ++k) {
            for (int i = 1; i < k; ++i) {
                int K = k;  // 0-based index of M_{k+1}
                std::optional<Subspace> lhs, cap;
                for (int j = 0; j < i; ++j) {
                    Subspace s = ker_sub(K, j) + ker_sub(K, i);
                    lhs = lhs ? intersect(*lhs, s) : s;
                    cap = cap ? intersect(*cap, ker_sub(K, j)) : ker_sub(K, j);
                }
                if (*lhs != *cap + ker_sub(K, i)) rep.deep_intersections = false;
            }
        }
    }

    auto glued = glue_modules(g);
    rep.p_surjective = glued.p_surjective;
    return rep;
}

// ---------------------------------------------------------------------------
// Randomized lemma checks
// ---------------------------------------------------------------------------

namespace detail {

inline QMat random_matrix(std::mt19937_64& rng, int rows, int cols, int span = 2) {
    std::uniform_int_distribution<int> d(-span, span);
    QMat m(rows, cols);
    for (auto& x : m.a) x = d(rng);
    return m;
}

inline Subspace random_subspace(std::mt19937_64& rng, int ambient, int dim) {
    return Subspace(random_matrix(rng, dim, ambient));
}

inline Subspace random_subspace_of(std::mt19937_64& rng, const Subspace& V, int dim) {
    if (V.dim() == 0) return Subspace::zero(V.ambient());
    return Subspace(random_matrix(rng, dim, V.dim()) * V.basis());
}

inline QMat kron(const QMat& A, const QMat& B) {
    QMat r(A.rows * B.rows, A.cols * B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) {
            if (A.at(i, j) == 0) continue;
            for (int k = 0; k < B.rows; ++k)
                for (int l = 0; l < B.cols; ++l)
                    r.at(i * B.rows + k, j * B.cols + l) = A.at(i, j) * B.at(k, l);
        }
    return r;
}

}  // namespace detail

/**
 * (i)  On instances with exact rows 0 -> K -> K' -> K'' -> 0 and
 *      0 -> L -> L' -> L'' -> 0, exactness of the intersection sequence is
 *      equivalent to exactness of the sum sequence.
 * (ii) ker(f (x) f) cap ker(g (x) g) = ker f (x) ker g + ker g (x) ker f
 *      whenever ker f cap ker g = 0.
 */
inline CheckReport subspace_identities_check(int trials, uint64_t seed) {
    if (trials < 1) throw std::domain_error("subspace_identities_check: trials >= 1");
    CheckReport rep;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dim_d(2, 6), sub_d(0, 3);

    int equiv_seen_exact = 0, equiv_seen_inexact = 0;
    for (int t = 0; t < trials; ++t) {
        // ---- (i) build primed data with exact K and L rows by construction
        int npp = dim_d(rng);                       // dim M''
        int kerd = sub_d(rng) + 1;                  // dim ker(g~)
        int np = npp + kerd;                        // dim M'
        QMat gt(npp, np);                           // g~ : M' ->> M'', full row rank
        do {
            gt = detail::random_matrix(rng, npp, np);
        } while (gt.rank() != npp);

        Subspace Kpp = detail::random_subspace(rng, npp, sub_d(rng));
        Subspace Lpp = detail::random_subspace(rng, npp, sub_d(rng));
        QMat sec = gt.right_inverse();
        Subspace kergt = Subspace(gt.kernel());

        // K' = lift of K'' plus random kernel directions; same for L'
        Subspace Kp = apply(sec, Kpp) + detail::random_subspace_of(rng, kergt, sub_d(rng));
        Subspace Lp = apply(sec, Lpp) + detail::random_subspace_of(rng, kergt, sub_d(rng));
        // exactness of the K and L rows holds by construction with
        // K = ker(g~) cap K', L = ker(g~) cap L', f = inclusion
        Subspace K = intersect(kergt, Kp), L = intersect(kergt, Lp);
        if (apply(gt, Kp) != Kpp || apply(gt, Lp) != Lpp) {
            rep.fail("exact-sequence instance construction failed");
            continue;
        }

        // (stcap) exact at the middle and right?
        Subspace KcapLp = intersect(Kp, Lp);
        bool cap_right = (apply(gt, KcapLp) == intersect(Kpp, Lpp));
        bool cap_mid = (intersect(kergt, KcapLp) == intersect(K, L));
        bool cap_exact = cap_right && cap_mid;

        // (stsum) exact at the middle? (right end is automatic, f injective too)
        Subspace KplusLp = intersect(kergt, Kp + Lp);
        bool sum_exact = (KplusLp == K + L);

        if (cap_exact != sum_exact) {
            rep.fail("intersection/sum exactness equivalence failed");
        } else {
            (cap_exact ? equiv_seen_exact : equiv_seen_inexact)++;
        }

        // ---- (ii) kernel tensor lemma
        int m = dim_d(rng);
        QMat f = detail::random_matrix(rng, dim_d(rng), m);
        QMat gmat = detail::random_matrix(rng, dim_d(rng), m);
        Subspace kf = Subspace(f.kernel()), kg = Subspace(gmat.kernel());
        if (intersect(kf, kg).dim() != 0) continue;  // hypothesis violated; resample
        Subspace lhs = intersect(Subspace(detail::kron(f, f).kernel()),
                                 Subspace(detail::kron(gmat, gmat).kernel()));
        Subspace rhs = Subspace(detail::kron(kf.basis(), kg.basis())) +
                       Subspace(detail::kron(kg.basis(), kf.basis()));
        if (lhs != rhs) rep.fail("kernel tensor identity failed");
    }

    std::ostringstream os;
    os << "equivalence instances: " << equiv_seen_exact << " exact, " << equiv_seen_inexact
       << " inexact";
    rep.notes.push_back(os.str());
    return rep;
}

// ---------------------------------------------------------------------------
// Random instance families
// ---------------------------------------------------------------------------

inline CoverInstance random_cover_instance(std::mt19937_64& rng, int nsub, bool coordinate_aligned,
                                           int ambient_min = 3, int ambient_max = 6) {
    std::uniform_int_distribution<int> amb_d(ambient_min, ambient_max);
    CoverInstance c;
    c.ambient = amb_d(rng);
    std::uniform_int_distribution<int> dim_d(1, std::max(1, c.ambient - 1));
    for (int i = 0; i < nsub; ++i) {
        if (coordinate_aligned) {
            std::uniform_int_distribution<int> coin(0, 1);
            QMat rows(0, c.ambient);
            for (int cdx = 0; cdx < c.ambient; ++cdx) {
                if (coin(rng)) {
                    QMat r(1, c.ambient);
                    r.at(0, cdx) = 1;
                    rows = QMat::vstack(rows, r);
                }
            }
            c.J.push_back(Subspace(rows));
        } else {
            c.J.push_back(detail::random_subspace(rng, c.ambient, dim_d(rng)));
        }
    }
    return c;
}

/** Quotient-derived gluing instance: M_i = M/J_i with the canonical maps. */
inline GluingInstance quotient_gluing_instance(const CoverInstance& c) {
    GluingInstance g;
    int N = c.size();
    for (int i = 0; i < N; ++i) g.dims.push_back(c.pi(i).rows);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (i == j) continue;
            QMat rel = c.pi_rel(i, j);
            g.maps[{i, j}] = rel;
            g.target_dim[{std::min(i, j), std::max(i, j)}] = rel.rows;
        }
    return g;
}

}  // namespace qlens

#endif
