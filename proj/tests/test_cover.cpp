#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qlens/cover.hpp"

using namespace qlens;
using qlens::linalg::Rat;

namespace {

Subspace span_rows(int ambient, std::initializer_list<std::initializer_list<int>> rows) {
    QMat m(static_cast<int>(rows.size()), ambient);
    int i = 0;
    for (const auto& row : rows) {
        int j = 0;
        for (int v : row) m.at(i, j++) = v;
        ++i;
    }
    return Subspace(m);
}

}  // namespace

TEST_CASE("exact linear algebra basics", "[cover]") {
    QMat A(2, 3);
    A.at(0, 0) = 1;
    A.at(0, 1) = 2;
    A.at(0, 2) = 3;
    A.at(1, 0) = 2;
    A.at(1, 1) = 4;
    A.at(1, 2) = 6;
    REQUIRE(A.rank() == 1);
    QMat K = A.kernel();
    REQUIRE(K.rows == 2);
    REQUIRE((A * K.transpose()).is_zero());

    std::mt19937_64 rng(1);
    for (int t = 0; t < 25; ++t) {
        QMat S = qlens::detail::random_matrix(rng, 2, 5);
        if (S.rank() != 2) continue;
        QMat X = S.right_inverse();
        REQUIRE(S * X == QMat::identity(2));
    }
}

TEST_CASE("subspace arithmetic", "[cover]") {
    Subspace V = span_rows(4, {{1, 0, 0, 0}, {0, 1, 0, 0}});
    Subspace W = span_rows(4, {{0, 1, 0, 0}, {0, 0, 1, 0}});
    REQUIRE((V + W).dim() == 3);
    REQUIRE(intersect(V, W) == span_rows(4, {{0, 1, 0, 0}}));
    REQUIRE(V.contains(span_rows(4, {{1, 1, 0, 0}})));
    REQUIRE(!V.contains(W));
}

TEST_CASE("quotient maps compose correctly", "[cover]") {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 30; ++t) {
        CoverInstance c = random_cover_instance(rng, 3, false);
        for (int i = 0; i < 3; ++i) {
            // pi_i vanishes exactly on J_i
            QMat pi = c.pi(i);
            REQUIRE((pi * c.J[i].basis().transpose()).is_zero());
            REQUIRE(pi.rank() == pi.rows);
            for (int j = 0; j < 3; ++j) {
                if (i == j) continue;
                REQUIRE(c.pi_rel(i, j) * c.pi(i) == c.pi(i, j));
            }
        }
    }
}

TEST_CASE("single trivial submodule gives kappa = id", "[cover]") {
    CoverInstance c;
    c.ambient = 4;
    c.J.push_back(Subspace::zero(4));
    auto res = covering_completion(c);
    REQUIRE(res.kappa_injective);
    REQUIRE(res.complete);
    REQUIRE(res.completion_dim == 4);
}

TEST_CASE("any two-subspace covering is complete", "[cover]") {
    std::mt19937_64 rng(42);
    int covers_seen = 0;
    for (int t = 0; t < 100; ++t) {
        CoverInstance c = random_cover_instance(rng, 2, false);
        auto res = covering_completion(c);
        // kappa is surjective onto the completion for ANY two submodules
        Subspace img = apply(res.kappa, Subspace::full(c.ambient));
        REQUIRE(img.dim() == res.completion_dim);
        if (c.is_cover()) {
            ++covers_seen;
            REQUIRE(is_complete_cover(c));
        }
    }
    REQUIRE(covers_seen > 10);
}

TEST_CASE("kappa injectivity is equivalent to the cover property", "[cover]") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 60; ++t) {
        CoverInstance c = random_cover_instance(rng, 3, t % 2 == 0);
        auto res = covering_completion(c);
        REQUIRE(res.kappa_injective == c.is_cover());
    }
}

TEST_CASE("completion equals the direct image computation", "[cover]") {
    // brute force: completion = ker Psi must equal span{kappa(m)} exactly
    // when complete, and strictly contain it when not
    std::mt19937_64 rng(11);
    for (int t = 0; t < 40; ++t) {
        CoverInstance c = random_cover_instance(rng, 3, false);
        auto res = covering_completion(c);
        Subspace img = apply(res.kappa, Subspace::full(c.ambient));
        REQUIRE(res.completion.contains(img));
        if (res.complete) REQUIRE(img == res.completion);
    }
}

TEST_CASE("seminet criterion implies completeness", "[cover]") {
    std::mt19937_64 rng(13);
    int seminet_hits = 0;
    for (int t = 0; t < 400 && seminet_hits < 100; ++t) {
        CoverInstance c = random_cover_instance(rng, 3, t % 3 != 0);
        if (!c.is_cover()) continue;
        if (!check_seminet_criterion(c)) continue;
        ++seminet_hits;
        REQUIRE(is_complete_cover(c));
    }
    REQUIRE(seminet_hits >= 100);

    // nested chains are nets, hence satisfy the criterion
    Subspace J1 = span_rows(4, {{1, 0, 0, 0}});
    Subspace J2 = span_rows(4, {{1, 0, 0, 0}, {0, 1, 0, 0}});
    Subspace J3 = Subspace::zero(4);
    CoverInstance chain{4, {J3, J1, J2}};
    REQUIRE(check_seminet_criterion(chain));
    REQUIRE(is_complete_cover(chain));
}

TEST_CASE("necessary condition holds on complete instances and detects failures", "[cover]") {
    std::mt19937_64 rng(17);
    int complete_seen = 0, incomplete_by_necessary = 0;
    for (int t = 0; t < 300; ++t) {
        CoverInstance c = random_cover_instance(rng, 3, t % 2 == 0);
        if (!c.is_cover()) continue;
        bool complete = is_complete_cover(c);
        bool necessary = check_necessary_condition(c);
        if (complete) {
            ++complete_seen;
            REQUIRE(necessary);  // contrapositive of the necessary condition
        } else if (!necessary) {
            ++incomplete_by_necessary;
        }
    }
    REQUIRE(complete_seen > 20);
    REQUIRE(incomplete_by_necessary > 5);

    // three distinct lines in the plane violate the necessary condition
    CoverInstance lines{2,
                        {span_rows(2, {{1, 0}}), span_rows(2, {{0, 1}}), span_rows(2, {{1, 1}})}};
    REQUIRE(lines.is_cover());
    REQUIRE(!check_necessary_condition(lines));
    REQUIRE(!is_complete_cover(lines));
}

TEST_CASE("gluing: trivial targets give the direct sum", "[cover]") {
    GluingInstance g;
    g.dims = {2, 3};
    g.maps[{0, 1}] = QMat(0, 2);
    g.maps[{1, 0}] = QMat(0, 3);
    g.target_dim[{0, 1}] = 0;
    auto res = glue_modules(g);
    REQUIRE(res.glued.dim() == 5);
    REQUIRE(res.p_surjective[0]);
    REQUIRE(res.p_surjective[1]);
    REQUIRE(res.kernels_complete_cover);
}

TEST_CASE("gluing: fiber product over a common quotient", "[cover]") {
    std::mt19937_64 rng(19);
    for (int t = 0; t < 25; ++t) {
        CoverInstance c = random_cover_instance(rng, 2, false);
        GluingInstance g = quotient_gluing_instance(c);
        auto res = glue_modules(g);
        for (bool s : res.p_surjective) REQUIRE(s);
        REQUIRE(res.kernels_complete_cover);
    }
}

TEST_CASE("self-gluing can defeat surjectivity of the projections", "[cover]") {
    // M_1 = M_2 = M_3 = Q, all targets Q; the twist pi^3_2 = -id forces 0
    GluingInstance g;
    g.dims = {1, 1, 1};
    QMat id(1, 1), neg(1, 1);
    id.at(0, 0) = 1;
    neg.at(0, 0) = -1;
    g.maps[{0, 1}] = id;
    g.maps[{1, 0}] = id;
    g.maps[{0, 2}] = id;
    g.maps[{2, 0}] = id;
    g.maps[{1, 2}] = id;
    g.maps[{2, 1}] = neg;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) g.target_dim[{i, j}] = 1;
    auto res = glue_modules(g);
    REQUIRE(res.glued.dim() == 0);
    REQUIRE(!res.p_surjective[0]);
    // the kernels of p_i still form a complete covering of the glued module
    REQUIRE(res.kernels_complete_cover);
    // and the cocycle hypothesis fails, consistent with the criterion
    auto rep = check_cocycle_surjectivity(g);
    REQUIRE(!rep.hypotheses());
}

TEST_CASE("cocycle hypotheses imply surjective projections", "[cover]") {
    std::mt19937_64 rng(23);
    int ok3 = 0;
    while (ok3 < 50) {
        CoverInstance c = random_cover_instance(rng, 3, false);
        GluingInstance g = quotient_gluing_instance(c);
        auto rep = check_cocycle_surjectivity(g);
        if (!rep.hypotheses()) continue;
        ++ok3;
        REQUIRE(rep.conclusion());
    }
    int ok4 = 0;
    while (ok4 < 10) {
        CoverInstance c = random_cover_instance(rng, 4, true);  // coordinate-aligned
        GluingInstance g = quotient_gluing_instance(c);
        auto rep = check_cocycle_surjectivity(g);
        if (!rep.hypotheses()) continue;
        ++ok4;
        REQUIRE(rep.conclusion());
    }
}

TEST_CASE("a broken cocycle is flagged", "[cover]") {
    // one-dimensional modules, maps are nonzero scalars; cocycle condition is
    // lambda^i_k^-1 lambda^k_i = (lambda^i_j^-1 lambda^j_i)(lambda^j_k^-1 lambda^k_j)
    GluingInstance g;
    g.dims = {1, 1, 1};
    auto sc = [](int v) {
        QMat m(1, 1);
        m.at(0, 0) = v;
        return m;
    };
    g.maps[{0, 1}] = sc(1);
    g.maps[{1, 0}] = sc(1);
    g.maps[{0, 2}] = sc(1);
    g.maps[{2, 0}] = sc(1);
    g.maps[{1, 2}] = sc(1);
    g.maps[{2, 1}] = sc(2);  // breaks the cocycle
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) g.target_dim[{i, j}] = 1;
    auto rep = check_cocycle_surjectivity(g);
    REQUIRE(rep.kernel_images_match);  // kernels are all zero here
    REQUIRE(!rep.cocycle_holds);
    REQUIRE(!rep.conclusion());
}

TEST_CASE("exact sequence and kernel lemmas on random instances", "[cover]") {
    auto rep = subspace_identities_check(200, 12345);
    CAPTURE(rep.notes);
    REQUIRE(rep.ok);
}

TEST_CASE("injective maps give zero kernel tensors", "[cover]") {
    // f, g injective: both sides of the kernel tensor identity are 0
    QMat f = QMat::identity(3), g = QMat::identity(3);
    Subspace lhs = intersect(Subspace(qlens::detail::kron(f, f).kernel()),
                             Subspace(qlens::detail::kron(g, g).kernel()));
    REQUIRE(lhs.dim() == 0);
}

TEST_CASE("search for a complete cover that fails the seminet criterion", "[cover][search]") {
    // with three subspaces completeness forces the criterion (it coincides
    // with the necessary condition), so the search runs over gluing-derived
    // four-subspace families
    std::mt19937_64 rng(31);
    bool found = false;
    CoverInstance witness;
    for (int t = 0; t < 400 && !found; ++t) {
        CoverInstance c = random_cover_instance(rng, 4, false, 3, 5);
        GluingInstance g = quotient_gluing_instance(c);
        auto glued = glue_modules(g);
        int gdim = glued.glued.dim();
        if (gdim == 0) continue;
        CoverInstance kc;
        kc.ambient = gdim;
        for (int i = 0; i < 4; ++i) {
            QMat comp = glued.p[static_cast<size_t>(i)] * glued.glued.basis().transpose();
            kc.J.push_back(Subspace(comp.kernel()));
        }
        if (!kc.is_cover()) continue;
        if (!is_complete_cover(kc)) continue;  // gluing kernels: expected complete
        if (!check_seminet_criterion(kc)) {
            found = true;
            witness = kc;
        }
    }
    if (found) {
        REQUIRE(is_complete_cover(witness));
        REQUIRE(!check_seminet_criterion(witness));
        SUCCEED("witness recorded: complete cover failing the ordered criterion");
    } else {
        WARN("no complete-but-non-seminet cover found in this search budget");
    }
}
