#include <catch_amalgamated.hpp>

#include <nilgeo/nilgeo.hpp>
#include "support/oracles.hpp"

using namespace nilgeo;
using namespace nilgeo::testsupport;

namespace {

Vec<Rat> unit(std::size_t n, std::size_t i) {
    Vec<Rat> v(n, Rat(0));
    v[i] = Rat(1);
    return v;
}

NilAlgebra make_abelian(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i + 1));
    AlgebraBuilder b("abelian", labels);
    for (auto& l : labels) b.set_ip(l, l, Rat(1));
    return b.build();
}

NilAlgebra make_h3xr() {
    AlgebraBuilder b("h3xr", {"z", "e1", "e2", "w"});
    b.set_bracket("e1", "e2", {{"z", Rat(1)}});
    for (auto l : {"z", "e1", "e2", "w"}) b.set_ip(l, l, Rat(1));
    return b.build();
}

// brackets V x E -> U with quaternion-like coefficients; optionally a spare
// central z-line on which j vanishes
NilAlgebra make_vxe_to_u(bool with_z) {
    std::vector<std::string> labels = {"u1", "u2", "v1", "v2", "e1", "e2"};
    if (with_z) labels.push_back("z");
    AlgebraBuilder b(with_z ? "vxe-u-z" : "vxe-u", labels);
    b.set_bracket("v1", "e1", {{"u1", Rat(1)}});
    b.set_bracket("v1", "e2", {{"u2", Rat(1)}});
    b.set_bracket("v2", "e1", {{"u2", Rat(1)}});
    b.set_bracket("v2", "e2", {{"u1", Rat(-1)}});
    b.set_ip("u1", "v1", Rat(1));
    b.set_ip("u2", "v2", Rat(1));
    b.set_ip("e1", "e1", Rat(1));
    b.set_ip("e2", "e2", Rat(1));
    if (with_z) b.set_ip("z", "z", Rat(1));
    return b.build();
}

std::vector<NilAlgebra> paper_fixtures() {
    return {make_h3(1, -1, 1), make_h3null(1), make_hq(1, 1, 1), make_h12(-1, 1, 1),
            make_n4flat()};
}

} // namespace

TEST_CASE("connection table values", "[curvature]") {
    SECTION("h3") {
        for (int ep : {1, -1})
            for (int eb2 : {1, -1}) {
                NilAlgebra A = make_h3(ep, 1, eb2);
                ConnectionTable T = connection_table(A);
                std::size_t z = A.index("z"), e1 = A.index("e1"), e2 = A.index("e2");
                REQUIRE(T.nabla[z][e1] == vscale(Rat(-ep * eb2, 2), unit(3, e2)));
                REQUIRE(T.nabla[e1][e2] == vscale(Rat(1, 2), unit(3, z)));
                REQUIRE(T.nabla[e2][e1] == vscale(Rat(-1, 2), unit(3, z)));
            }
    }
    SECTION("h3 null center") {
        for (int eb : {1, -1}) {
            NilAlgebra A = make_h3null(eb);
            ConnectionTable T = connection_table(A);
            std::size_t v = A.index("v"), e = A.index("e"), u = A.index("u");
            REQUIRE(T.nabla[v][v] == vscale(Rat(-eb), unit(3, e)));
            REQUIRE(T.nabla[v][e] == unit(3, u));
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j) {
                    if ((i == v && j == v) || (i == v && j == e)) continue;
                    REQUIRE(vis_zero(T.nabla[i][j]));
                }
        }
    }
    SECTION("abelian vanishes") {
        NilAlgebra A = make_abelian(3);
        ConnectionTable T = connection_table(A);
        for (auto& row : T.nabla)
            for (auto& entry : row) REQUIRE(vis_zero(entry));
    }
}

TEST_CASE("connection is metric and torsion free", "[curvature][property]") {
    TestRng rng(201);
    std::vector<NilAlgebra> algebras = paper_fixtures();
    for (int r = 0; r < 5; ++r) algebras.push_back(random_adapted_algebra(rng));
    for (auto& A : algebras) {
        ConnectionTable T = connection_table(A);
        std::size_t n = A.dim();
        INFO(A.name());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                REQUIRE(vadd(T.nabla[i][j], vscale(Rat(-1), T.nabla[j][i])) ==
                        A.basis_bracket(i, j));
                for (std::size_t k = 0; k < n; ++k)
                    REQUIRE(A.ip(T.nabla[i][j], unit(n, k)) +
                                A.ip(unit(n, j), T.nabla[i][k]) ==
                            Rat(0));
            }
    }
}

TEST_CASE("curvature tensor values", "[curvature]") {
    SECTION("h3") {
        for (int ep : {1, -1})
            for (int eb1 : {1, -1})
                for (int eb2 : {1, -1}) {
                    NilAlgebra A = make_h3(ep, eb1, eb2);
                    CurvatureTensor R = curvature_tensor(A, connection_table(A));
                    std::size_t z = A.index("z"), e1 = A.index("e1"), e2 = A.index("e2");
                    REQUIRE(R.apply(unit(3, e1), unit(3, e2), unit(3, e1)) ==
                            vscale(Rat(3 * ep * eb2, 4), unit(3, e2)));
                    REQUIRE(R.apply(unit(3, z), unit(3, e1), unit(3, z)) ==
                            vscale(Rat(-eb1 * eb2, 4), unit(3, e1)));
                }
    }
    SECTION("h3 null center is flat") {
        for (int eb : {1, -1}) {
            NilAlgebra A = make_h3null(eb);
            REQUIRE(curvature_tensor(A, connection_table(A)).is_zero());
        }
    }
    SECTION("quaternionic value") {
        for (int ep : {1, -1})
            for (int eb1 : {1, -1}) {
                NilAlgebra A = make_hq(ep, eb1, -1);
                CurvatureTensor R = curvature_tensor(A, connection_table(A));
                std::size_t v1 = A.index("v1"), v2 = A.index("v2"), u2 = A.index("u2");
                REQUIRE(R.apply(unit(7, v1), unit(7, v2), unit(7, v1)) ==
                        vscale(Rat(eb1) + Rat(3 * ep, 4), unit(7, u2)));
            }
    }
}

TEST_CASE("sectional curvature", "[curvature]") {
    SECTION("h3 planes") {
        for (int ep : {1, -1})
            for (int eb1 : {1, -1})
                for (int eb2 : {1, -1}) {
                    NilAlgebra A = make_h3(ep, eb1, eb2);
                    CurvatureTensor R = curvature_tensor(A, connection_table(A));
                    std::size_t z = A.index("z"), e1 = A.index("e1"), e2 = A.index("e2");
                    Sectional k1 = sectional(A, R, unit(3, z), unit(3, e1));
                    REQUIRE(k1.value.has_value());
                    REQUIRE(*k1.value == Rat(ep * eb1 * eb2, 4));
                    Sectional k2 = sectional(A, R, unit(3, e1), unit(3, e2));
                    REQUIRE(*k2.value == Rat(-3 * ep * eb1 * eb2, 4));
                }
    }
    SECTION("degenerate quaternionic plane reports only the numerator") {
        NilAlgebra A = make_hq(1, 1, 1);
        CurvatureTensor R = curvature_tensor(A, connection_table(A));
        Sectional k = sectional(A, R, unit(7, A.index("v1")), unit(7, A.index("v2")));
        REQUIRE(k.numerator == -(Rat(1) + Rat(3, 4)));
        REQUIRE_FALSE(k.value.has_value());
    }
    SECTION("central planes are homaloidal") {
        NilAlgebra A = make_h3xr();
        CurvatureTensor R = curvature_tensor(A, connection_table(A));
        Sectional k = sectional(A, R, unit(4, A.index("z")), unit(4, A.index("w")));
        REQUIRE(k.numerator == Rat(0));
    }
    SECTION("dependent vectors are rejected") {
        NilAlgebra A = make_h3(1, 1, 1);
        CurvatureTensor R = curvature_tensor(A, connection_table(A));
        Vec<Rat> x = unit(3, 1);
        REQUIRE_THROWS_AS(sectional(A, R, x, vscale(Rat(2), x)), DependentVectors);
    }
}

TEST_CASE("ricci and scalar values", "[curvature]") {
    SECTION("h3") {
        for (int ep : {1, -1})
            for (int eb1 : {1, -1})
                for (int eb2 : {1, -1}) {
                    NilAlgebra A = make_h3(ep, eb1, eb2);
                    Mat<Rat> ric = ricci(A, curvature_tensor(A, connection_table(A)));
                    std::size_t z = A.index("z"), e1 = A.index("e1"), e2 = A.index("e2");
                    REQUIRE(ric(z, z) == Rat(eb1 * eb2, 2));
                    REQUIRE(ric(e1, e1) == Rat(-ep * eb2, 2));
                    REQUIRE(ric(e2, e2) == Rat(-ep * eb1, 2));
                    REQUIRE(scalar_curvature(A, ric) == Rat(-ep * eb1 * eb2, 2));
                }
    }
    SECTION("H(1,2)") {
        NilAlgebra A = make_h12(1, 1, -1);
        Mat<Rat> ric = ricci(A, curvature_tensor(A, connection_table(A)));
        REQUIRE(ric(A.index("z"), A.index("z")) == Rat(-1, 2));
    }
    SECTION("abelian") {
        NilAlgebra A = make_abelian(4);
        Mat<Rat> ric = ricci(A, curvature_tensor(A, connection_table(A)));
        REQUIRE(ric == Mat<Rat>(4, 4));
        REQUIRE(scalar_curvature(A, ric) == Rat(0));
    }
    SECTION("Ric(u, .) = 0 on the null directions") {
        for (auto& A : {make_hq(1, 1, 1), make_h12(1, 1, 1), make_n4flat(),
                        make_n4partial(1, 1)}) {
            Decomposition D = witt_decompose(A);
            Mat<Rat> ric = ricci(A, curvature_tensor(A, connection_table(A)));
            for (std::size_t k = 0; k < D.p; ++k) {
                Vec<Rat> u = D.adapted_basis_vector(D.u_index(k));
                for (std::size_t j = 0; j < A.dim(); ++j) {
                    Rat acc(0);
                    for (std::size_t i = 0; i < A.dim(); ++i) acc += u[i] * ric(i, j);
                    REQUIRE(acc == Rat(0));
                }
            }
        }
    }
    SECTION("H(2,1) with null center is Ricci-curved but scalar flat") {
        AlgebraBuilder b("h21null", {"u", "v", "e2", "e3", "e4"});
        b.set_bracket("v", "e3", {{"u", Rat(1)}});
        b.set_bracket("e2", "e4", {{"u", Rat(1)}});
        b.set_ip("u", "v", Rat(1));
        for (auto l : {"e2", "e3", "e4"}) b.set_ip(l, l, Rat(1));
        NilAlgebra A = b.build();
        CurvatureTensor R = curvature_tensor(A, connection_table(A));
        Mat<Rat> ric = ricci(A, R);
        REQUIRE_FALSE(R.is_zero());
        REQUIRE(ric(A.index("v"), A.index("v")) == Rat(1, 2));
        REQUIRE(scalar_curvature(A, ric) == Rat(0));
    }
}

TEST_CASE("flatness reports", "[curvature]") {
    auto report = [](const NilAlgebra& A) {
        Decomposition D = witt_decompose(A);
        return flatness_report(A, D, curvature_tensor(A, connection_table(A)));
    };
    SECTION("null-center Heisenberg is flat without the sufficient condition") {
        FlatnessReport rep = report(make_h3null(1));
        REQUIRE(rep.is_flat);
        REQUIRE_FALSE(rep.e0f_sufficient);
    }
    SECTION("flat N4 satisfies the sufficient condition") {
        FlatnessReport rep = report(make_n4flat());
        REQUIRE(rep.e0f_sufficient);
        REQUIRE(rep.is_flat);
    }
    SECTION("h3 is not flat") {
        REQUIRE_FALSE(report(make_h3(1, 1, 1)).is_flat);
    }
    SECTION("the sufficient condition implies flatness everywhere tested") {
        TestRng rng(77);
        for (int r = 0; r < 10; ++r) {
            NilAlgebra A = random_adapted_algebra(rng);
            FlatnessReport rep = report(A);
            if (rep.e0f_sufficient) REQUIRE(rep.is_flat);
            REQUIRE(rep.homaloidal_center);
        }
    }
}

TEST_CASE("euclidean de Rham factor", "[curvature]") {
    SECTION("appended central line is recovered") {
        NilAlgebra A = make_h3xr();
        Decomposition D = witt_decompose(A);
        auto factor = derham_euclidean_factor(A, D);
        REQUIRE(factor.size() == 1);
        REQUIRE(factor[0] == unit(4, A.index("w")));
    }
    SECTION("h3 has no factor") {
        NilAlgebra A = make_h3(1, 1, 1);
        REQUIRE(derham_euclidean_factor(A, witt_decompose(A)).empty());
    }
    SECTION("degenerate center is refused") {
        NilAlgebra A = make_h3null(1);
        REQUIRE_THROWS_AS(derham_euclidean_factor(A, witt_decompose(A)), DegenerateCenter);
    }
}

TEST_CASE("block formulas agree with the generic tensor", "[curvature][oracle]") {
    TestRng rng(202);
    std::vector<NilAlgebra> algebras = paper_fixtures();
    for (int r = 0; r < 5; ++r) algebras.push_back(random_adapted_algebra(rng));
    for (auto& A : algebras) {
        Decomposition D = witt_decompose(A);
        CurvatureTensor R = curvature_tensor(A, connection_table(A));
        INFO(A.name());
        std::size_t n = A.dim();
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                for (std::size_t w = 0; w < n; ++w)
                    REQUIRE(R.apply(D.adapted_basis_vector(x), D.adapted_basis_vector(y),
                                    D.adapted_basis_vector(w)) == curv_block(A, D, x, y, w));
    }
}

TEST_CASE("ricci block formulas and trace expansion", "[curvature][oracle]") {
    TestRng rng(203);
    std::vector<NilAlgebra> algebras = paper_fixtures();
    for (int r = 0; r < 3; ++r) algebras.push_back(random_adapted_algebra(rng));
    for (auto& A : algebras) {
        Decomposition D = witt_decompose(A);
        CurvatureTensor R = curvature_tensor(A, connection_table(A));
        Mat<Rat> ric = ricci(A, R);
        auto J = j_basis(A, D);
        INFO(A.name());
        for (std::size_t i = 0; i < A.dim(); ++i)
            for (std::size_t j = 0; j < A.dim(); ++j) {
                Vec<Rat> x = D.adapted_basis_vector(i), y = D.adapted_basis_vector(j);
                Rat via_matrix(0);
                for (std::size_t r = 0; r < A.dim(); ++r)
                    for (std::size_t c = 0; c < A.dim(); ++c)
                        via_matrix += x[r] * ric(r, c) * y[c];
                REQUIRE(via_matrix == ricci_adapted_trace(A, D, R, x, y));
                REQUIRE(via_matrix == ricci_block(D, J, i, j));
            }
        REQUIRE(scalar_curvature(A, ric) == scalar_block(D, J));
        REQUIRE(scalar_curvature(A, ric) == scalar_from_j(A, D));
    }
}

TEST_CASE("closed forms for distinguished planes", "[curvature][oracle]") {
    for (auto& A : {make_h3(1, 1, -1), make_hq(-1, 1, 1), make_h12(1, -1, 1),
                    make_n4partial(1, 1)}) {
        Decomposition D = witt_decompose(A);
        CurvatureTensor R = curvature_tensor(A, connection_table(A));
        auto J = j_basis(A, D);
        INFO(A.name());
        for (std::size_t a = 0; a < D.q; ++a)
            for (std::size_t b = 0; b < D.s; ++b) {
                Vec<Rat> z = D.adapted_basis_vector(D.z_index(a));
                Vec<Rat> e = D.adapted_basis_vector(D.e_index(b));
                REQUIRE(*sectional(A, R, z, e).value == kze_block(D, J, a, b));
            }
        for (std::size_t a = 0; a < D.s; ++a)
            for (std::size_t b = a + 1; b < D.s; ++b) {
                Vec<Rat> ea = D.adapted_basis_vector(D.e_index(a));
                Vec<Rat> eb = D.adapted_basis_vector(D.e_index(b));
                REQUIRE(*sectional(A, R, ea, eb).value == kee_block(A, D, a, b));
            }
        // null planes: numerators only
        for (std::size_t i = 0; i < D.p; ++i) {
            Vec<Rat> v = D.adapted_basis_vector(D.v_index(i));
            for (std::size_t a = 0; a < D.q; ++a) {
                Vec<Rat> z = D.adapted_basis_vector(D.z_index(a));
                REQUIRE(A.ip(R.apply(z, v, v), z) == oscn_zv(D, J, a, i));
            }
            for (std::size_t b = 0; b < D.s; ++b) {
                Vec<Rat> e = D.adapted_basis_vector(D.e_index(b));
                REQUIRE(A.ip(R.apply(v, e, e), v) == oscn_ve(A, D, J, i, b));
            }
            for (std::size_t k = i + 1; k < D.p; ++k) {
                Vec<Rat> vk = D.adapted_basis_vector(D.v_index(k));
                REQUIRE(A.ip(R.apply(v, vk, vk), v) == oscn_vv(A, D, J, i, k));
            }
        }
    }
}

TEST_CASE("ricci-flat and scalar-flat corollaries", "[curvature]") {
    SECTION("j(u) interchanging V and E forces Ricci flatness") {
        NilAlgebra A = make_vxe_to_u(false);
        Decomposition D = witt_decompose(A);
        auto J = j_basis(A, D);
        REQUIRE(D.q == 0);
        for (std::size_t c = 0; c < D.p; ++c)
            for (std::size_t row = 0; row < D.ve_dim(); ++row)
                for (std::size_t col = 0; col < D.ve_dim(); ++col)
                    if ((row < D.p) == (col < D.p)) REQUIRE(J[c](row, col) == Rat(0));
        CurvatureTensor R = curvature_tensor(A, connection_table(A));
        REQUIRE_FALSE(R.is_zero());
        REQUIRE(ricci(A, R) == Mat<Rat>(A.dim(), A.dim()));
    }
    SECTION("vanishing j on Z forces scalar flatness") {
        NilAlgebra A = make_vxe_to_u(true);
        Decomposition D = witt_decompose(A);
        auto J = j_basis(A, D);
        REQUIRE(D.q == 1);
        REQUIRE(J[D.p] == Mat<Rat>(D.ve_dim(), D.ve_dim()));
        CurvatureTensor R = curvature_tensor(A, connection_table(A));
        REQUIRE_FALSE(R.is_zero());
        REQUIRE(scalar_curvature(A, ricci(A, R)) == Rat(0));
    }
}

TEST_CASE("tensor symmetries", "[curvature][property]") {
    TestRng rng(204);
    std::vector<NilAlgebra> algebras = {make_h3(1, -1, 1), make_h3null(-1), make_hq(1, 1, -1),
                                        make_h12(1, 1, 1), make_n4partial(-1, 1)};
    for (int r = 0; r < 3; ++r) algebras.push_back(random_adapted_algebra(rng));
    for (auto& A : algebras) {
        std::size_t n = A.dim();
        CurvatureTensor R = curvature_tensor(A, connection_table(A));
        INFO(A.name());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    Vec<Rat> bi = unit(n, i), bj = unit(n, j), bk = unit(n, k);
                    // antisymmetry and first Bianchi
                    REQUIRE(R.apply(bi, bj, bk) == vscale(Rat(-1), R.apply(bj, bi, bk)));
                    Vec<Rat> cyc = vadd(vadd(R.apply(bi, bj, bk), R.apply(bj, bk, bi)),
                                        R.apply(bk, bi, bj));
                    REQUIRE(vis_zero(cyc));
                    // pair symmetry
                    for (std::size_t l = 0; l < n; ++l) {
                        Vec<Rat> bl = unit(n, l);
                        REQUIRE(A.ip(R.apply(bi, bj, bk), bl) ==
                                A.ip(R.apply(bk, bl, bi), bj));
                    }
                }
    }
}
