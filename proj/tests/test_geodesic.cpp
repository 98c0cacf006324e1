#include <catch_amalgamated.hpp>

#include <cmath>

#include <nilgeo/nilgeo.hpp>
#include "support/oracles.hpp"

using namespace nilgeo;
using testsupport::TestRng;

namespace {

Vec<double> dunit(std::size_t n, std::size_t i, double v = 1.0) {
    Vec<double> out(n, 0.0);
    out[i] = v;
    return out;
}

double max_abs_diff(const Vec<double>& a, const Vec<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

double frame_speed(const NilAlgebra& A, const GeodesicSample& sm) {
    Mat<double> G = cast_mat<double>(A.gram());
    Vec<double> gv = G * sm.velocity_frame;
    double s = 0.0;
    for (std::size_t i = 0; i < gv.size(); ++i) s += sm.velocity_frame[i] * gv[i];
    return s;
}

// two commuting Heisenberg layers sharing nothing: J has a 2-dim kernel on E
NilAlgebra make_two_layer() {
    AlgebraBuilder b("two-layer", {"z1", "z2", "e1", "e2", "e3", "e4"});
    b.set_bracket("e1", "e2", {{"z1", Rat(1)}});
    b.set_bracket("e3", "e4", {{"z2", Rat(1)}});
    for (auto l : {"z1", "z2", "e1", "e2", "e3", "e4"}) b.set_ip(l, l, Rat(1));
    return b.build();
}

NilAlgebra make_abelian(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i + 1));
    AlgebraBuilder b("abelian", labels);
    for (auto& l : labels) b.set_ip(l, l, Rat(1));
    return b.build();
}

} // namespace

TEST_CASE("geodesic state construction", "[geodesic]") {
    SECTION("h3 rotation generator with trivial kernel") {
        NilAlgebra A = make_h3(1, 1, 1);
        Decomposition D = witt_decompose(A);
        Vec<double> v_init = dunit(3, A.index("z"));
        v_init[A.index("e1")] = 1.0;
        GeodesicState S = build_geodesic(A, D, v_init);
        REQUIRE(S.method == GeodesicMethod::closed_form);
        REQUIRE(S.J_matrix.rows() == 2);
        CHECK(S.J_matrix(0, 0) == 0.0);
        CHECK(S.J_matrix(1, 0) == 1.0);
        CHECK(S.J_matrix(0, 1) == -1.0);
        CHECK(S.J_matrix(1, 1) == 0.0);
        REQUIRE(S.E1_basis.empty());
        REQUIRE(S.E2_basis.size() == 2);
    }
    SECTION("flat N4 has no E block and quadratic U drift") {
        NilAlgebra A = make_n4flat();
        Decomposition D = witt_decompose(A);
        Vec<double> v_init(4, 0.0);
        v_init[A.index("v1")] = 1.0;
        v_init[A.index("v2")] = 1.0;
        GeodesicState S = build_geodesic(A, D, v_init);
        REQUIRE(S.method == GeodesicMethod::closed_form);
        REQUIRE(S.s == 0);
        // Jcal applied to v0 equals the U part of ad†_{v0} v0
        Vec<Rat> v0r(4, Rat(0));
        v0r[A.index("v1")] = Rat(1);
        v0r[A.index("v2")] = Rat(1);
        Vec<Rat> addag = A.ad_dagger(v0r) * v0r;
        Vec<double> ve = S.v0;
        ve.insert(ve.end(), S.e0.begin(), S.e0.end());
        Vec<double> jcal = S.Jcal_matrix * ve;
        Vec<Rat> addag_ad = D.to_adapted(addag);
        for (std::size_t i = 0; i < D.p; ++i)
            REQUIRE(std::fabs(jcal[i] - addag_ad[i].to_double()) < 1e-14);
    }
    SECTION("J is skewadjoint for the E metric") {
        TestRng rng(301);
        for (auto& A : {make_h3(1, -1, 1), make_hq(-1, 1, 1), make_h12(1, 1, -1)}) {
            Decomposition D = witt_decompose(A);
            for (int r = 0; r < 5; ++r) {
                GeodesicState S = build_geodesic(A, D, rng.dbl_vec(A.dim(), 2.0));
                for (std::size_t i = 0; i < S.s; ++i)
                    for (std::size_t j = 0; j < S.s; ++j)
                        REQUIRE(std::fabs(double(S.signs_E[i]) * S.J_matrix(i, j) +
                                          double(S.signs_E[j]) * S.J_matrix(j, i)) < 1e-12);
            }
        }
    }
}

TEST_CASE("closed form evaluation", "[geodesic]") {
    SECTION("flat N4 in closed form") {
        NilAlgebra A = make_n4flat();
        Decomposition D = witt_decompose(A);
        std::size_t u1 = A.index("u1"), u2 = A.index("u2");
        std::size_t v1 = A.index("v1"), v2 = A.index("v2");
        Vec<double> v_init(4, 0.0);
        v_init[u1] = 0.5;
        v_init[v1] = 1.0;
        v_init[v2] = 1.0;
        GeodesicState S = build_geodesic(A, D, v_init);
        for (double t : {0.5, 1.0, 3.0}) {
            GeodesicSample sm = eval_geodesic(S, t);
            // v(t) = t v0; u(t) = t u0 + t^2/2 (ad†_{v0}v0)^U = t u0 + t^2/2 (-u1+u2)
            REQUIRE(std::fabs(sm.log_coords[v1] - t) < 1e-12);
            REQUIRE(std::fabs(sm.log_coords[v2] - t) < 1e-12);
            REQUIRE(std::fabs(sm.log_coords[u1] - (0.5 * t - 0.5 * t * t)) < 1e-10);
            REQUIRE(std::fabs(sm.log_coords[u2] - 0.5 * t * t) < 1e-10);
        }
    }
    SECTION("central initial velocity gives a straight line") {
        NilAlgebra A = make_h3(1, 1, 1);
        Decomposition D = witt_decompose(A);
        GeodesicState S = build_geodesic(A, D, dunit(3, A.index("z"), 2.0));
        GeodesicSample sm = eval_geodesic(S, 1.7);
        REQUIRE(max_abs_diff(sm.log_coords, dunit(3, A.index("z"), 3.4)) < 1e-12);
        REQUIRE(max_abs_diff(sm.velocity_frame, dunit(3, A.index("z"), 2.0)) < 1e-12);
    }
    SECTION("t = 0 normalization") {
        NilAlgebra A = make_hq(1, 1, 1);
        Decomposition D = witt_decompose(A);
        TestRng rng(302);
        Vec<double> v_init = rng.dbl_vec(7, 1.5);
        GeodesicState S = build_geodesic(A, D, v_init);
        GeodesicSample sm = eval_geodesic(S, 0.0);
        REQUIRE(max_abs_diff(sm.log_coords, Vec<double>(7, 0.0)) < 1e-14);
        REQUIRE(max_abs_diff(sm.velocity_frame, v_init) < 1e-14);
    }
}

TEST_CASE("spectral closed form", "[geodesic]") {
    SECTION("definite h3 helix") {
        NilAlgebra A = make_h3(1, 1, 1);
        Decomposition D = witt_decompose(A);
        std::size_t e1 = A.index("e1"), e2 = A.index("e2");
        Vec<double> v_init = dunit(3, A.index("z"));
        v_init[e1] = 1.0;
        GeodesicState S = build_geodesic(A, D, v_init);
        for (double t : {0.7, 1.3, 2.9}) {
            GeodesicSample sm = eval_geodesic_csgf(S, t);
            REQUIRE(std::fabs(sm.log_coords[e1] - std::sin(t)) < 1e-12);
            REQUIRE(std::fabs(sm.log_coords[e2] - (1.0 - std::cos(t))) < 1e-12);
            // quadrature route agrees
            GeodesicSample sq = eval_geodesic(S, t);
            REQUIRE(max_abs_diff(sm.log_coords, sq.log_coords) < 1e-10);
            REQUIRE(max_abs_diff(sm.velocity_frame, sq.velocity_frame) < 1e-10);
        }
    }
    SECTION("indefinite signature exercises the hyperbolic branch") {
        NilAlgebra A = make_h3(-1, -1, 1);
        Decomposition D = witt_decompose(A);
        Vec<double> v_init = dunit(3, A.index("z"));
        v_init[A.index("e1")] = 1.0;
        GeodesicState S = build_geodesic(A, D, v_init);
        // J^2 = +I on E here, so e(t) grows like cosh
        GeodesicSample sm = eval_geodesic_csgf(S, 2.0);
        REQUIRE(std::fabs(sm.log_coords[A.index("e1")]) > 2.0);
        auto rk = geodesic_rk4(A, v_init, 2.0, 20000);
        REQUIRE(max_abs_diff(sm.log_coords, rk.back().log_coords) < 1e-6);
        GeodesicSample sq = eval_geodesic(S, 2.0);
        REQUIRE(max_abs_diff(sm.log_coords, sq.log_coords) < 1e-9);
    }
    SECTION("kernel component moves on a straight line") {
        NilAlgebra A = make_two_layer();
        Decomposition D = witt_decompose(A);
        std::size_t e3 = A.index("e3");
        Vec<double> v_init = dunit(6, A.index("z1"));
        v_init[e3] = 1.0;
        GeodesicState S = build_geodesic(A, D, v_init);
        REQUIRE(S.E1_basis.size() == 2);
        GeodesicSample sm = eval_geodesic_csgf(S, 3.1);
        Vec<double> want = dunit(6, A.index("z1"), 3.1);
        want[e3] = 3.1;
        REQUIRE(max_abs_diff(sm.log_coords, want) < 1e-12);
    }
    SECTION("degenerate center is refused") {
        NilAlgebra A = make_n4flat();
        Decomposition D = witt_decompose(A);
        GeodesicState S = build_geodesic(A, D, dunit(4, A.index("v1")));
        REQUIRE_THROWS_AS(eval_geodesic_csgf(S, 1.0), DegenerateCenter);
    }
}

TEST_CASE("rk4 oracle", "[geodesic]") {
    SECTION("abelian straight lines at machine precision") {
        NilAlgebra A = make_abelian(3);
        Vec<double> v_init = {0.3, -1.2, 0.7};
        auto rk = geodesic_rk4(A, v_init, 5.0, 100);
        for (auto& sm : rk) {
            for (std::size_t i = 0; i < 3; ++i)
                REQUIRE(std::fabs(sm.log_coords[i] - sm.t * v_init[i]) < 1e-13);
            REQUIRE(max_abs_diff(sm.velocity_frame, v_init) == 0.0);
        }
    }
    SECTION("flat N4 against the closed form") {
        NilAlgebra A = make_n4flat();
        Decomposition D = witt_decompose(A);
        TestRng rng(303);
        Vec<double> v_init = rng.dbl_vec(4, 1.0);
        GeodesicState S = build_geodesic(A, D, v_init);
        auto rk = geodesic_rk4(A, v_init, 1.0, 1000);
        GeodesicSample cf = eval_geodesic(S, 1.0);
        REQUIRE(max_abs_diff(cf.log_coords, rk.back().log_coords) < 1e-10);
        REQUIRE(max_abs_diff(cf.velocity_frame, rk.back().velocity_frame) < 1e-10);
    }
    SECTION("quaternionic fixture against the closed form") {
        NilAlgebra A = make_hq(1, 1, 1);
        Decomposition D = witt_decompose(A);
        TestRng rng(304);
        for (int r = 0; r < 2; ++r) {
            Vec<double> v_init = rng.dbl_vec(7, 1.0);
            GeodesicState S = build_geodesic(A, D, v_init);
            auto rk = geodesic_rk4(A, v_init, 10.0, 20000);
            for (std::size_t k : {2000u, 10000u, 20000u}) {
                GeodesicSample cf = eval_geodesic(S, rk[k].t);
                REQUIRE(max_abs_diff(cf.log_coords, rk[k].log_coords) < 1e-6);
                REQUIRE(max_abs_diff(cf.velocity_frame, rk[k].velocity_frame) < 1e-6);
            }
        }
    }
}

TEST_CASE("oracle equivalence across fixtures", "[geodesic][oracle]") {
    TestRng rng(305);
    for (auto& A : {make_h3(1, 1, 1), make_h3null(1), make_h12(1, 1, 1), make_n4partial(1, 1)}) {
        Decomposition D = witt_decompose(A);
        INFO(A.name());
        for (int r = 0; r < 3; ++r) {
            Vec<double> v_init = rng.dbl_vec(A.dim(), 1.0);
            GeodesicState S = build_geodesic(A, D, v_init);
            REQUIRE(S.method == GeodesicMethod::closed_form);
            auto rk = geodesic_rk4(A, v_init, 10.0, 20000);
            for (std::size_t k : {1000u, 4000u, 20000u}) {
                GeodesicSample cf = eval_geodesic(S, rk[k].t);
                REQUIRE(max_abs_diff(cf.log_coords, rk[k].log_coords) < 1e-6);
            }
        }
    }
}

TEST_CASE("completeness at large parameters", "[geodesic]") {
    TestRng rng(306);
    for (auto& A : {make_h3(1, 1, 1), make_h3null(1), make_hq(1, 1, 1), make_h12(1, 1, 1),
                    make_n4flat(), make_n4partial(1, 1)}) {
        Decomposition D = witt_decompose(A);
        Vec<double> v_init = rng.dbl_vec(A.dim(), 1.0);
        GeodesicState S = build_geodesic(A, D, v_init);
        INFO(A.name());
        for (double t : {1000.0, -1000.0}) {
            GeodesicSample sm = eval_geodesic(S, t);
            for (double c : sm.log_coords) REQUIRE(std::isfinite(c));
            for (double c : sm.velocity_frame) REQUIRE(std::isfinite(c));
        }
    }
}

TEST_CASE("speed is constant along geodesics", "[geodesic][property]") {
    TestRng rng(307);
    for (auto& A : {make_h3(1, -1, 1), make_hq(1, 1, -1), make_n4partial(1, 1)}) {
        Decomposition D = witt_decompose(A);
        Vec<double> v_init = rng.dbl_vec(A.dim(), 1.0);
        GeodesicState S = build_geodesic(A, D, v_init);
        GeodesicSample s0 = eval_geodesic(S, 0.0);
        double ref = frame_speed(A, s0);
        for (double t : {0.5, 2.0, 5.0, 10.0}) {
            double sp = frame_speed(A, eval_geodesic(S, t));
            REQUIRE(std::fabs(sp - ref) < 1e-9 * std::max(1.0, std::fabs(ref)));
        }
    }
}

TEST_CASE("quadrature convergence", "[geodesic]") {
    NilAlgebra A = make_hq(1, 1, 1);
    Decomposition D = witt_decompose(A);
    TestRng rng(308);
    Vec<double> v_init = rng.dbl_vec(7, 1.0);
    GeodesicState S = build_geodesic(A, D, v_init);
    for (double t : {1.0, 5.0, 10.0}) {
        GeodesicSample a = eval_geodesic(S, t, 64);
        GeodesicSample b = eval_geodesic(S, t, 128);
        REQUIRE(max_abs_diff(a.log_coords, b.log_coords) < 1e-10);
    }
}

TEST_CASE("first integrals", "[geodesic]") {
    SECTION("closed-form run on the quaternionic fixture") {
        NilAlgebra A = make_hq(1, 1, 1);
        Decomposition D = witt_decompose(A);
        TestRng rng(309);
        GeodesicState S = build_geodesic(A, D, rng.dbl_vec(7, 1.0));
        std::vector<GeodesicSample> samples;
        for (int k = 0; k <= 40; ++k) samples.push_back(eval_geodesic(S, 0.25 * k));
        Vec<double> drift = first_integral_drift(A, D, samples);
        for (double d : drift) REQUIRE(d < 1e-9);
    }
    SECTION("rk4 run on h3") {
        NilAlgebra A = make_h3(1, 1, 1);
        Decomposition D = witt_decompose(A);
        Vec<double> v_init = {1.0, 0.5, -0.25};
        Vec<double> drift = first_integral_drift(A, D, geodesic_rk4(A, v_init, 10.0, 10000));
        for (double d : drift) REQUIRE(d < 1e-8);
    }
    SECTION("abelian drift is identically zero") {
        NilAlgebra A = make_abelian(4);
        Decomposition D = witt_decompose(A);
        Vec<double> drift =
            first_integral_drift(A, D, geodesic_rk4(A, {1.0, 2.0, 3.0, 4.0}, 4.0, 50));
        for (double d : drift) REQUIRE(d == 0.0);
    }
}

TEST_CASE("one parameter subgroups", "[geodesic]") {
    NilAlgebra h3 = make_h3(1, 1, 1);
    Vec<Rat> z(3, Rat(0)), e1(3, Rat(0));
    z[h3.index("z")] = Rat(1);
    e1[h3.index("e1")] = Rat(1);
    REQUIRE(one_param_is_geodesic(h3, z));
    REQUIRE(one_param_is_geodesic(h3, e1));

    NilAlgebra hn = make_h3null(1);
    Vec<Rat> v(3, Rat(0));
    v[hn.index("v")] = Rat(1);
    REQUIRE_FALSE(one_param_is_geodesic(hn, v));
}

TEST_CASE("straight-line criterion in both directions", "[geodesic][property]") {
    // exp(t(a0+x0)) is a geodesic exactly when ad†_{x0}(a0+x0) = 0
    struct Case {
        NilAlgebra A;
        Vec<Rat> x;
        bool geodesic;
    };
    NilAlgebra h3 = make_h3(1, 1, 1), hn = make_h3null(1), hq = make_hq(1, 1, 1);
    auto mk = [](const NilAlgebra& A, std::initializer_list<std::pair<const char*, int>> parts) {
        Vec<Rat> x(A.dim(), Rat(0));
        for (auto& [l, c] : parts) x[A.index(l)] = Rat(c);
        return x;
    };
    std::vector<Case> cases;
    cases.push_back({h3, mk(h3, {{"z", 1}, {"e1", 2}}), false});
    cases.push_back({h3, mk(h3, {{"e1", 1}, {"e2", 3}}), true});
    cases.push_back({hn, mk(hn, {{"u", 1}, {"e", 2}}), true});
    cases.push_back({hn, mk(hn, {{"v", 1}, {"u", 1}}), false});
    cases.push_back({hq, mk(hq, {{"u1", 1}, {"e1", 1}, {"e2", -2}}), true});
    cases.push_back({hq, mk(hq, {{"v1", 1}, {"e1", 1}}), false});
    for (auto& c : cases) {
        REQUIRE(one_param_is_geodesic(c.A, c.x) == c.geodesic);
        // numeric confirmation: the curve exp(t x) solves the geodesic system
        // exactly when the criterion holds
        Decomposition D = witt_decompose(c.A);
        GeodesicState S = build_geodesic(c.A, D, cast_vec(c.x));
        GeodesicSample sm = eval_geodesic(S, 2.0);
        Vec<double> straight = vscale(2.0, cast_vec(c.x));
        if (c.geodesic) REQUIRE(max_abs_diff(sm.log_coords, straight) < 1e-9);
        else REQUIRE(max_abs_diff(sm.log_coords, straight) > 1e-3);
    }
}
