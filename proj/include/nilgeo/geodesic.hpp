#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "decomposition.hpp"
#include "numeric.hpp"

namespace nilgeo {

enum class GeodesicMethod { closed_form, rk4_fallback };

inline const char* to_string(GeodesicMethod m) {
    return m == GeodesicMethod::closed_form ? "closed_form" : "rk4_fallback";
}

struct GeodesicSample {
    double t = 0.0;
    Vec<double> log_coords;      // log of the curve point, original basis
    Vec<double> velocity_frame;  // left-invariant frame velocity, original basis
};

/// Frozen data for evaluating the geodesic through the identity with initial
/// velocity u0+z0+v0+e0. Vectors are in adapted coordinates unless noted.
///
/// The operator ℛ: V+E -> E, y -> (ad†_y(z0+v0))^E drives the E-component;
/// its restriction J to E splits E = E1 + E2 orthogonally with E1 = ker J and
/// J invertible on E2. 𝒥: V+E -> U is the U-component of the same map.
/// When the split fails numerically (degenerate metric on E1, or J nearly
/// singular on E2) the state is marked rk4_fallback and closed-form
/// evaluation refuses to run.
struct GeodesicState {
    GeodesicMethod method = GeodesicMethod::closed_form;
    std::size_t n = 0, p = 0, q = 0, s = 0;

    Vec<double> initial_log;   // gamma(0) = identity, so all zeros
    Vec<double> v_init_orig;   // initial velocity, original coordinates

    Vec<double> u0, z0, v0, e0;  // adapted components of the initial velocity

    Mat<double> Jve;          // V+E -> E              (s x (p+s))
    Mat<double> J_matrix;     // restriction to E      (s x s)
    Mat<double> Jcal_matrix;  // V+E -> U              (p x (p+s))

    std::vector<Vec<double>> E1_basis, E2_basis;  // E coordinates
    Mat<double> Jinv2;      // acts as (J|E2)^{-1} on E2 and kills E1  (s x s)
    Mat<double> J2_small;   // J in E2_basis coordinates
    Mat<double> B2, K2;     // E2 inclusion (s x r2) and coordinate map (r2 x s)

    Vec<double> y1, y2;     // E1/E2 parts of ℛv0          (length s)
    Vec<double> e1, e2;     // E1/E2 parts of e0            (length s)
    Vec<double> x1;         // e1 + v0 - J^{-1}y2, V+E coordinates
    Vec<double> x2;         // e2 + J^{-1}y2, E coordinates (lies in E2)

    Mat<double> cob_d, cob_inv_d;  // adapted basis change, copied from the decomposition
    std::vector<int> signs_E;
    std::vector<std::vector<Vec<double>>> c_ad;  // bracket tensor, adapted coordinates

    Vec<double> bracket_ad(const Vec<double>& x, const Vec<double>& y) const {
        Vec<double> out(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (y[j] == 0.0) continue;
                double f = x[i] * y[j];
                for (std::size_t k = 0; k < n; ++k) out[k] += f * c_ad[i][j][k];
            }
        }
        return out;
    }

    // embedding helpers between the E block, the V+E block and full vectors
    Vec<double> pad_e(const Vec<double>& e) const {
        Vec<double> out(p + s, 0.0);
        for (std::size_t a = 0; a < s; ++a) out[p + a] = e[a];
        return out;
    }
    Vec<double> full_from_ve(const Vec<double>& ve) const {
        Vec<double> out(n, 0.0);
        for (std::size_t k = 0; k < p + s; ++k) out[p + q + k] = ve[k];
        return out;
    }
    Vec<double> full_from_e(const Vec<double>& e) const {
        Vec<double> out(n, 0.0);
        for (std::size_t a = 0; a < s; ++a) out[2 * p + q + a] = e[a];
        return out;
    }
};

namespace detail {

/// Metric-orthogonal coordinate map onto span(cols) inside E, where the E
/// block carries the diagonal metric signs_E. Returns nullopt when the
/// restricted Gram matrix is numerically singular.
inline std::optional<std::pair<Mat<double>, Mat<double>>>
subspace_maps(const std::vector<Vec<double>>& cols, const std::vector<int>& signs_E,
              double tol) {
    std::size_t s = signs_E.size(), r = cols.size();
    Mat<double> B(s, r);
    for (std::size_t j = 0; j < r; ++j) B.set_col(j, cols[j]);
    Mat<double> BtG(r, s);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t t = 0; t < s; ++t) BtG(i, t) = cols[i][t] * double(signs_E[t]);
    Mat<double> gram = BtG * B;
    auto gi = inverse(gram, tol);
    if (!gi) return std::nullopt;
    return std::make_pair(B, *gi * BtG);
}

} // namespace detail

inline GeodesicState build_geodesic(const NilAlgebra& A, const Decomposition& D,
                                    const Vec<double>& v_init) {
    const double tol = 1e-12;
    GeodesicState S;
    S.n = D.n; S.p = D.p; S.q = D.q; S.s = D.s;
    S.initial_log.assign(S.n, 0.0);
    S.v_init_orig = v_init;
    S.cob_d = D.cob_d;
    S.cob_inv_d = D.cob_inv_d;
    S.signs_E = D.signs_E;

    Vec<double> w_ad = D.cob_inv_d * v_init;
    S.u0.assign(w_ad.begin(), w_ad.begin() + S.p);
    S.z0.assign(w_ad.begin() + S.p, w_ad.begin() + S.p + S.q);
    S.v0.assign(w_ad.begin() + S.p + S.q, w_ad.begin() + 2 * S.p + S.q);
    S.e0.assign(w_ad.begin() + 2 * S.p + S.q, w_ad.end());

    // bracket tensor in adapted coordinates
    const std::size_t n = S.n;
    S.c_ad.assign(n, std::vector<Vec<double>>(n));
    Mat<double> corig_cols(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Vec<double> br(n, 0.0);
            for (std::size_t a = 0; a < n; ++a) {
                if (D.cob_d(a, i) == 0.0) continue;
                for (std::size_t b = 0; b < n; ++b) {
                    if (D.cob_d(b, j) == 0.0) continue;
                    double f = D.cob_d(a, i) * D.cob_d(b, j);
                    const Vec<Rat>& cab = A.basis_bracket(a, b);
                    for (std::size_t k = 0; k < n; ++k) {
                        double v = cab[k].to_double();
                        if (v != 0.0) br[k] += f * v;
                    }
                }
            }
            S.c_ad[i][j] = D.cob_inv_d * br;
        }
    }

    // adapted Gram is an involution, so it is its own inverse
    Mat<double> G_ad = cast_mat<double>(D.gram_ad);

    // ℛ and 𝒥 columns over the V+E basis: ad†_y(z0+v0) split into E and U parts
    Vec<double> zv(n, 0.0);
    for (std::size_t a = 0; a < S.q; ++a) zv[D.z_index(a)] = S.z0[a];
    for (std::size_t i = 0; i < S.p; ++i) zv[D.v_index(i)] = S.v0[i];
    S.Jve = Mat<double>(S.s, S.p + S.s);
    S.Jcal_matrix = Mat<double>(S.p, S.p + S.s);
    for (std::size_t k = 0; k < S.p + S.s; ++k) {
        // ad†_y w = G ad(y)^T G w in adapted coordinates
        Vec<double> Gw = G_ad * zv;
        Vec<double> col(n, 0.0);
        std::size_t yi = D.ve_begin() + k;
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t l = 0; l < n; ++l) acc += S.c_ad[yi][j][l] * Gw[l];
            col[j] = acc;  // (ad(y)^T G w)_j
        }
        col = G_ad * col;
        for (std::size_t a = 0; a < S.s; ++a) S.Jve(a, k) = col[D.e_index(a)];
        for (std::size_t i = 0; i < S.p; ++i) S.Jcal_matrix(i, k) = col[D.u_index(i)];
    }
    S.J_matrix = Mat<double>(S.s, S.s);
    for (std::size_t a = 0; a < S.s; ++a)
        for (std::size_t b = 0; b < S.s; ++b) S.J_matrix(a, b) = S.Jve(a, S.p + b);

    // skewadjointness of J on E (diagonal metric signs_E)
    {
        double worst = 0.0, scale = 1.0;
        for (std::size_t a = 0; a < S.s; ++a)
            for (std::size_t b = 0; b < S.s; ++b) {
                scale = std::max(scale, std::fabs(S.J_matrix(a, b)));
                worst = std::max(worst, std::fabs(double(S.signs_E[a]) * S.J_matrix(a, b) +
                                                  double(S.signs_E[b]) * S.J_matrix(b, a)));
            }
        if (worst > 1e-9 * scale)
            throw Error("operator J failed its skewadjointness invariant");
    }

    // split E = E1 + E2
    S.E1_basis = kernel_basis(S.J_matrix, tol);
    const std::size_t r1 = S.E1_basis.size(), r2 = S.s - r1;
    auto fallback = [&]() {
        S.method = GeodesicMethod::rk4_fallback;
        return S;
    };
    Mat<double> B1, K1;
    if (r1 > 0) {
        auto maps1 = detail::subspace_maps(S.E1_basis, S.signs_E, tol);
        if (!maps1) return fallback();  // metric degenerate on ker J
        B1 = maps1->first;
        K1 = maps1->second;
        Mat<double> ortho(r1, S.s);
        for (std::size_t i = 0; i < r1; ++i)
            for (std::size_t t = 0; t < S.s; ++t)
                ortho(i, t) = S.E1_basis[i][t] * double(S.signs_E[t]);
        S.E2_basis = kernel_basis(ortho, tol);
        if (S.E2_basis.size() != r2) return fallback();
    } else {
        for (std::size_t a = 0; a < S.s; ++a) {
            Vec<double> e(S.s, 0.0);
            e[a] = 1.0;
            S.E2_basis.push_back(e);
        }
    }

    if (r2 > 0) {
        auto maps2 = detail::subspace_maps(S.E2_basis, S.signs_E, tol);
        if (!maps2) return fallback();
        S.B2 = maps2->first;
        S.K2 = maps2->second;
        S.J2_small = S.K2 * (S.J_matrix * S.B2);
        auto j2i = inverse(S.J2_small, tol);
        if (!j2i) return fallback();  // J nearly singular on E2
        S.Jinv2 = S.B2 * (*j2i * S.K2);
    } else {
        S.B2 = Mat<double>(S.s, 0);
        S.K2 = Mat<double>(0, S.s);
        S.J2_small = Mat<double>(0, 0);
        S.Jinv2 = Mat<double>(S.s, S.s);
    }

    // y-split of ℛv0 and e-split of e0
    Vec<double> v0_ve(S.p + S.s, 0.0);
    for (std::size_t i = 0; i < S.p; ++i) v0_ve[i] = S.v0[i];
    Vec<double> Rv0 = S.Jve * v0_ve;
    if (r1 > 0) {
        S.y1 = B1 * (K1 * Rv0);
        S.e1 = B1 * (K1 * S.e0);
    } else {
        S.y1.assign(S.s, 0.0);
        S.e1.assign(S.s, 0.0);
    }
    S.y2 = vsub(Rv0, S.y1);
    S.e2 = vsub(S.e0, S.e1);

    Vec<double> ji_y2 = S.Jinv2 * S.y2;
    S.x2 = vadd(S.e2, ji_y2);
    S.x1 = v0_ve;
    for (std::size_t a = 0; a < S.s; ++a) S.x1[S.p + a] += S.e1[a] - ji_y2[a];

    S.method = GeodesicMethod::closed_form;
    return S;
}

inline GeodesicState build_geodesic(const NilAlgebra& A, const Decomposition& D,
                                    const Vec<Rat>& v_init) {
    return build_geodesic(A, D, cast_vec(v_init));
}

namespace detail {

/// x(t), xdot(t) and the elementary integral of x over [0,t], all in V+E
/// coordinates, given the exponential of tJ.
struct ClosedFormPieces {
    Vec<double> x, xdot, int_x;
};

inline ClosedFormPieces closed_form_pieces(const GeodesicState& S, double t,
                                           const Mat<double>& etJ) {
    ClosedFormPieces P;
    Vec<double> etJ_x2 = etJ * S.x2;
    Vec<double> ji_x2 = S.Jinv2 * S.x2;
    Vec<double> ji_etJ_diff = S.Jinv2 * vsub(etJ_x2, S.x2);  // J^{-1}(e^{tJ}-I)x2

    P.x = vscale(t, S.x1);
    Vec<double> xe = ji_etJ_diff;
    for (std::size_t a = 0; a < S.s; ++a) xe[a] += 0.5 * t * t * S.y1[a];
    P.x = vadd(P.x, S.pad_e(xe));

    P.xdot = S.x1;
    Vec<double> xde = etJ_x2;
    for (std::size_t a = 0; a < S.s; ++a) xde[a] += t * S.y1[a];
    P.xdot = vadd(P.xdot, S.pad_e(xde));

    // int_0^t x = t^2/2 x1 + (J^{-2}(e^{tJ}-I) - tJ^{-1})x2 + t^3/6 y1
    P.int_x = vscale(0.5 * t * t, S.x1);
    Vec<double> ie = S.Jinv2 * ji_etJ_diff;
    for (std::size_t a = 0; a < S.s; ++a)
        ie[a] += -t * ji_x2[a] + t * t * t / 6.0 * S.y1[a];
    P.int_x = vadd(P.int_x, S.pad_e(ie));
    return P;
}

} // namespace detail

/// Closed-form geodesic sample at time t. The two bracket integrals are done
/// by composite Gauss-Legendre with quad_points nodes per unit of |t|; the
/// double integral of 𝒥xdot collapses to 𝒥 applied to the elementary
/// integral of x, since x(0) = 0.
inline GeodesicSample eval_geodesic(const GeodesicState& S, double t,
                                    std::size_t quad_points = 64) {
    if (S.method != GeodesicMethod::closed_form)
        throw ClosedFormUnavailable("geodesic state fell back to rk4 integration");
    Mat<double> etJ = expm(t * S.J_matrix);
    auto P = detail::closed_form_pieces(S, t, etJ);

    // I[xdot,x] = -1/2 int_0^t [xdot(s), x(s)] ds, an n-vector supported in U+Z
    Vec<double> ibr = integrate_gl(
        [&](double sv) {
            Mat<double> esJ = expm(sv * S.J_matrix);
            auto Q = detail::closed_form_pieces(S, sv, esJ);
            return S.bracket_ad(S.full_from_ve(Q.xdot), S.full_from_ve(Q.x));
        },
        t, S.n, quad_points);
    ibr = vscale(-0.5, ibr);

    Vec<double> log_ad(S.n, 0.0), vel_ad(S.n, 0.0);
    Vec<double> jcal_intx = S.Jcal_matrix * P.int_x;
    Vec<double> jcal_x = S.Jcal_matrix * P.x;
    for (std::size_t i = 0; i < S.p; ++i) {
        log_ad[i] = t * S.u0[i] + ibr[i] + jcal_intx[i];
        vel_ad[i] = S.u0[i] + jcal_x[i];
    }
    for (std::size_t a = 0; a < S.q; ++a) {
        log_ad[S.p + a] = t * S.z0[a] + ibr[S.p + a];
        vel_ad[S.p + a] = S.z0[a];
    }
    for (std::size_t k = 0; k < S.p + S.s; ++k) {
        log_ad[S.p + S.q + k] = P.x[k];
        vel_ad[S.p + S.q + k] = P.xdot[k];
    }

    GeodesicSample out;
    out.t = t;
    out.log_coords = S.cob_d * log_ad;
    out.velocity_frame = S.cob_d * vel_ad;
    return out;
}

namespace detail {

struct SpectralGroup {
    double theta = 0.0, lambda = 0.0;
    Vec<double> w, Jw, Jiw, Jiiw;  // E coordinates
};

/// Real eigenspace decomposition of J^2 on E2 and the matching split of e2.
inline std::vector<SpectralGroup> spectral_split(const GeodesicState& S) {
    const double rtol = 1e-9;
    std::size_t r2 = S.B2.cols();
    std::vector<SpectralGroup> groups;
    if (r2 == 0) return groups;

    Mat<double> M = S.J2_small * S.J2_small;
    auto roots = durand_kerner(char_poly(M));
    double scale = 1.0;
    for (std::size_t i = 0; i < r2; ++i)
        for (std::size_t j = 0; j < r2; ++j) scale = std::max(scale, std::fabs(M(i, j)));

    // A repeated real root comes back from the iteration as a tight cloud
    // with imaginary jitter on the order of sqrt(machine eps), so the raw
    // imaginary parts cannot be trusted. Cluster the roots, polish each
    // cluster mean with Newton on the derivative order that makes the root
    // simple, and reject only a polished root that stays complex. A falsely
    // merged pair is caught below by the eigenvector residual guards.
    std::vector<double> pfull = char_poly(M);
    pfull.push_back(1.0);
    std::vector<double> reals;
    std::vector<char> used(roots.size(), 0);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        used[i] = 1;
        std::complex<double> sum = roots[i];
        int count = 1;
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (!used[j] && std::abs(roots[j] - roots[i]) < 1e-5 * (1.0 + std::abs(roots[i]))) {
                used[j] = 1;
                sum += roots[j];
                ++count;
            }
        std::complex<double> mu = sum / double(count);
        std::vector<double> q = pfull;
        for (int k = 1; k < count; ++k) q = poly_derivative(q);
        std::vector<double> dq = poly_derivative(q);
        for (int it = 0; it < 60; ++it) {
            std::complex<double> den = poly_eval(dq, mu);
            if (std::abs(den) == 0.0) break;
            std::complex<double> step = poly_eval(q, mu) / den;
            mu -= step;
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(mu))) break;
        }
        if (std::fabs(mu.imag()) > rtol * scale)
            throw NotDiagonalizable("J^2 has a nonreal eigenvalue on E2");
        for (int k = 0; k < count; ++k) reals.push_back(mu.real());
    }
    std::sort(reals.begin(), reals.end());
    std::vector<double> distinct;
    for (double v : reals)
        if (distinct.empty() || v - distinct.back() > 1e-7 * (1.0 + std::fabs(v)))
            distinct.push_back(v);

    std::vector<Vec<double>> eigvecs;         // E2 coordinates
    std::vector<std::size_t> group_of_vec;
    for (std::size_t g = 0; g < distinct.size(); ++g) {
        Mat<double> shifted = M;
        for (std::size_t i = 0; i < r2; ++i) shifted(i, i) -= distinct[g];
        auto ker = kernel_basis(shifted, rtol);
        for (auto& w : ker) {
            // residual guard on each eigenvector
            Vec<double> res = shifted * w;
            double wn = 0.0, rn = 0.0;
            for (double v : w) wn = std::max(wn, std::fabs(v));
            for (double v : res) rn = std::max(rn, std::fabs(v));
            if (rn > rtol * scale * std::max(1.0, wn))
                throw NotDiagonalizable("eigenspace residual too large");
            eigvecs.push_back(w);
            group_of_vec.push_back(g);
        }
    }
    if (eigvecs.size() != r2)
        throw NotDiagonalizable("eigenspaces of J^2 do not span E2");

    // split e2 over the eigenbasis
    Mat<double> Pm(r2, r2);
    for (std::size_t k = 0; k < r2; ++k) Pm.set_col(k, eigvecs[k]);
    Vec<double> e2_small = S.K2 * S.e2;
    auto coeff = solve(Pm, e2_small, 1e-12);
    if (!coeff) throw NotDiagonalizable("eigenbasis of J^2 is ill conditioned");

    for (std::size_t g = 0; g < distinct.size(); ++g) {
        SpectralGroup grp;
        grp.theta = distinct[g];
        grp.lambda = std::sqrt(std::fabs(grp.theta));
        Vec<double> small(r2, 0.0);
        for (std::size_t k = 0; k < r2; ++k)
            if (group_of_vec[k] == g)
                for (std::size_t i = 0; i < r2; ++i) small[i] += (*coeff)[k] * Pm(i, k);
        grp.w = S.B2 * small;
        grp.Jw = S.J_matrix * grp.w;
        grp.Jiw = S.Jinv2 * grp.w;
        grp.Jiiw = S.Jinv2 * grp.Jiw;
        groups.push_back(std::move(grp));
    }
    return groups;
}

/// e^{tJ} applied to a vector of the theta-eigenspace of J^2, where Jv is the
/// image of v under J. Trigonometric for theta = -lambda^2, hyperbolic for
/// theta = +lambda^2.
inline Vec<double> etj_eig(double t, const SpectralGroup& g, const Vec<double>& v,
                           const Vec<double>& Jv) {
    double a, b;
    if (g.theta < 0.0) {
        a = std::cos(t * g.lambda);
        b = g.lambda == 0.0 ? t : std::sin(t * g.lambda) / g.lambda;
    } else {
        a = std::cosh(t * g.lambda);
        b = g.lambda == 0.0 ? t : std::sinh(t * g.lambda) / g.lambda;
        if (!std::isfinite(a) || !std::isfinite(b))
            throw OverflowDetected("hyperbolic geodesic factor overflowed");
    }
    Vec<double> out = vscale(a, v);
    return vadd(out, vscale(b, Jv));
}

} // namespace detail

/// Quadrature-free evaluation for a nondegenerate center when J^2
/// diagonalizes over the reals: the E component is a sum of circular or
/// hyperbolic arcs per eigenvalue, and the central component is assembled
/// from the spectral bracket identities.
inline GeodesicSample eval_geodesic_csgf(const GeodesicState& S, double t) {
    if (S.p != 0)
        throw DegenerateCenter("spectral closed form needs a nondegenerate center");
    if (S.method != GeodesicMethod::closed_form)
        throw ClosedFormUnavailable("geodesic state fell back to rk4 integration");
    auto groups = detail::spectral_split(S);

    Vec<double> e_t = vscale(t, S.e1);
    Vec<double> edot_t = S.e1;
    Vec<double> etJ_Jinv_e2(S.s, 0.0), Jinv_e2(S.s, 0.0), diff_Jinv2(S.s, 0.0);
    for (auto& g : groups) {
        // xi = (e^{tJ} - I)J^{-1}w via the circular/hyperbolic representation
        Vec<double> etj_jiw = detail::etj_eig(t, g, g.Jiw, g.w);
        e_t = vadd(e_t, vsub(etj_jiw, g.Jiw));
        edot_t = vadd(edot_t, detail::etj_eig(t, g, g.w, g.Jw));
        etJ_Jinv_e2 = vadd(etJ_Jinv_e2, etj_jiw);
        Jinv_e2 = vadd(Jinv_e2, g.Jiw);
        // (I - e^{tJ})J^{-2}w
        diff_Jinv2 = vadd(diff_Jinv2, vsub(g.Jiiw, detail::etj_eig(t, g, g.Jiiw, g.Jiw)));
    }

    auto br_e = [&](const Vec<double>& a, const Vec<double>& b) {
        return S.bracket_ad(S.full_from_e(a), S.full_from_e(b));
    };
    Vec<double> z1(S.n, 0.0), z2(S.n, 0.0);
    for (std::size_t a = 0; a < S.q; ++a) z1[S.p + a] = S.z0[a];
    z1 = vadd(z1, vscale(0.5, br_e(S.e1, vadd(etJ_Jinv_e2, Jinv_e2))));
    for (auto& g : groups) z1 = vadd(z1, vscale(0.5, br_e(g.Jiw, g.w)));

    z2 = vadd(z2, br_e(S.e1, diff_Jinv2));
    z2 = vadd(z2, vscale(0.5, br_e(etJ_Jinv_e2, Jinv_e2)));
    for (std::size_t gi = 0; gi < groups.size(); ++gi)
        for (std::size_t hi = 0; hi < groups.size(); ++hi) {
            if (gi == hi) continue;
            auto& g = groups[gi];
            auto& h = groups[hi];
            double f = 0.5 / (h.theta - g.theta);
            Vec<double> term = br_e(detail::etj_eig(t, g, g.Jw, vscale(g.theta, g.w)),
                                    detail::etj_eig(t, h, h.Jiw, h.w));
            term = vsub(term, br_e(detail::etj_eig(t, g, g.w, g.Jw),
                                   detail::etj_eig(t, h, h.w, h.Jw)));
            term = vsub(term, br_e(g.Jw, h.Jiw));
            term = vadd(term, br_e(g.w, h.w));
            z2 = vadd(z2, vscale(f, term));
        }

    Vec<double> log_ad = vadd(vscale(t, z1), z2);
    Vec<double> vel_ad(S.n, 0.0);
    for (std::size_t a = 0; a < S.q; ++a) vel_ad[S.p + a] = S.z0[a];
    for (std::size_t a = 0; a < S.s; ++a) {
        log_ad[2 * S.p + S.q + a] += e_t[a];
        vel_ad[2 * S.p + S.q + a] = edot_t[a];
    }

    GeodesicSample out;
    out.t = t;
    out.log_coords = S.cob_d * log_ad;
    out.velocity_frame = S.cob_d * vel_ad;
    return out;
}

/// Independent oracle: fixed-step RK4 on the raw left-invariant system
///   ydot = w + 1/2 [y, w],   wdot = ad†_w w
/// in original coordinates, where y is the log of the curve and w the frame
/// velocity. Returns steps+1 samples including t = 0.
inline std::vector<GeodesicSample> geodesic_rk4(const NilAlgebra& A, const Vec<double>& v_init,
                                                double t_end, std::size_t steps) {
    const std::size_t n = A.dim();
    std::vector<std::vector<Vec<double>>> c(n, std::vector<Vec<double>>(n));
    std::vector<std::vector<Vec<double>>> adt(n, std::vector<Vec<double>>(n));
    for (std::size_t i = 0; i < n; ++i) {
        Vec<Rat> ei(n, Rat(0));
        ei[i] = Rat(1);
        Mat<Rat> Di = A.ad_dagger(ei);
        for (std::size_t j = 0; j < n; ++j) {
            c[i][j] = cast_vec(A.basis_bracket(i, j));
            adt[i][j] = cast_vec(Di.col(j));
        }
    }
    auto contract = [n](const std::vector<std::vector<Vec<double>>>& T, const Vec<double>& a,
                        const Vec<double>& b) {
        Vec<double> out(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i] == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (b[j] == 0.0) continue;
                double f = a[i] * b[j];
                for (std::size_t k = 0; k < n; ++k) out[k] += f * T[i][j][k];
            }
        }
        return out;
    };
    Vec<double> st(2 * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) st[n + i] = v_init[i];
    auto rhs = [&](const Vec<double>& sv) {
        Vec<double> y(sv.begin(), sv.begin() + n), w(sv.begin() + n, sv.end());
        Vec<double> yw = contract(c, y, w);
        Vec<double> wd = contract(adt, w, w);
        Vec<double> out(2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = w[i] + 0.5 * yw[i];
            out[n + i] = wd[i];
        }
        return out;
    };
    auto path = rk4(rhs, st, t_end, steps);
    std::vector<GeodesicSample> samples;
    samples.reserve(path.size());
    double h = t_end / double(steps);
    for (std::size_t k = 0; k < path.size(); ++k) {
        GeodesicSample g;
        g.t = h * double(k);
        g.log_coords.assign(path[k].begin(), path[k].begin() + n);
        g.velocity_frame.assign(path[k].begin() + n, path[k].end());
        samples.push_back(std::move(g));
    }
    return samples;
}

/// Conserved pairings of the frame velocity against the adapted central
/// basis. Returns, per central basis vector, the maximum drift
/// |f(t) - f(0)| over the samples.
inline Vec<double> first_integral_drift(const NilAlgebra& A, const Decomposition& D,
                                        const std::vector<GeodesicSample>& samples) {
    std::size_t m = D.p + D.q;
    Vec<double> drift(m, 0.0);
    if (samples.empty()) return drift;
    Mat<double> G = cast_mat<double>(A.gram());
    std::vector<Vec<double>> gb;  // G * central basis vector, original coordinates
    for (std::size_t a = 0; a < m; ++a) gb.push_back(G * D.cob_d.col(a));
    auto pair_all = [&](const GeodesicSample& sm) {
        Vec<double> f(m, 0.0);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t i = 0; i < sm.velocity_frame.size(); ++i)
                f[a] += sm.velocity_frame[i] * gb[a][i];
        return f;
    };
    Vec<double> f0 = pair_all(samples.front());
    for (auto& sm : samples) {
        Vec<double> f = pair_all(sm);
        for (std::size_t a = 0; a < m; ++a)
            drift[a] = std::max(drift[a], std::fabs(f[a] - f0[a]));
    }
    return drift;
}

/// t -> exp(t x) is a geodesic exactly when ad†_x x = 0.
inline bool one_param_is_geodesic(const NilAlgebra& A, const Vec<Rat>& x) {
    return vis_zero(A.ad_dagger(x) * x);
}

} // namespace nilgeo
