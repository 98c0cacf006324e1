#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "decomposition.hpp"
#include "geodesic.hpp"
#include "numeric.hpp"

namespace nilgeo {

/// Generators of log Gamma for a cocompact discrete subgroup, given as
/// rational log-coordinate vectors on the algebra's basis.
struct LatticeSpec {
    std::vector<Vec<Rat>> generators;
    std::string name;
};

enum class PeriodKind { flat_exact, distinguished, verified_numeric };

inline const char* to_string(PeriodKind k) {
    switch (k) {
        case PeriodKind::flat_exact: return "flat_exact";
        case PeriodKind::distinguished: return "distinguished";
        default: return "verified_numeric";
    }
}

/// A period (or distinguished period) attached to a group element phi.
/// omega is absent in two cases. Null elements give null geodesics, which
/// have no natural normalization, so no period is defined for them. An
/// obstructed element (ad†_{v*} v* != 0 in the flat case) translates no
/// geodesic at all, so it has no period either; such records carry
/// obstructed = true. When the computation is exact, omega_sq carries the
/// rational square of omega.
struct PeriodRecord {
    Vec<Rat> phi_log;
    std::optional<double> omega;
    std::optional<Rat> omega_sq;
    PeriodKind kind = PeriodKind::verified_numeric;
    CausalClass causal = CausalClass::Null;
    bool obstructed = false;
};

namespace detail {

template <class T>
Vec<T> numeric_bracket(const NilAlgebra& A, const Vec<T>& x, const Vec<T>& y);

template <>
inline Vec<Rat> numeric_bracket<Rat>(const NilAlgebra& A, const Vec<Rat>& x, const Vec<Rat>& y) {
    return A.bracket(x, y);
}

template <>
inline Vec<double> numeric_bracket<double>(const NilAlgebra& A, const Vec<double>& x,
                                           const Vec<double>& y) {
    std::size_t n = A.dim();
    Vec<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (y[j] == 0.0) continue;
            double f = x[i] * y[j];
            const Vec<Rat>& c = A.basis_bracket(i, j);
            for (std::size_t k = 0; k < n; ++k) {
                if (!c[k].is_zero()) out[k] += f * c[k].to_double();
            }
        }
    }
    return out;
}

template <class T>
T pair_with(const NilAlgebra& A, const Vec<T>& x, const Vec<T>& y);

template <>
inline Rat pair_with<Rat>(const NilAlgebra& A, const Vec<Rat>& x, const Vec<Rat>& y) {
    return A.ip(x, y);
}

template <>
inline double pair_with<double>(const NilAlgebra& A, const Vec<double>& x, const Vec<double>& y) {
    double acc = 0.0;
    const Mat<Rat>& G = A.gram();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0.0) continue;
        for (std::size_t j = 0; j < y.size(); ++j)
            if (y[j] != 0.0 && !G(i, j).is_zero()) acc += x[i] * G(i, j).to_double() * y[j];
    }
    return acc;
}

/// Spanning set for [x, n], pruned to a basis.
template <class T>
std::vector<Vec<T>> bracket_orbit_basis(const NilAlgebra& A, const Vec<T>& x, double tol) {
    std::size_t n = A.dim();
    std::vector<Vec<T>> cols;
    for (std::size_t j = 0; j < n; ++j) {
        Vec<T> ej(n, T(0));
        ej[j] = T(1);
        Vec<T> w = numeric_bracket<T>(A, x, ej);
        if (!vis_zero(w, tol)) cols.push_back(w);
    }
    if (cols.empty()) return cols;
    Mat<T> M(n, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) M.set_col(c, cols[c]);
    Mat<T> R = M;
    auto pivots = rref(R, tol);
    std::vector<Vec<T>> basis;
    for (std::size_t c : pivots) basis.push_back(cols[c]);
    return basis;
}

/// Component of a orthogonal to the subspace [x, n] under the metric.
/// Subtracts the unique w in [x, n] with <a - w, [x, b_j]> = 0 for all j;
/// returns nullopt when no such w exists (degenerate restriction).
template <class T>
std::optional<Vec<T>> orth_to_orbit(const NilAlgebra& A, const Vec<T>& x, const Vec<T>& a,
                                    double tol) {
    auto basis = bracket_orbit_basis<T>(A, x, tol);
    if (basis.empty()) return a;
    std::size_t k = basis.size();
    Mat<T> M(k, k);
    Vec<T> rhs(k, T(0));
    for (std::size_t i = 0; i < k; ++i) {
        rhs[i] = pair_with<T>(A, a, basis[i]);
        for (std::size_t j = 0; j < k; ++j) M(i, j) = pair_with<T>(A, basis[i], basis[j]);
    }
    auto c = solve(M, rhs, tol);
    if (!c) return std::nullopt;
    Vec<T> out = a;
    for (std::size_t i = 0; i < k; ++i)
        if (!scalar_traits<T>::is_zero((*c)[i], 0.0)) out = vsub(out, vscale((*c)[i], basis[i]));
    return out;
}

/// Original-coordinate component of x lying in the requested adapted blocks.
inline Vec<Rat> block_part(const Decomposition& D, const Vec<Rat>& x,
                           std::initializer_list<Block> blocks) {
    Vec<Rat> ad = D.to_adapted(x);
    for (std::size_t i = 0; i < D.n; ++i) {
        bool keep = false;
        for (Block b : blocks)
            if (D.block_of[i] == b) keep = true;
        if (!keep) ad[i] = Rat(0);
    }
    return D.to_original(ad);
}

inline Vec<double> block_part_numeric(const Decomposition& D, const Vec<double>& x,
                                      std::initializer_list<Block> blocks) {
    Vec<double> ad = D.cob_inv_d * x;
    for (std::size_t i = 0; i < D.n; ++i) {
        bool keep = false;
        for (Block b : blocks)
            if (D.block_of[i] == b) keep = true;
        if (!keep) ad[i] = 0.0;
    }
    return D.cob_d * ad;
}

} // namespace detail

/// Translation predicate: does left multiplication by exp(phi_log) shift the
/// geodesic through the identity with initial velocity gamma_init by omega?
/// Samples the log-coordinate identity bch(phi, log gamma(t)) = log gamma(t+omega)
/// at t in {0, omega/3, omega/2, 2 omega/3, omega}, and additionally requires
/// e^{omega J} to fix e0 + y1 + J^{-1} y2 whenever the closed form applies.
inline bool translates(const NilAlgebra& A, const Decomposition& D, const Vec<double>& phi_log,
                       const Vec<double>& gamma_init, double omega, double tol_bch = 1e-8,
                       double tol_fix = 1e-9) {
    if (!(omega > 0.0)) throw Error("translates: the shift omega must be positive");
    if (phi_log.size() != A.dim() || gamma_init.size() != A.dim())
        throw DimensionMismatch("translates: vector length does not match the algebra dimension");

    GeodesicState S = build_geodesic(A, D, gamma_init);
    auto eval_log = [&](double t) -> Vec<double> {
        if (t == 0.0) return Vec<double>(A.dim(), 0.0);
        if (S.method == GeodesicMethod::closed_form) return eval_geodesic(S, t).log_coords;
        std::size_t steps = static_cast<std::size_t>(std::ceil(std::fabs(t))) * 4000 + 2000;
        return geodesic_rk4(A, gamma_init, t, steps).back().log_coords;
    };

    const double ts[5] = {0.0, omega / 3.0, omega / 2.0, 2.0 * omega / 3.0, omega};
    for (double t : ts) {
        Vec<double> lt = eval_log(t);
        Vec<double> ltw = eval_log(t + omega);
        Vec<double> shifted =
            vadd(vadd(phi_log, lt), vscale(0.5, detail::numeric_bracket<double>(A, phi_log, lt)));
        for (std::size_t i = 0; i < shifted.size(); ++i)
            if (std::fabs(shifted[i] - ltw[i]) > tol_bch) return false;
    }

    if (S.method == GeodesicMethod::closed_form && S.s > 0) {
        Vec<double> fix = vadd(vadd(S.e0, S.y1), S.Jinv2 * S.y2);
        Vec<double> moved = expm(omega * S.J_matrix) * fix;
        for (std::size_t a = 0; a < S.s; ++a)
            if (std::fabs(moved[a] - fix[a]) > tol_fix) return false;
    }
    return true;
}

inline bool translates(const NilAlgebra& A, const Decomposition& D, const Vec<Rat>& phi_log,
                       const Vec<double>& gamma_init, double omega, double tol_bch = 1e-8,
                       double tol_fix = 1e-9) {
    return translates(A, D, cast_vec(phi_log), gamma_init, omega, tol_bch, tol_fix);
}

/// Output of construct_translated: exp(phi_log) translates the geodesic
/// gamma(t) = exp(xi) exp((t / omega_star) geodesic_base) by omega_star.
struct TranslatedGeodesic {
    Vec<Rat> xi;
    Vec<Rat> geodesic_base;   // a' + x*
    double omega_star = 1.0;  // |geodesic_base|, or 1 when the base is null
    Rat omega_star_sq;        // |<base, base>| (zero in the null case)
    bool base_null = false;
    CausalClass causal = CausalClass::Null;
};

/// Build a geodesic translated by phi = exp(a* + x*). Requires the exact
/// orthogonality x* perp [x*, n]; a' is the part of a* orthogonal to [x*, n]
/// inside the center, xi solves a' = a* + [x*, xi] with least Euclidean norm.
inline TranslatedGeodesic construct_translated(const NilAlgebra& A, const Decomposition& D,
                                               const Vec<Rat>& phi_log) {
    D.require_exact();
    if (phi_log.size() != A.dim())
        throw DimensionMismatch("construct_translated: vector length does not match the algebra");
    const std::size_t n = A.dim();

    Vec<Rat> a_star = detail::block_part(D, phi_log, {Block::U, Block::Z});
    Vec<Rat> x_star = detail::block_part(D, phi_log, {Block::V, Block::E});

    TranslatedGeodesic out;
    out.xi = Vec<Rat>(n, Rat(0));

    Vec<Rat> a_prime = a_star;
    if (!vis_zero(x_star)) {
        for (std::size_t j = 0; j < n; ++j) {
            Vec<Rat> ej(n, Rat(0));
            ej[j] = Rat(1);
            if (!A.ip(x_star, A.bracket(x_star, ej)).is_zero())
                throw ObstructedTranslation(
                    "construct_translated: x* is not orthogonal to [x*, n]");
        }
        auto ap = detail::orth_to_orbit<Rat>(A, x_star, a_star, 0.0);
        if (!ap)
            throw InconsistentSolve(
                "construct_translated: no component of a* orthogonal to [x*, n]");
        a_prime = *ap;

        Vec<Rat> rhs = vsub(a_prime, a_star);
        if (!vis_zero(rhs)) {
            // least-norm xi with [x*, xi] = a' - a*: xi = Adx^T y, (Adx Adx^T) y = rhs
            Mat<Rat> Adx(n, n);
            for (std::size_t j = 0; j < n; ++j) {
                Vec<Rat> ej(n, Rat(0));
                ej[j] = Rat(1);
                Adx.set_col(j, A.bracket(x_star, ej));
            }
            Mat<Rat> AdxT(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) AdxT(i, j) = Adx(j, i);
            auto y = solve(Adx * AdxT, rhs);
            if (!y)
                throw InconsistentSolve("construct_translated: a' - a* is not in [x*, n]");
            out.xi = AdxT * *y;
        }
    }

    out.geodesic_base = vadd(a_prime, x_star);
    Rat qq = A.ip(out.geodesic_base, out.geodesic_base);
    out.causal = A.causal_character(out.geodesic_base);
    if (qq.is_zero()) {
        out.base_null = true;
        out.omega_star = 1.0;
        out.omega_star_sq = Rat(0);
    } else {
        out.omega_star_sq = qq.sign() > 0 ? qq : -qq;
        out.omega_star = std::sqrt(out.omega_star_sq.to_double());
    }
    return out;
}

/// Exact flat-case period. Requires [n, n] contained in U and E = {0}; then a
/// unit-speed geodesic translated by phi = exp(u* + z* + v*) has
/// eps omega^2 = 2<u*, v*> + <z*, z*>, so omega is determined by phi alone.
/// Null elements (right side zero) carry no period.
///
/// phi translates a geodesic at all only when ad†_{v*} v* = 0. The log of a
/// flat geodesic gains (1/2) t^2 ad†_{v0} v0 in U, so when that vector is
/// nonzero the shift identity bch(phi, log gamma(t)) = log gamma(t + omega)
/// picks up a term linear in t that no base point or initial data can cancel.
/// Elements failing the condition are marked obstructed and carry no period
/// even when the right side above is nonzero. When the condition holds, the
/// one-parameter subgroup exp(t (u* + z* + v*) / omega) is a geodesic and
/// realizes the period.
inline PeriodRecord flat_period(const NilAlgebra& A, const Decomposition& D,
                                const Vec<Rat>& phi_log) {
    D.require_exact();
    if (phi_log.size() != A.dim())
        throw DimensionMismatch("flat_period: vector length does not match the algebra");
    if (D.s != 0) throw NotFlatCase("flat_period: E is nontrivial");
    const std::size_t n = A.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Vec<Rat> w = D.to_adapted(A.basis_bracket(i, j));
            for (std::size_t k = 0; k < n; ++k)
                if (D.block_of[k] != Block::U && !w[k].is_zero())
                    throw NotFlatCase("flat_period: [n, n] is not contained in U");
        }

    Vec<Rat> u_star = detail::block_part(D, phi_log, {Block::U});
    Vec<Rat> z_star = detail::block_part(D, phi_log, {Block::Z});
    Vec<Rat> v_star = detail::block_part(D, phi_log, {Block::V});

    Rat q = Rat(2) * A.ip(u_star, v_star) + A.ip(z_star, z_star);

    PeriodRecord rec;
    rec.phi_log = phi_log;
    rec.kind = PeriodKind::flat_exact;
    rec.causal = q.sign() > 0   ? CausalClass::Timelike
                 : q.sign() < 0 ? CausalClass::Spacelike
                                : CausalClass::Null;
    rec.obstructed = !vis_zero(A.ad_dagger(v_star) * v_star);
    if (!q.is_zero() && !rec.obstructed) {
        rec.omega_sq = q.sign() > 0 ? q : -q;
        rec.omega = std::sqrt(rec.omega_sq->to_double());
    }
    return rec;
}

/// Unnormalized initial velocity u* + z* + v* - (1/2) ad†_{v*} v* of the
/// flat-case geodesic from the identity that reaches exp(phi_log) at time
/// omega. When ad†_{v*} v* = 0 the correction vanishes, the data reduces to
/// phi_log itself, and exp(phi_log) translates this geodesic; dividing by
/// the period omega gives the unit-speed initial velocity. For obstructed
/// elements the geodesic still hits exp(phi_log) but is not translated.
inline Vec<Rat> flat_translating_velocity(const NilAlgebra& A, const Decomposition& D,
                                          const Vec<Rat>& phi_log) {
    Vec<Rat> core = detail::block_part(D, phi_log, {Block::U, Block::Z, Block::V});
    Vec<Rat> v_star = detail::block_part(D, phi_log, {Block::V});
    return vsub(core, vscale(Rat(1, 2), A.ad_dagger(v_star) * v_star));
}

/// Period spectrum of a flat torus within |g| <= bound: the multiset
/// { |g| : g in Gamma, <g, g> != 0, |g| <= bound }, keyed by the exact
/// rational omega^2 = |<g, g>|. Coefficients are enumerated over the box
/// guaranteed by the companion positive-definite form (eigenvalue floor of
/// the lattice Gram matrix, doubled for safety).
inline std::map<Rat, int> flat_torus_spectrum(const LatticeSpec& lattice, const Mat<Rat>& gram,
                                              double bound) {
    if (!(bound > 0.0)) throw Error("flat_torus_spectrum: bound must be positive");
    if (lattice.generators.empty()) throw Error("flat_torus_spectrum: empty lattice");
    const std::size_t n = lattice.generators.front().size();
    if (gram.rows() != n || gram.cols() != n)
        throw DimensionMismatch("flat_torus_spectrum: Gram size does not match the generators");
    if (determinant(gram).is_zero())
        throw DegenerateMetric("flat_torus_spectrum: the metric form is degenerate");
    const std::size_t m = lattice.generators.size();
    Mat<Rat> B(n, m);
    for (std::size_t c = 0; c < m; ++c) {
        if (lattice.generators[c].size() != n)
            throw DimensionMismatch("flat_torus_spectrum: generator length mismatch");
        B.set_col(c, lattice.generators[c]);
    }
    if (rank(B) != m) throw DependentVectors("flat_torus_spectrum: generators are dependent");

    // lattice Gram: <g, g> = c^T M c for g = sum c_k gen_k
    Mat<Rat> M(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            M(i, j) = form(lattice.generators[i], gram, lattice.generators[j]);

    std::vector<double> eig = jacobi_eigenvalues(cast_mat<double>(M));
    double lam_min = std::numeric_limits<double>::infinity();
    for (double l : eig) lam_min = std::min(lam_min, std::fabs(l));
    if (!(lam_min > 0.0))
        throw DegenerateMetric("flat_torus_spectrum: lattice Gram has a vanishing eigenvalue");

    long K = static_cast<long>(std::floor(2.0 * bound / std::sqrt(lam_min) + 1e-9));
    std::map<Rat, int> spectrum;
    std::vector<long> c(m, -K);
    const double bound_sq = bound * bound * (1.0 + 1e-12);
    while (true) {
        bool all_zero = true;
        for (long ck : c)
            if (ck != 0) all_zero = false;
        if (!all_zero) {
            Vec<Rat> cr(m);
            for (std::size_t k = 0; k < m; ++k) cr[k] = Rat(c[k]);
            Rat q = form(cr, M, cr);
            if (!q.is_zero()) {
                Rat aq = q.sign() > 0 ? q : -q;
                if (aq.to_double() <= bound_sq) spectrum[aq]++;
            }
        }
        std::size_t pos = 0;
        while (pos < m && c[pos] == K) c[pos++] = -K;
        if (pos == m) break;
        ++c[pos];
    }
    return spectrum;
}

/// Distinguished period omega* = |z' + e*| of phi = exp(z* + e*) for a
/// nondegenerate center, z' being the part of z* orthogonal to [e*, n].
inline PeriodRecord distinguished_period(const NilAlgebra& A, const Decomposition& D,
                                         const Vec<Rat>& phi_log) {
    D.require_exact();
    if (phi_log.size() != A.dim())
        throw DimensionMismatch("distinguished_period: vector length does not match the algebra");
    if (D.p != 0)
        throw DegenerateCenter("distinguished_period: the center must be nondegenerate");

    Vec<Rat> z_star = detail::block_part(D, phi_log, {Block::Z});
    Vec<Rat> e_star = detail::block_part(D, phi_log, {Block::E});

    Vec<Rat> z_prime = z_star;
    if (!vis_zero(e_star)) {
        auto zp = detail::orth_to_orbit<Rat>(A, e_star, z_star, 0.0);
        if (!zp)
            throw DegenerateMetric(
                "distinguished_period: the metric restricted to [e*, n] is degenerate");
        z_prime = *zp;
    }

    Vec<Rat> base = vadd(z_prime, e_star);
    Rat q = A.ip(base, base);
    if (q.is_zero()) throw NullDistinguished("distinguished_period: z' + e* is null");

    PeriodRecord rec;
    rec.phi_log = phi_log;
    rec.kind = PeriodKind::distinguished;
    rec.causal = q.sign() > 0 ? CausalClass::Timelike : CausalClass::Spacelike;
    rec.omega_sq = q.sign() > 0 ? q : -q;
    rec.omega = std::sqrt(rec.omega_sq->to_double());
    return rec;
}

} // namespace nilgeo
