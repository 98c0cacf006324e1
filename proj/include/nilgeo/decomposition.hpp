#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "algebra.hpp"
#include "polynomial.hpp"

namespace nilgeo {

enum class Exactness { exact, approximate };
enum class Block { U, Z, V, E };

inline const char* to_string(Block b) {
    switch (b) {
        case Block::U: return "U";
        case Block::Z: return "Z";
        case Block::V: return "V";
        default: return "E";
    }
}

/// Adapted decomposition n = U + Z + V + E.
///
/// U is the null radical of the restriction of the metric to the center,
/// Z its orthogonal complement in the center, V a totally isotropic dual
/// partner of U with <u_i, v_j> = delta_ij, and E the remaining orthogonal
/// complement. Adapted basis order: u_1..u_p, z_1..z_q, v_1..v_p, e_1..e_s.
struct Decomposition {
    Exactness exactness = Exactness::exact;
    std::size_t n = 0, p = 0, q = 0, s = 0;

    std::vector<Block> block_of;          // adapted index -> block
    std::vector<int> signs_Z, signs_E;    // <z_a, z_a>, <e_a, e_a>
    std::vector<std::string> adapted_labels;

    // exact data; empty matrices when exactness == approximate
    Mat<Rat> cob, cob_inv;                // columns = adapted basis, original coords
    Mat<Rat> iota_orig;                   // involution on the original basis
    Mat<Rat> gram_ad;                     // adapted Gram block matrix (exact target form)
    Mat<Rat> iota_ad;                     // involution on the adapted basis (== gram_ad)

    // floating mirror, always populated
    Mat<double> cob_d, cob_inv_d, iota_orig_d;

    std::size_t u_index(std::size_t i) const { return i; }
    std::size_t z_index(std::size_t a) const { return p + a; }
    std::size_t v_index(std::size_t i) const { return p + q + i; }
    std::size_t e_index(std::size_t a) const { return 2 * p + q + a; }
    std::size_t ve_begin() const { return p + q; }        // start of V + E block
    std::size_t ve_dim() const { return p + s; }

    bool exact() const { return exactness == Exactness::exact; }

    /// U index i pairs with V index i.
    std::vector<std::pair<std::size_t, std::size_t>> dual_pairing() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t i = 0; i < p; ++i) out.emplace_back(u_index(i), v_index(i));
        return out;
    }

    Vec<Rat> to_adapted(const Vec<Rat>& x) const {
        require_exact();
        return cob_inv * x;
    }
    Vec<Rat> to_original(const Vec<Rat>& x) const {
        require_exact();
        return cob * x;
    }
    Vec<Rat> adapted_basis_vector(std::size_t idx) const {
        require_exact();
        return cob.col(idx);
    }

    void require_exact() const {
        if (!exact())
            throw NonadaptedExact("operation requires an exact adapted basis, "
                                  "but orthonormalization needed irrational scaling");
    }
};

namespace detail {

/// Exact symmetric diagonalization of <,> restricted to span(vs); nondegenerate
/// restriction assumed. Returns orthogonal (not yet normalized) vectors.
inline std::vector<Vec<Rat>> diagonalize_restriction(const NilAlgebra& A,
                                                     std::vector<Vec<Rat>> vs) {
    std::size_t k = vs.size();
    for (std::size_t pos = 0; pos < k; ++pos) {
        std::size_t pick = pos;
        bool found = false;
        for (std::size_t i = pos; i < k; ++i)
            if (!A.ip(vs[i], vs[i]).is_zero()) { pick = i; found = true; break; }
        if (!found) {
            // all diagonal entries vanish; fix with w_i += w_j using a nonzero pairing
            for (std::size_t i = pos; i < k && !found; ++i)
                for (std::size_t j = i + 1; j < k && !found; ++j)
                    if (!A.ip(vs[i], vs[j]).is_zero()) {
                        vs[i] = vadd(vs[i], vs[j]);
                        pick = i;
                        found = true;
                    }
        }
        if (!found)
            throw DegenerateMetric("degenerate restriction in orthogonal split");
        std::swap(vs[pos], vs[pick]);
        Rat d = A.ip(vs[pos], vs[pos]);
        for (std::size_t i = pos + 1; i < k; ++i) {
            Rat f = A.ip(vs[i], vs[pos]) / d;
            if (!f.is_zero()) vs[i] = vsub(vs[i], vscale(f, vs[pos]));
        }
    }
    return vs;
}

} // namespace detail

/// Compute the adapted decomposition. `require_exact` demands rational
/// orthonormalizers for Z and E and throws NonadaptedExact otherwise;
/// by default the decomposition falls back to floating point scaling and
/// is flagged approximate.
inline Decomposition witt_decompose(const NilAlgebra& A, bool require_exact = false) {
    const std::size_t n = A.dim();
    Decomposition D;
    D.n = n;

    // --- center and its null radical U
    const auto& zc = A.center();
    const std::size_t m = zc.size();
    Mat<Rat> CGC(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) CGC(i, j) = A.ip(zc[i], zc[j]);
    auto rad_coords = kernel_basis(CGC);
    std::vector<Vec<Rat>> U;
    for (auto& rc : rad_coords) {
        Vec<Rat> u(n, Rat(0));
        for (std::size_t l = 0; l < m; ++l) u = vadd(u, vscale(rc[l], zc[l]));
        U.push_back(u);
    }
    if (!U.empty()) {
        Mat<Rat> rows(U.size(), n);
        for (std::size_t r = 0; r < U.size(); ++r)
            for (std::size_t c = 0; c < n; ++c) rows(r, c) = U[r][c];
        rref(rows);
        for (std::size_t r = 0; r < U.size(); ++r) U[r] = rows.row(r);
    }
    const std::size_t p = U.size();

    // --- dual isotropic partner V: rank-greedy scan over the input basis,
    // then dualization and Witt correction
    std::vector<Vec<Rat>> W;
    if (p > 0) {
        for (std::size_t t = 0; t < n && W.size() < p; ++t) {
            Vec<Rat> cand(n, Rat(0));
            cand[t] = Rat(1);
            Mat<Rat> Ptry(p, W.size() + 1);
            for (std::size_t i = 0; i < p; ++i) {
                for (std::size_t j = 0; j < W.size(); ++j) Ptry(i, j) = A.ip(U[i], W[j]);
                Ptry(i, W.size()) = A.ip(U[i], cand);
            }
            if (rank(Ptry) == W.size() + 1) W.push_back(cand);
        }
        if (W.size() != p)
            throw DegenerateMetric("could not complete hyperbolic pairs for the null radical");
    }
    std::vector<Vec<Rat>> V;
    if (p > 0) {
        Mat<Rat> P(p, p);
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < p; ++j) P(i, j) = A.ip(U[i], W[j]);
        Mat<Rat> Pinv = *inverse(P);
        for (std::size_t j = 0; j < p; ++j) {
            Vec<Rat> vj(n, Rat(0));
            for (std::size_t k = 0; k < p; ++k) vj = vadd(vj, vscale(Pinv(k, j), W[k]));
            V.push_back(vj);
        }
        for (std::size_t j = 0; j < p; ++j) {
            Vec<Rat> corr = vscale(Rat(1, 2) * A.ip(V[j], V[j]), U[j]);
            for (std::size_t k = 0; k < j; ++k)
                corr = vadd(corr, vscale(A.ip(V[j], V[k]), U[k]));
            V[j] = vsub(V[j], corr);
        }
    }

    // --- Z: central vectors orthogonal to V. The pairing with V restricted
    // to U is an isomorphism, so this kernel meets U only in zero and has
    // dimension m - p.
    std::vector<Vec<Rat>> Zv;
    {
        Mat<Rat> Msys(p, m);
        for (std::size_t j = 0; j < p; ++j)
            for (std::size_t l = 0; l < m; ++l) Msys(j, l) = A.ip(zc[l], V[j]);
        auto ker = kernel_basis(Msys);
        for (auto& coords : ker) {
            Vec<Rat> z(n, Rat(0));
            for (std::size_t l = 0; l < m; ++l) z = vadd(z, vscale(coords[l], zc[l]));
            Zv.push_back(z);
        }
        if (!Zv.empty()) {
            Mat<Rat> rows(Zv.size(), n);
            for (std::size_t r = 0; r < Zv.size(); ++r)
                for (std::size_t c = 0; c < n; ++c) rows(r, c) = Zv[r][c];
            rref(rows);
            for (std::size_t r = 0; r < Zv.size(); ++r) Zv[r] = rows.row(r);
        }
    }
    const std::size_t q = Zv.size();

    // --- E: everything orthogonal to U, V and Z
    std::vector<Vec<Rat>> Ev;
    {
        Mat<Rat> Msys(2 * p + q, n);
        std::size_t r = 0;
        auto add_row = [&](const Vec<Rat>& w) {
            for (std::size_t t = 0; t < n; ++t) {
                Rat acc(0);
                for (std::size_t u = 0; u < n; ++u) acc += w[u] * A.gram()(u, t);
                Msys(r, t) = acc;
            }
            ++r;
        };
        for (auto& u : U) add_row(u);
        for (auto& v : V) add_row(v);
        for (auto& z : Zv) add_row(z);
        Ev = kernel_basis(Msys);
    }
    const std::size_t s = Ev.size();
    if (2 * p + q + s != n)
        throw DegenerateMetric("adapted decomposition dimensions do not add up");

    // --- orthonormalize Z and E (exactly when possible)
    Zv = detail::diagonalize_restriction(A, std::move(Zv));
    Ev = detail::diagonalize_restriction(A, std::move(Ev));
    bool exact = true;
    std::vector<Rat> z_scale(q), e_scale(s);
    std::vector<int> signs_Z(q), signs_E(s);
    for (std::size_t a = 0; a < q; ++a) {
        Rat d = A.ip(Zv[a], Zv[a]);
        signs_Z[a] = d.sign();
        Rat root;
        if (d.abs_is_square(&root)) z_scale[a] = Rat(1) / root;
        else { exact = false; z_scale[a] = Rat(0); }
    }
    for (std::size_t a = 0; a < s; ++a) {
        Rat d = A.ip(Ev[a], Ev[a]);
        signs_E[a] = d.sign();
        Rat root;
        if (d.abs_is_square(&root)) e_scale[a] = Rat(1) / root;
        else { exact = false; e_scale[a] = Rat(0); }
    }
    if (!exact && require_exact)
        throw NonadaptedExact("orthonormalization of Z/E requires irrational scaling");

    // --- assemble
    D.p = p; D.q = q; D.s = s;
    D.signs_Z = signs_Z;
    D.signs_E = signs_E;
    D.exactness = exact ? Exactness::exact : Exactness::approximate;
    for (std::size_t i = 0; i < p; ++i) { D.block_of.push_back(Block::U); D.adapted_labels.push_back("u" + std::to_string(i + 1)); }
    for (std::size_t a = 0; a < q; ++a) { D.block_of.push_back(Block::Z); D.adapted_labels.push_back("z" + std::to_string(a + 1)); }
    for (std::size_t i = 0; i < p; ++i) { D.block_of.push_back(Block::V); D.adapted_labels.push_back("v" + std::to_string(i + 1)); }
    for (std::size_t a = 0; a < s; ++a) { D.block_of.push_back(Block::E); D.adapted_labels.push_back("e" + std::to_string(a + 1)); }

    D.gram_ad = Mat<Rat>(n, n);
    for (std::size_t i = 0; i < p; ++i) {
        D.gram_ad(D.u_index(i), D.v_index(i)) = Rat(1);
        D.gram_ad(D.v_index(i), D.u_index(i)) = Rat(1);
    }
    for (std::size_t a = 0; a < q; ++a) D.gram_ad(D.z_index(a), D.z_index(a)) = Rat(signs_Z[a]);
    for (std::size_t a = 0; a < s; ++a) D.gram_ad(D.e_index(a), D.e_index(a)) = Rat(signs_E[a]);
    D.iota_ad = D.gram_ad;

    if (exact) {
        std::vector<Vec<Rat>> cols;
        for (auto& u : U) cols.push_back(u);
        for (std::size_t a = 0; a < q; ++a) cols.push_back(vscale(z_scale[a], Zv[a]));
        for (auto& v : V) cols.push_back(v);
        for (std::size_t a = 0; a < s; ++a) cols.push_back(vscale(e_scale[a], Ev[a]));
        D.cob = from_columns(cols);
        auto inv = inverse(D.cob);
        if (!inv) throw DegenerateMetric("adapted basis is not a basis");
        D.cob_inv = *inv;
        // the involution is the adapted Gram block matrix read in the adapted basis
        D.iota_orig = D.cob * D.iota_ad * D.cob_inv;
        D.cob_d = cast_mat<double>(D.cob);
        D.cob_inv_d = cast_mat<double>(D.cob_inv);
        D.iota_orig_d = cast_mat<double>(D.iota_orig);
        // exact invariant: B^T G B equals the block Gram
        if (!(D.cob.transpose() * A.gram() * D.cob == D.gram_ad))
            throw DegenerateMetric("adapted Gram invariant failed");
    } else {
        Mat<double> cob(n, n);
        auto put = [&](std::size_t col, const Vec<Rat>& v, double scale) {
            for (std::size_t i = 0; i < n; ++i) cob(i, col) = v[i].to_double() * scale;
        };
        std::size_t col = 0;
        for (auto& u : U) put(col++, u, 1.0);
        for (std::size_t a = 0; a < q; ++a)
            put(col++, Zv[a], 1.0 / std::sqrt(std::fabs(A.ip(Zv[a], Zv[a]).to_double())));
        for (auto& v : V) put(col++, v, 1.0);
        for (std::size_t a = 0; a < s; ++a)
            put(col++, Ev[a], 1.0 / std::sqrt(std::fabs(A.ip(Ev[a], Ev[a]).to_double())));
        D.cob_d = cob;
        auto inv = inverse(cob, 1e-12);
        if (!inv) throw DegenerateMetric("adapted basis is not a basis");
        D.cob_inv_d = *inv;
        D.iota_orig_d = D.cob_d * cast_mat<double>(D.iota_ad) * D.cob_inv_d;
    }
    return D;
}

/// Exact/floating mirrors of an algebra seen through an adapted basis.
template <class T>
struct AdaptedView {
    const NilAlgebra* A = nullptr;
    const Decomposition* D = nullptr;
    Mat<T> cob, cob_inv, iota_orig, G, Ginv;

    Vec<T> to_adapted(const Vec<T>& x) const { return cob_inv * x; }
    Vec<T> to_original(const Vec<T>& x) const { return cob * x; }

    Vec<T> bracket(const Vec<T>& x, const Vec<T>& y) const {
        std::size_t n = cob.rows();
        Vec<T> out(n, T(0));
        for (std::size_t i = 0; i < n; ++i) {
            if (scalar_traits<T>::is_zero(x[i], 0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (scalar_traits<T>::is_zero(y[j], 0.0)) continue;
                T f = x[i] * y[j];
                for (std::size_t k = 0; k < n; ++k) out[k] += f * c[i][j][k];
            }
        }
        return out;
    }
    Mat<T> ad(const Vec<T>& x) const {
        std::size_t n = cob.rows();
        Mat<T> m(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) {
                if (scalar_traits<T>::is_zero(x[i], 0.0)) continue;
                for (std::size_t k = 0; k < n; ++k) m(k, j) += x[i] * c[i][j][k];
            }
        return m;
    }
    Mat<T> ad_dagger(const Vec<T>& x) const { return Ginv * ad(x).transpose() * G; }
    T ip(const Vec<T>& x, const Vec<T>& y) const { return form(x, G, y); }

    std::vector<std::vector<Vec<T>>> c;
};

inline AdaptedView<Rat> make_exact_view(const NilAlgebra& A, const Decomposition& D) {
    D.require_exact();
    AdaptedView<Rat> v;
    v.A = &A; v.D = &D;
    v.cob = D.cob; v.cob_inv = D.cob_inv; v.iota_orig = D.iota_orig;
    v.G = A.gram(); v.Ginv = A.gram_inv();
    std::size_t n = A.dim();
    v.c.assign(n, std::vector<Vec<Rat>>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) v.c[i][j] = A.basis_bracket(i, j);
    return v;
}

inline AdaptedView<double> make_numeric_view(const NilAlgebra& A, const Decomposition& D) {
    AdaptedView<double> v;
    v.A = &A; v.D = &D;
    v.cob = D.cob_d; v.cob_inv = D.cob_inv_d; v.iota_orig = D.iota_orig_d;
    v.G = cast_mat<double>(A.gram());
    v.Ginv = cast_mat<double>(A.gram_inv());
    std::size_t n = A.dim();
    v.c.assign(n, std::vector<Vec<double>>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) v.c[i][j] = cast_vec(A.basis_bracket(i, j));
    return v;
}

/// j(a) on V+E (adapted coordinates): j(a)x = iota ad^T_x (iota a).
/// `a` is given in original coordinates and must lie in U+Z.
template <class T>
Mat<T> j_map_impl(const AdaptedView<T>& view, const Vec<T>& a_orig, double tol = 0.0) {
    const Decomposition& D = *view.D;
    Vec<T> a_ad = view.to_adapted(a_orig);
    for (std::size_t idx = D.ve_begin(); idx < D.n; ++idx)
        if (!scalar_traits<T>::is_zero(a_ad[idx], tol))
            throw NotCentralArgument("j-operator argument must lie in U+Z");
    Vec<T> ia = view.iota_orig * a_orig;
    Mat<T> out(D.ve_dim(), D.ve_dim());
    for (std::size_t cidx = 0; cidx < D.ve_dim(); ++cidx) {
        Vec<T> x = view.cob.col(D.ve_begin() + cidx);
        Vec<T> w = view.iota_orig * (view.ad_dagger(x) * ia);
        Vec<T> w_ad = view.to_adapted(w);
        for (std::size_t r = 0; r < D.ve_begin(); ++r)
            if (!scalar_traits<T>::is_zero(w_ad[r], tol))
                throw NotCentralArgument("j-operator image left V+E");  // internal invariant
        for (std::size_t r = 0; r < D.ve_dim(); ++r) out(r, cidx) = w_ad[D.ve_begin() + r];
    }
    return out;
}

inline Mat<Rat> j_map(const NilAlgebra& A, const Decomposition& D, const Vec<Rat>& a_orig) {
    return j_map_impl(make_exact_view(A, D), a_orig);
}

/// j matrices of the adapted central basis vectors u_1..u_p, z_1..z_q.
inline std::vector<Mat<Rat>> j_basis(const NilAlgebra& A, const Decomposition& D) {
    auto view = make_exact_view(A, D);
    std::vector<Mat<Rat>> out;
    for (std::size_t c = 0; c < D.p + D.q; ++c)
        out.push_back(j_map_impl(view, D.cob.col(c)));
    return out;
}

struct PhWitness {
    std::string what;           // human-readable description of the violated relation
    Vec<Rat> a;                 // central argument(s) involved, original coordinates
    std::optional<Vec<Rat>> b;
};

struct PhReport {
    bool is_ph = false;
    std::optional<PhWitness> witness;
};

/// pH-type test: j(a)^2 = -<a, iota a> Id on V+E for all central a.
/// Checked on the adapted central basis plus polarized pairs, which is
/// equivalent by bilinearity.
inline PhReport ph_type_check(const NilAlgebra& A, const Decomposition& D) {
    auto J = j_basis(A, D);
    std::size_t m = D.p + D.q, d = D.ve_dim();
    Mat<Rat> I = Mat<Rat>::identity(d);
    PhReport rep;
    for (std::size_t c = 0; c < m; ++c) {
        // companion form is the identity on the adapted central basis
        if (!(J[c] * J[c] == -Rat(1) * I)) {
            rep.is_ph = false;
            rep.witness = PhWitness{
                "j(" + D.adapted_labels[c] + ")^2 != -<" + D.adapted_labels[c] + ", iota " +
                    D.adapted_labels[c] + "> Id",
                D.adapted_basis_vector(c), std::nullopt};
            return rep;
        }
    }
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) {
            Mat<Rat> anti = J[a] * J[b] + J[b] * J[a];
            if (!(anti == Mat<Rat>(d, d))) {
                rep.is_ph = false;
                rep.witness = PhWitness{
                    "j(" + D.adapted_labels[a] + ") j(" + D.adapted_labels[b] +
                        ") + j(" + D.adapted_labels[b] + ") j(" + D.adapted_labels[a] + ") != 0",
                    D.adapted_basis_vector(a), D.adapted_basis_vector(b)};
                return rep;
            }
        }
    rep.is_ph = true;
    return rep;
}

/// Pointwise nonsingularity of j at a central argument (exact determinant).
inline bool nonsingular_at(const NilAlgebra& A, const Decomposition& D, const Vec<Rat>& a) {
    return !determinant(j_map(A, D, a)).is_zero();
}

/// Floating-point pH test for approximate decompositions (tolerance on entries).
inline PhReport ph_type_check_numeric(const NilAlgebra& A, const Decomposition& D,
                                      double tol = 1e-12) {
    auto view = make_numeric_view(A, D);
    std::size_t m = D.p + D.q, d = D.ve_dim();
    std::vector<Mat<double>> J;
    for (std::size_t c = 0; c < m; ++c)
        J.push_back(j_map_impl(view, view.cob.col(c), tol));
    auto near = [&](const Mat<double>& X, const Mat<double>& Y) {
        for (std::size_t i = 0; i < X.rows(); ++i)
            for (std::size_t j = 0; j < X.cols(); ++j)
                if (std::fabs(X(i, j) - Y(i, j)) > tol) return false;
        return true;
    };
    Mat<double> I = Mat<double>::identity(d);
    PhReport rep;
    for (std::size_t c = 0; c < m; ++c)
        if (!near(J[c] * J[c], -1.0 * I)) {
            rep.witness = PhWitness{"j(" + D.adapted_labels[c] + ")^2 != -Id (numeric)",
                                    Vec<Rat>{}, std::nullopt};
            return rep;
        }
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            if (!near(J[a] * J[b] + J[b] * J[a], Mat<double>(d, d))) {
                rep.witness = PhWitness{"anticommutator j(" + D.adapted_labels[a] + "), j(" +
                                            D.adapted_labels[b] + ") != 0 (numeric)",
                                        Vec<Rat>{}, std::nullopt};
                return rep;
            }
    rep.is_ph = true;
    return rep;
}

/// det j(sum_c t_c a_c) as a polynomial in t_1..t_{p+q}; memoized Laplace expansion.
inline MultiPoly det_j_polynomial(const NilAlgebra& A, const Decomposition& D) {
    auto J = j_basis(A, D);
    std::size_t m = D.p + D.q, d = D.ve_dim();
    if (d == 0) return MultiPoly::constant(m, Rat(1));
    // entries of j(t) are linear polynomials in t
    std::vector<std::vector<MultiPoly>> entry(d, std::vector<MultiPoly>(d, MultiPoly(m)));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t c = 0; c < m; ++c)
                if (!J[c](i, j).is_zero())
                    entry[i][j] += MultiPoly::variable(m, c, J[c](i, j));
    std::unordered_map<std::uint32_t, MultiPoly> memo;
    // det of the submatrix on rows >= popcount(mask) and columns not in mask
    std::function<MultiPoly(std::uint32_t)> minor = [&](std::uint32_t mask) -> MultiPoly {
        auto it = memo.find(mask);
        if (it != memo.end()) return it->second;
        std::size_t row = std::size_t(__builtin_popcount(mask));
        if (row == d) return MultiPoly::constant(m, Rat(1));
        MultiPoly acc(m);
        int sign = 1;
        for (std::size_t col = 0; col < d; ++col) {
            if (mask & (1u << col)) continue;
            if (!entry[row][col].is_zero()) {
                MultiPoly term = entry[row][col] * minor(mask | (1u << col));
                acc += sign > 0 ? term : -term;
            }
            sign = -sign;
        }
        memo.emplace(mask, acc);
        return acc;
    };
    return minor(0);
}

} // namespace nilgeo
