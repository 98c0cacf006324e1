#pragma once

#include <optional>
#include <vector>

#include "decomposition.hpp"

namespace nilgeo {

/// Levi-Civita connection on the original basis:
/// nabla_x y = (1/2)([x,y] - ad^T_x y - ad^T_y x).
struct ConnectionTable {
    std::vector<std::vector<Vec<Rat>>> nabla;   // nabla[i][j] = coords of nabla_{b_i} b_j

    Vec<Rat> apply(const Vec<Rat>& x, const Vec<Rat>& w) const {
        std::size_t n = nabla.size();
        Vec<Rat> out(n, Rat(0));
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (w[j].is_zero()) continue;
                Rat f = x[i] * w[j];
                for (std::size_t k = 0; k < n; ++k) out[k] += f * nabla[i][j][k];
            }
        }
        return out;
    }
};

inline ConnectionTable connection_table(const NilAlgebra& A) {
    std::size_t n = A.dim();
    std::vector<Mat<Rat>> adT;
    for (std::size_t i = 0; i < n; ++i) {
        Vec<Rat> ei(n, Rat(0));
        ei[i] = Rat(1);
        adT.push_back(A.ad_dagger(ei));
    }
    ConnectionTable T;
    T.nabla.assign(n, std::vector<Vec<Rat>>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec<Rat> v = A.basis_bracket(i, j);
            Vec<Rat> a = adT[i].col(j);
            Vec<Rat> b = adT[j].col(i);
            Vec<Rat> out(n);
            for (std::size_t k = 0; k < n; ++k) out[k] = Rat(1, 2) * (v[k] - a[k] - b[k]);
            T.nabla[i][j] = std::move(out);
        }
    return T;
}

/// Curvature tensor from the definition
/// R(x,y)w = nabla_x nabla_y w - nabla_y nabla_x w - nabla_{[x,y]} w,
/// composed through the connection table.
struct CurvatureTensor {
    std::vector<std::vector<std::vector<Vec<Rat>>>> R;   // R[i][j][k] = coords of R(b_i,b_j)b_k

    std::size_t dim() const { return R.size(); }

    Vec<Rat> apply(const Vec<Rat>& x, const Vec<Rat>& y, const Vec<Rat>& w) const {
        std::size_t n = dim();
        Vec<Rat> out(n, Rat(0));
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (y[j].is_zero()) continue;
                Rat f = x[i] * y[j];
                for (std::size_t k = 0; k < n; ++k) {
                    if (w[k].is_zero()) continue;
                    Rat g = f * w[k];
                    for (std::size_t l = 0; l < n; ++l) out[l] += g * R[i][j][k][l];
                }
            }
        }
        return out;
    }

    bool is_zero() const {
        for (auto& a : R)
            for (auto& b : a)
                for (auto& c : b)
                    if (!vis_zero(c, 0.0)) return false;
        return true;
    }
};

inline CurvatureTensor curvature_tensor(const NilAlgebra& A, const ConnectionTable& T) {
    std::size_t n = A.dim();
    CurvatureTensor C;
    C.R.assign(n, std::vector<std::vector<Vec<Rat>>>(n, std::vector<Vec<Rat>>(n)));
    for (std::size_t i = 0; i < n; ++i) {
        Vec<Rat> ei(n, Rat(0)); ei[i] = Rat(1);
        for (std::size_t j = 0; j < n; ++j) {
            Vec<Rat> ej(n, Rat(0)); ej[j] = Rat(1);
            for (std::size_t k = 0; k < n; ++k) {
                Vec<Rat> ek(n, Rat(0)); ek[k] = Rat(1);
                Vec<Rat> t1 = T.apply(ei, T.nabla[j][k]);
                Vec<Rat> t2 = T.apply(ej, T.nabla[i][k]);
                Vec<Rat> t3 = T.apply(A.basis_bracket(i, j), ek);
                C.R[i][j][k] = vsub(vsub(t1, t2), t3);
            }
        }
    }
    return C;
}

struct Sectional {
    Rat numerator;                 // <R(x,y)y, x>
    std::optional<Rat> value;      // defined only on nondegenerate planes
};

inline Sectional sectional(const NilAlgebra& A, const CurvatureTensor& R,
                           const Vec<Rat>& x, const Vec<Rat>& y) {
    Mat<Rat> M(A.dim(), 2);
    M.set_col(0, x);
    M.set_col(1, y);
    if (rank(M) < 2)
        throw DependentVectors("sectional curvature of a degenerate (dependent) pair");
    Sectional out{A.ip(R.apply(x, y, y), x), std::nullopt};
    Rat disc = A.ip(x, x) * A.ip(y, y) - A.ip(x, y) * A.ip(x, y);
    if (!disc.is_zero()) out.value = out.numerator / disc;
    return out;
}

/// Ricci tensor as the basis-free trace Ric(x,y) = tr(xi -> R(xi, x) y).
inline Mat<Rat> ricci(const NilAlgebra& A, const CurvatureTensor& R) {
    std::size_t n = A.dim();
    Mat<Rat> ric(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rat acc(0);
            for (std::size_t k = 0; k < n; ++k) acc += R.R[k][i][j][k];
            ric(i, j) = acc;
        }
    return ric;
}

inline Rat scalar_curvature(const NilAlgebra& A, const Mat<Rat>& ric) {
    Mat<Rat> m = A.gram_inv() * ric;
    Rat acc(0);
    for (std::size_t i = 0; i < A.dim(); ++i) acc += m(i, i);
    return acc;
}

/// Sign-weighted scalar curvature through the j-operators; used as a
/// cross-check of the metric trace.
inline Rat scalar_from_j(const NilAlgebra& A, const Decomposition& D) {
    auto view = make_exact_view(A, D);
    Rat acc(0);
    for (std::size_t a = 0; a < D.q; ++a) {
        Mat<Rat> Jz = j_map_impl(view, D.adapted_basis_vector(D.z_index(a)));
        for (std::size_t b = 0; b < D.s; ++b) {
            Vec<Rat> e(D.ve_dim(), Rat(0));
            e[D.p + b] = Rat(1);                  // e_b within V+E coordinates
            Vec<Rat> w = Jz * e;
            // <w, w> in the adapted V+E block: V part is null, E part diagonal
            Rat norm(0);
            for (std::size_t t = 0; t < D.s; ++t) norm += Rat(D.signs_E[t]) * w[D.p + t] * w[D.p + t];
            acc += Rat(D.signs_Z[a]) * Rat(D.signs_E[b]) * norm;
        }
    }
    return Rat(-1, 4) * acc;
}

struct FlatnessReport {
    bool is_flat = false;
    bool e0f_sufficient = false;       // [n,n] inside U and E = 0
    bool homaloidal_center = false;    // all plane numerators with central legs vanish
    Mat<Rat> ricci;
    Rat scalar;
};

inline FlatnessReport flatness_report(const NilAlgebra& A, const Decomposition& D,
                                      const CurvatureTensor& R) {
    FlatnessReport rep;
    rep.is_flat = R.is_zero();
    rep.ricci = ricci(A, R);
    rep.scalar = scalar_curvature(A, rep.ricci);

    bool bracket_in_U = true;
    if (D.exact()) {
        std::size_t n = A.dim();
        for (std::size_t i = 0; i < n && bracket_in_U; ++i)
            for (std::size_t j = 0; j < n && bracket_in_U; ++j) {
                Vec<Rat> ad = D.to_adapted(A.basis_bracket(i, j));
                for (std::size_t t = D.p; t < n; ++t)
                    if (!ad[t].is_zero()) { bracket_in_U = false; break; }
            }
    } else {
        bracket_in_U = false;  // approximate adapted basis: report conservatively
    }
    rep.e0f_sufficient = bracket_in_U && D.s == 0;

    rep.homaloidal_center = true;
    const auto& zc = A.center();
    for (std::size_t a = 0; a < zc.size() && rep.homaloidal_center; ++a)
        for (std::size_t b = 0; b < zc.size(); ++b) {
            if (!A.ip(R.apply(zc[a], zc[b], zc[b]), zc[a]).is_zero()) {
                rep.homaloidal_center = false;
                break;
            }
        }
    return rep;
}

/// Exact solution space {z central : j(z) = 0 and j(iota z) = 0}; the
/// euclidean de Rham factor direction space. Requires a nondegenerate center.
inline std::vector<Vec<Rat>> derham_euclidean_factor(const NilAlgebra& A,
                                                     const Decomposition& D) {
    if (D.p != 0)
        throw DegenerateCenter("euclidean factor computation requires a nondegenerate center");
    auto J = j_basis(A, D);
    std::size_t d = D.ve_dim();
    Mat<Rat> sys(2 * d * d, D.q);
    for (std::size_t c = 0; c < D.q; ++c)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                sys(i * d + j, c) = J[c](i, j);
                sys(d * d + i * d + j, c) = Rat(D.signs_Z[c]) * J[c](i, j);
            }
    auto ker = kernel_basis(sys);
    std::vector<Vec<Rat>> out;
    for (auto& coords : ker) {
        Vec<Rat> z(A.dim(), Rat(0));
        for (std::size_t c = 0; c < D.q; ++c)
            z = vadd(z, vscale(coords[c], D.adapted_basis_vector(D.z_index(c))));
        out.push_back(z);
    }
    return out;
}

} // namespace nilgeo
