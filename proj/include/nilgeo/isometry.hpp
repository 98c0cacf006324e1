#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>

#include "algebra.hpp"
#include "errors.hpp"
#include "linalg.hpp"

namespace nilgeo {

/// A candidate isometric automorphism, as a matrix on the algebra's basis.
struct CandidateMap {
    Mat<Rat> matrix;
    std::string name;
};

/// Outcome of check_isometric_automorphism.  The map belongs to the isometry
/// group of the associated simply connected Lie group exactly when both the
/// metric and the bracket are preserved, i.e. verdict is true.
struct IsometryReport {
    bool is_metric_preserving = false;
    bool is_automorphism = false;
    bool verdict = false;
    /// Human-readable note on the first failure, empty when verdict is true.
    std::string detail;
};

/// Decide, exactly, whether f preserves the metric (f^T G f = G) and the
/// bracket (f[x, y] = [fx, fy] on all basis pairs).
inline IsometryReport check_isometric_automorphism(const NilAlgebra& A, const CandidateMap& f) {
    const std::size_t n = A.dim();
    const Mat<Rat>& F = f.matrix;
    if (F.rows() != n || F.cols() != n)
        throw DimensionMismatch("check_isometric_automorphism: map must be " +
                                std::to_string(n) + "x" + std::to_string(n));

    IsometryReport rep;
    rep.is_metric_preserving = (F.transpose() * A.gram() * F == A.gram());
    if (!rep.is_metric_preserving) rep.detail = "f^T G f differs from G";

    rep.is_automorphism = true;
    std::vector<Vec<Rat>> cols(n, Vec<Rat>(n, Rat(0)));
    for (std::size_t j = 0; j < n; ++j) cols[j] = F.col(j);
    for (std::size_t i = 0; i < n && rep.is_automorphism; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            Vec<Rat> lhs = F * A.basis_bracket(i, j);
            Vec<Rat> rhs = A.bracket(cols[i], cols[j]);
            if (!vis_zero(vsub(lhs, rhs))) {
                rep.is_automorphism = false;
                if (!rep.detail.empty()) rep.detail += "; ";
                rep.detail += "f[" + A.labels()[i] + ", " + A.labels()[j] +
                              "] != [f " + A.labels()[i] + ", f " + A.labels()[j] + "]";
                break;
            }
        }
    }
    rep.verdict = rep.is_metric_preserving && rep.is_automorphism;
    return rep;
}

/// k-th element of the canonical rational sample sequence
/// 0, 1, -1, 1/2, -1/2, 2, -2, 3, -3, 1/3, -1/3, 4, -4, ...
inline Rat grid_value(std::size_t k) {
    if (k == 0) return Rat(0);
    std::size_t i = (k - 1) / 2;
    Rat mag;
    if (i == 0) mag = Rat(1);
    else if (i == 1) mag = Rat(1, 2);
    else if (i == 2) mag = Rat(2);
    else {
        long long q = (long long)((i - 3) / 2) + 3;
        mag = ((i - 3) % 2 == 0) ? Rat(q) : Rat(1, q);
    }
    return (k % 2 == 1) ? mag : -mag;
}

/// A parameterized family of candidate maps.  at(k) must produce the k-th
/// deterministic sample of the family for any k below the advertised count.
struct CandidateFamily {
    std::string name;
    std::size_t count = 0;
    std::function<CandidateMap(std::size_t)> at;
};

/// True iff every sampled member of the family is an isometric automorphism.
/// samples = 0 means the family's own count.
inline bool check_family(const NilAlgebra& A, const CandidateFamily& family,
                         std::size_t samples = 0) {
    std::size_t total = samples == 0 ? family.count : samples;
    for (std::size_t k = 0; k < total; ++k) {
        CandidateMap f = family.at(family.count ? k % family.count : k);
        if (!check_isometric_automorphism(A, f).verdict) return false;
    }
    return true;
}

} // namespace nilgeo
