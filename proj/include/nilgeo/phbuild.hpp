#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "linalg.hpp"

namespace nilgeo {

/// Seed data for constructing a pH-type algebra n = U + Z + V + E:
/// dimensions (dim V = dim U), metric signs on Z and E, and one j-matrix on
/// V + E per basis vector of the center U + Z (u_1..u_p first, then z_1..z_q).
struct PhSeed {
    std::size_t dim_U = 0;
    std::size_t dim_Z = 0;
    std::size_t dim_E = 0;
    std::vector<int> signs_Z;
    std::vector<int> signs_E;
    std::vector<Mat<Rat>> j;
    std::string name = "ph";
};

namespace detail {

/// Deterministic pseudo-random rationals for seed verification (fixed state).
class RatSampler {
public:
    explicit RatSampler(std::uint64_t seed) : s_(seed) {}
    Rat next() {
        long long num = (long long)(step() % 7) - 3;   // -3..3
        long long den = (long long)(step() % 3) + 1;   // 1..3
        return Rat(num, den);
    }
    Vec<Rat> next_vec(std::size_t n) {
        Vec<Rat> v(n, Rat(0));
        for (std::size_t i = 0; i < n; ++i) v[i] = next();
        return v;
    }

private:
    std::uint64_t step() {
        s_ = s_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return s_ >> 33;
    }
    std::uint64_t s_;
};

inline std::string vec_str(const Vec<Rat>& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += v[i].str();
    }
    return out + ")";
}

} // namespace detail

inline std::vector<std::string> ph_central_labels(const PhSeed& seed) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < seed.dim_U; ++i) out.push_back("u" + std::to_string(i + 1));
    for (std::size_t a = 0; a < seed.dim_Z; ++a) out.push_back("z" + std::to_string(a + 1));
    return out;
}

inline std::vector<std::string> ph_labels(const PhSeed& seed) {
    std::vector<std::string> out = ph_central_labels(seed);
    for (std::size_t i = 0; i < seed.dim_U; ++i) out.push_back("v" + std::to_string(i + 1));
    for (std::size_t a = 0; a < seed.dim_E; ++a) out.push_back("e" + std::to_string(a + 1));
    return out;
}

/// Verify the seed identities exactly; throws SeedInvalid with the violated
/// identity and witness vectors.  In seed coordinates the companion pairing
/// <x, iota y> is the plain dot product on both U+Z and V+E, so:
///   (id-2) on the central basis reads j_c^2 = -I and j_c j_d + j_d j_c = 0,
///   iota-skewsymmetry of each j(a) reads j_c^T = -j_c (a consequence of the
///   identities, verified rather than assumed), and
///   (id-1) reads |j(a)x|^2 = |a|^2 |x|^2, checked on basis pairs and on a
///   fixed deterministic sample of rational vectors.
inline void validate_ph_seed(const PhSeed& seed, std::size_t random_checks = 50) {
    const std::size_t p = seed.dim_U, q = seed.dim_Z, s = seed.dim_E;
    const std::size_t d = p + s;     // dim(V + E)
    const std::size_t c = p + q;     // dim(U + Z)

    if (seed.signs_Z.size() != q)
        throw SeedInvalid("seed: signsZ must list one sign per z basis vector");
    if (seed.signs_E.size() != s)
        throw SeedInvalid("seed: signsE must list one sign per e basis vector");
    for (int sg : seed.signs_Z)
        if (sg != 1 && sg != -1) throw SeedInvalid("seed: signsZ entries must be +1 or -1");
    for (int sg : seed.signs_E)
        if (sg != 1 && sg != -1) throw SeedInvalid("seed: signsE entries must be +1 or -1");
    if (seed.j.size() != c)
        throw SeedInvalid("seed: expected one j matrix per central basis vector (" +
                          std::to_string(c) + "), got " + std::to_string(seed.j.size()));
    if (c == 0) throw SeedInvalid("seed: the center U + Z must be nontrivial");
    if (d == 0) throw SeedInvalid("seed: V + E must be nontrivial");

    auto labels = ph_central_labels(seed);
    for (std::size_t k = 0; k < c; ++k)
        if (seed.j[k].rows() != d || seed.j[k].cols() != d)
            throw SeedInvalid("seed: j(" + labels[k] + ") must be " + std::to_string(d) +
                              "x" + std::to_string(d));

    Mat<Rat> id(d, d);
    for (std::size_t i = 0; i < d; ++i) id(i, i) = Rat(1);

    // (id-2) on the central basis, with the polarized cross terms.
    for (std::size_t k = 0; k < c; ++k) {
        if (!(seed.j[k] * seed.j[k] == Rat(-1) * id))
            throw SeedInvalid("seed violates (id-2): j(" + labels[k] +
                              ")^2 != -<" + labels[k] + ", iota " + labels[k] + "> I");
        for (std::size_t l = k + 1; l < c; ++l) {
            Mat<Rat> anti = seed.j[k] * seed.j[l] + seed.j[l] * seed.j[k];
            if (!(anti == Mat<Rat>(d, d)))
                throw SeedInvalid("seed violates polarized (id-2): j(" + labels[k] +
                                  ") j(" + labels[l] + ") + j(" + labels[l] + ") j(" +
                                  labels[k] + ") != 0");
        }
    }

    // iota-skewsymmetry of each j(a).
    for (std::size_t k = 0; k < c; ++k)
        if (!(seed.j[k].transpose() == Rat(-1) * seed.j[k]))
            throw SeedInvalid("seed j(" + labels[k] + ") is not iota-skewsymmetric");

    auto sq = [](const Vec<Rat>& v) {
        Rat acc(0);
        for (const auto& x : v) acc += x * x;
        return acc;
    };
    auto apply_j = [&](const Vec<Rat>& a, const Vec<Rat>& x) {
        Vec<Rat> out(d, Rat(0));
        for (std::size_t k = 0; k < c; ++k) {
            if (a[k].is_zero()) continue;
            Vec<Rat> t = seed.j[k] * x;
            for (std::size_t i = 0; i < d; ++i) out[i] += a[k] * t[i];
        }
        return out;
    };

    // (id-1) on basis pairs.
    for (std::size_t k = 0; k < c; ++k)
        for (std::size_t i = 0; i < d; ++i) {
            Vec<Rat> x(d, Rat(0));
            x[i] = Rat(1);
            if (sq(seed.j[k] * x) != Rat(1))
                throw SeedInvalid("seed violates (id-1) on the basis pair a = " + labels[k] +
                                  ", x = basis vector " + std::to_string(i + 1) + " of V + E");
        }

    // (id-1) on deterministic rational samples.
    detail::RatSampler rng(0x9e3779b97f4a7c15ULL);
    for (std::size_t t = 0; t < random_checks; ++t) {
        Vec<Rat> a = rng.next_vec(c);
        Vec<Rat> x = rng.next_vec(d);
        if (sq(apply_j(a, x)) != sq(a) * sq(x))
            throw SeedInvalid("seed violates (id-1) at a = " + detail::vec_str(a) +
                              ", x = " + detail::vec_str(x));
    }
}

/// Build the pH-type algebra determined by the seed.  Basis order is
/// u_1..u_p, z_1..z_q, v_1..v_p, e_1..e_s with metric <u_i, v_i> = 1,
/// <z_a, z_a> = signsZ[a], <e_a, e_a> = signsE[a].  The bracket on V + E is
/// obtained by solving <[x, y], iota a> = <j(a)x, iota y> against the
/// positive-definite companion form on U + Z, and vanishes when either
/// argument is central.
inline NilAlgebra build_ph_algebra(const PhSeed& seed) {
    validate_ph_seed(seed);

    const std::size_t p = seed.dim_U, q = seed.dim_Z, s = seed.dim_E;
    const std::size_t d = p + s;
    const std::size_t c = p + q;

    auto labels = ph_labels(seed);
    AlgebraBuilder b(seed.name, labels);
    for (std::size_t i = 0; i < p; ++i) b.set_ip(labels[i], labels[c + i], Rat(1));
    for (std::size_t a = 0; a < q; ++a)
        b.set_ip(labels[p + a], labels[p + a], Rat(seed.signs_Z[a]));
    for (std::size_t a = 0; a < s; ++a)
        b.set_ip(labels[c + p + a], labels[c + p + a], Rat(seed.signs_E[a]));

    // Companion Gram matrix of the central basis; identity in seed
    // coordinates, but the solve keeps the construction honest.
    Mat<Rat> comp(c, c);
    for (std::size_t k = 0; k < c; ++k) comp(k, k) = Rat(1);

    for (std::size_t i = 0; i < d; ++i) {
        Vec<Rat> x(d, Rat(0));
        x[i] = Rat(1);
        for (std::size_t jdx = i + 1; jdx < d; ++jdx) {
            Vec<Rat> y(d, Rat(0));
            y[jdx] = Rat(1);
            Vec<Rat> rhs(c, Rat(0));
            for (std::size_t k = 0; k < c; ++k) {
                Vec<Rat> jx = seed.j[k] * x;
                Rat acc(0);
                for (std::size_t t = 0; t < d; ++t) acc += jx[t] * y[t];
                rhs[k] = acc;
            }
            auto coef = solve(comp, rhs);
            if (!coef)
                throw SeedInvalid("seed: companion-form solve failed for a bracket");
            std::map<std::string, Rat> out;
            for (std::size_t k = 0; k < c; ++k)
                if (!(*coef)[k].is_zero()) out[labels[k]] = (*coef)[k];
            b.set_bracket(labels[c + i], labels[c + jdx], out);
        }
    }
    return b.build();
}

} // namespace nilgeo
