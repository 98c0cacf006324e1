#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"

namespace nilgeo {

enum class CausalClass { Timelike, Null, Spacelike };

inline const char* to_string(CausalClass c) {
    switch (c) {
        case CausalClass::Timelike: return "timelike";
        case CausalClass::Null: return "null";
        default: return "spacelike";
    }
}

/// A 2-step nilpotent Lie algebra with a nondegenerate symmetric bilinear form,
/// given by structure constants and the Gram matrix on a fixed basis.
/// Immutable after construction; all queries are exact.
class NilAlgebra {
public:
    NilAlgebra(std::string name, std::vector<std::string> labels,
               std::vector<std::vector<Vec<Rat>>> brackets, Mat<Rat> gram)
        : name_(std::move(name)), labels_(std::move(labels)),
          c_(std::move(brackets)), G_(std::move(gram)) {
        validate();
        Ginv_ = *inverse(G_);   // validate() guarantees invertibility
    }

    const std::string& name() const { return name_; }
    std::size_t dim() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const Mat<Rat>& gram() const { return G_; }
    const Mat<Rat>& gram_inv() const { return Ginv_; }

    std::size_t index(const std::string& label) const {
        auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end()) throw ParseError("unknown basis label: " + label);
        return std::size_t(it - labels_.begin());
    }

    const Vec<Rat>& basis_bracket(std::size_t i, std::size_t j) const { return c_[i][j]; }

    Vec<Rat> bracket(const Vec<Rat>& x, const Vec<Rat>& y) const {
        check_dim(x); check_dim(y);
        Vec<Rat> out(dim(), Rat(0));
        for (std::size_t i = 0; i < dim(); ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < dim(); ++j) {
                if (y[j].is_zero()) continue;
                Rat f = x[i] * y[j];
                for (std::size_t k = 0; k < dim(); ++k) out[k] += f * c_[i][j][k];
            }
        }
        return out;
    }

    Rat ip(const Vec<Rat>& x, const Vec<Rat>& y) const { return form(x, G_, y); }

    /// Matrix of ad_x : y -> [x, y].
    Mat<Rat> ad(const Vec<Rat>& x) const {
        check_dim(x);
        Mat<Rat> m(dim(), dim());
        for (std::size_t j = 0; j < dim(); ++j) {
            for (std::size_t i = 0; i < dim(); ++i) {
                if (x[i].is_zero()) continue;
                for (std::size_t k = 0; k < dim(); ++k) m(k, j) += x[i] * c_[i][j][k];
            }
        }
        return m;
    }

    /// Matrix of the metric adjoint ad^T_x, defined by <ad^T_x a, y> = <a, [x, y]>.
    Mat<Rat> ad_dagger(const Vec<Rat>& x) const {
        return Ginv_ * ad(x).transpose() * G_;
    }

    /// Basis of the center as rows of a reduced echelon matrix.
    const std::vector<Vec<Rat>>& center() const {
        if (!center_.has_value()) {
            Mat<Rat> M(dim() * dim(), dim());
            for (std::size_t j = 0; j < dim(); ++j)
                for (std::size_t k = 0; k < dim(); ++k)
                    for (std::size_t i = 0; i < dim(); ++i)
                        M(j * dim() + k, i) = c_[i][j][k];
            auto ker = kernel_basis(M);
            Mat<Rat> rows(ker.size(), dim());
            for (std::size_t r = 0; r < ker.size(); ++r)
                for (std::size_t c = 0; c < dim(); ++c) rows(r, c) = ker[r][c];
            rref(rows);
            std::vector<Vec<Rat>> out;
            for (std::size_t r = 0; r < ker.size(); ++r) out.push_back(rows.row(r));
            center_ = std::move(out);
        }
        return *center_;
    }

    bool is_central(const Vec<Rat>& x) const {
        check_dim(x);
        return central_test(x);
    }

    CausalClass causal_character(const Vec<Rat>& v) const {
        int s = ip(v, v).sign();
        if (s > 0) return CausalClass::Timelike;
        if (s < 0) return CausalClass::Spacelike;
        return CausalClass::Null;
    }

    /// Group product in exponential coordinates: exp(x) exp(y) = exp(bch(x, y)).
    Vec<Rat> bch(const Vec<Rat>& x, const Vec<Rat>& y) const {
        Vec<Rat> out = vadd(x, y);
        Vec<Rat> br = bracket(x, y);
        for (std::size_t k = 0; k < dim(); ++k) out[k] += Rat(1, 2) * br[k];
        return out;
    }

    /// Differential of exp at x, applied to a (left-invariant frame output):
    /// exp_{x*}(a) = L_{exp(x)*}(a + (1/2)[a, x]).
    Vec<Rat> exp_push(const Vec<Rat>& x, const Vec<Rat>& a) const {
        Vec<Rat> out = a;
        Vec<Rat> br = bracket(a, x);
        for (std::size_t k = 0; k < dim(); ++k) out[k] += Rat(1, 2) * br[k];
        return out;
    }

    /// Signature (n_plus, n_minus) of the Gram form.
    std::pair<int, int> signature() const {
        // symmetric Gauss diagonalization over Q
        std::size_t n = dim();
        std::vector<Vec<Rat>> work;
        for (std::size_t i = 0; i < n; ++i) {
            Vec<Rat> e(n, Rat(0)); e[i] = Rat(1);
            work.push_back(e);
        }
        int plus = 0, minus = 0;
        auto ipb = [&](const Vec<Rat>& a, const Vec<Rat>& b) { return form(a, G_, b); };
        for (std::size_t pos = 0; pos < n; ++pos) {
            std::size_t pick = pos;
            bool found = false;
            for (std::size_t i = pos; i < n; ++i)
                if (!ipb(work[i], work[i]).is_zero()) { pick = i; found = true; break; }
            if (!found) {
                for (std::size_t i = pos; i < n && !found; ++i)
                    for (std::size_t j = i + 1; j < n && !found; ++j)
                        if (!ipb(work[i], work[j]).is_zero()) {
                            work[i] = vadd(work[i], work[j]);
                            pick = i; found = true;
                        }
            }
            if (!found) break;  // cannot happen for nondegenerate G
            std::swap(work[pos], work[pick]);
            Rat d = ipb(work[pos], work[pos]);
            (d.sign() > 0 ? plus : minus)++;
            for (std::size_t i = pos + 1; i < n; ++i) {
                Rat f = ipb(work[i], work[pos]) / d;
                work[i] = vsub(work[i], vscale(f, work[pos]));
            }
        }
        return {plus, minus};
    }

private:
    void check_dim(const Vec<Rat>& x) const {
        if (x.size() != dim()) throw DimensionMismatch("vector length does not match algebra dimension");
    }

    bool central_test(const Vec<Rat>& x) const {
        for (std::size_t j = 0; j < dim(); ++j) {
            Vec<Rat> ej(dim(), Rat(0)); ej[j] = Rat(1);
            if (!vis_zero(bracket(x, ej), 0.0)) return false;
        }
        return true;
    }

    void validate() {
        std::size_t n = labels_.size();
        if (n == 0) throw ParseError("empty basis");
        {
            auto sorted = labels_;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw ParseError("duplicate basis label");
        }
        if (c_.size() != n || G_.rows() != n || G_.cols() != n)
            throw DimensionMismatch("structure tensor / Gram shape mismatch");
        for (std::size_t i = 0; i < n; ++i) {
            if (c_[i].size() != n) throw DimensionMismatch("structure tensor shape mismatch");
            for (std::size_t j = 0; j < n; ++j)
                if (c_[i][j].size() != n) throw DimensionMismatch("structure tensor shape mismatch");
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    if (c_[i][j][k] != -c_[j][i][k])
                        throw NotAntisymmetric("bracket is not antisymmetric at (" +
                                               labels_[i] + ", " + labels_[j] + ")");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (G_(i, j) != G_(j, i))
                    throw ParseError("metric is not symmetric");
        if (determinant(G_).is_zero())
            throw DegenerateMetric("metric has zero determinant");
        // 2-step: [[b_i, b_j], b_l] = 0
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t l = 0; l < n; ++l) {
                    Vec<Rat> el(n, Rat(0)); el[l] = Rat(1);
                    if (!vis_zero(bracket(c_[i][j], el), 0.0))
                        throw NotTwoStep("bracket image is not central: [[" + labels_[i] +
                                         ", " + labels_[j] + "], " + labels_[l] + "] != 0");
                }
        // Jacobi holds automatically for 2-step; keep the assertion anyway.
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    Vec<Rat> ei(n, Rat(0)); ei[i] = Rat(1);
                    Vec<Rat> ej(n, Rat(0)); ej[j] = Rat(1);
                    Vec<Rat> ek(n, Rat(0)); ek[k] = Rat(1);
                    Vec<Rat> s = vadd(vadd(bracket(bracket(ei, ej), ek),
                                           bracket(bracket(ej, ek), ei)),
                                      bracket(bracket(ek, ei), ej));
                    if (!vis_zero(s, 0.0)) throw NotTwoStep("Jacobi identity failed");
                }
    }

    std::string name_;
    std::vector<std::string> labels_;
    std::vector<std::vector<Vec<Rat>>> c_;
    Mat<Rat> G_, Ginv_;
    mutable std::optional<std::vector<Vec<Rat>>> center_;
};

/// Convenience builder used by fixtures and document loading.
class AlgebraBuilder {
public:
    AlgebraBuilder(std::string name, std::vector<std::string> labels)
        : name_(std::move(name)), labels_(std::move(labels)) {
        std::size_t n = labels_.size();
        c_.assign(n, std::vector<Vec<Rat>>(n, Vec<Rat>(n, Rat(0))));
        G_ = Mat<Rat>(n, n);
    }

    std::size_t index(const std::string& label) const {
        auto it = std::find(labels_.begin(), labels_.end(), label);
        if (it == labels_.end()) throw ParseError("unknown basis label: " + label);
        return std::size_t(it - labels_.begin());
    }

    /// [x, y] = sum_k out_k b_k; the mirrored entry is filled automatically.
    AlgebraBuilder& set_bracket(const std::string& x, const std::string& y,
                                const std::map<std::string, Rat>& out) {
        std::size_t i = index(x), j = index(y);
        if (i == j) {
            for (auto& [lbl, v] : out)
                if (!v.is_zero())
                    throw NotAntisymmetric("nonzero bracket [" + x + ", " + x + "]");
            return *this;
        }
        for (auto& [lbl, v] : out) {
            std::size_t k = index(lbl);
            c_[i][j][k] = v;
            c_[j][i][k] = -v;
        }
        return *this;
    }

    AlgebraBuilder& set_ip(const std::string& a, const std::string& b, Rat v) {
        std::size_t i = index(a), j = index(b);
        G_(i, j) = v;
        G_(j, i) = v;
        return *this;
    }

    NilAlgebra build() const { return NilAlgebra(name_, labels_, c_, G_); }

private:
    std::string name_;
    std::vector<std::string> labels_;
    std::vector<std::vector<Vec<Rat>>> c_;
    Mat<Rat> G_;
};

} // namespace nilgeo
