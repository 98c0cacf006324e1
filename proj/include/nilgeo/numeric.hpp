#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"

namespace nilgeo {

/// Gauss-Legendre nodes and weights on [-1, 1]; Newton iteration on P_n.
inline const std::pair<std::vector<double>, std::vector<double>>&
gauss_legendre(std::size_t npts) {
    static std::map<std::size_t, std::pair<std::vector<double>, std::vector<double>>> cache;
    auto it = cache.find(npts);
    if (it != cache.end()) return it->second;
    std::vector<double> x(npts), w(npts);
    for (std::size_t i = 0; i < npts; ++i) {
        double t = std::cos(M_PI * (double(i) + 0.75) / (double(npts) + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            // evaluate P_n and P_n' by recurrence
            double p0 = 1.0, p1 = t;
            for (std::size_t k = 2; k <= npts; ++k) {
                double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / double(k);
                p0 = p1;
                p1 = p2;
            }
            double dp = npts * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::fabs(dt) < 1e-15) break;
        }
        double p0 = 1.0, p1 = t;
        for (std::size_t k = 2; k <= npts; ++k) {
            double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / double(k);
            p0 = p1;
            p1 = p2;
        }
        double dp = npts * (t * p1 - p0) / (t * t - 1.0);
        x[npts - 1 - i] = t;
        w[npts - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    return cache.emplace(npts, std::make_pair(std::move(x), std::move(w))).first->second;
}

/// Composite Gauss-Legendre integral of a vector-valued function over [0, t]
/// (t may be negative); one panel per unit of |t|.
inline Vec<double> integrate_gl(const std::function<Vec<double>(double)>& f, double t,
                                std::size_t dim, std::size_t nodes_per_unit) {
    Vec<double> acc(dim, 0.0);
    if (t == 0.0 || nodes_per_unit == 0) return acc;
    std::size_t panels = std::size_t(std::ceil(std::fabs(t)));
    if (panels == 0) panels = 1;
    const auto& [xs, ws] = gauss_legendre(nodes_per_unit);
    double h = t / double(panels);
    for (std::size_t pnl = 0; pnl < panels; ++pnl) {
        double a = h * double(pnl), mid = a + h / 2.0, half = h / 2.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            Vec<double> v = f(mid + half * xs[i]);
            for (std::size_t k = 0; k < dim; ++k) acc[k] += half * ws[i] * v[k];
        }
    }
    return acc;
}

/// Matrix exponential by scaling and squaring with a Taylor series core.
/// Throws OverflowDetected when entries leave the double range.
inline Mat<double> expm(const Mat<double>& M) {
    std::size_t n = M.rows();
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += std::fabs(M(i, j));
        norm = std::max(norm, row);
    }
    if (!std::isfinite(norm))
        throw OverflowDetected("matrix exponential of a non-finite matrix");
    int squarings = 0;
    double scaled = norm;
    while (scaled > 0.5) {
        scaled /= 2.0;
        ++squarings;
    }
    Mat<double> T = std::pow(0.5, squarings) * M;
    Mat<double> term = Mat<double>::identity(n), sum = Mat<double>::identity(n);
    for (int k = 1; k <= 24; ++k) {
        term = (1.0 / double(k)) * (term * T);
        sum = sum + term;
        double tn = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) tn = std::max(tn, std::fabs(term(i, j)));
        if (tn < 1e-18) break;
    }
    for (int k = 0; k < squarings; ++k) sum = sum * sum;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!std::isfinite(sum(i, j)))
                throw OverflowDetected("matrix exponential overflowed double range");
    return sum;
}

/// Classic fixed-step RK4 for y' = f(y); returns states after each step.
inline std::vector<Vec<double>> rk4(const std::function<Vec<double>(const Vec<double>&)>& f,
                                    Vec<double> y0, double t_end, std::size_t steps) {
    std::vector<Vec<double>> out;
    out.reserve(steps + 1);
    out.push_back(y0);
    double h = t_end / double(steps);
    Vec<double> y = std::move(y0);
    std::size_t n = y.size();
    for (std::size_t st = 0; st < steps; ++st) {
        Vec<double> k1 = f(y);
        Vec<double> tmp(n);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        Vec<double> k2 = f(tmp);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        Vec<double> k3 = f(tmp);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
        Vec<double> k4 = f(tmp);
        for (std::size_t i = 0; i < n; ++i)
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        out.push_back(y);
    }
    return out;
}

/// Cyclic Jacobi eigensolver for symmetric matrices.
/// Returns eigenvalues; V's columns hold the eigenvectors when requested.
inline std::vector<double> jacobi_eigenvalues(Mat<double> A, Mat<double>* V = nullptr) {
    std::size_t n = A.rows();
    Mat<double> Vm = Mat<double>::identity(n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += A(i, j) * A(i, j);
        if (off < 1e-30) break;
        for (std::size_t pq = 0; pq < n; ++pq)
            for (std::size_t qq = pq + 1; qq < n; ++qq) {
                if (std::fabs(A(pq, qq)) < 1e-300) continue;
                double theta = (A(qq, qq) - A(pq, pq)) / (2.0 * A(pq, qq));
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = A(k, pq), akq = A(k, qq);
                    A(k, pq) = c * akp - s * akq;
                    A(k, qq) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = A(pq, k), aqk = A(qq, k);
                    A(pq, k) = c * apk - s * aqk;
                    A(qq, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double vkp = Vm(k, pq), vkq = Vm(k, qq);
                    Vm(k, pq) = c * vkp - s * vkq;
                    Vm(k, qq) = s * vkp + c * vkq;
                }
            }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = A(i, i);
    if (V) *V = Vm;
    return ev;
}

/// Durand-Kerner simultaneous root iteration for a monic polynomial
/// p(x) = x^n + a_{n-1} x^{n-1} + ... + a_0  (coeffs ascending, without the
/// leading 1). Adequate for the small characteristic polynomials used here.
inline std::vector<std::complex<double>> durand_kerner(const std::vector<double>& coeffs) {
    std::size_t n = coeffs.size();
    if (n == 0) return {};
    auto eval = [&](std::complex<double> x) {
        std::complex<double> acc(1.0, 0.0);
        for (std::size_t k = n; k-- > 0;) acc = acc * x + coeffs[k];
        return acc;
    };
    std::vector<std::complex<double>> r(n);
    std::complex<double> seed(0.4, 0.9);
    r[0] = seed;
    for (std::size_t i = 1; i < n; ++i) r[i] = r[i - 1] * seed;
    for (int iter = 0; iter < 500; ++iter) {
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            std::complex<double> denom(1.0, 0.0);
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) denom *= (r[i] - r[j]);
            std::complex<double> delta = eval(r[i]) / denom;
            r[i] -= delta;
            worst = std::max(worst, std::abs(delta));
        }
        if (worst < 1e-14) break;
    }
    return r;
}

/// Horner evaluation of a polynomial given ascending coefficients, leading
/// coefficient included.
inline std::complex<double> poly_eval(const std::vector<double>& coeffs,
                                      std::complex<double> x) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
    return acc;
}

/// Coefficients of the derivative, same ascending layout.
inline std::vector<double> poly_derivative(const std::vector<double>& coeffs) {
    std::vector<double> d;
    for (std::size_t k = 1; k < coeffs.size(); ++k) d.push_back(double(k) * coeffs[k]);
    return d;
}

/// Characteristic polynomial coefficients (ascending, monic assumed) via
/// Faddeev-LeVerrier.
inline std::vector<double> char_poly(const Mat<double>& A) {
    std::size_t n = A.rows();
    std::vector<double> c(n + 1, 0.0);
    c[n] = 1.0;
    Mat<double> M(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        if (k == 1) M = A;
        else {
            Mat<double> shifted = M;
            for (std::size_t i = 0; i < n; ++i) shifted(i, i) += c[n - k + 1];
            M = A * shifted;
        }
        double tr = 0.0;
        for (std::size_t i = 0; i < n; ++i) tr += M(i, i);
        c[n - k] = -tr / double(k);
    }
    return std::vector<double>(c.begin(), c.end() - 1);   // drop the leading 1
}

} // namespace nilgeo
