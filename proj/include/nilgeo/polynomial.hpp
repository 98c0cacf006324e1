#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "rational.hpp"

namespace nilgeo {

/// Sparse multivariate polynomial over Q with a fixed variable count.
/// Monomials keyed by exponent vectors.
class MultiPoly {
public:
    explicit MultiPoly(std::size_t nvars = 0) : nvars_(nvars) {}

    static MultiPoly constant(std::size_t nvars, const Rat& c) {
        MultiPoly p(nvars);
        if (!c.is_zero()) p.terms_[std::vector<int>(nvars, 0)] = c;
        return p;
    }
    static MultiPoly variable(std::size_t nvars, std::size_t i, const Rat& coeff = Rat(1)) {
        MultiPoly p(nvars);
        if (!coeff.is_zero()) {
            std::vector<int> e(nvars, 0);
            e[i] = 1;
            p.terms_[e] = coeff;
        }
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<int>, Rat>& terms() const { return terms_; }

    MultiPoly& operator+=(const MultiPoly& o) {
        for (auto& [e, c] : o.terms_) {
            auto it = terms_.find(e);
            if (it == terms_.end()) terms_[e] = c;
            else {
                it->second += c;
                if (it->second.is_zero()) terms_.erase(it);
            }
        }
        return *this;
    }
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { a += b; return a; }

    MultiPoly operator-() const {
        MultiPoly p(nvars_);
        for (auto& [e, c] : terms_) p.terms_[e] = -c;
        return p;
    }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly p(a.nvars_);
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_) {
                std::vector<int> e(a.nvars_);
                for (std::size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
                Rat c = ca * cb;
                auto it = p.terms_.find(e);
                if (it == p.terms_.end()) p.terms_[e] = c;
                else {
                    it->second += c;
                    if (it->second.is_zero()) p.terms_.erase(it);
                }
            }
        return p;
    }

    /// Evaluate at a rational point.
    Rat eval(const std::vector<Rat>& x) const {
        Rat acc(0);
        for (auto& [e, c] : terms_) {
            Rat t = c;
            for (std::size_t i = 0; i < nvars_; ++i)
                for (int k = 0; k < e[i]; ++k) t *= x[i];
            acc += t;
        }
        return acc;
    }

    std::string str(const std::vector<std::string>& var_names) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [e, c] : terms_) {
            if (!first) os << (c.sign() >= 0 ? " + " : " - ");
            else if (c.sign() < 0) os << "-";
            first = false;
            Rat a = abs(c);
            bool has_var = false;
            for (auto k : e)
                if (k > 0) has_var = true;
            if (a != Rat(1) || !has_var) os << a.str();
            bool started = (a != Rat(1) || !has_var);
            for (std::size_t i = 0; i < nvars_; ++i) {
                if (e[i] == 0) continue;
                if (started) os << "*";
                started = true;
                os << var_names[i];
                if (e[i] > 1) os << "^" << e[i];
            }
        }
        return os.str();
    }

private:
    std::size_t nvars_;
    std::map<std::vector<int>, Rat> terms_;
};

} // namespace nilgeo
