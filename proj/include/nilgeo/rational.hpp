#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace nilgeo {

/// Exact rational scalar. Always stored reduced, denominator > 0.
/// Serialized as "p/q", or "p" when q == 1.
class Rat {
public:
    using backend = boost::multiprecision::cpp_rational;

    Rat() : v_(0) {}
    Rat(long long n) : v_(n) {}
    Rat(long long n, long long d) {
        if (d == 0) throw std::invalid_argument("rational with zero denominator");
        v_ = backend(n, d);
    }
    explicit Rat(backend b) : v_(std::move(b)) {}

    static Rat parse(const std::string& s) {
        if (s.empty()) throw std::invalid_argument("empty rational literal");
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) {
                boost::multiprecision::cpp_int n(s);
                return Rat(backend(n));
            }
            boost::multiprecision::cpp_int n(s.substr(0, slash));
            boost::multiprecision::cpp_int d(s.substr(slash + 1));
            if (d == 0) throw std::invalid_argument("zero denominator");
            return Rat(backend(n, d));
        } catch (const std::runtime_error&) {
            throw std::invalid_argument("bad rational literal: " + s);
        }
    }

    std::string str() const {
        const auto& n = numerator(v_);
        const auto& d = denominator(v_);
        if (d == 1) return n.str();
        return n.str() + "/" + d.str();
    }

    double to_double() const { return v_.convert_to<double>(); }

    bool is_zero() const { return v_.is_zero(); }
    int sign() const { return v_.sign(); }

    /// true when |x| is the square of a rational; if so *root = sqrt(|x|).
    bool abs_is_square(Rat* root = nullptr) const {
        using boost::multiprecision::cpp_int;
        cpp_int n = numerator(v_), d = denominator(v_);
        if (n < 0) n = -n;
        cpp_int rn = sqrt(n), rd = sqrt(d);
        if (rn * rn != n || rd * rd != d) return false;
        if (root) *root = Rat(backend(rn, rd));
        return true;
    }

    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(a.v_ + b.v_); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(a.v_ - b.v_); }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(a.v_ * b.v_); }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw std::domain_error("rational division by zero");
        return Rat(a.v_ / b.v_);
    }
    Rat operator-() const { return Rat(-v_); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    Rat abs() const { return v_ < 0 ? Rat(-v_) : *this; }

private:
    backend v_;
};

inline Rat abs(const Rat& r) { return r.abs(); }

} // namespace nilgeo
