#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <utility>

#include "apartdomain/errors.hpp"

namespace apartdomain {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. The canonical serialization is "p/q" (including "0/1").
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return Rat(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw Error("rational division by zero");
        return Rat(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rat operator-() const { return Rat(-num_, den_); }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    /// Exactly one power of two; used by the geometric width schedules.
    static Rat pow2(long exponent) {
        BigInt p = 1;
        p <<= (exponent < 0 ? -exponent : exponent);
        return exponent < 0 ? Rat(1, p) : Rat(p, 1);
    }

    std::string str() const {
        return num_.str() + "/" + den_.str();
    }

    /// Parses "p/q" or a bare integer "p"; returns nullopt on malformed input.
    static std::optional<Rat> parse(const std::string& s) {
        auto slash = s.find('/');
        const std::string ns = slash == std::string::npos ? s : s.substr(0, slash);
        const std::string ds = slash == std::string::npos ? "1" : s.substr(slash + 1);
        if (!valid_int(ns) || !valid_int(ds)) return std::nullopt;
        BigInt n(ns), d(ds);
        if (d == 0) return std::nullopt;
        return Rat(std::move(n), std::move(d));
    }

private:
    static bool valid_int(const std::string& s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    }

    void normalize() {
        if (den_ == 0) throw Error("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    BigInt num_;
    BigInt den_;
};

inline Rat midpoint(const Rat& a, const Rat& b) { return (a + b) / Rat(2); }

} // namespace apartdomain
