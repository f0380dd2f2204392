#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace nbv {

// Exact rational in canonical form; a thin value wrapper over mpq_class.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v) : v_(v) {}
    Scalar(int v) : v_(static_cast<long>(v)) {}
    explicit Scalar(const mpq_class& v) : v_(v) { v_.canonicalize(); }

    static Scalar parse(std::string_view text);

    const mpq_class& raw() const { return v_; }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    Scalar operator-() const { return Scalar(mpq_class(-v_)); }
    Scalar& operator+=(const Scalar& o) { v_ += o.v_; return *this; }
    Scalar& operator-=(const Scalar& o) { v_ -= o.v_; return *this; }
    Scalar& operator*=(const Scalar& o) { v_ *= o.v_; return *this; }
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    Scalar inverse() const;
    Scalar pow(long e) const;

    // Canonical "±p/q" text, always with an explicit denominator.
    std::string str() const;
    // Height = max(|p|, q), used to bound random sampling.
    mpz_class height() const;

private:
    mpq_class v_;
};

Scalar make_scalar(long numerator, long denominator);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

} // namespace nbv
