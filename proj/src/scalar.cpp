#include "nbv/scalar.hpp"

#include "nbv/errors.hpp"

#include <ostream>
#include <regex>

namespace nbv {

Scalar& Scalar::operator/=(const Scalar& o)
{
    if (o.is_zero())
        throw ArithmeticError("division by zero: " + str() + " / " + o.str());
    v_ /= o.v_;
    return *this;
}

Scalar Scalar::inverse() const { return Scalar(1) / *this; }

Scalar Scalar::pow(long e) const
{
    if (e < 0)
        return inverse().pow(-e);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(den.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Scalar(mpq_class(num, den));
}

std::string Scalar::str() const
{
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

mpz_class Scalar::height() const
{
    mpz_class n = abs(v_.get_num());
    return n > v_.get_den() ? n : mpz_class(v_.get_den());
}

Scalar Scalar::parse(std::string_view text)
{
    static const std::regex re(R"(\s*([+-]?[0-9]+)(?:\s*/\s*([0-9]+))?\s*)");
    std::string s(text);
    std::smatch m;
    if (!std::regex_match(s, m, re))
        throw std::invalid_argument("malformed scalar \"" + s + "\"");
    std::string ns = m[1].str();
    if (ns.front() == '+')
        ns.erase(0, 1);
    mpz_class num(ns);
    mpz_class den(m[2].matched ? m[2].str() : std::string("1"));
    if (den == 0)
        throw std::invalid_argument("zero denominator in \"" + s + "\"");
    return Scalar(mpq_class(num, den));
}

Scalar make_scalar(long numerator, long denominator)
{
    if (denominator == 0)
        throw ArithmeticError("zero denominator in make_scalar");
    return Scalar(mpq_class(mpz_class(numerator), mpz_class(denominator)));
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

} // namespace nbv
