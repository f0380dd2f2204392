#include "nbv/rmatrix.hpp"

#include "nbv/errors.hpp"

namespace nbv {

std::string to_string(Case c) { return c == Case::rational ? "rational" : "trigonometric"; }

Case case_from_string(const std::string& s)
{
    if (s == "rational")
        return Case::rational;
    if (s == "trigonometric" || s == "trig")
        return Case::trigonometric;
    throw std::invalid_argument("unknown case \"" + s + "\"");
}

void check_q(const Scalar& q)
{
    if (q.is_zero() || q == Scalar(1) || q == Scalar(-1))
        throw PreconditionError("q must not be 0, 1 or -1 (got " + q.str() + ")");
}

Flavor Flavor::trigonometric(const Scalar& q)
{
    check_q(q);
    return Flavor{Case::trigonometric, q};
}

Operator r_matrix(const Flavor& f, std::size_t n, const Scalar& u)
{
    auto legs = aux_legs(n, 2);
    Operator r(legs, legs);
    auto idx = [n](std::size_t a, std::size_t b) { return a * n + b; };
    if (!f.trig()) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                r.at(idx(a, b), idx(a, b)) += u;
                // E_ab (x) E_ba sends v_b (x) v_a to v_a (x) v_b
                r.at(idx(a, b), idx(b, a)) += Scalar(1);
            }
        return r;
    }
    check_q(f.q);
    const Scalar& q = f.q;
    const Scalar qi = q.inverse();
    const Scalar dq = q - qi;
    for (std::size_t a = 0; a < n; ++a) {
        r.at(idx(a, a), idx(a, a)) = u * q - qi;
        for (std::size_t b = a + 1; b < n; ++b) {
            r.at(idx(a, b), idx(a, b)) = u - Scalar(1);
            r.at(idx(b, a), idx(b, a)) = u - Scalar(1);
            // u E_ab (x) E_ba : v_b (x) v_a -> v_a (x) v_b
            r.at(idx(a, b), idx(b, a)) = dq * u;
            // E_ba (x) E_ab : v_a (x) v_b -> v_b (x) v_a
            r.at(idx(b, a), idx(a, b)) = dq;
        }
    }
    return r;
}

Operator r_check(const Flavor& f, std::size_t n, const Scalar& u, bool normalized)
{
    Operator r = flip(n) * r_matrix(f, n, u);
    if (!normalized)
        return r;
    Scalar d = f.trig() ? u * f.q - f.q.inverse() : u + Scalar(1);
    if (d.is_zero())
        throw PoleError(f.trig() ? "normalization factor u q - 1/q vanishes" : "normalization factor u + 1 vanishes");
    return r * d.inverse();
}

} // namespace nbv
