#pragma once

// Test-side helpers. Nothing here calls into the library's linear algebra, so
// the naive matrices below serve as an independent oracle.

#include "nbv/scalar.hpp"

#include <gmpxx.h>

#include <random>
#include <vector>

namespace oracle {

using Mat = std::vector<std::vector<mpq_class>>;

inline Mat zeros(std::size_t r, std::size_t c) { return Mat(r, std::vector<mpq_class>(c, 0)); }

inline Mat mul(const Mat& a, const Mat& b)
{
    Mat r = zeros(a.size(), b.front().size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.front().size(); ++j)
            for (std::size_t k = 0; k < b.size(); ++k)
                r[i][j] += a[i][k] * b[k][j];
    return r;
}

inline Mat kron(const Mat& a, const Mat& b)
{
    const std::size_t ar = a.size(), ac = a.front().size(), br = b.size(), bc = b.front().size();
    Mat r = zeros(ar * br, ac * bc);
    for (std::size_t i = 0; i < ar; ++i)
        for (std::size_t j = 0; j < ac; ++j)
            for (std::size_t k = 0; k < br; ++k)
                for (std::size_t l = 0; l < bc; ++l)
                    r[i * br + k][j * bc + l] = a[i][j] * b[k][l];
    return r;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}
    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g_); }
    nbv::Scalar rational(long h = 13)
    {
        long num = integer(-h, h);
        long den = integer(1, h);
        return nbv::make_scalar(num, den);
    }
    nbv::Scalar nonzero(long h = 13)
    {
        for (;;) {
            auto s = rational(h);
            if (!s.is_zero())
                return s;
        }
    }

private:
    std::mt19937_64 g_;
};

} // namespace oracle

#include "nbv/errors.hpp"
#include "nbv/module.hpp"
#include "nbv/rep.hpp"
#include "nbv/trace.hpp"

namespace oracle {

inline nbv::ModuleSpec module_spec(int n, nbv::Realization::Kind k, int power = 1)
{
    nbv::ModuleSpec s;
    s.n = n;
    s.realization.kind = k;
    s.realization.k = power;
    return s;
}

inline nbv::RepPtr eval(int n, nbv::Realization::Kind k, int power, const nbv::Scalar& x,
                          const nbv::Flavor& f = nbv::Flavor::rational())
{
    return nbv::make_eval(nbv::build_module(module_spec(n, k, power), f), x);
}

inline nbv::RepPtr vec(int n, const nbv::Scalar& x, const nbv::Flavor& f = nbv::Flavor::rational())
{
    return eval(n, nbv::Realization::Kind::vector, 1, x, f);
}

// Random t passing every preflight denominator for `rep`.
inline nbv::VarCollection sample_t(Rng& rng, const nbv::Flavor& f, const nbv::Rep* rep, const nbv::Composition& xi)
{
    for (;;) {
        nbv::VarCollection t;
        for (int a = 1; a <= xi.levels(); ++a) {
            t.emplace_back();
            for (int i = 0; i < xi[a]; ++i)
                t.back().push_back(rng.rational());
        }
        try {
            nbv::preflight(f, rep, xi, t);
            return t;
        }
        catch (const nbv::PoleError&) {
        }
    }
}

} // namespace oracle
