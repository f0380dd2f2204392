#include "nbv/echelon.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace nbv {

Vec Echelon::reduce(Vec v) const
{
    if (v.size() != width_)
        throw std::invalid_argument("echelon: vector width mismatch");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        Scalar c = v[piv_[i]];
        if (!c.is_zero())
            axpy(v, -c, rows_[i]);
    }
    return v;
}

bool Echelon::insert(Vec v)
{
    v = reduce(std::move(v));
    std::size_t p = 0;
    while (p < width_ && v[p].is_zero())
        ++p;
    if (p == width_)
        return false;
    Scalar inv = v[p].inverse();
    for (auto& x : v)
        x *= inv;
    for (auto& r : rows_) {
        Scalar c = r[p];
        if (!c.is_zero())
            axpy(r, -c, v);
    }
    rows_.push_back(std::move(v));
    piv_.push_back(p);
    return true;
}

Vec Echelon::coordinates(const Vec& v) const
{
    if (!contains(v))
        throw std::logic_error("echelon: vector is outside the span");
    Vec c(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i)
        c[i] = v[piv_[i]];
    return c;
}

void Echelon::sort_by_pivot()
{
    std::vector<std::size_t> order(rows_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return piv_[a] < piv_[b]; });
    std::vector<Vec> r;
    std::vector<std::size_t> p;
    for (auto i : order) {
        r.push_back(std::move(rows_[i]));
        p.push_back(piv_[i]);
    }
    rows_ = std::move(r);
    piv_ = std::move(p);
}

std::vector<Vec> nullspace(const std::vector<Vec>& columns)
{
    const std::size_t n = columns.size();
    if (n == 0)
        return {};
    const std::size_t m = columns.front().size();
    // Row-reduce the m x n matrix in place.
    std::vector<Vec> a(m, Vec(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i)
            a[i][j] = columns[j][i];
    std::vector<std::size_t> pivcol;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t s = r;
        while (s < m && a[s][c].is_zero())
            ++s;
        if (s == m)
            continue;
        std::swap(a[s], a[r]);
        Scalar inv = a[r][c].inverse();
        for (auto& x : a[r])
            x *= inv;
        for (std::size_t i = 0; i < m; ++i)
            if (i != r && !a[i][c].is_zero())
                axpy(a[i], -a[i][c], a[r]);
        pivcol.push_back(c);
        ++r;
    }
    std::vector<bool> is_piv(n, false);
    for (auto c : pivcol)
        is_piv[c] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_piv[f])
            continue;
        Vec v(n);
        v[f] = Scalar(1);
        for (std::size_t i = 0; i < pivcol.size(); ++i)
            v[pivcol[i]] = -a[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace nbv
