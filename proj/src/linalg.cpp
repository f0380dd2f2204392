#include "nbv/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace nbv {

bool is_zero(const Vec& v)
{
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

Vec operator+(const Vec& a, const Vec& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("vector size mismatch");
    Vec r(a);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] += b[i];
    return r;
}

Vec operator-(const Vec& a, const Vec& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("vector size mismatch");
    Vec r(a);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] -= b[i];
    return r;
}

Vec operator*(const Scalar& c, const Vec& v)
{
    Vec r(v);
    for (auto& x : r)
        x *= c;
    return r;
}

Vec& axpy(Vec& y, const Scalar& c, const Vec& x)
{
    if (y.size() != x.size())
        throw std::invalid_argument("vector size mismatch");
    if (c.is_zero())
        return y;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (!x[i].is_zero())
            y[i] += c * x[i];
    return y;
}

std::size_t total_dim(const std::vector<Space>& legs)
{
    std::size_t d = 1;
    for (const auto& s : legs) {
        if (s.dim == 0)
            throw std::invalid_argument("space of dimension 0");
        d *= s.dim;
    }
    return d;
}

std::vector<Space> aux_legs(std::size_t n, std::size_t count, const std::string& label)
{
    return std::vector<Space>(count, Space{n, label + ":C^" + std::to_string(n)});
}

Operator::Operator(std::vector<Space> codomain, std::vector<Space> domain)
    : cod_(std::move(codomain)), dom_(std::move(domain)), rows_(total_dim(cod_)), cols_(total_dim(dom_)),
      data_(rows_ * cols_)
{
}

Operator Operator::identity(const std::vector<Space>& legs) { return scalar(legs, Scalar(1)); }

Operator Operator::scalar(const std::vector<Space>& legs, const Scalar& c)
{
    Operator r(legs, legs);
    for (std::size_t i = 0; i < r.rows_; ++i)
        r.at(i, i) = c;
    return r;
}

static bool dims_match(const std::vector<Space>& a, const std::vector<Space>& b)
{
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].dim != b[i].dim)
            return false;
    return true;
}

Operator Operator::operator*(const Operator& o) const
{
    if (!dims_match(dom_, o.cod_))
        throw std::invalid_argument("operator composition: inner spaces differ");
    Operator r(cod_, o.dom_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Scalar& a = at(i, k);
            if (a.is_zero())
                continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                const Scalar& b = o.at(k, j);
                if (!b.is_zero())
                    r.at(i, j) += a * b;
            }
        }
    return r;
}

bool Operator::same_shape(const Operator& o) const
{
    return dims_match(cod_, o.cod_) && dims_match(dom_, o.dom_);
}

Operator& Operator::operator+=(const Operator& o)
{
    if (!same_shape(o))
        throw std::invalid_argument("operator sum: shapes differ");
    for (std::size_t i = 0; i < data_.size(); ++i)
        if (!o.data_[i].is_zero())
            data_[i] += o.data_[i];
    return *this;
}

Operator& Operator::operator-=(const Operator& o)
{
    if (!same_shape(o))
        throw std::invalid_argument("operator difference: shapes differ");
    for (std::size_t i = 0; i < data_.size(); ++i)
        if (!o.data_[i].is_zero())
            data_[i] -= o.data_[i];
    return *this;
}

Operator& Operator::operator*=(const Scalar& c)
{
    for (auto& x : data_)
        x *= c;
    return *this;
}

Vec Operator::apply(const Vec& v) const
{
    if (v.size() != cols_)
        throw std::invalid_argument("operator applied to vector of wrong size");
    Vec r(rows_);
    for (std::size_t j = 0; j < cols_; ++j) {
        if (v[j].is_zero())
            continue;
        for (std::size_t i = 0; i < rows_; ++i) {
            const Scalar& a = at(i, j);
            if (!a.is_zero())
                r[i] += a * v[j];
        }
    }
    return r;
}

bool Operator::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool operator==(const Operator& a, const Operator& b) { return a.same_shape(b) && a.data_ == b.data_; }

Operator Operator::with_spaces(std::vector<Space> codomain, std::vector<Space> domain) const
{
    if (total_dim(codomain) != rows_ || total_dim(domain) != cols_)
        throw std::invalid_argument("relabel changes dimensions");
    Operator r(*this);
    r.cod_ = std::move(codomain);
    r.dom_ = std::move(domain);
    return r;
}

Operator matrix_unit(std::size_t n, int a, int b)
{
    if (a < 1 || b < 1 || static_cast<std::size_t>(a) > n || static_cast<std::size_t>(b) > n)
        throw std::out_of_range("matrix unit index out of range");
    Operator r(aux_legs(n, 1), aux_legs(n, 1));
    r.at(a - 1, b - 1) = Scalar(1);
    return r;
}

Operator flip(std::size_t n)
{
    auto legs = aux_legs(n, 2);
    Operator p(legs, legs);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            p.at(b * n + a, a * n + b) = Scalar(1);
    return p;
}

Operator kron(const Operator& a, const Operator& b)
{
    auto cod = a.codomain();
    cod.insert(cod.end(), b.codomain().begin(), b.codomain().end());
    auto dom = a.domain();
    dom.insert(dom.end(), b.domain().begin(), b.domain().end());
    Operator r(cod, dom);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Scalar& x = a.at(i, j);
            if (x.is_zero())
                continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    const Scalar& y = b.at(k, l);
                    if (!y.is_zero())
                        r.at(i * b.rows() + k, j * b.cols() + l) = x * y;
                }
        }
    return r;
}

Operator kron(const std::vector<Operator>& ops)
{
    if (ops.empty())
        throw std::invalid_argument("kron of an empty list");
    Operator r = ops.front();
    for (std::size_t i = 1; i < ops.size(); ++i)
        r = kron(r, ops[i]);
    return r;
}

namespace {

std::vector<std::size_t> strides(const std::vector<std::size_t>& dims)
{
    std::vector<std::size_t> s(dims.size(), 1);
    for (std::size_t i = dims.size(); i-- > 1;)
        s[i - 1] = s[i] * dims[i];
    return s;
}

std::vector<std::size_t> dims_of(const std::vector<Space>& legs)
{
    std::vector<std::size_t> d;
    for (const auto& s : legs)
        d.push_back(s.dim);
    return d;
}

// Enumerate all multi-indices over dims, calling f(index).
template <class F>
void for_each_index(const std::vector<std::size_t>& dims, F&& f)
{
    std::vector<std::size_t> idx(dims.size(), 0);
    for (;;) {
        f(idx);
        std::size_t p = dims.size();
        while (p > 0) {
            --p;
            if (++idx[p] < dims[p])
                break;
            idx[p] = 0;
            if (p == 0)
                return;
        }
        if (dims.empty())
            return;
    }
}

} // namespace

Operator embed_leg(const Operator& op, const std::vector<int>& positions, const std::vector<Space>& legs)
{
    const std::size_t m = legs.size();
    if (positions.size() != op.domain().size() || op.domain().size() != op.codomain().size())
        throw std::invalid_argument("embed_leg: leg count mismatch");
    std::vector<bool> used(m, false);
    for (std::size_t k = 0; k < positions.size(); ++k) {
        int p = positions[k];
        if (p < 1 || static_cast<std::size_t>(p) > m)
            throw std::out_of_range("embed_leg: position out of range");
        if (used[p - 1])
            throw std::invalid_argument("embed_leg: repeated position");
        used[p - 1] = true;
        if (op.domain()[k].dim != legs[p - 1].dim || op.codomain()[k].dim != legs[p - 1].dim)
            throw std::invalid_argument("embed_leg: dimension mismatch");
    }
    auto gd = dims_of(legs);
    auto gs = strides(gd);
    std::vector<std::size_t> rest_dims, rest_pos;
    for (std::size_t p = 0; p < m; ++p)
        if (!used[p]) {
            rest_dims.push_back(gd[p]);
            rest_pos.push_back(p);
        }
    auto od = dims_of(op.domain());
    auto os = strides(od);
    Operator r(legs, legs);
    for_each_index(rest_dims, [&](const std::vector<std::size_t>& rest) {
        std::size_t base = 0;
        for (std::size_t k = 0; k < rest.size(); ++k)
            base += rest[k] * gs[rest_pos[k]];
        for (std::size_t i = 0; i < op.rows(); ++i) {
            std::size_t gi = base;
            for (std::size_t k = 0; k < od.size(); ++k)
                gi += (i / os[k] % od[k]) * gs[positions[k] - 1];
            for (std::size_t j = 0; j < op.cols(); ++j) {
                const Scalar& x = op.at(i, j);
                if (x.is_zero())
                    continue;
                std::size_t gj = base;
                for (std::size_t k = 0; k < od.size(); ++k)
                    gj += (j / os[k] % od[k]) * gs[positions[k] - 1];
                r.at(gi, gj) = x;
            }
        }
    });
    return r;
}

Operator partial_trace(const Operator& op, const std::vector<int>& traced)
{
    const auto& cod = op.codomain();
    const auto& dom = op.domain();
    if (cod.size() != dom.size())
        throw std::invalid_argument("partial_trace: leg counts differ");
    std::vector<bool> tr(cod.size(), false);
    for (int p : traced) {
        if (p < 1 || static_cast<std::size_t>(p) > cod.size())
            throw std::out_of_range("partial_trace: position out of range");
        if (tr[p - 1])
            throw std::invalid_argument("partial_trace: repeated position");
        if (cod[p - 1].dim != dom[p - 1].dim)
            throw std::invalid_argument("partial_trace: traced leg is not square");
        tr[p - 1] = true;
    }
    std::vector<Space> rc, rd;
    std::vector<std::size_t> tdims;
    for (std::size_t p = 0; p < cod.size(); ++p) {
        if (tr[p])
            tdims.push_back(cod[p].dim);
        else {
            rc.push_back(cod[p]);
            rd.push_back(dom[p]);
        }
    }
    if (rc.empty()) {
        rc.push_back(Space{1, "scalar"});
        rd.push_back(Space{1, "scalar"});
    }
    auto cdims = dims_of(cod), ddims = dims_of(dom);
    auto cs = strides(cdims), ds = strides(ddims);
    Operator r(rc, rd);
    auto rcd = dims_of(rc), rdd = dims_of(rd);
    auto rcs = strides(rcd), rds = strides(rdd);
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j) {
            std::size_t bi = 0, bj = 0, k = 0;
            for (std::size_t p = 0; p < cod.size(); ++p)
                if (!tr[p]) {
                    bi += (i / rcs[k] % rcd[k]) * cs[p];
                    bj += (j / rds[k] % rdd[k]) * ds[p];
                    ++k;
                }
            Scalar acc;
            for_each_index(tdims, [&](const std::vector<std::size_t>& t) {
                std::size_t gi = bi, gj = bj, l = 0;
                for (std::size_t p = 0; p < cod.size(); ++p)
                    if (tr[p]) {
                        gi += t[l] * cs[p];
                        gj += t[l] * ds[p];
                        ++l;
                    }
                const Scalar& x = op.at(gi, gj);
                if (!x.is_zero())
                    acc += x;
            });
            r.at(i, j) = acc;
        }
    return r;
}

Vec apply_two_leg(const Operator& m, int i, int j, std::size_t n, std::size_t k, std::size_t rest, const Vec& v)
{
    if (i == j || i < 1 || j < 1 || static_cast<std::size_t>(i) > k || static_cast<std::size_t>(j) > k)
        throw std::invalid_argument("apply_two_leg: bad legs");
    std::size_t total = rest;
    for (std::size_t p = 0; p < k; ++p)
        total *= n;
    if (v.size() != total || m.rows() != n * n || m.cols() != n * n)
        throw std::invalid_argument("apply_two_leg: size mismatch");
    // stride of leg p (1-based) counting the trailing rest factor
    auto stride = [&](int p) {
        std::size_t s = rest;
        for (std::size_t q = static_cast<std::size_t>(p); q < k; ++q)
            s *= n;
        return s;
    };
    const std::size_t si = stride(i), sj = stride(j);
    Vec r(total);
    for (std::size_t g = 0; g < total; ++g) {
        if (v[g].is_zero())
            continue;
        std::size_t xi = g / si % n, xj = g / sj % n;
        std::size_t base = g - xi * si - xj * sj;
        std::size_t col = xi * n + xj;
        for (std::size_t yi = 0; yi < n; ++yi)
            for (std::size_t yj = 0; yj < n; ++yj) {
                const Scalar& c = m.at(yi * n + yj, col);
                if (!c.is_zero())
                    r[base + yi * si + yj * sj] += c * v[g];
            }
    }
    return r;
}

} // namespace nbv
