#include "nbv/rep.hpp"

#include "nbv/errors.hpp"

#include <stdexcept>

namespace nbv {

Scalar Rep::eigenvalue(int a, const Scalar& u) const
{
    Vec v = singular();
    Vec w = T(a, a, u).apply(v);
    for (std::size_t p = 0; p < v.size(); ++p)
        if (!v[p].is_zero()) {
            Scalar lam = w[p] / v[p];
            if (!is_zero(w - lam * v))
                throw std::logic_error("singular vector is not an eigenvector of the diagonal series");
            return lam;
        }
    throw std::logic_error("zero singular vector");
}

Operator monodromy(const Rep& rep, Sign s, const Scalar& u)
{
    const int n = rep.rank();
    OpGrid g = rep.series(s, u);
    std::vector<Space> legs = aux_legs(static_cast<std::size_t>(n), 1);
    auto ml = rep.legs();
    legs.insert(legs.end(), ml.begin(), ml.end());
    Operator r(legs, legs);
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
            r += kron(matrix_unit(static_cast<std::size_t>(n), a, b), g(a, b));
    return r;
}

namespace {

class EvalRep final : public Rep {
public:
    EvalRep(std::shared_ptr<const GlModule> m, const Scalar& x) : m_(std::move(m)), x_(x)
    {
        if (m_->flavor().trig() && x_.is_zero())
            throw PreconditionError("trigonometric evaluation point must be nonzero");
    }

    int rank() const override { return m_->rank(); }
    const Flavor& flavor() const override { return m_->flavor(); }
    std::vector<Space> legs() const override { return m_->legs(); }

    OpGrid series(Sign s, const Scalar& u) const override
    {
        check_point(u, "u");
        const int n = rank();
        auto legs = m_->legs();
        std::vector<Operator> ops;
        ops.reserve(static_cast<std::size_t>(n * n));
        if (!flavor().trig()) {
            if (s == Sign::plus)
                throw std::invalid_argument("L^+ exists only in the trigonometric case");
            Scalar c = (u - x_).inverse();
            for (int a = 1; a <= n; ++a)
                for (int b = 1; b <= n; ++b) {
                    Operator op = m_->e(b, a) * c;
                    if (a == b)
                        op += Operator::identity(legs);
                    ops.push_back(std::move(op));
                }
            return OpGrid(n, std::move(ops));
        }
        const Scalar& q = flavor().q;
        const Scalar dq = q - q.inverse();
        const Scalar xu = x_ / u, ux = u / x_;
        for (int r = 1; r <= n; ++r)
            for (int c = 1; c <= n; ++c) {
                if (s == Sign::minus) {
                    if (r == c)
                        ops.push_back(m_->k(r) - m_->k_inv(r) * xu);
                    else if (r < c)
                        ops.push_back(m_->k(r) * m_->e(c, r) * dq);
                    else
                        ops.push_back(m_->e(c, r) * m_->k_inv(c) * (xu * dq));
                }
                else {
                    if (r == c)
                        ops.push_back(m_->k_inv(r) - m_->k(r) * ux);
                    else if (r < c)
                        ops.push_back(m_->k(r) * m_->e(c, r) * (-ux * dq));
                    else
                        ops.push_back(m_->e(c, r) * m_->k_inv(c) * (-dq));
                }
            }
        return OpGrid(n, std::move(ops));
    }

    Vec singular() const override { return m_->singular(); }
    std::vector<std::string> basis_labels() const override { return m_->labels(); }
    std::vector<std::vector<int>> basis_weights() const override { return m_->weights(); }
    std::vector<int> highest_weight() const override { return m_->highest_weight(); }
    Operator gl_e(int a, int b) const override { return m_->e(a, b); }
    Operator gl_k(int a, int power) const override
    {
        if (power == 0)
            return Operator::identity(legs());
        Operator base = power > 0 ? m_->k(a) : m_->k_inv(a);
        Operator r = base;
        for (int i = 1; i < std::abs(power); ++i)
            r = r * base;
        return r;
    }

    void check_point(const Scalar& u, const std::string& what) const override
    {
        if (flavor().trig()) {
            if (u.is_zero())
                throw PoleError("pole: " + what + " vanishes (L-operators carry u^{-1})");
        }
        else if (u == x_)
            throw PoleError("pole: " + what + " - x vanishes at x = " + x_.str());
    }

    std::vector<Scalar> eval_points() const override { return {x_}; }
    std::string describe() const override { return m_->label() + "(" + x_.str() + ")"; }

private:
    std::shared_ptr<const GlModule> m_;
    Scalar x_;
};

class TensorRep final : public Rep {
public:
    TensorRep(RepPtr l, RepPtr r) : l_(std::move(l)), r_(std::move(r))
    {
        if (l_->rank() != r_->rank())
            throw std::invalid_argument("tensor factors of different rank");
        if (l_->flavor().kind != r_->flavor().kind || !(l_->flavor().q == r_->flavor().q))
            throw std::invalid_argument("tensor factors of different case");
    }

    int rank() const override { return l_->rank(); }
    const Flavor& flavor() const override { return l_->flavor(); }
    std::vector<Space> legs() const override
    {
        auto a = l_->legs();
        auto b = r_->legs();
        a.insert(a.end(), b.begin(), b.end());
        return a;
    }

    OpGrid series(Sign s, const Scalar& u) const override
    {
        const int n = rank();
        OpGrid gl = l_->series(s, u), gr = r_->series(s, u);
        std::vector<Operator> ops;
        for (int a = 1; a <= n; ++a)
            for (int b = 1; b <= n; ++b) {
                Operator acc(legs(), legs());
                for (int c = 1; c <= n; ++c) {
                    if (gl(c, b).is_zero() || gr(a, c).is_zero())
                        continue;
                    acc += kron(gl(c, b), gr(a, c));
                }
                ops.push_back(std::move(acc));
            }
        return OpGrid(n, std::move(ops));
    }

    Vec singular() const override
    {
        Vec a = l_->singular(), b = r_->singular();
        Vec r(a.size() * b.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                r[i * b.size() + j] = a[i] * b[j];
        return r;
    }

    std::vector<std::string> basis_labels() const override
    {
        std::vector<std::string> out;
        for (const auto& x : l_->basis_labels())
            for (const auto& y : r_->basis_labels())
                out.push_back(x + "⊗" + y);
        return out;
    }

    std::vector<std::vector<int>> basis_weights() const override
    {
        std::vector<std::vector<int>> out;
        for (const auto& x : l_->basis_weights())
            for (const auto& y : r_->basis_weights()) {
                auto w = x;
                for (std::size_t i = 0; i < w.size(); ++i)
                    w[i] += y[i];
                out.push_back(std::move(w));
            }
        return out;
    }

    std::vector<int> highest_weight() const override
    {
        auto w = l_->highest_weight();
        auto y = r_->highest_weight();
        for (std::size_t i = 0; i < w.size(); ++i)
            w[i] += y[i];
        return w;
    }

    Operator gl_e(int a, int b) const override
    {
        auto il = Operator::identity(l_->legs()), ir = Operator::identity(r_->legs());
        if (!flavor().trig())
            return kron(l_->gl_e(a, b), ir) + kron(il, r_->gl_e(a, b));
        const Scalar& q = flavor().q;
        if (b == a + 1)
            return kron(il, r_->gl_e(a, b)) + kron(l_->gl_e(a, b), r_->gl_k(a, 1) * r_->gl_k(a + 1, -1));
        if (a == b + 1)
            return kron(l_->gl_e(a, b), ir) + kron(l_->gl_k(a, 1) * l_->gl_k(b, -1), r_->gl_e(a, b));
        if (a < b) {
            Operator x = gl_e(a, a + 1), y = gl_e(a + 1, b);
            return x * y - y * x * q;
        }
        Operator x = gl_e(a, b + 1), y = gl_e(b + 1, b);
        return x * y - y * x * q.inverse();
    }

    Operator gl_k(int a, int power) const override { return kron(l_->gl_k(a, power), r_->gl_k(a, power)); }

    void check_point(const Scalar& u, const std::string& what) const override
    {
        l_->check_point(u, what);
        r_->check_point(u, what);
    }

    std::vector<Scalar> eval_points() const override
    {
        auto a = l_->eval_points();
        auto b = r_->eval_points();
        a.insert(a.end(), b.begin(), b.end());
        return a;
    }

    std::string describe() const override { return l_->describe() + "⊗" + r_->describe(); }

private:
    RepPtr l_, r_;
};

class ViewRep final : public Rep {
public:
    ViewRep(RepPtr inner, int offset, int rank) : in_(std::move(inner)), off_(offset), n_(rank)
    {
        if (rank < 1 || offset < 0 || offset + rank > in_->rank())
            throw std::invalid_argument("view outside the ambient rank");
    }

    int rank() const override { return n_; }
    const Flavor& flavor() const override { return in_->flavor(); }
    std::vector<Space> legs() const override { return in_->legs(); }

    OpGrid series(Sign s, const Scalar& u) const override
    {
        OpGrid g = in_->series(s, u);
        std::vector<Operator> ops;
        for (int a = 1; a <= n_; ++a)
            for (int b = 1; b <= n_; ++b)
                ops.push_back(g(a + off_, b + off_));
        return OpGrid(n_, std::move(ops));
    }

    Vec singular() const override { return in_->singular(); }
    std::vector<std::string> basis_labels() const override { return in_->basis_labels(); }
    std::vector<std::vector<int>> basis_weights() const override
    {
        std::vector<std::vector<int>> out;
        for (const auto& w : in_->basis_weights())
            out.emplace_back(w.begin() + off_, w.begin() + off_ + n_);
        return out;
    }
    std::vector<int> highest_weight() const override
    {
        auto w = in_->highest_weight();
        return std::vector<int>(w.begin() + off_, w.begin() + off_ + n_);
    }
    Operator gl_e(int a, int b) const override { return in_->gl_e(a + off_, b + off_); }
    Operator gl_k(int a, int power) const override { return in_->gl_k(a + off_, power); }
    void check_point(const Scalar& u, const std::string& what) const override { in_->check_point(u, what); }
    std::vector<Scalar> eval_points() const override { return in_->eval_points(); }
    std::string describe() const override
    {
        return (off_ == 0 ? "phi*" : "psi*") + in_->describe();
    }

private:
    RepPtr in_;
    int off_, n_;
};

// L(x) (bar = false) or Lbar(x) (bar = true) on C^n.
class VectorSeriesRep final : public Rep {
public:
    VectorSeriesRep(int n, const Scalar& x, bool bar) : n_(n), x_(x), bar_(bar)
    {
        if (n < 1)
            throw std::invalid_argument("rank must be positive");
    }

    int rank() const override { return n_; }
    const Flavor& flavor() const override { return flavor_; }
    std::vector<Space> legs() const override
    {
        return {Space{static_cast<std::size_t>(n_), bar_ ? "Lbar:C^" + std::to_string(n_) : "L:C^" + std::to_string(n_)}};
    }

    OpGrid series(Sign s, const Scalar& u) const override
    {
        if (s == Sign::plus)
            throw std::invalid_argument("L^+ exists only in the trigonometric case");
        check_point(u, "u");
        Scalar c = (u - x_).inverse();
        std::vector<Operator> ops;
        for (int a = 1; a <= n_; ++a)
            for (int b = 1; b <= n_; ++b) {
                Operator op = bar_ ? unit(a, b) * (-c) : unit(b, a) * c;
                if (a == b)
                    op += Operator::identity(legs());
                ops.push_back(std::move(op));
            }
        return OpGrid(n_, std::move(ops));
    }

    Vec singular() const override
    {
        Vec v(static_cast<std::size_t>(n_));
        v[bar_ ? n_ - 1 : 0] = Scalar(1);
        return v;
    }
    std::vector<std::string> basis_labels() const override
    {
        std::vector<std::string> out;
        for (int a = 1; a <= n_; ++a)
            out.push_back("w[" + std::to_string(a) + "]");
        return out;
    }
    std::vector<std::vector<int>> basis_weights() const override
    {
        std::vector<std::vector<int>> out;
        for (int a = 0; a < n_; ++a) {
            std::vector<int> w(n_, 0);
            w[a] = bar_ ? -1 : 1;
            out.push_back(w);
        }
        return out;
    }
    std::vector<int> highest_weight() const override { return basis_weights()[bar_ ? n_ - 1 : 0]; }
    Operator gl_e(int a, int b) const override { return bar_ ? unit(b, a) * Scalar(-1) : unit(a, b); }
    Operator gl_k(int, int) const override { throw std::invalid_argument("k_a exists only in the trigonometric case"); }
    void check_point(const Scalar& u, const std::string& what) const override
    {
        if (u == x_)
            throw PoleError("pole: " + what + " - x vanishes at x = " + x_.str());
    }
    std::vector<Scalar> eval_points() const override { return {x_}; }
    std::string describe() const override { return (bar_ ? "Lbar(" : "L(") + x_.str() + ")"; }

private:
    Operator unit(int a, int b) const
    {
        return matrix_unit(static_cast<std::size_t>(n_), a, b).with_spaces(legs(), legs());
    }

    int n_;
    Scalar x_;
    bool bar_;
    Flavor flavor_{};
};

} // namespace

RepPtr make_eval(std::shared_ptr<const GlModule> m, const Scalar& x) { return std::make_shared<EvalRep>(std::move(m), x); }
RepPtr make_tensor(RepPtr left, RepPtr right) { return std::make_shared<TensorRep>(std::move(left), std::move(right)); }

RepPtr make_assembly(const std::vector<RepPtr>& factors)
{
    if (factors.empty())
        throw std::invalid_argument("assembly needs at least one factor");
    RepPtr r = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i)
        r = make_tensor(r, factors[i]);
    return r;
}

RepPtr make_view(RepPtr inner, int offset, int rank) { return std::make_shared<ViewRep>(std::move(inner), offset, rank); }

RepPtr pullback_phi(RepPtr inner)
{
    if (inner->rank() < 2)
        throw PreconditionError("phi needs N >= 2");
    int n = inner->rank();
    return make_view(std::move(inner), 0, n - 1);
}

RepPtr pullback_psi(RepPtr inner)
{
    if (inner->rank() < 2)
        throw PreconditionError("psi needs N >= 2");
    int n = inner->rank();
    return make_view(std::move(inner), 1, n - 1);
}

RepPtr make_L(int n, const Scalar& x) { return std::make_shared<VectorSeriesRep>(n, x, false); }
RepPtr make_Lbar(int n, const Scalar& x) { return std::make_shared<VectorSeriesRep>(n, x, true); }

} // namespace nbv
