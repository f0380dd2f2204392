#include "nbv/module.hpp"

#include "nbv/echelon.hpp"
#include "nbv/errors.hpp"

#include <deque>
#include <sstream>

namespace nbv {

std::string to_string(Realization::Kind k)
{
    switch (k) {
    case Realization::Kind::vector:
        return "vector";
    case Realization::Kind::wedge_power:
        return "wedge_power";
    case Realization::Kind::symmetric_power:
        return "symmetric_power";
    case Realization::Kind::cyclic_span:
        return "cyclic_span";
    }
    return "?";
}

std::vector<int> builtin_weight(int n, const Realization& r)
{
    std::vector<int> w(n, 0);
    switch (r.kind) {
    case Realization::Kind::vector:
        w[0] = 1;
        break;
    case Realization::Kind::wedge_power:
        if (r.k < 1 || r.k > n)
            throw PreconditionError("wedge_power(k) needs 1 <= k <= n");
        for (int i = 0; i < r.k; ++i)
            w[i] = 1;
        break;
    case Realization::Kind::symmetric_power:
        if (r.k < 1)
            throw PreconditionError("symmetric_power(k) needs k >= 1");
        w[0] = r.k;
        break;
    case Realization::Kind::cyclic_span:
        throw PreconditionError("cyclic_span has no built-in weight");
    }
    return w;
}

std::size_t TensorPower::size() const
{
    std::size_t s = 1;
    for (std::size_t i = 0; i < m; ++i)
        s *= static_cast<std::size_t>(n);
    return s;
}

std::vector<int> TensorPower::word(std::size_t index) const
{
    std::vector<int> w(m);
    for (std::size_t i = m; i-- > 0;) {
        w[i] = static_cast<int>(index % n) + 1;
        index /= n;
    }
    return w;
}

std::size_t TensorPower::index(const std::vector<int>& w) const
{
    std::size_t g = 0;
    for (int c : w)
        g = g * n + static_cast<std::size_t>(c - 1);
    return g;
}

std::vector<int> TensorPower::weight_of(std::size_t index) const
{
    std::vector<int> mu(n, 0);
    for (int c : word(index))
        ++mu[c - 1];
    return mu;
}

Vec TensorPower::k(int a, int power, const Vec& v) const
{
    Vec r(v);
    for (std::size_t g = 0; g < r.size(); ++g)
        if (!r[g].is_zero())
            r[g] *= flavor.q.pow(static_cast<long>(power) * weight_of(g)[a - 1]);
    return r;
}

Vec TensorPower::e(int a, int b, const Vec& v) const
{
    if (a < 1 || b < 1 || a > n || b > n)
        throw std::out_of_range("generator index out of range");
    Vec r(v.size());
    if (!flavor.trig()) {
        for (std::size_t g = 0; g < v.size(); ++g) {
            if (v[g].is_zero())
                continue;
            auto w = word(g);
            for (std::size_t i = 0; i < m; ++i)
                if (w[i] == b) {
                    auto w2 = w;
                    w2[i] = a;
                    r[index(w2)] += v[g];
                }
        }
        return r;
    }
    if (a == b)
        throw std::invalid_argument("trig generators e_aa are not used; use k_a");
    const Scalar& q = flavor.q;
    if (b == a + 1 || a == b + 1) {
        const bool raise = b == a + 1;
        const int lo = raise ? a : b;  // simple root index
        for (std::size_t g = 0; g < v.size(); ++g) {
            if (v[g].is_zero())
                continue;
            auto w = word(g);
            for (std::size_t i = 0; i < m; ++i) {
                if (w[i] != b)
                    continue;
                // raising: K = k_lo k_{lo+1}^{-1} on the legs to the right;
                // lowering: K' = k_{lo+1} k_lo^{-1} on the legs to the left.
                long ex = 0;
                if (raise) {
                    for (std::size_t j = i + 1; j < m; ++j)
                        ex += (w[j] == lo) - (w[j] == lo + 1);
                }
                else {
                    for (std::size_t j = 0; j < i; ++j)
                        ex += (w[j] == lo + 1) - (w[j] == lo);
                }
                auto w2 = w;
                w2[i] = a;
                r[index(w2)] += v[g] * q.pow(ex);
            }
        }
        return r;
    }
    if (a < b) {
        // e_ab = e_{a,a+1} e_{a+1,b} - q e_{a+1,b} e_{a,a+1}
        Vec x = e(a, a + 1, e(a + 1, b, v));
        Vec y = e(a + 1, b, e(a, a + 1, v));
        return axpy(x, -q, y);
    }
    // a > b: e_ab with a the larger index; e_{ba} recursion with roles swapped
    // hat e_{a b} = hat e_{a,b+1} hat e_{b+1,b} - q^{-1} hat e_{b+1,b} hat e_{a,b+1}
    Vec x = e(a, b + 1, e(b + 1, b, v));
    Vec y = e(b + 1, b, e(a, b + 1, v));
    return axpy(x, -q.inverse(), y);
}

namespace {

std::string module_label(const ModuleSpec& spec)
{
    std::ostringstream os;
    os << "module:" << to_string(spec.realization.kind);
    if (spec.realization.kind == Realization::Kind::wedge_power ||
        spec.realization.kind == Realization::Kind::symmetric_power)
        os << "(" << spec.realization.k << ")";
    return os.str();
}

Vec first_nonzero_normalized(Vec v)
{
    for (const auto& x : v)
        if (!x.is_zero()) {
            Scalar inv = x.inverse();
            for (auto& y : v)
                y *= inv;
            break;
        }
    return v;
}

// Singular vectors of weight lambda inside span(candidates).
std::vector<Vec> singular_in_span(const TensorPower& tp, const std::vector<Vec>& cands)
{
    std::vector<Vec> cols;
    for (const auto& s : cands) {
        Vec col;
        for (int a = 1; a < tp.n; ++a) {
            Vec r = tp.e(a, a + 1, s);
            col.insert(col.end(), r.begin(), r.end());
        }
        if (col.empty())
            col.push_back(Scalar(0));
        cols.push_back(std::move(col));
    }
    std::vector<Vec> out;
    for (const auto& c : nullspace(cols)) {
        Vec v(tp.size());
        for (std::size_t i = 0; i < cands.size(); ++i)
            axpy(v, c[i], cands[i]);
        out.push_back(first_nonzero_normalized(std::move(v)));
    }
    return out;
}

} // namespace

std::shared_ptr<const GlModule> build_module(const ModuleSpec& spec, const Flavor& flavor)
{
    const int n = spec.n;
    if (n < 1)
        throw PreconditionError("module rank must be positive");
    if (flavor.trig())
        check_q(flavor.q);
    const auto& real = spec.realization;

    std::vector<int> lambda;
    std::size_t m = 0;
    std::vector<Vec> seed_space;
    TensorPower tp{flavor, n, 0};

    if (real.kind == Realization::Kind::cyclic_span) {
        if (real.terms.empty())
            throw PreconditionError("cyclic_span needs a non-empty tensor word");
        m = real.terms.front().second.size();
        if (m == 0)
            throw PreconditionError("cyclic_span word must be non-empty");
        if (static_cast<int>(spec.weight.size()) != n)
            throw PreconditionError("cyclic_span needs a declared weight of length n");
        lambda = spec.weight;
        tp.m = m;
        Vec w0(tp.size());
        std::vector<int> mu;
        for (const auto& [c, word] : real.terms) {
            if (word.size() != m)
                throw PreconditionError("cyclic_span words must share one length");
            for (int l : word)
                if (l < 1 || l > n)
                    throw PreconditionError("cyclic_span letter out of range");
            if (mu.empty())
                mu = tp.weight_of(tp.index(word));
            else if (mu != tp.weight_of(tp.index(word)))
                throw PreconditionError("cyclic_span generator is not a weight vector");
            w0[tp.index(word)] += c;
        }
        if (is_zero(w0))
            throw PreconditionError("cyclic_span generator is zero");
        // Cyclic submodule generated by w0 under the simple generators.
        Echelon span(tp.size());
        std::deque<Vec> todo{w0};
        span.insert(w0);
        while (!todo.empty()) {
            Vec x = std::move(todo.front());
            todo.pop_front();
            for (int a = 1; a < n; ++a)
                for (auto [p, r] : {std::pair{a, a + 1}, std::pair{a + 1, a}}) {
                    Vec y = tp.e(p, r, x);
                    if (!is_zero(y) && span.insert(y))
                        todo.push_back(std::move(y));
                }
        }
        for (std::size_t i = 0; i < span.size(); ++i)
            if (tp.weight_of(span.pivots()[i]) == lambda)
                seed_space.push_back(span.rows()[i]);
    }
    else {
        lambda = builtin_weight(n, real);
        if (!spec.weight.empty() && spec.weight != lambda)
            throw PreconditionError("declared weight disagrees with the realization");
        m = real.kind == Realization::Kind::vector ? 1 : static_cast<std::size_t>(real.k);
        tp.m = m;
        for (std::size_t g = 0; g < tp.size(); ++g)
            if (tp.weight_of(g) == lambda) {
                Vec v(tp.size());
                v[g] = Scalar(1);
                seed_space.push_back(std::move(v));
            }
    }

    auto sing = singular_in_span(tp, seed_space);
    if (sing.empty())
        throw PreconditionError("no singular vector of the declared weight in the generated module");
    const Vec& v0 = sing.front();

    Echelon basis(tp.size());
    basis.insert(v0);
    std::deque<Vec> todo{v0};
    while (!todo.empty()) {
        Vec x = std::move(todo.front());
        todo.pop_front();
        for (int a = 1; a < n; ++a) {
            Vec y = tp.e(a + 1, a, x);
            if (!is_zero(y) && basis.insert(y))
                todo.push_back(std::move(y));
        }
    }
    basis.sort_by_pivot();

    auto mod = std::shared_ptr<GlModule>(new GlModule());
    mod->flavor_ = flavor;
    mod->n_ = n;
    mod->dim_ = basis.size();
    mod->degree_ = m;
    mod->label_ = module_label(spec);
    mod->lambda_ = lambda;
    mod->embedding_ = basis.rows();
    mod->singular_ = basis.coordinates(v0);
    for (auto p : basis.pivots()) {
        mod->weights_.push_back(tp.weight_of(p));
        std::ostringstream os;
        os << "v[";
        auto w = tp.word(p);
        for (std::size_t i = 0; i < w.size(); ++i)
            os << (i ? "," : "") << w[i];
        os << "]";
        mod->labels_.push_back(os.str());
    }
    auto legs = mod->legs();
    auto matrix_of = [&](auto&& gen) {
        Operator op(legs, legs);
        for (std::size_t j = 0; j < basis.size(); ++j) {
            Vec c = basis.coordinates(gen(basis.rows()[j]));
            for (std::size_t i = 0; i < c.size(); ++i)
                op.at(i, j) = c[i];
        }
        return op;
    };
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) {
            if (flavor.trig() && a == b)
                mod->e_.push_back(Operator(legs, legs));
            else
                mod->e_.push_back(matrix_of([&](const Vec& v) { return tp.e(a, b, v); }));
        }
    if (flavor.trig())
        for (int a = 1; a <= n; ++a) {
            mod->k_.push_back(matrix_of([&](const Vec& v) { return tp.k(a, 1, v); }));
            mod->kinv_.push_back(matrix_of([&](const Vec& v) { return tp.k(a, -1, v); }));
        }
    return mod;
}

const Operator& GlModule::e(int a, int b) const
{
    if (a < 1 || b < 1 || a > n_ || b > n_)
        throw std::out_of_range("generator index out of range");
    if (flavor_.trig() && a == b)
        throw std::invalid_argument("trig modules expose k_a instead of e_aa");
    return e_[static_cast<std::size_t>((a - 1) * n_ + (b - 1))];
}

const Operator& GlModule::k(int a) const
{
    if (!flavor_.trig())
        throw std::invalid_argument("k_a exists only in the trigonometric case");
    return k_.at(static_cast<std::size_t>(a - 1));
}

const Operator& GlModule::k_inv(int a) const
{
    if (!flavor_.trig())
        throw std::invalid_argument("k_a exists only in the trigonometric case");
    return kinv_.at(static_cast<std::size_t>(a - 1));
}

} // namespace nbv
