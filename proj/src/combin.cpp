#include "nbv/combin.hpp"

#include <sstream>
#include <tuple>

namespace nbv {

Scalar factorial(int n)
{
    if (n < 0)
        throw std::invalid_argument("factorial of a negative number");
    Scalar r(1);
    for (int i = 2; i <= n; ++i)
        r = r * Scalar(i);
    return r;
}

Scalar q_number(int n, const Scalar& q)
{
    return (q.pow(n) - q.pow(-n)) / (q - q.inverse());
}

Scalar q_factorial(int n, const Scalar& q)
{
    Scalar r(1);
    for (int i = 1; i <= n; ++i) {
        Scalar qi = q_number(i, q);
        if (qi.is_zero())
            throw PreconditionError("[" + std::to_string(i) + "]_q vanishes at q = " + q.str());
        r = r * qi;
    }
    return r;
}

Scalar flavored_factorial(const Flavor& f, int n)
{
    return f.trig() ? q_factorial(n, f.q) : factorial(n);
}

namespace {

Scalar checked_inverse(const Scalar& d, const std::string& what)
{
    if (d.is_zero())
        throw PoleError("pole: " + what + " vanishes");
    return d.inverse();
}

} // namespace

Scalar cross_factor(const Flavor& f, const Scalar& a, const Scalar& b)
{
    Scalar inv = checked_inverse(a - b, "difference " + a.str() + " - " + b.str());
    if (f.trig())
        return (f.q * a - f.q.inverse() * b) * inv;
    return (a - b + Scalar(1)) * inv;
}

Scalar w_pair(const Flavor& f, const Scalar& a, const Scalar& b)
{
    Scalar inv = checked_inverse(a - b, "difference " + a.str() + " - " + b.str());
    if (f.trig())
        return (f.q.inverse() * a - f.q * b) * inv;
    return (a - b - Scalar(1)) * inv;
}

Scalar w_factor(const Flavor& f, const std::vector<Scalar>& vars)
{
    Scalar r(1);
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            r = r * w_pair(f, vars[i], vars[j]);
    return r;
}

std::string describe_permutation(const std::vector<std::vector<int>>& perm)
{
    std::ostringstream os;
    for (std::size_t a = 0; a < perm.size(); ++a) {
        if (a)
            os << " | ";
        for (std::size_t i = 0; i < perm[a].size(); ++i)
            os << (i ? " " : "") << perm[a][i] + 1;
    }
    return os.str();
}

VarCollection slice(const VarCollection& t, const std::vector<int>& lo, const std::vector<int>& hi)
{
    VarCollection r(t.size());
    for (std::size_t a = 0; a < t.size(); ++a)
        r[a].assign(t[a].begin() + lo[a], t[a].begin() + hi[a]);
    return r;
}

VarCollection head(const VarCollection& t, const std::vector<int>& eta)
{
    return slice(t, std::vector<int>(t.size(), 0), eta);
}

VarCollection drop_last_level(const VarCollection& t)
{
    return VarCollection(t.begin(), t.end() - (t.empty() ? 0 : 1));
}

VarCollection drop_first_level(const VarCollection& t)
{
    return VarCollection(t.begin() + (t.empty() ? 0 : 1), t.end());
}

std::vector<int> sizes(const VarCollection& t)
{
    std::vector<int> r;
    for (const auto& l : t)
        r.push_back(static_cast<int>(l.size()));
    return r;
}

namespace {

void require_sizes(const std::vector<int>& eta, const VarCollection& t, const char* who)
{
    if (sizes(t) != eta)
        throw std::invalid_argument(std::string(who) + ": variable counts do not match the composition");
}

} // namespace

Scalar x_factor(const Flavor& f, const std::vector<int>& eta, const VarCollection& t)
{
    require_sizes(eta, t, "X");
    const int n1 = static_cast<int>(eta.size());
    for (int a = 1; a < n1; ++a)
        if (eta[a - 1] > eta[a])
            throw std::invalid_argument("X: eta must be nondecreasing");
    Scalar r(1);
    for (int a = 1; a + 1 <= n1; ++a) {
        const auto& lo = t[a - 1];
        const auto& hi = t[a];
        for (int j = 1; j <= eta[a - 1]; ++j) {
            r = r * checked_inverse(hi[j - 1] - lo[j - 1], var_name(a + 1, j) + " - " + var_name(a, j));
            for (int i = 1; i < j; ++i)
                r = r * cross_factor(f, hi[i - 1], lo[j - 1]);
        }
    }
    return r;
}

Scalar y_factor(const Flavor& f, const std::vector<int>& eta, const VarCollection& t)
{
    require_sizes(eta, t, "Y");
    const int n1 = static_cast<int>(eta.size());
    for (int a = 1; a < n1; ++a)
        if (eta[a - 1] < eta[a])
            throw std::invalid_argument("Y: eta must be nonincreasing");
    Scalar r(1);
    for (int a = 2; a <= n1; ++a) {
        const auto& cur = t[a - 1];
        const auto& prev = t[a - 2];
        const int shift = eta[a - 2] - eta[a - 1];
        for (int j = 1; j <= eta[a - 1]; ++j) {
            const Scalar& z = prev[j + shift - 1];
            r = r * checked_inverse(cur[j - 1] - z, var_name(a, j) + " - " + var_name(a - 1, j + shift));
            for (int i = 1; i < j; ++i)
                r = r * cross_factor(f, cur[i - 1], z);
        }
    }
    return r;
}

Scalar z_factor(const Flavor& f, const VarCollection& t, const VarCollection& s)
{
    if (t.size() != s.size())
        throw std::invalid_argument("Z: level counts differ");
    Scalar r(1);
    for (std::size_t a = 0; a + 1 < t.size(); ++a)
        for (const auto& ti : t[a + 1])
            for (const auto& sj : s[a])
                r = r * cross_factor(f, ti, sj);
    return r;
}

namespace {

// Generators of the rank-`rank` subalgebra sitting at `offset`.
struct View {
    const EvalData* ev;
    int offset;
    int rank;

    const Flavor& flavor() const { return ev->module->flavor(); }
    int lambda(int a) const { return ev->module->highest_weight()[static_cast<std::size_t>(a + offset - 1)]; }

    // e_ab, or for a > b the lowering operator k_b e_ab of the L^- entries
    Vec lower(int a, int b, int power, Vec v) const
    {
        const auto& m = *ev->module;
        for (int i = 0; i < power; ++i) {
            v = m.e(a + offset, b + offset).apply(v);
            if (flavor().trig())
                v = m.k(b + offset).apply(v);
        }
        return v;
    }

    // (s - x + L)/(s - x), or q^L s - q^-L x
    Scalar shifted(const Scalar& s, int lam, const std::string& what) const
    {
        const Flavor& f = flavor();
        if (f.trig())
            return f.q.pow(lam) * s - f.q.pow(-lam) * ev->x;
        return (s - ev->x + Scalar(lam)) * checked_inverse(s - ev->x, what + " - x");
    }
};

using MemoKey = std::tuple<int, int, std::vector<int>, VarCollection>;

std::vector<int> minus(const std::vector<int>& a, const std::vector<int>& b)
{
    std::vector<int> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

// Enumerates eta level by level, visiting levels in `order` with bounds
// computed from the previously fixed neighbour.
template <class Bound, class Fn>
void enumerate_levels(std::vector<int>& eta, const std::vector<int>& order, std::size_t pos, Bound&& bound, Fn&& fn)
{
    if (pos == order.size()) {
        fn(static_cast<const std::vector<int>&>(eta));
        return;
    }
    const int a = order[pos];
    auto [lo, hi] = bound(a, static_cast<const std::vector<int>&>(eta));
    for (int v = lo; v <= hi; ++v) {
        eta[static_cast<std::size_t>(a - 1)] = v;
        enumerate_levels(eta, order, pos + 1, bound, fn);
    }
}

class Recursion {
public:
    Recursion(const EvalData& ev, Direction d) : ev_(ev), d_(d) {}

    Vec run(int offset, int rank, const std::vector<int>& xi, const VarCollection& t)
    {
        if (rank == 1 || std::all_of(xi.begin(), xi.end(), [](int v) { return v == 0; }))
            return ev_.module->singular();
        MemoKey key{offset, rank, xi, t};
        auto it = memo_.find(key);
        if (it != memo_.end())
            return it->second;
        Vec r = d_ == Direction::last ? last(View{&ev_, offset, rank}, xi, t) : first(View{&ev_, offset, rank}, xi, t);
        memo_.emplace(std::move(key), r);
        return r;
    }

private:
    Vec last(const View& w, const std::vector<int>& xi, const VarCollection& t)
    {
        const Flavor& f = w.flavor();
        const int n = w.rank;
        const int n1 = n - 1;
        std::vector<int> eta(static_cast<std::size_t>(n1), 0);
        eta[static_cast<std::size_t>(n1 - 1)] = xi[static_cast<std::size_t>(n1 - 1)];
        std::vector<int> order;
        for (int a = n1 - 1; a >= 1; --a)
            order.push_back(a);
        Vec acc;
        enumerate_levels(
            eta, order, 0,
            [&](int a, const std::vector<int>& e) {
                return std::pair{0, std::min(xi[static_cast<std::size_t>(a - 1)], e[static_cast<std::size_t>(a)])};
            },
            [&](const std::vector<int>& e) {
                auto lead = minus(xi, e);
                Scalar c = flavored_factorial(f, e[0]).inverse();
                int total = 0;
                for (int a = 1; a <= n1; ++a)
                    total += e[static_cast<std::size_t>(a - 1)];
                for (int a = 1; a <= n1 - 1; ++a) {
                    const int ea = e[static_cast<std::size_t>(a - 1)], eb = e[static_cast<std::size_t>(a)];
                    c = c / (flavored_factorial(f, lead[static_cast<std::size_t>(a - 1)]) * flavored_factorial(f, eb - ea));
                    if (f.trig())
                        c = c * f.q.pow(static_cast<long>(ea) * (ea - eb));
                }
                if (f.trig())
                    c = c * (f.q - f.q.inverse()).pow(total);
                Vec term = sym_bar<Vec>(f, t, [&](const VarCollection& s) {
                    VarCollection hd = slice(s, std::vector<int>(s.size(), 0), lead);
                    VarCollection tl = slice(s, lead, xi);
                    Scalar g = x_factor(f, e, tl) * z_factor(f, hd, tl);
                    for (int a = 1; a <= n1 - 1; ++a)
                        for (int i = 0; i < e[static_cast<std::size_t>(a - 1)]; ++i) {
                            const int idx = xi[static_cast<std::size_t>(a - 1)] - i;
                            g = g * w.shifted(s[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(idx - 1)],
                                              w.lambda(a + 1), var_name(a, idx));
                        }
                    if (g.is_zero())
                        return Vec{};
                    Vec v = run(w.offset, n - 1, std::vector<int>(lead.begin(), lead.end() - 1), drop_last_level(hd));
                    for (int b = 1; b <= n1; ++b)
                        v = w.lower(n, b, e[static_cast<std::size_t>(b - 1)] - (b > 1 ? e[static_cast<std::size_t>(b - 2)] : 0), v);
                    return g * v;
                });
                if (!term.empty())
                    accumulate(acc, c, term);
            });
        if (acc.empty())
            acc.assign(ev_.module->dim(), Scalar(0));
        if (!f.trig())
            for (const auto& ti : t[static_cast<std::size_t>(n1 - 1)])
                acc = checked_inverse(ti - ev_.x, "t - x") * acc;
        return acc;
    }

    Vec first(const View& w, const std::vector<int>& xi, const VarCollection& t)
    {
        const Flavor& f = w.flavor();
        const int n = w.rank;
        const int n1 = n - 1;
        std::vector<int> eta(static_cast<std::size_t>(n1), 0);
        eta[0] = xi[0];
        std::vector<int> order;
        for (int a = 2; a <= n1; ++a)
            order.push_back(a);
        Vec acc;
        enumerate_levels(
            eta, order, 0,
            [&](int a, const std::vector<int>& e) {
                return std::pair{0, std::min(xi[static_cast<std::size_t>(a - 1)], e[static_cast<std::size_t>(a - 2)])};
            },
            [&](const std::vector<int>& e) {
                auto rest = minus(xi, e);
                Scalar c = flavored_factorial(f, e[static_cast<std::size_t>(n1 - 1)]).inverse();
                int total = 0;
                for (int a = 1; a <= n1; ++a)
                    total += e[static_cast<std::size_t>(a - 1)];
                for (int a = 2; a <= n1; ++a) {
                    const int ea = e[static_cast<std::size_t>(a - 1)], ep = e[static_cast<std::size_t>(a - 2)];
                    c = c / (flavored_factorial(f, rest[static_cast<std::size_t>(a - 1)]) * flavored_factorial(f, ep - ea));
                    if (f.trig())
                        c = c * f.q.pow(static_cast<long>(ea) * (ep - ea));
                }
                if (f.trig())
                    c = c * (f.q - f.q.inverse()).pow(total);
                Vec term = sym_bar<Vec>(f, t, [&](const VarCollection& s) {
                    VarCollection hd = slice(s, std::vector<int>(s.size(), 0), e);
                    VarCollection tl = slice(s, e, xi);
                    Scalar g = y_factor(f, e, hd) * z_factor(f, hd, tl);
                    for (int a = 2; a <= n1; ++a)
                        for (int i = 1; i <= e[static_cast<std::size_t>(a - 1)]; ++i)
                            g = g * w.shifted(s[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(i - 1)],
                                              w.lambda(a), var_name(a, i));
                    if (g.is_zero())
                        return Vec{};
                    Vec v = run(w.offset + 1, n - 1, std::vector<int>(rest.begin() + 1, rest.end()), drop_first_level(tl));
                    for (int a = n1; a >= 1; --a)
                        v = w.lower(a + 1, 1, e[static_cast<std::size_t>(a - 1)] - (a < n1 ? e[static_cast<std::size_t>(a)] : 0), v);
                    return g * v;
                });
                if (!term.empty())
                    accumulate(acc, c, term);
            });
        if (acc.empty())
            acc.assign(ev_.module->dim(), Scalar(0));
        if (!f.trig())
            for (const auto& ti : t[0])
                acc = checked_inverse(ti - ev_.x, "t - x") * acc;
        return acc;
    }

    const EvalData& ev_;
    Direction d_;
    std::map<MemoKey, Vec> memo_;
};

void top_preflight(const EvalData& ev, const Composition& xi, const VarCollection& t)
{
    check_shape(xi, t);
    if (xi.levels() != ev.module->rank() - 1)
        throw std::invalid_argument("composition length must be N-1");
    auto rep = make_eval(ev.module, ev.x);
    preflight(ev.module->flavor(), rep.get(), xi, t);
}

} // namespace

Vec recursion_theorem(const EvalData& ev, const Composition& xi, const VarCollection& t, Direction d)
{
    top_preflight(ev, xi, t);
    Recursion r(ev, d);
    return r.run(0, ev.module->rank(), xi.xi, t);
}

int MMatrix::operator()(int a, int b) const
{
    auto it = m.find({a, b});
    return it == m.end() ? 0 : it->second;
}

bool bcn_left_of(std::pair<int, int> x, std::pair<int, int> y)
{
    return x.first > y.first || (x.first == y.first && x.second > y.second);
}

bool bc1_left_of(std::pair<int, int> x, std::pair<int, int> y)
{
    return x.second < y.second || (x.second == y.second && x.first < y.first);
}

namespace {

// Distributes `total` over cells with per-cell [lo, hi] bounds.
void distribute(const std::vector<std::pair<int, int>>& cells, std::size_t pos, int remaining,
                const std::function<std::pair<int, int>(std::pair<int, int>, const MMatrix&)>& bound, MMatrix& m,
                const std::function<void()>& done)
{
    if (pos == cells.size()) {
        if (remaining == 0)
            done();
        return;
    }
    auto [lo, hi] = bound(cells[pos], m);
    hi = std::min(hi, remaining);
    for (int v = lo; v <= hi; ++v) {
        m.m[cells[pos]] = v;
        distribute(cells, pos + 1, remaining - v, bound, m, done);
    }
    m.m.erase(cells[pos]);
}

} // namespace

std::vector<MMatrix> enumerate_m(int n, const Composition& xi, Closed c)
{
    std::vector<MMatrix> out;
    MMatrix m;
    m.n = n;
    // groups: cells sharing one sum constraint, visited in dependency order
    std::vector<std::pair<std::vector<std::pair<int, int>>, int>> groups;
    if (c == Closed::bcN) {
        for (int b = 1; b <= n - 1; ++b) {
            std::vector<std::pair<int, int>> cells;
            for (int a = b + 1; a <= n; ++a)
                cells.emplace_back(a, b);
            groups.emplace_back(cells, xi[b]);
        }
    }
    else {
        for (int r = 2; r <= n; ++r) {
            std::vector<std::pair<int, int>> cells;
            for (int b = 1; b <= r - 1; ++b)
                cells.emplace_back(r, b);
            groups.emplace_back(cells, xi[r - 1]);
        }
    }
    auto bound = [&](std::pair<int, int> cell, const MMatrix& cur) -> std::pair<int, int> {
        auto [a, b] = cell;
        if (c == Closed::bcN)
            return {b > 1 ? cur(a, b - 1) : 0, 1 << 20};
        return {0, b <= a - 2 ? cur(a - 1, b) : 1 << 20};
    };
    std::function<void(std::size_t)> step = [&](std::size_t g) {
        if (g == groups.size()) {
            out.push_back(m);
            return;
        }
        distribute(groups[g].first, 0, groups[g].second, bound, m, [&] { step(g + 1); });
    };
    step(0);
    return out;
}

Vec closed_form(const EvalData& ev, const Composition& xi, const VarCollection& t, Closed c)
{
    top_preflight(ev, xi, t);
    const Flavor& f = ev.module->flavor();
    const int n = ev.module->rank();
    View w{&ev, 0, n};
    Vec acc(ev.module->dim(), Scalar(0));
    for (const auto& m : enumerate_m(n, xi, c)) {
        std::vector<std::pair<int, int>> pairs;
        for (int a = 2; a <= n; ++a)
            for (int b = 1; b < a; ++b)
                pairs.emplace_back(a, b);
        std::sort(pairs.begin(), pairs.end(), c == Closed::bcN ? bcn_left_of : bc1_left_of);
        Scalar coeff(1);
        Vec v = ev.module->singular();
        for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
            auto [a, b] = *it;
            const int prev = c == Closed::bcN ? m(a, b - 1) : m(a + 1, b);
            const int p = m(a, b) - prev;
            coeff = coeff / flavored_factorial(f, p);
            if (f.trig())
                coeff = coeff * f.q.pow(c == Closed::bcN ? static_cast<long>(prev) * (prev - m(a, b))
                                                         : static_cast<long>(prev) * p);
            v = w.lower(a, b, p, v);
        }
        if (is_zero(v))
            continue;
        Scalar s = sym_bar<Scalar>(f, t, [&](const VarCollection& u) {
            auto at = [&](int a, int i) -> const Scalar& {
                return u[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(i - 1)];
            };
            auto numer = [&](const Scalar& s, int lam) {
                return f.trig() ? f.q.pow(lam) * s - f.q.pow(-lam) * ev.x : s - ev.x + Scalar(lam);
            };
            Scalar g(1);
            if (c == Closed::bcN) {
                for (int a = 3; a <= n; ++a)
                    for (int b = 1; b <= a - 2; ++b) {
                        int tb = 0, tb1 = 0;
                        for (int cc = b + 1; cc <= a - 1; ++cc)
                            tb += m(cc, b);
                        for (int cc = b + 2; cc <= a - 1; ++cc)
                            tb1 += m(cc, b + 1);
                        for (int i = 1; i <= m(a, b); ++i) {
                            const Scalar& z = at(b, i + tb);
                            const int r = i + tb1;
                            g = g * numer(z, w.lambda(b + 1)) *
                                checked_inverse(at(b + 1, r) - z, var_name(b + 1, r) + " - " + var_name(b, i + tb));
                            for (int j = 1; j < r; ++j)
                                g = g * cross_factor(f, at(b + 1, j), z);
                        }
                    }
            }
            else {
                auto hat = [&](int a, int b) {
                    int s = 0;
                    for (int cc = 1; cc <= b; ++cc)
                        s += m(a, cc);
                    return s;
                };
                for (int a = 2; a <= n - 1; ++a)
                    for (int b = 1; b <= a - 1; ++b)
                        for (int i = 0; i < m(a + 1, b); ++i) {
                            const int pi = hat(a + 1, b) - i, qi = hat(a, b) - i;
                            const Scalar& y = at(a, pi);
                            g = g * numer(y, w.lambda(a)) *
                                checked_inverse(y - at(a - 1, qi), var_name(a, pi) + " - " + var_name(a - 1, qi));
                            for (int j = qi + 1; j <= xi[a - 1]; ++j)
                                g = g * cross_factor(f, y, at(a - 1, j));
                        }
            }
            return g;
        });
        axpy(acc, coeff * s, v);
    }
    if (f.trig())
        acc = (f.q - f.q.inverse()).pow(xi.total()) * acc;
    else
        for (const auto& level : t)
            for (const auto& ti : level)
                acc = checked_inverse(ti - ev.x, "t - x") * acc;
    return acc;
}

namespace {

Vec kron_vec(const Vec& a, const Vec& b)
{
    Vec r;
    r.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b)
            r.push_back(x * y);
    return r;
}

// Sum over shuffles: each level's variables are split into blocks of the given
// sizes, order kept within a block. fn receives the rearranged variables and
// the product of W over pairs lying in different blocks.
template <class Fn>
Vec coset_sum(const Flavor& f, const VarCollection& t, const std::vector<std::vector<int>>& block_sizes, Fn&& fn)
{
    std::vector<std::vector<int>> labels(t.size());
    for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t r = 0; r < block_sizes[a].size(); ++r)
            labels[a].insert(labels[a].end(), static_cast<std::size_t>(block_sizes[a][r]), static_cast<int>(r));
    Vec acc;
    VarCollection s = t;
    for (;;) {
        Scalar w(1);
        for (std::size_t a = 0; a < t.size(); ++a) {
            std::size_t pos = 0;
            for (std::size_t r = 0; r < block_sizes[a].size(); ++r)
                for (std::size_t i = 0; i < labels[a].size(); ++i)
                    if (labels[a][i] == static_cast<int>(r))
                        s[a][pos++] = t[a][i];
            std::size_t lo = 0;
            for (std::size_t r = 0; r < block_sizes[a].size(); ++r) {
                std::size_t hi = lo + static_cast<std::size_t>(block_sizes[a][r]);
                for (std::size_t i = lo; i < hi; ++i)
                    for (std::size_t j = hi; j < s[a].size(); ++j)
                        w = w * w_pair(f, s[a][i], s[a][j]);
                lo = hi;
            }
        }
        accumulate(acc, w, fn(static_cast<const VarCollection&>(s)));
        std::size_t a = 0;
        while (a < labels.size() && !std::next_permutation(labels[a].begin(), labels[a].end()))
            ++a;
        if (a == labels.size())
            break;
    }
    return acc;
}

void enumerate_chains(const std::vector<int>& xi, std::size_t nf, std::vector<std::vector<int>>& chain,
                      const std::function<void()>& fn)
{
    if (chain.size() + 1 == nf) {
        chain.push_back(xi);
        fn();
        chain.pop_back();
        return;
    }
    std::vector<int> cur(xi.size(), 0);
    const std::vector<int> prev = chain.back();
    std::function<void(std::size_t)> level = [&](std::size_t a) {
        if (a == xi.size()) {
            chain.push_back(cur);
            enumerate_chains(xi, nf, chain, fn);
            chain.pop_back();
            return;
        }
        for (int v = prev[a]; v <= xi[a]; ++v) {
            cur[a] = v;
            level(a + 1);
        }
    };
    level(0);
}

} // namespace

namespace {

class Splitter {
public:
    Splitter(const std::vector<RepPtr>& factors, const Composition& xi, const VarCollection& t,
             const FactorWeight& factor_bv)
        : factors_(factors), xi_(xi), t_(t), factor_bv_(factor_bv)
    {
        if (factors.empty())
            throw std::invalid_argument("tensor split needs at least one factor");
        check_shape(xi, t);
        n_ = factors.front()->rank();
        if (xi.levels() != n_ - 1)
            throw std::invalid_argument("composition length must be N-1");
        whole_ = make_assembly(factors);
        preflight(flavor(), whole_.get(), xi, t);
    }

    const Flavor& flavor() const { return factors_.front()->flavor(); }
    std::size_t dim() const { return whole_->dim(); }

    Vec term(const std::vector<std::vector<int>>& chain, SymMode mode)
    {
        const Flavor& f = flavor();
        const std::size_t nf = factors_.size();
        const int n1 = n_ - 1;
        if (chain.size() != nf + 1 || chain.front() != std::vector<int>(xi_.xi.size(), 0) || chain.back() != xi_.xi)
            throw std::invalid_argument("chain must run from 0 to xi through one step per factor");
        Scalar c(1);
        std::vector<std::vector<int>> blocks(xi_.xi.size());
        for (std::size_t r = 1; r <= nf; ++r)
            for (int a = 1; a <= n1; ++a) {
                const int d = chain[r][static_cast<std::size_t>(a - 1)] - chain[r - 1][static_cast<std::size_t>(a - 1)];
                if (d < 0)
                    throw std::invalid_argument("chain must be nondecreasing");
                blocks[static_cast<std::size_t>(a - 1)].push_back(d);
                c = c / flavored_factorial(f, d);
            }
        auto integrand = [&](const VarCollection& s) {
            auto at = [&](int a, int i) -> const Scalar& {
                return s[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(i - 1)];
            };
            auto eta = [&](std::size_t r, int a) { return chain[r][static_cast<std::size_t>(a - 1)]; };
            Scalar g(1);
            for (int a = 1; a <= n1 - 1; ++a)
                for (std::size_t r = 1; r + 1 <= nf; ++r)
                    for (int i = eta(r - 1, a + 1) + 1; i <= eta(r, a + 1); ++i)
                        for (int j = eta(r, a) + 1; j <= xi_[a]; ++j)
                            g = g * cross_factor(f, at(a + 1, i), at(a, j));
            for (int a = 1; a <= n1; ++a)
                for (std::size_t r = 1; r <= nf; ++r) {
                    const Rep& rep = *factors_[r - 1];
                    for (int i = 1; i <= eta(r - 1, a); ++i)
                        g = g * rep.eigenvalue(a, at(a, i));
                    for (int j = eta(r, a) + 1; j <= xi_[a]; ++j)
                        g = g * rep.eigenvalue(a + 1, at(a, j));
                }
            if (g.is_zero())
                return Vec(dim(), Scalar(0));
            Vec v{Scalar(1)};
            for (std::size_t r = 1; r <= nf; ++r) {
                VarCollection tr = slice(s, chain[r - 1], chain[r]);
                v = kron_vec(v, factor_vector(r - 1, minus(chain[r], chain[r - 1]), tr));
            }
            return g * v;
        };
        if (mode == SymMode::full)
            return c * sym_bar<Vec>(f, t_, integrand);
        return coset_sum(f, t_, blocks, integrand);
    }

    Vec total(SymMode mode)
    {
        Vec acc(dim(), Scalar(0));
        std::vector<std::vector<int>> chain{std::vector<int>(xi_.xi.size(), 0)};
        enumerate_chains(xi_.xi, factors_.size() + 1, chain, [&] { axpy(acc, Scalar(1), term(chain, mode)); });
        return acc;
    }

private:
    Vec factor_vector(std::size_t r, const std::vector<int>& part, const VarCollection& tr)
    {
        auto key = std::pair{r, tr};
        auto it = memo_.find(key);
        if (it != memo_.end())
            return it->second;
        Vec v = factor_bv_ ? factor_bv_(r, Composition{part}, tr) : weight_vector(*factors_[r], Composition{part}, tr);
        memo_.emplace(key, v);
        return v;
    }

    const std::vector<RepPtr>& factors_;
    const Composition& xi_;
    const VarCollection& t_;
    const FactorWeight& factor_bv_;
    int n_ = 0;
    RepPtr whole_;
    std::map<std::pair<std::size_t, VarCollection>, Vec> memo_;
};

} // namespace

Vec tensor_split(const std::vector<RepPtr>& factors, const Composition& xi, const VarCollection& t, SymMode mode,
                 const FactorWeight& factor_bv)
{
    Splitter s(factors, xi, t, factor_bv);
    return s.total(mode);
}

Vec tensor_split_term(const std::vector<RepPtr>& factors, const Composition& xi, const VarCollection& t,
                      const std::vector<std::vector<int>>& chain, SymMode mode, const FactorWeight& factor_bv)
{
    Splitter s(factors, xi, t, factor_bv);
    return s.term(chain, mode);
}

Scalar f_function(const Flavor& f, const std::vector<int>& eta, const std::vector<std::vector<int>>& l,
                  const VarCollection& s)
{
    require_sizes(eta, s, "F");
    Scalar r(1);
    const int n1 = static_cast<int>(eta.size());
    for (int a = 1; a <= n1 - 1; ++a) {
        const auto& la = l[static_cast<std::size_t>(a - 1)];
        const auto& lo = s[static_cast<std::size_t>(a - 1)];
        const auto& hi = s[static_cast<std::size_t>(a)];
        for (int i = 1; i <= eta[static_cast<std::size_t>(a)]; ++i) {
            const int li = la[static_cast<std::size_t>(i - 1)];
            r = r * checked_inverse(hi[i - 1] - lo[li - 1], var_name(a + 1, i) + " - " + var_name(a, li));
            for (int j = li + 1; j <= eta[static_cast<std::size_t>(a - 1)]; ++j)
                r = r * cross_factor(f, hi[i - 1], lo[j - 1]);
        }
    }
    return r;
}

Scalar g_function(const Flavor& f, const std::vector<Scalar>& y, const std::vector<Scalar>& z)
{
    const int p = static_cast<int>(y.size()), r = static_cast<int>(z.size());
    if (p > r)
        throw std::invalid_argument("G needs p <= r");
    Scalar s = sym_bar<Scalar>(f, VarCollection{z}, [&](const VarCollection& u) {
        const auto& zz = u[0];
        Scalar g(1);
        for (int i = 1; i <= p; ++i) {
            g = g * checked_inverse(y[i - 1] - zz[i + r - p - 1], "y - z");
            for (int j = i + 1; j <= p; ++j)
                g = g * cross_factor(f, y[i - 1], zz[j + r - p - 1]);
        }
        return g;
    });
    return s / flavored_factorial(f, r - p);
}

std::vector<std::vector<int>> increasing_tuples(int p, int r)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == p) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v <= r; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(1);
    return out;
}

} // namespace nbv
