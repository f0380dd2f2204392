#include "nbv/trace.hpp"

#include "nbv/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace nbv {

namespace {

constexpr std::size_t aux_cap = 256;

struct Leg {
    int level;
    Scalar t;
};

std::vector<Leg> flatten(const Composition& xi, const VarCollection& t)
{
    std::vector<Leg> out;
    for (int a = 1; a <= xi.levels(); ++a)
        for (int i = 0; i < xi[a]; ++i)
            out.push_back({a, t[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(i)]});
    return out;
}

std::size_t ipow(std::size_t b, std::size_t e)
{
    std::size_t r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        r *= b;
        if (r > aux_cap)
            return r;
    }
    return r;
}

Operator r_for(const Flavor& f, int n, const Scalar& later, const Scalar& earlier)
{
    return r_matrix(f, static_cast<std::size_t>(n), f.trig() ? later / earlier : later - earlier);
}

std::vector<std::pair<int, int>> r_pairs(std::size_t k, ROrder order)
{
    // (p, q) with p < q, factor R^{(q,p)}; listed left to right
    std::vector<std::pair<int, int>> out;
    for (std::size_t p = 0; p < k; ++p)
        for (std::size_t q = p + 1; q < k; ++q)
            out.emplace_back(static_cast<int>(p), static_cast<int>(q));
    if (order == ROrder::reversed)
        std::reverse(out.begin(), out.end());
    return out;
}

void ensure_cap(int n, std::size_t k)
{
    if (ipow(static_cast<std::size_t>(n), k) > aux_cap)
        throw PreconditionError("auxiliary space N^|xi| = " + std::to_string(n) + "^" + std::to_string(k) +
                                " exceeds the cap " + std::to_string(aux_cap));
}

void require_pole_free(const Scalar& v, const std::string& what)
{
    if (v.is_zero())
        throw PoleError("pole: " + what + " vanishes");
}

} // namespace

int Composition::prefix(int a) const
{
    int s = 0;
    for (int c = 1; c < a; ++c)
        s += (*this)[c];
    return s;
}

int Composition::total() const { return prefix(levels() + 1); }

void check_shape(const Composition& xi, const VarCollection& t)
{
    if (t.size() != xi.xi.size())
        throw std::invalid_argument("variable collection has " + std::to_string(t.size()) + " levels, expected " +
                                    std::to_string(xi.xi.size()));
    for (int a = 1; a <= xi.levels(); ++a) {
        if (xi[a] < 0)
            throw std::invalid_argument("negative composition entry");
        if (static_cast<int>(t[static_cast<std::size_t>(a - 1)].size()) != xi[a])
            throw std::invalid_argument("level " + std::to_string(a) + " has " +
                                        std::to_string(t[static_cast<std::size_t>(a - 1)].size()) +
                                        " variables, expected " + std::to_string(xi[a]));
    }
}

std::string var_name(int a, int i) { return "t^" + std::to_string(a) + "_" + std::to_string(i); }

void preflight(const Flavor& f, const Rep* rep, const Composition& xi, const VarCollection& t)
{
    check_shape(xi, t);
    const int L = xi.levels();
    auto at = [&](int a, int i) -> const Scalar& { return t[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(i - 1)]; };
    for (int a = 1; a <= L; ++a)
        for (int i = 1; i <= xi[a]; ++i) {
            if (f.trig())
                require_pole_free(at(a, i), var_name(a, i));
            if (rep)
                rep->check_point(at(a, i), var_name(a, i));
        }
    for (int a = 1; a <= L; ++a)
        for (int i = 1; i <= xi[a]; ++i)
            for (int j = i + 1; j <= xi[a]; ++j) {
                const Scalar &ti = at(a, i), &tj = at(a, j);
                std::string ni = var_name(a, i), nj = var_name(a, j);
                require_pole_free(tj - ti, nj + " - " + ni);
                if (f.trig()) {
                    require_pole_free(f.q * tj - f.q.inverse() * ti, "q " + nj + " - q^-1 " + ni);
                    require_pole_free(f.q * ti - f.q.inverse() * tj, "q " + ni + " - q^-1 " + nj);
                }
                else {
                    require_pole_free(tj - ti + Scalar(1), nj + " - " + ni + " + 1");
                    require_pole_free(ti - tj + Scalar(1), ni + " - " + nj + " + 1");
                }
            }
    for (int a = 1; a <= L; ++a)
        for (int b = a + 1; b <= L; ++b)
            for (int i = 1; i <= xi[a]; ++i)
                for (int j = 1; j <= xi[b]; ++j)
                    require_pole_free(at(b, j) - at(a, i), var_name(b, j) + " - " + var_name(a, i));
}

Scalar normalization(const Flavor& f, const Composition& xi, const VarCollection& t)
{
    check_shape(xi, t);
    Scalar c(1);
    const Scalar& q = f.q;
    for (int a = 1; a <= xi.levels(); ++a) {
        const auto& ta = t[static_cast<std::size_t>(a - 1)];
        for (std::size_t i = 0; i < ta.size(); ++i)
            for (std::size_t j = i + 1; j < ta.size(); ++j) {
                Scalar d = f.trig() ? q * ta[j] - q.inverse() * ta[i] : ta[j] - ta[i] + Scalar(1);
                require_pole_free(d, "normalization factor at level " + std::to_string(a));
                c = c * (f.trig() ? ta[i] / d : d.inverse());
            }
        for (int b = a + 1; b <= xi.levels(); ++b)
            for (const auto& ti : ta)
                for (const auto& tj : t[static_cast<std::size_t>(b - 1)]) {
                    Scalar d = tj - ti;
                    require_pole_free(d, "normalization factor between levels " + std::to_string(a) + " and " +
                                             std::to_string(b));
                    c = c * (f.trig() ? ti / d : d.inverse());
                }
    }
    return c;
}

std::vector<Monomial> trace_monomials(const Flavor& f, int n, const Composition& xi, const VarCollection& t,
                                      bool normalized, ROrder order)
{
    check_shape(xi, t);
    if (xi.levels() != n - 1)
        throw std::invalid_argument("composition length must be N-1");
    auto legs = flatten(xi, t);
    const std::size_t k = legs.size();
    if (k == 0)
        return {Monomial{Scalar(1), {}}};
    ensure_cap(n, k);
    const std::size_t un = static_cast<std::size_t>(n);
    const std::size_t total = ipow(un, k);

    // column E-index of leg p is its level, row index level + 1; the trace
    // pairs T_{level, y_p} with the entries of prod R applied to the row vector
    std::size_t start = 0;
    for (const auto& l : legs)
        start = start * un + static_cast<std::size_t>(l.level);
    Vec v(total);
    v[start] = Scalar(1);

    auto pairs = r_pairs(k, order);
    for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
        auto [p, q] = *it;
        Operator r = r_for(f, n, legs[static_cast<std::size_t>(q)].t, legs[static_cast<std::size_t>(p)].t);
        v = apply_two_leg(r, q + 1, p + 1, un, k, 1, v);
    }

    Scalar norm = normalized ? normalization(f, xi, t) : Scalar(1);
    std::vector<Monomial> out;
    for (std::size_t g = 0; g < total; ++g) {
        if (v[g].is_zero())
            continue;
        Monomial m{v[g] * norm, std::vector<std::pair<int, int>>(k)};
        std::size_t rest = g;
        for (std::size_t p = k; p-- > 0;) {
            m.ab[p] = {legs[p].level, static_cast<int>(rest % un) + 1};
            rest /= un;
        }
        out.push_back(std::move(m));
    }
    return out;
}

std::string monomial_label(const Flavor& f, const Composition& xi, const Monomial& m)
{
    std::string s;
    std::size_t p = 0;
    for (int a = 1; a <= xi.levels(); ++a)
        for (int i = 1; i <= xi[a]; ++i, ++p)
            s += std::string(f.trig() ? "L^-" : "T") + "_{" + std::to_string(m.ab[p].first) +
                 std::to_string(m.ab[p].second) + "}(" + var_name(a, i) + ")";
    return s.empty() ? "1" : s;
}

namespace {

std::vector<OpGrid> grids_for(const Rep& rep, const Composition& xi, const VarCollection& t)
{
    std::vector<OpGrid> out;
    for (int a = 1; a <= xi.levels(); ++a)
        for (int i = 1; i <= xi[a]; ++i)
            out.push_back(rep.T(t[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(i - 1)]));
    return out;
}

Operator assemble(const Rep& rep, const Composition& xi, const VarCollection& t, bool normalized)
{
    preflight(rep.flavor(), &rep, xi, t);
    auto mons = trace_monomials(rep.flavor(), rep.rank(), xi, t, normalized);
    auto grids = grids_for(rep, xi, t);
    auto legs = rep.legs();
    Operator out(legs, legs);
    for (const auto& m : mons) {
        Operator prod = Operator::identity(legs);
        for (std::size_t p = 0; p < m.ab.size(); ++p)
            prod = prod * grids[p](m.ab[p].first, m.ab[p].second);
        out += prod * m.coeff;
    }
    return out;
}

} // namespace

Operator hat_weight_trace(const Rep& rep, const Composition& xi, const VarCollection& t)
{
    return assemble(rep, xi, t, false);
}

Operator weight_trace(const Rep& rep, const Composition& xi, const VarCollection& t)
{
    return assemble(rep, xi, t, true);
}

Vec weight_apply(const Rep& rep, const Composition& xi, const VarCollection& t, const Vec& v, ROrder order)
{
    preflight(rep.flavor(), &rep, xi, t);
    auto mons = trace_monomials(rep.flavor(), rep.rank(), xi, t, true, order);
    auto grids = grids_for(rep, xi, t);
    Vec out(v.size());
    for (const auto& m : mons) {
        Vec w = v;
        for (std::size_t p = m.ab.size(); p-- > 0 && !is_zero(w);)
            w = grids[p](m.ab[p].first, m.ab[p].second).apply(w);
        axpy(out, m.coeff, w);
    }
    return out;
}

Vec weight_vector(const Rep& rep, const Composition& xi, const VarCollection& t)
{
    return weight_apply(rep, xi, t, rep.singular());
}

namespace {

struct Dense {
    std::vector<Space> legs;
    std::vector<int> module_positions;
    std::size_t k;
};

Dense dense_legs(const Rep& rep, std::size_t k)
{
    Dense d;
    d.k = k;
    d.legs = aux_legs(static_cast<std::size_t>(rep.rank()), k);
    for (const auto& s : rep.legs()) {
        d.legs.push_back(s);
        d.module_positions.push_back(static_cast<int>(d.legs.size()));
    }
    return d;
}

Operator t_product(const Rep& rep, const Dense& d, const std::vector<Leg>& legs, bool reversed)
{
    Operator out = Operator::identity(d.legs);
    for (std::size_t i = 0; i < legs.size(); ++i) {
        std::size_t p = reversed ? legs.size() - 1 - i : i;
        std::vector<int> pos{static_cast<int>(p) + 1};
        pos.insert(pos.end(), d.module_positions.begin(), d.module_positions.end());
        out = out * embed_leg(monodromy(rep, Sign::minus, legs[p].t), pos, d.legs);
    }
    return out;
}

Operator r_product(const Rep& rep, const Dense& d, const std::vector<Leg>& legs, ROrder order)
{
    Operator out = Operator::identity(d.legs);
    for (auto [p, q] : r_pairs(legs.size(), order)) {
        Operator r = r_for(rep.flavor(), rep.rank(), legs[static_cast<std::size_t>(q)].t,
                           legs[static_cast<std::size_t>(p)].t);
        out = out * embed_leg(r, {q + 1, p + 1}, d.legs);
    }
    return out;
}

} // namespace

Operator weight_trace_dense(const Rep& rep, const Composition& xi, const VarCollection& t, ROrder order)
{
    preflight(rep.flavor(), &rep, xi, t);
    auto legs = flatten(xi, t);
    const std::size_t k = legs.size();
    if (k == 0)
        return Operator::identity(rep.legs());
    ensure_cap(rep.rank(), k);
    Dense d = dense_legs(rep, k);
    std::vector<Operator> es;
    for (const auto& l : legs)
        es.push_back(matrix_unit(static_cast<std::size_t>(rep.rank()), l.level + 1, l.level));
    es.push_back(Operator::identity(rep.legs()));
    Operator e = kron(es).with_spaces(d.legs, d.legs);
    Operator full = t_product(rep, d, legs, false) * r_product(rep, d, legs, order) * e;
    // contract the auxiliary legs from the last one down
    for (std::size_t p = k; p >= 1; --p)
        full = partial_trace(full, {static_cast<int>(p)});
    return full.with_spaces(rep.legs(), rep.legs()) * normalization(rep.flavor(), xi, t);
}

Operator aux_product_t_first(const Rep& rep, const Composition& xi, const VarCollection& t)
{
    preflight(rep.flavor(), &rep, xi, t);
    auto legs = flatten(xi, t);
    ensure_cap(rep.rank(), legs.size());
    Dense d = dense_legs(rep, legs.size());
    return t_product(rep, d, legs, false) * r_product(rep, d, legs, ROrder::lexicographic);
}

Operator aux_product_t_last(const Rep& rep, const Composition& xi, const VarCollection& t)
{
    preflight(rep.flavor(), &rep, xi, t);
    auto legs = flatten(xi, t);
    ensure_cap(rep.rank(), legs.size());
    Dense d = dense_legs(rep, legs.size());
    return r_product(rep, d, legs, ROrder::lexicographic) * t_product(rep, d, legs, true);
}

std::vector<int> result_weight(const Rep& rep, const Composition& xi)
{
    auto w = rep.highest_weight();
    const int n = rep.rank();
    if (xi.levels() != n - 1)
        throw std::invalid_argument("composition length must be N-1");
    for (int a = 1; a <= n; ++a) {
        int cur = a <= n - 1 ? xi[a] : 0;
        int prev = a >= 2 ? xi[a - 1] : 0;
        w[static_cast<std::size_t>(a - 1)] += prev - cur;
    }
    return w;
}

void check_weight(const Rep& rep, const Composition& xi, const Vec& v)
{
    auto target = result_weight(rep, xi);
    auto ws = rep.basis_weights();
    if (ws.size() != v.size())
        throw std::logic_error("weight check: vector size does not match the module");
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero() && ws[i] != target)
            throw std::logic_error("weight-space violation at basis vector " + rep.basis_labels()[i]);
}

WeightResult apply_to_singular(const Operator& op, const Rep& rep, const Composition& xi)
{
    if (op.cols() != rep.dim() || op.rows() != rep.dim())
        throw std::invalid_argument("operator does not act on the assembly");
    WeightResult r;
    r.coordinates = op.apply(rep.singular());
    check_weight(rep, xi, r.coordinates);
    r.weight = result_weight(rep, xi);
    r.method = "operator";
    return r;
}

namespace {

// Block of `op` (acting on legs [aux..., module...] or [module..., aux...]) with
// aux row indices `rows` and aux column indices all equal to `col`.
Operator component(const Operator& op, const std::vector<Space>& module_legs, std::size_t aux_n, std::size_t k,
                   const std::vector<int>& rows, int col, bool aux_first)
{
    const std::size_t dm = total_dim(module_legs);
    std::size_t ri = 0, ci = 0;
    for (std::size_t p = 0; p < k; ++p) {
        ri = ri * aux_n + static_cast<std::size_t>(rows[p] - 1);
        ci = ci * aux_n + static_cast<std::size_t>(col - 1);
    }
    const std::size_t aux_dim = ipow(aux_n, k);
    Operator out(module_legs, module_legs);
    for (std::size_t x = 0; x < dm; ++x)
        for (std::size_t y = 0; y < dm; ++y)
            out.at(x, y) = aux_first ? op.at(ri * dm + x, ci * dm + y) : op.at(x * aux_dim + ri, y * aux_dim + ci);
    return out;
}

bool next_index(std::vector<int>& a, int n)
{
    for (std::size_t p = a.size(); p-- > 0;) {
        if (a[p] < n) {
            ++a[p];
            return true;
        }
        a[p] = 1;
    }
    return false;
}

} // namespace

Operator component_recursion(const RepPtr& rep, const Composition& xi, const VarCollection& t, Direction d,
                             MirrorReading reading)
{
    if (rep->flavor().trig())
        throw PreconditionError("component recursion is implemented for the rational case");
    const int n = rep->rank();
    if (n < 2)
        throw PreconditionError("component recursion needs N >= 2");
    preflight(rep->flavor(), rep.get(), xi, t);
    const std::size_t un1 = static_cast<std::size_t>(n - 1);
    auto legs = rep->legs();
    Operator out(legs, legs);

    if (d == Direction::first) {
        const int k = xi[1];
        const auto& t1 = t[0];
        std::vector<RepPtr> factors;
        for (const auto& x : t1)
            factors.push_back(make_L(n - 1, x));
        factors.push_back(pullback_psi(rep));
        RepPtr asmb = make_assembly(factors);
        Composition inner{std::vector<int>(xi.xi.begin() + 1, xi.xi.end())};
        VarCollection tin(t.begin() + 1, t.end());
        Operator g = weight_trace(*asmb, inner, tin);
        ensure_cap(n - 1, static_cast<std::size_t>(k));
        std::vector<int> a(static_cast<std::size_t>(k), 1);
        do {
            Operator c = component(g, legs, un1, static_cast<std::size_t>(k), a, 1, true);
            if (c.is_zero())
                continue;
            Operator prod = Operator::identity(legs);
            for (int i = 0; i < k; ++i)
                prod = prod * rep->T(1, a[static_cast<std::size_t>(i)] + 1, t1[static_cast<std::size_t>(i)]);
            out += prod * c;
        } while (next_index(a, n - 1));
        return out;
    }

    const int last = xi[n - 1];
    const auto& tl = t[static_cast<std::size_t>(n - 2)];
    const std::vector<Scalar>* points = &tl;
    if (reading != MirrorReading::last_level) {
        if (xi[1] != last)
            throw PreconditionError("first-level reading of the mirrored recursion needs xi^1 = xi^{N-1}");
        points = &t[0];
    }
    const int k = last;
    std::vector<RepPtr> factors{pullback_phi(rep)};
    for (const auto& x : *points)
        factors.push_back(make_Lbar(n - 1, x));
    RepPtr asmb = make_assembly(factors);
    Composition inner{std::vector<int>(xi.xi.begin(), xi.xi.end() - 1)};
    VarCollection tin(t.begin(), t.end() - 1);
    Operator g = weight_trace(*asmb, inner, tin);
    ensure_cap(n - 1, static_cast<std::size_t>(k));
    std::vector<int> a(static_cast<std::size_t>(k), 1);
    do {
        Operator c = component(g, legs, un1, static_cast<std::size_t>(k), a, n - 1, false);
        if (c.is_zero())
            continue;
        Operator prod = Operator::identity(legs);
        for (int i = k; i-- > 0;) {
            int ai = a[static_cast<std::size_t>(i)];
            const Scalar& ti = tl[static_cast<std::size_t>(i)];
            prod = prod * (reading == MirrorReading::literal ? rep->T(ai + 1, 1, ti) : rep->T(ai, n, ti));
        }
        out += prod * c;
    } while (next_index(a, n - 1));
    return out;
}

} // namespace nbv
