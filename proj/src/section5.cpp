#include "nbv/verify.hpp"

#include <map>
#include <queue>

namespace nbv {

std::string to_string(Relation r)
{
    switch (r) {
    case Relation::AA:
        return "AA";
    case Relation::BBR:
        return "BBR";
    case Relation::AB:
        return "AB";
    case Relation::DB:
        return "DB";
    case Relation::DD:
        return "DD";
    case Relation::RSym:
        return "RSym";
    case Relation::ABB:
        return "ABB";
    case Relation::DBB:
        return "DBB";
    case Relation::DlBk:
        return "DlBk";
    }
    return "?";
}

namespace {

// A = T_11, B_j = T_{1,j+1}, D_ij = T_{i+1,j+1} with auxiliary legs.
// Each leg is a row (B) or a square matrix (D) over C^{N-1}. Products of
// letters on one leg multiply as matrices; distinct legs tensor together.
// The row index of the whole product is flattened over the legs whose
// leftmost letter is D, so B^[1] D^(2) and D^(1) B^[2] share one shape.
enum class Source { full, first, second };

struct Letter {
    char kind;  // 'A', 'B' or 'D'
    Scalar u;
    int leg = -1;
    Source src = Source::full;
};

Letter A(const Scalar& u, Source s = Source::full) { return {'A', u, -1, s}; }
Letter B(const Scalar& u, int leg, Source s = Source::full) { return {'B', u, leg, s}; }
Letter D(const Scalar& u, int leg, Source s = Source::full) { return {'D', u, leg, s}; }

using Word = std::vector<Letter>;

class Engine {
public:
    Engine(int n, RepPtr first, RepPtr second) : n_(n), m_(n - 1), first_(first), second_(second)
    {
        full_ = make_tensor(first, second);
        vlegs_ = full_->legs();
        dv_ = total_dim(vlegs_);
    }

    int m() const { return m_; }
    const Rep& full() const { return *full_; }

    // The product of the letters with `legs` auxiliary legs.
    Operator word(const Word& w, int legs) const
    {
        std::vector<std::vector<std::size_t>> on_leg(static_cast<std::size_t>(legs));
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i].kind != 'A')
                on_leg[static_cast<std::size_t>(w[i].leg)].push_back(i);
        std::vector<int> row_dim(static_cast<std::size_t>(legs), m_);
        for (int l = 0; l < legs; ++l) {
            const auto& pos = on_leg[static_cast<std::size_t>(l)];
            for (std::size_t k = 1; k < pos.size(); ++k)
                if (w[pos[k]].kind == 'B')
                    throw std::logic_error("B must be the leftmost letter on its leg");
            if (!pos.empty() && w[pos[0]].kind == 'B')
                row_dim[static_cast<std::size_t>(l)] = 1;
        }
        std::size_t rows = 1, cols = 1;
        for (int l = 0; l < legs; ++l) {
            rows *= static_cast<std::size_t>(row_dim[static_cast<std::size_t>(l)]);
            cols *= static_cast<std::size_t>(m_);
        }
        std::vector<Space> cod{Space{rows, "row"}};
        cod.insert(cod.end(), vlegs_.begin(), vlegs_.end());
        std::vector<Space> dom = aux_legs(static_cast<std::size_t>(m_), static_cast<std::size_t>(legs));
        dom.insert(dom.end(), vlegs_.begin(), vlegs_.end());
        Operator out(cod, dom);

        std::vector<OpGrid> grids;
        for (const auto& l : w)
            grids.push_back(rep_for(l.src).T(l.u));

        // free indices: row and column per leg, plus one per interior bond
        std::vector<int> idx_row(static_cast<std::size_t>(legs)), idx_col(static_cast<std::size_t>(legs));
        std::vector<std::vector<int>> bonds(static_cast<std::size_t>(legs));
        for (int l = 0; l < legs; ++l) {
            const auto cnt = on_leg[static_cast<std::size_t>(l)].size();
            bonds[static_cast<std::size_t>(l)].assign(cnt > 0 ? cnt - 1 : 0, 0);
        }
        // index of letter position -> (leg, ordinal)
        std::vector<int> ordinal(w.size(), -1);
        for (int l = 0; l < legs; ++l) {
            const auto& pos = on_leg[static_cast<std::size_t>(l)];
            for (std::size_t k = 0; k < pos.size(); ++k)
                ordinal[pos[k]] = static_cast<int>(k);
        }
        // index entering / leaving the k-th letter on leg l
        auto in_index = [&](int l, int k) {
            return k == 0 ? idx_row[static_cast<std::size_t>(l)]
                          : bonds[static_cast<std::size_t>(l)][static_cast<std::size_t>(k - 1)];
        };
        auto out_index = [&](int l, int k) {
            const auto last = static_cast<int>(on_leg[static_cast<std::size_t>(l)].size()) - 1;
            return k == last ? idx_col[static_cast<std::size_t>(l)]
                             : bonds[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)];
        };

        std::vector<int*> counters;
        std::vector<int> limits;
        for (int l = 0; l < legs; ++l) {
            counters.push_back(&idx_row[static_cast<std::size_t>(l)]);
            limits.push_back(row_dim[static_cast<std::size_t>(l)]);
            counters.push_back(&idx_col[static_cast<std::size_t>(l)]);
            limits.push_back(m_);
            for (auto& b : bonds[static_cast<std::size_t>(l)]) {
                counters.push_back(&b);
                limits.push_back(m_);
            }
        }
        for (auto* c : counters)
            *c = 0;
        for (;;) {
            bool ok = true;
            for (int l = 0; l < legs && ok; ++l)
                if (on_leg[static_cast<std::size_t>(l)].empty() &&
                    idx_row[static_cast<std::size_t>(l)] != idx_col[static_cast<std::size_t>(l)])
                    ok = false;
            if (ok) {
                Operator prod = Operator::identity(vlegs_);
                for (std::size_t i = 0; i < w.size(); ++i) {
                    const Letter& let = w[i];
                    const OpGrid& gr = grids[i];
                    if (let.kind == 'A') {
                        prod = prod * gr(1, 1);
                        continue;
                    }
                    const int k = ordinal[i];
                    const int col = out_index(let.leg, k);
                    if (let.kind == 'B')
                        prod = prod * gr(1, col + 2);
                    else
                        prod = prod * gr(in_index(let.leg, k) + 2, col + 2);
                }
                std::size_t r = 0, c = 0;
                for (int l = 0; l < legs; ++l) {
                    r = r * static_cast<std::size_t>(row_dim[static_cast<std::size_t>(l)]) +
                        static_cast<std::size_t>(idx_row[static_cast<std::size_t>(l)]);
                    c = c * static_cast<std::size_t>(m_) + static_cast<std::size_t>(idx_col[static_cast<std::size_t>(l)]);
                }
                for (std::size_t i = 0; i < dv_; ++i)
                    for (std::size_t j = 0; j < dv_; ++j)
                        out.at(r * dv_ + i, c * dv_ + j) += prod.at(i, j);
            }
            std::size_t p = 0;
            while (p < counters.size() && ++*counters[p] == limits[p]) {
                *counters[p] = 0;
                ++p;
            }
            if (p == counters.size())
                break;
        }
        return out;
    }

    // X times R-bar^{(i j)}(w) on the column legs (0-based)
    Operator rbar_right(const Operator& x, int i, int j, const Scalar& w) const
    {
        return x * on_columns(rbar(w), i, j, x);
    }
    // R-bar^{(i j)}(w) times X on the row legs; every leg must be square
    Operator rbar_left(const Operator& x, int i, int j, const Scalar& w) const
    {
        Operator e = on_columns(rbar(w), i, j, x);
        return e.with_spaces(x.codomain(), x.codomain()) * x;
    }
    Operator rcheck_right(const Operator& x, int i, int j, const Scalar& w) const
    {
        return x * on_columns(r_check(Flavor::rational(), static_cast<std::size_t>(m_), w, true), i, j, x);
    }

    // X times (M on the auxiliary legs) (x) 1
    Operator aux_right(const Operator& x, const Operator& mat) const
    {
        return x * kron(mat, Operator::identity(vlegs_)).with_spaces(x.domain(), x.domain());
    }

private:
    const Rep& rep_for(Source s) const
    {
        return s == Source::full ? *full_ : s == Source::first ? *lifted_first() : *lifted_second();
    }
    RepPtr lifted_first() const
    {
        if (!lift1_)
            lift1_ = make_tensor(first_, make_trivial(second_));
        return lift1_;
    }
    RepPtr lifted_second() const
    {
        if (!lift2_)
            lift2_ = make_tensor(make_trivial(first_), second_);
        return lift2_;
    }
    static RepPtr make_trivial(const RepPtr& like);

    Operator rbar(const Scalar& w) const
    {
        const auto sm = static_cast<std::size_t>(m_);
        return Operator::identity(aux_legs(sm, 2)) + flip(sm) * checked_inv(w);
    }
    static Scalar checked_inv(const Scalar& w)
    {
        if (w.is_zero())
            throw PoleError("pole: coinciding spectral parameters");
        return w.inverse();
    }
    Operator on_columns(const Operator& op, int i, int j, const Operator& x) const
    {
        return embed_leg(op, {i + 1, j + 1}, x.domain());
    }

    int n_, m_;
    RepPtr first_, second_, full_;
    mutable RepPtr lift1_, lift2_;
    std::vector<Space> vlegs_;
    std::size_t dv_;
};

// T(u) = 1 on a space shaped like `like`, so that X (x) 1 and 1 (x) X can be
// read off the coproduct.
class Trivial : public Rep {
public:
    explicit Trivial(RepPtr like) : like_(std::move(like)) {}
    int rank() const override { return like_->rank(); }
    const Flavor& flavor() const override { return like_->flavor(); }
    std::vector<Space> legs() const override { return like_->legs(); }
    OpGrid series(Sign, const Scalar&) const override
    {
        const int n = rank();
        std::vector<Operator> ops;
        for (int a = 1; a <= n; ++a)
            for (int b = 1; b <= n; ++b)
                ops.push_back(a == b ? Operator::identity(legs()) : Operator::scalar(legs(), Scalar(0)));
        return OpGrid(n, std::move(ops));
    }
    Vec singular() const override { return like_->singular(); }
    std::vector<std::string> basis_labels() const override { return like_->basis_labels(); }
    std::vector<std::vector<int>> basis_weights() const override { return like_->basis_weights(); }
    std::vector<int> highest_weight() const override { return std::vector<int>(static_cast<std::size_t>(rank()), 0); }
    Operator gl_e(int, int) const override { return Operator::scalar(legs(), Scalar(0)); }
    Operator gl_k(int, int) const override { return Operator::identity(legs()); }
    void check_point(const Scalar&, const std::string&) const override {}
    std::vector<Scalar> eval_points() const override { return {}; }
    std::string describe() const override { return "trivial"; }

private:
    RepPtr like_;
};

RepPtr Engine::make_trivial(const RepPtr& like) { return std::make_shared<Trivial>(like); }

using Fn = std::function<Operator(const std::vector<Scalar>&)>;

// Reduced words for every element of S_k, built by left multiplication.
std::vector<std::vector<int>> group_words(int k)
{
    auto arrangement = [k](const std::vector<int>& word) {
        std::vector<int> a(static_cast<std::size_t>(k));
        std::iota(a.begin(), a.end(), 0);
        for (int i : word)
            std::swap(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(i + 1)]);
        return a;
    };
    std::vector<std::vector<int>> words{{}};
    std::map<std::vector<int>, bool> seen{{arrangement({}), true}};
    std::queue<std::vector<int>> todo;
    todo.push({});
    while (!todo.empty()) {
        auto w = todo.front();
        todo.pop();
        for (int i = 0; i + 1 < k; ++i) {
            std::vector<int> next{i};
            next.insert(next.end(), w.begin(), w.end());
            auto a = arrangement(next);
            if (seen.count(a))
                continue;
            seen[a] = true;
            words.push_back(next);
            todo.push(next);
        }
    }
    return words;
}

// (sigma f)(u) for sigma = s_{w_1} s_{w_2} ..., transpositions acting on the
// legs first_leg + i, first_leg + i + 1.
Operator act(const Engine& e, const Fn& f, const std::vector<int>& word, std::vector<Scalar> u, int first_leg)
{
    std::vector<std::pair<int, Scalar>> tail;
    for (int i : word) {
        tail.emplace_back(i, u[static_cast<std::size_t>(i)] - u[static_cast<std::size_t>(i + 1)]);
        std::swap(u[static_cast<std::size_t>(i)], u[static_cast<std::size_t>(i + 1)]);
    }
    Operator r = f(u);
    for (auto it = tail.rbegin(); it != tail.rend(); ++it)
        r = e.rcheck_right(r, first_leg + it->first, first_leg + it->first + 1, it->second);
    return r;
}

Operator rsym(const Engine& e, const Fn& f, const std::vector<Scalar>& u, int first_leg)
{
    Operator total;
    bool first = true;
    for (const auto& w : group_words(static_cast<int>(u.size()))) {
        Operator t = act(e, f, w, u, first_leg);
        if (first)
            total = t;
        else
            total += t;
        first = false;
    }
    return total;
}

Scalar inv(const Scalar& d)
{
    if (d.is_zero())
        throw PoleError("pole: coinciding spectral parameters");
    return d.inverse();
}

// Distinct points away from the poles of the factors, with no two at
// distance 0 or 1.
std::vector<Scalar> sample_params(std::mt19937_64& g, const Rep& rep, int count)
{
    for (int attempt = 0; attempt < 500; ++attempt) {
        std::vector<Scalar> u;
        for (int i = 0; i < count; ++i)
            u.push_back(small_rational(g));
        bool ok = true;
        for (std::size_t i = 0; i < u.size() && ok; ++i) {
            try {
                rep.check_point(u[i], "u");
            }
            catch (const PoleError&) {
                ok = false;
            }
            for (std::size_t j = i + 1; j < u.size() && ok; ++j) {
                Scalar d = u[i] - u[j];
                if (d.is_zero() || d == Scalar(1) || d == Scalar(-1))
                    ok = false;
            }
        }
        if (ok)
            return u;
    }
    throw PreconditionError("no admissible spectral parameters found");
}

std::vector<Scalar> tail_of(const std::vector<Scalar>& v)
{
    return std::vector<Scalar>(v.begin() + 1, v.end());
}

Operator b_product(const Engine& e, const std::vector<Scalar>& u, int first_leg, int legs, Source s = Source::full)
{
    Word w;
    for (std::size_t i = 0; i < u.size(); ++i)
        w.push_back(B(u[i], first_leg + static_cast<int>(i), s));
    return e.word(w, legs);
}

ReportEntry run_relation(Relation rel, int n, int k, Variant variant, std::mt19937_64& g)
{
    auto mod = build_module(ModuleSpec{n, {}, Scalar(0), {}}, Flavor::rational());
    Scalar x = small_rational(g), y = small_rational(g);
    while (y == x)
        y = small_rational(g);
    Engine e(n, make_eval(mod, x), make_eval(mod, y));
    nlohmann::json pt{{"x", x.str()}, {"y", y.str()}};
    const bool scaled = variant == Variant::scaled;

    int count = 2;
    if (rel == Relation::RSym || rel == Relation::DlBk)
        count = k;
    else if (rel == Relation::ABB || rel == Relation::DBB)
        count = k + 1;
    auto params = sample_params(g, e.full(), count);
    pt["u"] = to_json(params);
    const Scalar& u = params[0];
    const Scalar v = params.size() > 1 ? params[1] : Scalar(0);

    switch (rel) {
    case Relation::AA:
        return compare("", pt, e.word({A(u), A(v)}, 0), e.word({A(v), A(u)}, 0));
    case Relation::BBR: {
        Operator lhs = e.word({B(u, 0), B(v, 1)}, 2);
        Operator rhs = e.rbar_right(e.word({B(v, 1), B(u, 0)}, 2), 0, 1, u - v) * ((u - v) * inv(u - v + Scalar(1)));
        return compare("", pt, lhs, rhs);
    }
    case Relation::AB: {
        Operator lhs = e.word({A(u), B(v, 0)}, 1);
        Operator rhs = e.word({B(v, 0), A(u)}, 1) * ((u - v - Scalar(1)) * inv(u - v)) +
                       e.word({B(u, 0), A(v)}, 1) * inv(u - v);
        return compare("", pt, lhs, rhs);
    }
    case Relation::DB: {
        Operator lhs = e.word({D(u, 0), B(v, 1)}, 2);
        Scalar c = scaled ? (u - v + Scalar(1)) * inv(u - v) : Scalar(1);
        Operator rhs = e.rbar_right(e.word({B(v, 1), D(u, 0)}, 2), 0, 1, u - v) * c -
                       e.word({B(u, 0), D(v, 1)}, 2) * inv(u - v);
        return compare("", pt, lhs, rhs);
    }
    case Relation::DD: {
        Operator lhs = e.rbar_left(e.word({D(u, 0), D(v, 1)}, 2), 0, 1, u - v);
        Operator rhs = e.rbar_right(e.word({D(v, 1), D(u, 0)}, 2), 0, 1, u - v);
        return compare("", pt, lhs, rhs);
    }
    case Relation::RSym: {
        Fn bprod = [&](const std::vector<Scalar>& w) { return b_product(e, w, 0, k); };
        Operator base = bprod(params);
        for (int i = 0; i + 1 < k; ++i) {
            Operator moved = act(e, bprod, {i}, params, 0);
            if (!(moved == base)) {
                auto r = compare("", pt, base, moved);
                r.reason = "product of B not invariant under s_" + std::to_string(i + 1);
                return r;
            }
        }
        // group laws on a non-symmetric expression
        std::size_t dim = 1;
        for (int i = 0; i < k; ++i)
            dim *= static_cast<std::size_t>(e.m());
        Operator mat(aux_legs(static_cast<std::size_t>(e.m()), static_cast<std::size_t>(k)),
                     aux_legs(static_cast<std::size_t>(e.m()), static_cast<std::size_t>(k)));
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c)
                mat.at(r, c) = small_rational(g, 5);
        Fn generic = [&](const std::vector<Scalar>& w) {
            Scalar h(0);
            for (std::size_t i = 0; i < w.size(); ++i)
                h += Scalar(static_cast<int>(i + 1)) * w[i] * w[i].pow(static_cast<long>(i));
            return e.aux_right(b_product(e, w, 0, k), mat) * h;
        };
        Operator g0 = generic(params);
        for (int i = 0; i + 1 < k; ++i) {
            Operator twice = act(e, generic, {i, i}, params, 0);
            if (!(twice == g0)) {
                auto r = compare("", pt, g0, twice);
                r.reason = "s_" + std::to_string(i + 1) + " is not an involution";
                return r;
            }
        }
        for (int i = 0; i + 2 < k; ++i) {
            Operator l = act(e, generic, {i, i + 1, i}, params, 0);
            Operator r = act(e, generic, {i + 1, i, i + 1}, params, 0);
            if (!(l == r)) {
                auto res = compare("", pt, l, r);
                res.reason = "braid relation fails at " + std::to_string(i + 1);
                return res;
            }
        }
        ReportEntry ok;
        ok.point = pt;
        return ok;
    }
    case Relation::ABB: {
        const auto us = tail_of(params);
        Word lw{A(u)};
        for (int i = 0; i < k; ++i)
            lw.push_back(B(us[static_cast<std::size_t>(i)], i));
        Operator lhs = e.word(lw, k);
        Scalar c(1);
        for (const auto& ui : us)
            c *= (u - ui - Scalar(1)) * inv(u - ui);
        Word fw;
        for (int i = 0; i < k; ++i)
            fw.push_back(B(us[static_cast<std::size_t>(i)], i));
        fw.push_back(A(u));
        Fn inner = [&](const std::vector<Scalar>& w) {
            Scalar s = inv(u - w[0]);
            for (std::size_t i = 1; i < w.size(); ++i)
                s *= (w[0] - w[i] - Scalar(1)) * inv(w[0] - w[i]);
            Word iw{B(u, 0)};
            for (int i = 1; i < k; ++i)
                iw.push_back(B(w[static_cast<std::size_t>(i)], i));
            iw.push_back(A(w[0]));
            return e.word(iw, k) * s;
        };
        Operator rhs = e.word(fw, k) * c + rsym(e, inner, us, 0) * inv(factorial(k - 1));
        return compare("", pt, lhs, rhs);
    }
    case Relation::DBB: {
        const auto us = tail_of(params);
        const int legs = k + 1;
        Word lw{D(u, 0)};
        for (int i = 1; i <= k; ++i)
            lw.push_back(B(us[static_cast<std::size_t>(i - 1)], i));
        Operator lhs = e.word(lw, legs);
        Word fw;
        for (int i = 1; i <= k; ++i)
            fw.push_back(B(us[static_cast<std::size_t>(i - 1)], i));
        fw.push_back(D(u, 0));
        Operator first = e.word(fw, legs);
        Scalar c1(1);
        for (int i = k; i >= 1; --i) {
            const Scalar& ui = us[static_cast<std::size_t>(i - 1)];
            first = e.rbar_right(first, 0, i, u - ui);
            if (scaled)
                c1 *= (u - ui + Scalar(1)) * inv(u - ui);
        }
        Fn inner = [&](const std::vector<Scalar>& w) {
            Scalar s = inv(u - w[0]);
            if (scaled)
                for (std::size_t i = 1; i < w.size(); ++i)
                    s *= (w[0] - w[i] + Scalar(1)) * inv(w[0] - w[i]);
            Word iw{B(u, 0)};
            for (int i = 2; i <= k; ++i)
                iw.push_back(B(w[static_cast<std::size_t>(i - 1)], i));
            iw.push_back(D(w[0], 1));
            Operator r = e.word(iw, legs);
            for (int i = k; i >= 2; --i)
                r = e.rbar_right(r, 1, i, w[0] - w[static_cast<std::size_t>(i - 1)]);
            return r * s;
        };
        Operator rhs = first * c1 - rsym(e, inner, us, 1) * inv(factorial(k - 1));
        return compare("", pt, lhs, rhs);
    }
    case Relation::DlBk: {
        Operator lhs = b_product(e, params, 0, k);
        Operator rhs;
        for (int l = 0; l <= k; ++l) {
            Fn term = [&, l](const std::vector<Scalar>& w) {
                Scalar s(1);
                for (int i = 0; i < k; ++i)
                    for (int j = i + 1; j < k; ++j) {
                        const Scalar d = w[static_cast<std::size_t>(i)] - w[static_cast<std::size_t>(j)];
                        s *= (d - Scalar(1)) * inv(d);
                    }
                Word tw;
                for (int i = 0; i < k; ++i)
                    tw.push_back(B(w[static_cast<std::size_t>(i)], i, i < l ? Source::first : Source::second));
                for (int i = 0; i < l; ++i)
                    tw.push_back(A(w[static_cast<std::size_t>(i)], Source::second));
                for (int i = l; i < k; ++i)
                    tw.push_back(D(w[static_cast<std::size_t>(i)], i, Source::first));
                return e.word(tw, k) * s;
            };
            Operator t = rsym(e, term, params, 0) * inv(factorial(l) * factorial(k - l));
            if (l == 0)
                rhs = t;
            else
                rhs += t;
        }
        return compare("", pt, lhs, rhs);
    }
    }
    throw std::logic_error("unknown relation");
}

} // namespace

std::vector<Job> section5_jobs(Relation r, int n, int k, int trials, Variant variant)
{
    std::vector<Job> jobs;
    if (r == Relation::RSym && k < 2)
        return jobs;
    for (int t = 0; t < trials; ++t) {
        nlohmann::json point{{"case", "rational"}, {"n", n}, {"k", k}, {"trial", t}};
        if (r == Relation::DB || r == Relation::DBB)
            point["variant"] = variant == Variant::plain ? "plain" : "scaled";
        jobs.push_back({"section5/" + to_string(r), point,
                        [r, n, k, variant](std::mt19937_64& g) { return run_relation(r, n, k, variant, g); }});
    }
    return jobs;
}

} // namespace nbv
