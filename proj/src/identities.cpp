#include "nbv/verify.hpp"

namespace nbv {

std::string to_string(Identity i)
{
    switch (i) {
    case Identity::k_factorial:
        return "k-factorial";
    case Identity::k_factorial_q:
        return "k-factorial-q";
    case Identity::gyz:
        return "gyz";
    case Identity::gyz1:
        return "gyz1";
    case Identity::gyzq:
        return "gyzq";
    case Identity::gyzq1:
        return "gyzq1";
    case Identity::fly:
        return "fly";
    }
    return "?";
}

namespace {

// The right-hand sides below avoid sym_bar, w_factor and cross_factor on purpose.

Scalar inv(const Scalar& d)
{
    if (d.is_zero())
        throw PoleError("pole: sampled variables collide");
    return d.inverse();
}

Scalar pair_w(const Flavor& f, const Scalar& a, const Scalar& b)
{
    if (f.trig())
        return (a / f.q - f.q * b) * inv(a - b);
    return (a - b - Scalar(1)) * inv(a - b);
}

Scalar pair_p(const Flavor& f, const Scalar& a, const Scalar& b)
{
    if (f.trig())
        return (f.q * a - b / f.q) * inv(a - b);
    return (a - b + Scalar(1)) * inv(a - b);
}

Scalar pair_p_inv(const Scalar& q, const Scalar& a, const Scalar& b)
{
    return (a / q - q * b) * inv(a - b);
}

// [n]_q! as a product of q^{i-1} + q^{i-3} + ... + q^{1-i}
Scalar q_factorial_by_sums(int n, const Scalar& q)
{
    Scalar r(1);
    for (int i = 1; i <= n; ++i) {
        Scalar s(0);
        for (int j = 0; j < i; ++j)
            s += q.pow(i - 1 - 2 * j);
        r *= s;
    }
    return r;
}

Scalar int_factorial(int n)
{
    long r = 1;
    for (int i = 2; i <= n; ++i)
        r *= i;
    return Scalar(r);
}

// Sum over the listed levels' permutations of fn(sigma s) times the explicit
// W of each permuted level.
template <class F>
Scalar explicit_sym(const Flavor& f, const VarCollection& s, const std::vector<std::size_t>& levels, F&& fn)
{
    Scalar total(0);
    VarCollection cur = s;
    std::function<void(std::size_t, Scalar)> rec = [&](std::size_t k, Scalar w) {
        if (k == levels.size()) {
            total += w * fn(static_cast<const VarCollection&>(cur));
            return;
        }
        const std::size_t a = levels[k];
        std::vector<std::size_t> idx(s[a].size());
        std::iota(idx.begin(), idx.end(), 0);
        do {
            Scalar wa(1);
            for (std::size_t i = 0; i < idx.size(); ++i) {
                cur[a][i] = s[a][idx[i]];
            }
            for (std::size_t i = 0; i < idx.size(); ++i)
                for (std::size_t j = i + 1; j < idx.size(); ++j)
                    wa *= pair_w(f, cur[a][i], cur[a][j]);
            rec(k + 1, w * wa);
        } while (std::next_permutation(idx.begin(), idx.end()));
        cur[a] = s[a];
    };
    rec(0, Scalar(1));
    return total;
}

std::vector<Scalar> sample_vars(std::mt19937_64& g, int count)
{
    std::vector<Scalar> v;
    for (int i = 0; i < count; ++i)
        v.push_back(small_rational(g));
    return v;
}

nlohmann::json vars(const std::vector<Scalar>& v)
{
    return to_json(v);
}

// Retries the sample until neither side hits a pole.
ReportEntry with_resampling(std::mt19937_64& g, const std::function<ReportEntry(std::mt19937_64&)>& body)
{
    for (int k = 0; k < 100; ++k) {
        try {
            return body(g);
        }
        catch (const PoleError&) {
        }
    }
    throw PreconditionError("no pole-free sample after 100 attempts");
}

std::vector<Flavor> q_flavors(Scale scale)
{
    std::vector<Flavor> fs{Flavor::trigonometric(Scalar(2)), Flavor::trigonometric(make_scalar(2, 3))};
    if (scale == Scale::full)
        fs.push_back(Flavor::trigonometric(make_scalar(-3, 5)));
    return fs;
}

nlohmann::json flavor_point(const Flavor& f)
{
    nlohmann::json j{{"case", to_string(f.kind)}};
    if (f.trig())
        j["q"] = f.q.str();
    return j;
}

// sum over d of Sym_y[ prod_i c(i, d_i) / (y_i - z_{d_i}) * prod_{j in J(d_i)} pf(y_i, z_j) ]
template <class Coef, class Range, class Pf>
Scalar d_sum(const Flavor& f, const std::vector<Scalar>& y, const std::vector<Scalar>& z, Coef&& coef, Range&& in_range,
             Pf&& pf)
{
    const int p = static_cast<int>(y.size()), r = static_cast<int>(z.size());
    Scalar total(0);
    for (const auto& d : increasing_tuples(p, r))
        total += explicit_sym(f, VarCollection{y}, {0}, [&](const VarCollection& s) {
            Scalar v(1);
            for (int i = 1; i <= p; ++i) {
                const Scalar& yi = s[0][static_cast<std::size_t>(i - 1)];
                const int di = d[static_cast<std::size_t>(i - 1)];
                v *= coef(i, di) * inv(yi - z[static_cast<std::size_t>(di - 1)]);
                for (int j = 1; j <= r; ++j)
                    if (in_range(j, di))
                        v *= pf(yi, z[static_cast<std::size_t>(j - 1)]);
            }
            return v;
        });
    return total;
}

Job gyz_job(Identity which, const Flavor& f, int p, int r, int sample, Reading reading)
{
    nlohmann::json point = flavor_point(f);
    point["p"] = p;
    point["r"] = r;
    point["sample"] = sample;
    if (which == Identity::gyz1 || which == Identity::gyzq1)
        point["reading"] = reading == Reading::printed ? "printed" : "derived";
    return {"identities/" + to_string(which), point, [=](std::mt19937_64& g) {
                return with_resampling(g, [&](std::mt19937_64& gg) {
                    auto y = sample_vars(gg, p), z = sample_vars(gg, r);
                    nlohmann::json pt{{"y", vars(y)}, {"z", vars(z)}};
                    Scalar lhs, rhs;
                    switch (which) {
                    case Identity::gyz:
                        lhs = g_function(f, y, z);
                        rhs = d_sum(f, y, z, [](int, int) { return Scalar(1); },
                                    [](int j, int di) { return j > di; },
                                    [&](const Scalar& a, const Scalar& b) { return pair_p(f, a, b); });
                        break;
                    case Identity::gyz1: {
                        const Scalar shift(reading == Reading::printed ? 1 : -1);
                        auto pf = [&](const Scalar& a, const Scalar& b) {
                            if ((a - b).is_zero())
                                throw PoleError("pole: y - z");
                            return (a - b + shift) / (a - b);
                        };
                        lhs = sym_bar<Scalar>(f, VarCollection{z}, [&](const VarCollection& zz) {
                                  Scalar v(1);
                                  for (int i = 1; i <= p; ++i) {
                                      const Scalar& yi = y[static_cast<std::size_t>(i - 1)];
                                      const Scalar& zi = zz[0][static_cast<std::size_t>(i - 1)];
                                      if ((yi - zi).is_zero())
                                          throw PoleError("pole: y - z");
                                      v = v / (yi - zi);
                                      for (int j = 1; j < i; ++j)
                                          v = v * pf(yi, zz[0][static_cast<std::size_t>(j - 1)]);
                                  }
                                  return v;
                              }) /
                              factorial(r - p);
                        rhs = d_sum(f, y, z, [](int, int) { return Scalar(1); },
                                    [](int j, int di) { return j < di; },
                                    [&](const Scalar& a, const Scalar& b) { return (a - b + shift) * inv(a - b); });
                        break;
                    }
                    case Identity::gyzq:
                        lhs = g_function(f, y, z) * q_factorial(r - p, f.q);
                        rhs = q_factorial_by_sums(r - p, f.q) *
                              d_sum(f, y, z, [&](int i, int di) { return f.q.pow(i - di); },
                                    [](int j, int di) { return j > di; },
                                    [&](const Scalar& a, const Scalar& b) { return pair_p(f, a, b); });
                        break;
                    case Identity::gyzq1: {
                        const bool inclusive = reading == Reading::printed;
                        lhs = sym_bar<Scalar>(f, VarCollection{z}, [&](const VarCollection& zz) {
                            Scalar v(1);
                            for (int i = 1; i <= p; ++i) {
                                const Scalar& yi = y[static_cast<std::size_t>(i - 1)];
                                const Scalar& zi = zz[0][static_cast<std::size_t>(i - 1)];
                                if ((yi - zi).is_zero())
                                    throw PoleError("pole: y - z");
                                v = v * f.q.pow(p - r) / (yi - zi);
                                for (int j = 1; inclusive ? j <= i : j < i; ++j) {
                                    const Scalar& zj = zz[0][static_cast<std::size_t>(j - 1)];
                                    if ((yi - zj).is_zero())
                                        throw PoleError("pole: y - z");
                                    v = v * (yi / f.q - f.q * zj) / (yi - zj);
                                }
                            }
                            return v;
                        });
                        rhs = q_factorial_by_sums(r - p, f.q) *
                              d_sum(f, y, z, [&](int i, int di) { return f.q.pow(i - di); },
                                    [](int j, int di) { return j < di; },
                                    [&](const Scalar& a, const Scalar& b) { return pair_p_inv(f.q, a, b); });
                        break;
                    }
                    default:
                        break;
                    }
                    return compare("", pt, lhs, rhs);
                });
            }};
}

Job k_factorial_job(const Flavor& f, int k, int sample)
{
    nlohmann::json point = flavor_point(f);
    point["k"] = k;
    point["sample"] = sample;
    const std::string name = f.trig() ? "identities/k-factorial-q" : "identities/k-factorial";
    return {name, point, [=](std::mt19937_64& g) {
                return with_resampling(g, [&](std::mt19937_64& gg) {
                    auto s = sample_vars(gg, k);
                    Scalar lhs = sym_bar<Scalar>(f, VarCollection{s}, [](const VarCollection&) { return Scalar(1); });
                    Scalar rhs = f.trig() ? q_factorial_by_sums(k, f.q) : int_factorial(k);
                    return compare("", {{"s", vars(s)}}, lhs, rhs);
                });
            }};
}

// All nonincreasing eta of length n1 with eta^1 <= top.
std::vector<std::vector<int>> nonincreasing(int n1, int top)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int bound) {
        if (static_cast<int>(cur.size()) == n1) {
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= bound; ++v) {
            cur.push_back(v);
            rec(v);
            cur.pop_back();
        }
    };
    rec(top);
    return out;
}

// every collection l: l[a-1] is an increasing eta^{a+1}-tuple in 1..eta^a
std::vector<std::vector<std::vector<int>>> collections(const std::vector<int>& eta)
{
    std::vector<std::vector<std::vector<int>>> out{{}};
    for (std::size_t a = 0; a + 1 < eta.size(); ++a) {
        std::vector<std::vector<std::vector<int>>> next;
        for (const auto& base : out)
            for (const auto& t : increasing_tuples(eta[a + 1], eta[a])) {
                auto c = base;
                c.push_back(t);
                next.push_back(std::move(c));
            }
        out = std::move(next);
    }
    return out;
}

Job fly_job(const std::vector<int>& eta, int sample)
{
    nlohmann::json point{{"case", "rational"}, {"eta", eta}, {"sample", sample}};
    return {"identities/fly", point, [=](std::mt19937_64& g) {
                const Flavor f = Flavor::rational();
                return with_resampling(g, [&](std::mt19937_64& gg) {
                    VarCollection s;
                    for (int e : eta)
                        s.push_back(sample_vars(gg, e));
                    nlohmann::json pt{{"s", nlohmann::json::array()}};
                    for (const auto& l : s)
                        pt["s"].push_back(vars(l));
                    Scalar norm = factorial(eta.back());
                    for (std::size_t a = 0; a + 1 < eta.size(); ++a)
                        norm = norm * factorial(eta[a] - eta[a + 1]);
                    Scalar lhs = sym_bar<Scalar>(f, s, [&](const VarCollection& t) { return y_factor(f, eta, t); }) / norm;
                    std::vector<std::size_t> upper;
                    for (std::size_t a = 1; a < eta.size(); ++a)
                        upper.push_back(a);
                    Scalar rhs(0);
                    for (const auto& l : collections(eta))
                        rhs += explicit_sym(f, s, upper, [&](const VarCollection& t) { return f_function(f, eta, l, t); });
                    return compare("", pt, lhs, rhs);
                });
            }};
}

} // namespace

std::vector<Job> identity_jobs(Identity which, Scale scale, Reading reading)
{
    const int samples = scale == Scale::full ? 3 : 1;
    std::vector<Job> jobs;
    switch (which) {
    case Identity::k_factorial:
        for (int k = 0; k <= 6; ++k)
            for (int s = 0; s < samples; ++s)
                jobs.push_back(k_factorial_job(Flavor::rational(), k, s));
        break;
    case Identity::k_factorial_q:
        for (const auto& f : q_flavors(scale))
            for (int k = 0; k <= 6; ++k)
                for (int s = 0; s < samples; ++s)
                    jobs.push_back(k_factorial_job(f, k, s));
        break;
    case Identity::gyz:
    case Identity::gyz1:
    case Identity::gyzq:
    case Identity::gyzq1: {
        const bool trig = which == Identity::gyzq || which == Identity::gyzq1;
        std::vector<Flavor> fs = trig ? q_flavors(scale) : std::vector<Flavor>{Flavor::rational()};
        for (const auto& f : fs)
            for (int r = 1; r <= 5; ++r)
                for (int p = 1; p <= std::min(3, r); ++p)
                    for (int s = 0; s < samples; ++s)
                        jobs.push_back(gyz_job(which, f, p, r, s, reading));
        break;
    }
    case Identity::fly:
        for (int n = 3; n <= 4; ++n)
            for (const auto& eta : nonincreasing(n - 1, 3))
                for (int s = 0; s < samples; ++s)
                    jobs.push_back(fly_job(eta, s));
        break;
    }
    return jobs;
}

} // namespace nbv
