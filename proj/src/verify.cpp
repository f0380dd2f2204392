#include "nbv/verify.hpp"

#include <cstdlib>
#include <sstream>

namespace nbv {

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::pass:
        return "pass";
    case Verdict::fail:
        return "fail";
    case Verdict::skipped:
        return "skipped";
    }
    return "?";
}

nlohmann::json to_json(const Vec& v)
{
    auto j = nlohmann::json::array();
    for (const auto& s : v)
        j.push_back(s.str());
    return j;
}

nlohmann::json to_json(const Operator& op)
{
    auto j = nlohmann::json::array();
    for (std::size_t r = 0; r < op.rows(); ++r) {
        auto row = nlohmann::json::array();
        for (std::size_t c = 0; c < op.cols(); ++c)
            row.push_back(op.at(r, c).str());
        j.push_back(std::move(row));
    }
    return j;
}

nlohmann::json to_json(const ReportEntry& e)
{
    nlohmann::json j{{"check", e.check}, {"point", e.point}, {"verdict", to_string(e.verdict)}};
    if (!e.reason.empty())
        j["reason"] = e.reason;
    if (e.verdict == Verdict::fail) {
        j["lhs"] = e.lhs;
        j["rhs"] = e.rhs;
        j["diff"] = e.diff;
    }
    return j;
}

Scale scale_from_string(const std::string& s)
{
    if (s == "small")
        return Scale::small;
    if (s == "full")
        return Scale::full;
    throw ValidationError("/scale", "scale must be small or full, got '" + s + "'");
}

unsigned default_workers()
{
    if (const char* env = std::getenv("NBV_MAX_WORKERS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

std::uint64_t job_seed(std::uint64_t seed, const std::string& key)
{
    // FNV-1a over the key, mixed with the suite seed
    std::uint64_t h = 1469598103934665603ull ^ seed;
    for (unsigned char c : key) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::mt19937_64 job_rng(std::uint64_t seed, const std::string& key)
{
    return std::mt19937_64(job_seed(seed, key));
}

namespace {

long draw(std::mt19937_64& g, long lo, long hi)
{
    // modulo draw keeps the stream identical across standard libraries
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(g() % span);
}

} // namespace

Scalar small_rational(std::mt19937_64& g, long h)
{
    long num = draw(g, -h, h);
    long den = draw(g, 1, h);
    return make_scalar(num, den);
}

Scalar small_nonzero(std::mt19937_64& g, long h)
{
    for (;;) {
        Scalar s = small_rational(g, h);
        if (!s.is_zero())
            return s;
    }
}

std::optional<VarCollection> sample_point(std::mt19937_64& g, const Flavor& f, const Rep* rep, const Composition& xi,
                                          int attempts)
{
    for (int k = 0; k < attempts; ++k) {
        VarCollection t;
        for (int a = 1; a <= xi.levels(); ++a) {
            t.emplace_back();
            for (int i = 0; i < xi[a]; ++i)
                t.back().push_back(small_rational(g));
        }
        try {
            preflight(f, rep, xi, t);
            return t;
        }
        catch (const PoleError&) {
        }
    }
    return std::nullopt;
}

std::vector<ReportEntry> run_jobs(const std::vector<Job>& jobs, const SuiteOptions& opt)
{
    std::vector<std::function<ReportEntry()>> fns;
    fns.reserve(jobs.size());
    for (const auto& job : jobs)
        fns.emplace_back([&job, &opt] {
            const std::string key = job.check + job.point.dump();
            auto g = job_rng(opt.seed, key);
            ReportEntry e;
            try {
                e = job.run(g);
            }
            catch (const PreconditionError& err) {
                e.verdict = Verdict::skipped;
                e.reason = err.what();
            }
            e.check = job.check;
            nlohmann::json point = job.point;
            if (e.point.is_object())
                point.update(e.point);
            point["seed"] = std::to_string(job_seed(opt.seed, key));
            e.point = point;
            return e;
        });
    return run_parallel(fns, opt.workers);
}

namespace {

ReportEntry verdict(const std::string& check, const nlohmann::json& point, bool ok)
{
    ReportEntry e;
    e.check = check;
    e.point = point;
    e.verdict = ok ? Verdict::pass : Verdict::fail;
    return e;
}

} // namespace

ReportEntry compare(const std::string& check, const nlohmann::json& point, const Vec& lhs, const Vec& rhs)
{
    ReportEntry e = verdict(check, point, lhs == rhs);
    if (e.verdict == Verdict::fail) {
        e.lhs = to_json(lhs);
        e.rhs = to_json(rhs);
        e.diff = lhs.size() == rhs.size() ? to_json(lhs - rhs) : nlohmann::json("shape mismatch");
    }
    return e;
}

ReportEntry compare(const std::string& check, const nlohmann::json& point, const Operator& lhs, const Operator& rhs)
{
    bool ok = lhs.rows() == rhs.rows() && lhs.cols() == rhs.cols();
    Operator diff;
    if (ok) {
        diff = Operator(std::vector<Space>{Space{lhs.rows(), ""}}, std::vector<Space>{Space{lhs.cols(), ""}});
        for (std::size_t r = 0; r < lhs.rows(); ++r)
            for (std::size_t c = 0; c < lhs.cols(); ++c) {
                diff.at(r, c) = lhs.at(r, c) - rhs.at(r, c);
                if (!diff.at(r, c).is_zero())
                    ok = false;
            }
    }
    ReportEntry e = verdict(check, point, ok);
    if (!ok) {
        e.lhs = to_json(lhs);
        e.rhs = to_json(rhs);
        e.diff = diff.rows() ? to_json(diff) : nlohmann::json("shape mismatch");
    }
    return e;
}

ReportEntry compare(const std::string& check, const nlohmann::json& point, const Scalar& lhs, const Scalar& rhs)
{
    ReportEntry e = verdict(check, point, lhs == rhs);
    if (e.verdict == Verdict::fail) {
        e.lhs = lhs.str();
        e.rhs = rhs.str();
        e.diff = (lhs - rhs).str();
    }
    return e;
}

namespace {

nlohmann::json flavor_json(const Flavor& f)
{
    nlohmann::json j{{"case", to_string(f.kind)}};
    if (f.trig())
        j["q"] = f.q.str();
    return j;
}

nlohmann::json vars_json(const VarCollection& t)
{
    auto j = nlohmann::json::array();
    for (const auto& l : t)
        j.push_back(to_json(l));
    return j;
}

// u + v or u v, the argument of R(u - v) / R(u / v)
Scalar ratio(const Flavor& f, const Scalar& u, const Scalar& v)
{
    return f.trig() ? u / v : u - v;
}

Scalar draw_point(std::mt19937_64& g, const Flavor& f)
{
    return f.trig() ? small_nonzero(g) : small_rational(g);
}

} // namespace

std::vector<Job> r_matrix_jobs(const Flavor& f, int n, int trials)
{
    std::vector<Job> jobs;
    for (int k = 0; k < trials; ++k) {
        nlohmann::json point = flavor_json(f);
        point["n"] = n;
        point["trial"] = k;
        jobs.push_back({"r-matrix/yang-baxter", point, [f, n](std::mt19937_64& g) {
                            Scalar u = draw_point(g, f), v = draw_point(g, f);
                            auto legs = aux_legs(static_cast<std::size_t>(n), 3);
                            auto r = [&](const Scalar& w, int i, int j) {
                                return embed_leg(r_matrix(f, static_cast<std::size_t>(n), w), {i, j}, legs);
                            };
                            Operator lhs = r(ratio(f, u, v), 1, 2) * r(u, 1, 3) * r(v, 2, 3);
                            Operator rhs = r(v, 2, 3) * r(u, 1, 3) * r(ratio(f, u, v), 1, 2);
                            auto e = compare("", {{"u", u.str()}, {"v", v.str()}}, lhs, rhs);
                            return e;
                        }});
        jobs.push_back({"r-matrix/inversion", point, [f, n](std::mt19937_64& g) {
                            Scalar u = draw_point(g, f);
                            const auto sn = static_cast<std::size_t>(n);
                            Operator p = flip(sn);
                            Operator lhs = r_matrix(f, sn, u) * (p * r_matrix(f, sn, f.trig() ? u.inverse() : -u) * p);
                            Scalar c = f.trig() ? (u * f.q - f.q.inverse()) * (u.inverse() * f.q - f.q.inverse())
                                                : Scalar(1) - u * u;
                            return compare("", {{"u", u.str()}}, lhs, Operator::scalar(aux_legs(sn, 2), c));
                        }});
    }
    return jobs;
}

namespace {

RepPtr sample_rep(std::mt19937_64& g, const Flavor& f, int n, bool two_factor, nlohmann::json& point)
{
    auto m = build_module(ModuleSpec{n, {}, Scalar(0), {}}, f);
    Scalar x = small_nonzero(g);
    point["x"] = x.str();
    RepPtr rep = make_eval(m, x);
    if (two_factor) {
        Scalar y = small_nonzero(g);
        while (y == x)
            y = small_nonzero(g);
        point["y"] = y.str();
        rep = make_tensor(rep, make_eval(m, y));
    }
    return rep;
}

// Draws a point that is not a pole of the representation.
Scalar regular_point(std::mt19937_64& g, const Rep& rep)
{
    for (int k = 0; k < 200; ++k) {
        Scalar u = draw_point(g, rep.flavor());
        try {
            rep.check_point(u, "u");
            return u;
        }
        catch (const PoleError&) {
        }
    }
    throw PreconditionError("no admissible spectral parameter found");
}

std::vector<int> positions(int first, int count)
{
    std::vector<int> p;
    for (int i = 0; i < count; ++i)
        p.push_back(first + i);
    return p;
}

} // namespace

std::vector<Job> rtt_jobs(const Flavor& f, int n, bool two_factor, int trials)
{
    std::vector<Job> jobs;
    for (int k = 0; k < trials; ++k) {
        nlohmann::json point = flavor_json(f);
        point["n"] = n;
        point["module"] = two_factor ? "vector(x) (x) vector(y)" : "vector(x)";
        point["trial"] = k;
        std::vector<std::pair<Sign, Sign>> pairs{{Sign::minus, Sign::minus}};
        if (f.trig())
            pairs = {{Sign::plus, Sign::plus}, {Sign::plus, Sign::minus}, {Sign::minus, Sign::minus}};
        for (auto [mu, nu] : pairs) {
            nlohmann::json p = point;
            if (f.trig())
                p["signs"] = std::string(mu == Sign::plus ? "+" : "-") + (nu == Sign::plus ? "+" : "-");
            jobs.push_back({"rtt/exchange", p, [f, n, two_factor, mu, nu](std::mt19937_64& g) {
                                nlohmann::json pt;
                                RepPtr rep = sample_rep(g, f, n, two_factor, pt);
                                Scalar u = regular_point(g, *rep), v = regular_point(g, *rep);
                                pt["u"] = u.str();
                                pt["v"] = v.str();
                                auto vlegs = rep->legs();
                                std::vector<Space> legs = aux_legs(static_cast<std::size_t>(n), 2);
                                legs.insert(legs.end(), vlegs.begin(), vlegs.end());
                                const int nv = static_cast<int>(vlegs.size());
                                auto at = [&](int aux, const Operator& t) {
                                    std::vector<int> pos{aux};
                                    auto rest = positions(3, nv);
                                    pos.insert(pos.end(), rest.begin(), rest.end());
                                    return embed_leg(t, pos, legs);
                                };
                                Operator r = embed_leg(r_matrix(f, static_cast<std::size_t>(n), ratio(f, u, v)), {1, 2}, legs);
                                Operator t1 = at(1, monodromy(*rep, mu, u));
                                Operator t2 = at(2, monodromy(*rep, nu, v));
                                auto e = compare("", pt, r * t1 * t2, t2 * t1 * r);
                                return e;
                            }});
        }
        jobs.push_back({"rtt/gl-invariance", point, [f, n, two_factor](std::mt19937_64& g) {
                            nlohmann::json pt;
                            RepPtr rep = sample_rep(g, f, n, two_factor, pt);
                            Scalar u = regular_point(g, *rep);
                            pt["u"] = u.str();
                            auto vlegs = rep->legs();
                            std::vector<Space> legs = aux_legs(static_cast<std::size_t>(n), 1);
                            legs.insert(legs.end(), vlegs.begin(), vlegs.end());
                            const int nv = static_cast<int>(vlegs.size());
                            const auto sn = static_cast<std::size_t>(n);
                            std::vector<Sign> signs{Sign::minus};
                            if (f.trig())
                                signs.push_back(Sign::plus);
                            for (Sign s : signs) {
                                Operator t = monodromy(*rep, s, u);
                                if (!f.trig()) {
                                    for (int a = 1; a <= n; ++a)
                                        for (int b = 1; b <= n; ++b) {
                                            Operator e = embed_leg(matrix_unit(sn, a, b), {1}, legs) +
                                                         embed_leg(rep->gl_e(a, b), positions(2, nv), legs);
                                            if (!(e * t == t * e))
                                                return compare("", pt, e * t, t * e);
                                        }
                                }
                                else {
                                    // q^{E_aa} (x) k_a commutes with L(u)
                                    for (int a = 1; a <= n; ++a) {
                                        Operator qa = Operator::identity(aux_legs(sn, 1)) +
                                                      matrix_unit(sn, a, a) * (f.q - Scalar(1));
                                        Operator k = embed_leg(qa, {1}, legs) * embed_leg(rep->gl_k(a, 1), positions(2, nv), legs);
                                        if (!(k * t == t * k))
                                            return compare("", pt, k * t, t * k);
                                    }
                                }
                            }
                            ReportEntry e;
                            e.point = pt;
                            return e;
                        }});
    }
    return jobs;
}

std::vector<CrossCell> cross_grid(Scale scale, bool trig)
{
    std::vector<Flavor> flavors;
    if (trig)
        for (auto q : {Scalar(2), make_scalar(2, 3), make_scalar(-3, 5)})
            flavors.push_back(Flavor::trigonometric(q));
    else
        flavors.push_back(Flavor::rational());
    if (scale == Scale::small && trig)
        flavors.resize(2);
    std::vector<CrossCell> cells;
    for (const auto& f : flavors)
        for (int n = 2; n <= 4; ++n) {
            const int cap = scale == Scale::small ? 2 : (n <= 3 ? 4 : 3);
            std::vector<std::pair<Realization::Kind, int>> kinds{{Realization::Kind::vector, 1},
                                                                 {Realization::Kind::wedge_power, 2},
                                                                 {Realization::Kind::symmetric_power, 2}};
            for (auto [kind, power] : kinds) {
                // every xi with |xi| <= cap
                std::vector<int> xi(static_cast<std::size_t>(n - 1), 0);
                std::function<void(std::size_t, int)> rec = [&](std::size_t a, int left) {
                    if (a == xi.size()) {
                        cells.push_back({f, n, kind, power, xi});
                        return;
                    }
                    for (int v = 0; v <= left; ++v) {
                        xi[a] = v;
                        rec(a + 1, left - v);
                    }
                };
                rec(0, cap);
            }
        }
    return cells;
}

namespace {

std::string kind_name(Realization::Kind k, int power)
{
    return to_string(k) + (k == Realization::Kind::vector ? "" : "(" + std::to_string(power) + ")");
}

// B(t) is unchanged by swapping neighbouring variables of one level.
std::optional<std::string> s_xi_violation(const Rep& rep, const Composition& xi, const VarCollection& t, const Vec& base)
{
    for (int a = 1; a <= xi.levels(); ++a)
        for (int i = 1; i < xi[a]; ++i) {
            VarCollection s = t;
            std::swap(s[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(i - 1)],
                      s[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(i)]);
            if (weight_vector(rep, xi, s) != base)
                return "swap of " + var_name(a, i) + " and " + var_name(a, i + 1);
        }
    return std::nullopt;
}

} // namespace

std::vector<Job> cross_jobs(const std::vector<CrossCell>& cells, int points)
{
    std::vector<Job> jobs;
    for (const auto& cell : cells)
        for (int k = 0; k < points; ++k) {
            nlohmann::json point = flavor_json(cell.flavor);
            point["n"] = cell.n;
            point["module"] = kind_name(cell.kind, cell.power);
            point["xi"] = cell.xi;
            point["sample"] = k;
            jobs.push_back({"cross-validate/routes", point, [cell](std::mt19937_64& g) {
                                ModuleSpec spec;
                                spec.n = cell.n;
                                spec.realization.kind = cell.kind;
                                spec.realization.k = cell.power;
                                auto m = build_module(spec, cell.flavor);
                                Scalar x = small_nonzero(g);
                                auto rep = make_eval(m, x);
                                Composition xi{cell.xi};
                                nlohmann::json pt{{"x", x.str()}};
                                auto t = sample_point(g, cell.flavor, rep.get(), xi);
                                if (!t) {
                                    ReportEntry e;
                                    e.point = pt;
                                    e.verdict = Verdict::skipped;
                                    e.reason = "no admissible point after resampling";
                                    return e;
                                }
                                pt["t"] = vars_json(*t);
                                Vec oracle = weight_vector(*rep, xi, *t);
                                EvalData ev{m, x};
                                std::vector<std::pair<std::string, std::function<Vec()>>> routes{
                                    {"recursion-first", [&] { return recursion_theorem(ev, xi, *t, Direction::first); }},
                                    {"recursion-last", [&] { return recursion_theorem(ev, xi, *t, Direction::last); }},
                                    {"closed-last", [&] { return closed_form(ev, xi, *t, Closed::bcN); }},
                                    {"closed-first", [&] { return closed_form(ev, xi, *t, Closed::bc1); }},
                                };
                                for (auto& [name, fn] : routes) {
                                    Vec v = fn();
                                    if (v != oracle) {
                                        auto e = compare("", pt, oracle, v);
                                        e.reason = name + " disagrees with the trace";
                                        return e;
                                    }
                                }
                                try {
                                    check_weight(*rep, xi, oracle);
                                }
                                catch (const std::logic_error& err) {
                                    ReportEntry e;
                                    e.point = pt;
                                    e.verdict = Verdict::fail;
                                    e.reason = err.what();
                                    e.lhs = to_json(oracle);
                                    return e;
                                }
                                if (auto bad = s_xi_violation(*rep, xi, *t, oracle)) {
                                    ReportEntry e;
                                    e.point = pt;
                                    e.verdict = Verdict::fail;
                                    e.reason = "not invariant under " + *bad;
                                    return e;
                                }
                                ReportEntry e;
                                e.point = pt;
                                return e;
                            }});
        }
    return jobs;
}

std::vector<TensorCell> tensor_grid(Scale scale)
{
    std::vector<Flavor> flavors{Flavor::rational(), Flavor::trigonometric(make_scalar(2, 3))};
    if (scale == Scale::full)
        flavors.push_back(Flavor::trigonometric(Scalar(2)));
    std::vector<TensorCell> cells;
    for (const auto& f : flavors)
        for (int n = 2; n <= 3; ++n)
            for (int factors = 2; factors <= 3; ++factors) {
                std::vector<int> xi(static_cast<std::size_t>(n - 1), 0);
                std::function<void(std::size_t, int)> rec = [&](std::size_t a, int left) {
                    if (a == xi.size()) {
                        cells.push_back({f, n, factors, xi});
                        return;
                    }
                    for (int v = 0; v <= left; ++v) {
                        xi[a] = v;
                        rec(a + 1, left - v);
                    }
                };
                rec(0, 2);
            }
    return cells;
}

namespace {

std::vector<RepPtr> sample_factors(std::mt19937_64& g, const Flavor& f, int n, int count, nlohmann::json& pt)
{
    auto m = build_module(ModuleSpec{n, {}, Scalar(0), {}}, f);
    std::vector<RepPtr> reps;
    auto xs = nlohmann::json::array();
    for (int r = 0; r < count; ++r) {
        Scalar x = small_nonzero(g);
        xs.push_back(x.str());
        reps.push_back(make_eval(m, x));
    }
    pt["x"] = xs;
    return reps;
}

} // namespace

std::vector<Job> tensor_jobs(const std::vector<TensorCell>& cells, int points)
{
    std::vector<Job> jobs;
    for (const auto& cell : cells)
        for (int k = 0; k < points; ++k) {
            nlohmann::json point = flavor_json(cell.flavor);
            point["n"] = cell.n;
            point["factors"] = cell.factors;
            point["xi"] = cell.xi;
            point["sample"] = k;
            jobs.push_back({"cross-validate/tensor-split", point, [cell](std::mt19937_64& g) {
                                nlohmann::json pt;
                                auto reps = sample_factors(g, cell.flavor, cell.n, cell.factors, pt);
                                auto whole = make_assembly(reps);
                                Composition xi{cell.xi};
                                auto t = sample_point(g, cell.flavor, whole.get(), xi);
                                if (!t) {
                                    ReportEntry e;
                                    e.point = pt;
                                    e.verdict = Verdict::skipped;
                                    e.reason = "no admissible point after resampling";
                                    return e;
                                }
                                pt["t"] = vars_json(*t);
                                Vec oracle = weight_vector(*whole, xi, *t);
                                std::vector<std::pair<std::string, std::function<Vec()>>> routes{
                                    {"split", [&] { return tensor_split(reps, xi, *t); }},
                                    {"split-cosets", [&] { return tensor_split(reps, xi, *t, SymMode::cosets); }},
                                };
                                std::vector<RepPtr> tail(reps.begin() + 1, reps.end());
                                if (reps.size() > 2)
                                    routes.emplace_back("iterated-binary", [&] {
                                        FactorWeight nested = [&](std::size_t r, const Composition& part,
                                                                  const VarCollection& tr) {
                                            return r == 0 ? weight_vector(*reps[0], part, tr) : tensor_split(tail, part, tr);
                                        };
                                        return tensor_split({reps[0], make_assembly(tail)}, xi, *t, SymMode::full, nested);
                                    });
                                for (auto& [name, fn] : routes) {
                                    Vec v = fn();
                                    if (v != oracle) {
                                        auto e = compare("", pt, oracle, v);
                                        e.reason = name + " disagrees with the trace";
                                        return e;
                                    }
                                }
                                if (auto bad = s_xi_violation(*whole, xi, *t, oracle)) {
                                    ReportEntry e;
                                    e.point = pt;
                                    e.verdict = Verdict::fail;
                                    e.reason = "not invariant under " + *bad;
                                    return e;
                                }
                                ReportEntry e;
                                e.point = pt;
                                return e;
                            }});
        }
    return jobs;
}

std::vector<Job> coset_jobs(int families)
{
    std::vector<Job> jobs;
    for (int k = 0; k < families; ++k) {
        nlohmann::json point{{"family", k}};
        jobs.push_back({"cross-validate/coset", point, [](std::mt19937_64& g) {
                            const bool trig = draw(g, 0, 1) == 1;
                            Flavor f = trig ? Flavor::trigonometric(make_scalar(2, 3)) : Flavor::rational();
                            const int n = static_cast<int>(draw(g, 2, 3));
                            const int count = static_cast<int>(draw(g, 2, 3));
                            nlohmann::json pt = flavor_json(f);
                            pt["n"] = n;
                            auto reps = sample_factors(g, f, n, count, pt);
                            auto whole = make_assembly(reps);
                            std::vector<int> xi(static_cast<std::size_t>(n - 1));
                            for (auto& v : xi)
                                v = static_cast<int>(draw(g, 0, n == 2 ? 3 : 2));
                            // random chain 0 <= eta_1 <= ... <= xi
                            std::vector<std::vector<int>> chain{std::vector<int>(xi.size(), 0)};
                            for (int r = 1; r < count; ++r) {
                                std::vector<int> next = chain.back();
                                for (std::size_t a = 0; a < xi.size(); ++a)
                                    next[a] = static_cast<int>(draw(g, next[a], xi[a]));
                                chain.push_back(next);
                            }
                            chain.push_back(xi);
                            pt["xi"] = xi;
                            pt["chain"] = chain;
                            Composition c{xi};
                            auto t = sample_point(g, f, whole.get(), c);
                            if (!t)
                                throw PreconditionError("no admissible point after resampling");
                            pt["t"] = vars_json(*t);
                            return compare("", pt, tensor_split_term(reps, c, *t, chain, SymMode::full),
                                           tensor_split_term(reps, c, *t, chain, SymMode::cosets));
                        }});
    }
    return jobs;
}

std::vector<Job> dead_variable_jobs(int trials)
{
    std::vector<Job> jobs;
    for (int k = 0; k < trials; ++k) {
        jobs.push_back({"cross-validate/dead-variables", {{"trial", k}}, [](std::mt19937_64& g) {
                            Flavor f = draw(g, 0, 1) ? Flavor::trigonometric(Scalar(2)) : Flavor::rational();
                            const int n1 = static_cast<int>(draw(g, 2, 3));
                            auto fill = [&](const std::vector<int>& sz) {
                                VarCollection t;
                                for (int s : sz) {
                                    t.emplace_back();
                                    for (int i = 0; i < s; ++i)
                                        t.back().push_back(small_rational(g));
                                }
                                return t;
                            };
                            auto perturb = [&](VarCollection t, int level, int lo, int hi) {
                                for (int i = lo; i <= hi; ++i)
                                    t[static_cast<std::size_t>(level - 1)][static_cast<std::size_t>(i - 1)] += Scalar(1000);
                                return t;
                            };
                            nlohmann::json pt = flavor_json(f);
                            for (int attempt = 0; attempt < 100; ++attempt) {
                                try {
                                    // X: last-level variables beyond eta^{N-2}
                                    std::vector<int> up(static_cast<std::size_t>(n1));
                                    int cur = 0;
                                    for (auto& v : up)
                                        v = cur = static_cast<int>(draw(g, cur, 3));
                                    auto tx = fill(up);
                                    Scalar x0 = x_factor(f, up, tx);
                                    Scalar x1 = x_factor(f, up, perturb(tx, n1, up[static_cast<std::size_t>(n1 - 2)] + 1, up.back()));
                                    // Y: first-level variables up to eta^1 - eta^2
                                    std::vector<int> down(up.rbegin(), up.rend());
                                    auto ty = fill(down);
                                    Scalar y0 = y_factor(f, down, ty);
                                    Scalar y1 = y_factor(f, down, perturb(ty, 1, 1, down[0] - down[1]));
                                    // Z: first level of t, last level of s
                                    auto tz = fill(up), sz = fill(down);
                                    Scalar z0 = z_factor(f, tz, sz);
                                    Scalar z1 = z_factor(f, perturb(tz, 1, 1, up[0]), perturb(sz, n1, 1, down.back()));
                                    pt["eta"] = up;
                                    if (x0 != x1)
                                        return compare("", pt, x0, x1);
                                    if (y0 != y1)
                                        return compare("", pt, y0, y1);
                                    return compare("", pt, z0, z1);
                                }
                                catch (const PoleError&) {
                                }
                            }
                            throw PreconditionError("no pole-free point after resampling");
                        }});
    }
    return jobs;
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"r-matrix", "rtt", "section5", "identities", "cross-validate", "all"};
    return names;
}

std::vector<Job> suite_jobs(const std::string& suite, Scale scale)
{
    const bool full = scale == Scale::full;
    std::vector<Job> jobs;
    auto add = [&](std::vector<Job> more) { jobs.insert(jobs.end(), more.begin(), more.end()); };
    std::vector<Flavor> flavors{Flavor::rational(), Flavor::trigonometric(Scalar(2)),
                                Flavor::trigonometric(make_scalar(2, 3)), Flavor::trigonometric(make_scalar(-3, 5))};
    if (suite == "r-matrix" || suite == "all") {
        for (const auto& f : flavors)
            for (int n = 2; n <= 4; ++n)
                add(r_matrix_jobs(f, n, full ? 20 : 3));
    }
    if (suite == "rtt" || suite == "all") {
        for (const auto& f : flavors)
            for (int n = 2; n <= 3; ++n)
                for (bool two : {false, true})
                    add(rtt_jobs(f, n, two, full ? 10 : 2));
    }
    if (suite == "section5" || suite == "all") {
        const int trials = full ? 3 : 1;
        for (int n = 2; n <= 3; ++n) {
            for (Relation r : {Relation::AA, Relation::BBR, Relation::AB, Relation::DB, Relation::DD})
                add(section5_jobs(r, n, 2, trials));
            for (int k = 1; k <= (full ? 3 : 2); ++k)
                for (Relation r : {Relation::RSym, Relation::ABB, Relation::DBB, Relation::DlBk})
                    add(section5_jobs(r, n, k, trials));
        }
    }
    if (suite == "identities" || suite == "all") {
        for (Identity i : {Identity::k_factorial, Identity::k_factorial_q, Identity::gyz, Identity::gyz1, Identity::gyzq,
                           Identity::gyzq1, Identity::fly})
            add(identity_jobs(i, scale));
    }
    if (suite == "cross-validate" || suite == "all") {
        const int points = full ? 20 : 2;
        add(cross_jobs(cross_grid(scale, false), points));
        add(cross_jobs(cross_grid(scale, true), points));
        add(tensor_jobs(tensor_grid(scale), full ? 5 : 1));
        add(coset_jobs(full ? 20 : 10));
        add(dead_variable_jobs(full ? 20 : 5));
    }
    if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
        throw ValidationError("/suite", "unknown suite '" + suite + "'");
    return jobs;
}

std::vector<ReportEntry> run_suite(const std::string& suite, const SuiteOptions& opt)
{
    return run_jobs(suite_jobs(suite, opt.scale), opt);
}

nlohmann::json report_json(const std::string& suite, const SuiteOptions& opt, const std::vector<ReportEntry>& entries)
{
    std::size_t pass = 0, fail = 0, skipped = 0;
    auto list = nlohmann::json::array();
    for (const auto& e : entries) {
        list.push_back(to_json(e));
        (e.verdict == Verdict::pass ? pass : e.verdict == Verdict::fail ? fail : skipped)++;
    }
    return nlohmann::json{{"suite", suite},
                          {"seed", opt.seed},
                          {"scale", opt.scale == Scale::full ? "full" : "small"},
                          {"summary", {{"pass", pass}, {"fail", fail}, {"skipped", skipped}}},
                          {"entries", list}};
}

bool any_fail(const std::vector<ReportEntry>& entries)
{
    return std::any_of(entries.begin(), entries.end(), [](const ReportEntry& e) { return e.verdict == Verdict::fail; });
}

} // namespace nbv
