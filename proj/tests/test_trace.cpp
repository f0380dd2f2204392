#include "doctest.h"
#include "support.hpp"

#include <map>

using namespace nbv;
using Kind = Realization::Kind;

namespace {

using Pattern = std::vector<std::pair<int, int>>;

std::map<Pattern, Scalar> by_pattern(const std::vector<Monomial>& ms)
{
    std::map<Pattern, Scalar> out;
    for (const auto& m : ms)
        out[m.ab] = out[m.ab] + m.coeff;
    return out;
}

VarCollection vars(std::initializer_list<std::vector<Scalar>> l) { return VarCollection(l); }

} // namespace

TEST_CASE("empty composition gives the identity")
{
    auto rep = oracle::vec(3, Scalar(2));
    Composition xi{{0, 0}};
    CHECK(weight_trace(*rep, xi, {{}, {}}) == Operator::identity(rep->legs()));
    auto ms = trace_monomials(Flavor::rational(), 3, xi, {{}, {}}, true);
    REQUIRE(ms.size() == 1);
    CHECK(ms[0].coeff == Scalar(1));
}

TEST_CASE("rank two: product of T_12")
{
    oracle::Rng rng(11);
    Composition xi{{3}};
    auto t = oracle::sample_t(rng, Flavor::rational(), nullptr, xi);
    auto ms = by_pattern(trace_monomials(Flavor::rational(), 2, xi, t, true));
    REQUIRE(ms.size() == 1);
    CHECK(ms.begin()->first == Pattern{{1, 2}, {1, 2}, {1, 2}});
    CHECK(ms.begin()->second == Scalar(1));

    Composition one{{1}};
    VarCollection t1{{make_scalar(3, 7)}};
    auto hat = trace_monomials(Flavor::rational(), 2, one, t1, false);
    auto norm = trace_monomials(Flavor::rational(), 2, one, t1, true);
    REQUIRE(hat.size() == 1);
    CHECK(hat[0].coeff == norm[0].coeff);

    auto qf = Flavor::trigonometric(make_scalar(2, 3));
    auto tq = oracle::sample_t(rng, qf, nullptr, xi);
    auto mq = by_pattern(trace_monomials(qf, 2, xi, tq, true));
    REQUIRE(mq.size() == 1);
    CHECK(mq.begin()->second == Scalar(1));
}

TEST_CASE("rank three two-term expansion")
{
    Scalar t1 = make_scalar(2, 5), t2 = make_scalar(-7, 3);
    auto ms = by_pattern(trace_monomials(Flavor::rational(), 3, Composition{{1, 1}}, vars({{t1}, {t2}}), true));
    CHECK(ms.size() == 2);
    CHECK(ms[Pattern{{1, 2}, {2, 3}}] == Scalar(1));
    CHECK(ms[Pattern{{1, 3}, {2, 2}}] == (t2 - t1).inverse());
}

TEST_CASE("rank four coefficients")
{
    Scalar t1 = make_scalar(1, 3), t2 = make_scalar(5, 2), t3 = make_scalar(-4, 7);
    auto ms = by_pattern(trace_monomials(Flavor::rational(), 4, Composition{{1, 1, 1}}, vars({{t1}, {t2}, {t3}}), true));
    Scalar d21 = t2 - t1, d32 = t3 - t2, d31 = t3 - t1;
    CHECK(ms.size() == 6);
    CHECK(ms[Pattern{{1, 2}, {2, 3}, {3, 4}}] == Scalar(1));
    CHECK(ms[Pattern{{1, 3}, {2, 2}, {3, 4}}] == d21.inverse());
    CHECK(ms[Pattern{{1, 2}, {2, 4}, {3, 3}}] == d32.inverse());
    CHECK(ms[Pattern{{1, 4}, {2, 2}, {3, 3}}] == (d21 * d32).inverse());
    CHECK(ms[Pattern{{1, 3}, {2, 4}, {3, 2}}] == (d21 * d32).inverse());
    CHECK(ms[Pattern{{1, 4}, {2, 3}, {3, 2}}] == (d21 * d32 + Scalar(1)) / (d21 * d31 * d32));
}

TEST_CASE("trigonometric rank three coefficient")
{
    Scalar q = make_scalar(2, 3), t1 = make_scalar(5, 4), t2 = make_scalar(-3, 11);
    auto f = Flavor::trigonometric(q);
    auto ms = by_pattern(trace_monomials(f, 3, Composition{{1, 1}}, vars({{t1}, {t2}}), true));
    CHECK(ms.size() == 2);
    CHECK(ms[Pattern{{1, 2}, {2, 3}}] == Scalar(1));
    CHECK(ms[Pattern{{1, 3}, {2, 2}}] == (q - q.inverse()) * t2 / (t2 - t1));
}

TEST_CASE("monomial route agrees with the dense trace")
{
    oracle::Rng rng(21);
    for (auto f : {Flavor::rational(), Flavor::trigonometric(make_scalar(-3, 5))}) {
        std::vector<std::pair<RepPtr, Composition>> cases{
            {oracle::vec(2, make_scalar(1, 2), f), Composition{{2}}},
            {oracle::vec(3, make_scalar(-2, 3), f), Composition{{1, 1}}},
            {oracle::vec(3, make_scalar(4, 3), f), Composition{{2, 1}}},
            {oracle::eval(3, Kind::wedge_power, 2, make_scalar(3, 2), f), Composition{{1, 2}}},
            {make_tensor(oracle::vec(2, Scalar(1), f), oracle::vec(2, make_scalar(-5, 2), f)), Composition{{2}}},
        };
        for (auto& [rep, xi] : cases) {
            auto t = oracle::sample_t(rng, f, rep.get(), xi);
            Operator b = weight_trace(*rep, xi, t);
            CHECK(b == weight_trace_dense(*rep, xi, t));
            CHECK(b == weight_trace_dense(*rep, xi, t, ROrder::reversed));
            CHECK(weight_apply(*rep, xi, t, rep->singular(), ROrder::reversed) == weight_vector(*rep, xi, t));
            CHECK(hat_weight_trace(*rep, xi, t) * normalization(f, xi, t) == b);
        }
    }
}

TEST_CASE("T-first and T-last products coincide")
{
    oracle::Rng rng(5);
    for (auto f : {Flavor::rational(), Flavor::trigonometric(Scalar(2))}) {
        auto rep = oracle::vec(3, make_scalar(1, 5), f);
        for (auto xi : {Composition{{2, 1}}, Composition{{1, 2}}, Composition{{1, 1}}}) {
            auto t = oracle::sample_t(rng, f, rep.get(), xi);
            CHECK(aux_product_t_first(*rep, xi, t) == aux_product_t_last(*rep, xi, t));
        }
        auto two = make_tensor(oracle::vec(2, Scalar(3), f), oracle::vec(2, make_scalar(-1, 4), f));
        Composition xi{{3}};
        auto t = oracle::sample_t(rng, f, two.get(), xi);
        CHECK(aux_product_t_first(*two, xi, t) == aux_product_t_last(*two, xi, t));
    }
}

TEST_CASE("invariance under permutations of same-level variables")
{
    oracle::Rng rng(8);
    for (auto f : {Flavor::rational(), Flavor::trigonometric(make_scalar(2, 3))}) {
        auto rep = oracle::eval(3, Kind::symmetric_power, 2, make_scalar(-1, 3), f);
        Composition xi{{2, 2}};
        for (int trial = 0; trial < 3; ++trial) {
            auto t = oracle::sample_t(rng, f, rep.get(), xi);
            Operator b = weight_trace(*rep, xi, t);
            for (int a = 0; a < 2; ++a) {
                auto s = t;
                std::swap(s[a][0], s[a][1]);
                CHECK(weight_trace(*rep, xi, s) == b);
            }
        }
    }
}

TEST_CASE("weight of results")
{
    oracle::Rng rng(3);
    auto f = Flavor::trigonometric(make_scalar(-3, 5));
    for (auto fl : {Flavor::rational(), f}) {
        auto rep = make_tensor(oracle::vec(3, Scalar(2), fl), oracle::eval(3, Kind::wedge_power, 2, Scalar(-1), fl));
        for (auto xi : {Composition{{1, 1}}, Composition{{2, 1}}, Composition{{1, 0}}, Composition{{2, 2}}}) {
            auto t = oracle::sample_t(rng, fl, rep.get(), xi);
            Vec v = weight_vector(*rep, xi, t);
            CHECK_NOTHROW(check_weight(*rep, xi, v));
            auto r = apply_to_singular(weight_trace(*rep, xi, t), *rep, xi);
            CHECK(r.coordinates == v);
        }
    }
    auto rep = oracle::vec(2, Scalar(1));
    Vec bad(2);
    bad[0] = Scalar(1);
    CHECK_THROWS_AS(check_weight(*rep, Composition{{1}}, bad), std::logic_error);
}

TEST_CASE("vector representation of rank two")
{
    Scalar x = make_scalar(2, 7), t = make_scalar(-5, 3);
    auto rep = oracle::vec(2, x);
    Vec v = weight_vector(*rep, Composition{{1}}, {{t}});
    auto m = build_module(oracle::module_spec(2, Kind::vector), Flavor::rational());
    CHECK(v == (t - x).inverse() * m->e(2, 1).apply(m->singular()));
}

TEST_CASE("pole preflight names the factor")
{
    auto rep = oracle::vec(3, Scalar(1));
    CHECK_THROWS_WITH_AS(weight_trace(*rep, Composition{{1, 1}}, {{Scalar(1)}, {Scalar(3)}}),
                         doctest::Contains("t^1_1 - x"), PoleError);
    CHECK_THROWS_WITH_AS(weight_trace(*rep, Composition{{2, 0}}, {{Scalar(2), Scalar(3)}, {}}),
                         doctest::Contains("t^1_1 - t^1_2 + 1"), PoleError);
    CHECK_THROWS_WITH_AS(weight_trace(*rep, Composition{{1, 1}}, {{Scalar(2)}, {Scalar(2)}}),
                         doctest::Contains("t^2_1 - t^1_1"), PoleError);
    CHECK_THROWS_AS(trace_monomials(Flavor::rational(), 4, Composition{{2, 2, 1}}, {{Scalar(1), Scalar(5)}, {Scalar(9), Scalar(13)}, {Scalar(17)}}, true), PreconditionError);
}

TEST_CASE("component recursion over the first level")
{
    oracle::Rng rng(17);
    std::vector<std::pair<RepPtr, Composition>> cases{
        {oracle::vec(2, make_scalar(1, 3)), Composition{{2}}},
        {oracle::vec(3, make_scalar(-2, 5)), Composition{{1, 1}}},
        {oracle::eval(3, Kind::symmetric_power, 2, Scalar(2)), Composition{{2, 1}}},
        {make_tensor(oracle::vec(3, Scalar(1)), oracle::vec(3, make_scalar(7, 2))), Composition{{1, 2}}},
        {oracle::vec(4, make_scalar(3, 4)), Composition{{1, 1, 1}}},
    };
    for (auto& [rep, xi] : cases) {
        auto t = oracle::sample_t(rng, rep->flavor(), rep.get(), xi);
        CHECK(component_recursion(rep, xi, t, Direction::first) == weight_trace(*rep, xi, t));
    }
}

TEST_CASE("component recursion over the last level")
{
    oracle::Rng rng(19);
    std::vector<std::pair<RepPtr, Composition>> cases{
        {oracle::vec(2, make_scalar(1, 3)), Composition{{2}}},
        {oracle::vec(3, make_scalar(-2, 5)), Composition{{1, 1}}},
        {oracle::eval(3, Kind::symmetric_power, 2, Scalar(2)), Composition{{1, 2}}},
        {make_tensor(oracle::vec(3, Scalar(1)), oracle::vec(3, make_scalar(7, 2))), Composition{{2, 1}}},
        {oracle::vec(4, make_scalar(3, 4)), Composition{{1, 1, 1}}},
    };
    for (auto& [rep, xi] : cases) {
        auto t = oracle::sample_t(rng, rep->flavor(), rep.get(), xi);
        Operator b = weight_trace(*rep, xi, t);
        CHECK(component_recursion(rep, xi, t, Direction::last) == b);
    }

    // with the printed variable list, Lbar(t^1_i) is evaluated at t^1_i itself
    auto rep = make_tensor(oracle::vec(3, Scalar(1)), oracle::vec(3, make_scalar(7, 2)));
    Composition xi{{1, 1}};
    auto t = oracle::sample_t(rng, rep->flavor(), rep.get(), xi);
    CHECK_THROWS_AS(component_recursion(rep, xi, t, Direction::last, MirrorReading::first_level), PoleError);
    CHECK_THROWS_AS(component_recursion(rep, xi, t, Direction::last, MirrorReading::literal), PoleError);
    CHECK_THROWS_AS(component_recursion(rep, Composition{{2, 1}}, {{Scalar(3), Scalar(5)}, {Scalar(9)}}, Direction::last,
                                        MirrorReading::first_level),
                    PreconditionError);
}
