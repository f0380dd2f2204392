#include "doctest.h"
#include "support.hpp"

#include "nbv/combin.hpp"

using namespace nbv;
using Kind = Realization::Kind;

namespace {

struct Case {
    int n;
    Kind kind;
    int power;
    std::vector<int> xi;
};

std::vector<Case> cases()
{
    return {
        {2, Kind::vector, 1, {1}},
        {2, Kind::symmetric_power, 2, {2}},
        {2, Kind::symmetric_power, 3, {2}},
        {3, Kind::vector, 1, {1, 1}},
        {3, Kind::vector, 1, {1, 0}},
        {3, Kind::symmetric_power, 2, {2, 1}},
        {3, Kind::symmetric_power, 2, {1, 2}},
        {3, Kind::wedge_power, 2, {1, 1}},
        {3, Kind::symmetric_power, 2, {2, 2}},
        {4, Kind::vector, 1, {1, 1, 1}},
        {4, Kind::symmetric_power, 2, {1, 1, 1}},
        {4, Kind::wedge_power, 2, {1, 1, 0}},
        {4, Kind::wedge_power, 2, {0, 1, 1}},
        {4, Kind::symmetric_power, 2, {2, 1, 0}},
    };
}

std::vector<Flavor> flavors()
{
    return {Flavor::rational(), Flavor::trigonometric(make_scalar(2, 3)), Flavor::trigonometric(make_scalar(-3, 5))};
}

} // namespace

TEST_CASE("q-numbers and factorials")
{
    Scalar q = make_scalar(2, 3);
    CHECK(q_number(1, q) == Scalar(1));
    CHECK(q_number(2, q) == q + q.inverse());
    CHECK(q_factorial(3, q) == (q + q.inverse()) * (q * q + Scalar(1) + q.pow(-2)));
    CHECK(factorial(5) == Scalar(120));
    CHECK_THROWS_AS(q_factorial(2, Scalar::parse("0")), std::exception);
}

TEST_CASE("recursion theorems and closed forms match the trace")
{
    oracle::Rng rng(2024);
    for (const auto& f : flavors())
        for (const auto& c : cases()) {
            Scalar x = rng.nonzero();
            auto m = build_module(oracle::module_spec(c.n, c.kind, c.power), f);
            auto rep = make_eval(m, x);
            Composition xi{c.xi};
            auto t = oracle::sample_t(rng, f, rep.get(), xi);
            Vec expect = weight_vector(*rep, xi, t);
            EvalData ev{m, x};
            CAPTURE(c.n);
            CAPTURE(c.power);
            CAPTURE(static_cast<int>(c.kind));
            CAPTURE(f.trig());
            CAPTURE(xi.xi[0]);
            CHECK(recursion_theorem(ev, xi, t, Direction::last) == expect);
            CHECK(recursion_theorem(ev, xi, t, Direction::first) == expect);
            CHECK(closed_form(ev, xi, t, Closed::bcN) == expect);
            CHECK(closed_form(ev, xi, t, Closed::bc1) == expect);
        }
}

TEST_CASE("recursion survives summands that vanish for some permutations")
{
    // t^2_2 = 0 kills some terms of the symmetrization but not others
    auto m = build_module(oracle::module_spec(3, Kind::wedge_power, 2), Flavor::rational());
    Scalar x(1);
    auto rep = make_eval(m, x);
    Composition xi{{1, 2}};
    VarCollection t{{make_scalar(-8, 11)}, {Scalar(-10), Scalar(0)}};
    Vec expect = weight_vector(*rep, xi, t);
    EvalData ev{m, x};
    CHECK(recursion_theorem(ev, xi, t, Direction::first) == expect);
    CHECK(recursion_theorem(ev, xi, t, Direction::last) == expect);
}

TEST_CASE("tensor split matches the trace on the tensor product")
{
    oracle::Rng rng(77);
    struct Split {
        int n;
        std::vector<std::pair<Kind, int>> factors;
        std::vector<int> xi;
    };
    std::vector<Split> splits{
        {2, {{Kind::vector, 1}, {Kind::vector, 1}}, {2}},
        {2, {{Kind::symmetric_power, 2}, {Kind::vector, 1}}, {2}},
        {3, {{Kind::vector, 1}, {Kind::vector, 1}}, {1, 1}},
        {3, {{Kind::vector, 1}, {Kind::vector, 1}}, {2, 1}},
        {3, {{Kind::wedge_power, 2}, {Kind::vector, 1}}, {1, 1}},
        {3, {{Kind::vector, 1}, {Kind::vector, 1}, {Kind::vector, 1}}, {2, 1}},
        {4, {{Kind::vector, 1}, {Kind::vector, 1}}, {1, 1, 1}},
    };
    for (const auto& f : flavors())
        for (const auto& s : splits) {
            std::vector<RepPtr> reps;
            for (auto [k, p] : s.factors)
                reps.push_back(oracle::eval(s.n, k, p, rng.nonzero(), f));
            auto whole = make_assembly(reps);
            Composition xi{s.xi};
            auto t = oracle::sample_t(rng, f, whole.get(), xi);
            Vec expect = weight_vector(*whole, xi, t);
            CAPTURE(s.n);
            CAPTURE(reps.size());
            CAPTURE(f.trig());
            CHECK(tensor_split(reps, xi, t) == expect);
            CHECK(tensor_split(reps, xi, t, SymMode::cosets) == expect);
            if (reps.size() == 3) {
                // binary split with the right factor itself split
                std::vector<RepPtr> tail{reps[1], reps[2]};
                auto right = make_assembly(tail);
                FactorWeight nested = [&](std::size_t r, const Composition& part, const VarCollection& tr) {
                    return r == 0 ? weight_vector(*reps[0], part, tr) : tensor_split(tail, part, tr);
                };
                CHECK(tensor_split({reps[0], right}, xi, t, SymMode::full, nested) == expect);
            }
        }
}
