#include "doctest.h"
#include "support.hpp"

#include "nbv/errors.hpp"
#include "nbv/linalg.hpp"
#include "nbv/rmatrix.hpp"

using namespace nbv;

namespace {

oracle::Mat to_mat(const Operator& op)
{
    oracle::Mat m = oracle::zeros(op.rows(), op.cols());
    for (std::size_t i = 0; i < op.rows(); ++i)
        for (std::size_t j = 0; j < op.cols(); ++j)
            m[i][j] = op.at(i, j).raw();
    return m;
}

Operator random_op(oracle::Rng& rng, std::size_t n)
{
    Operator a(aux_legs(n, 1), aux_legs(n, 1));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a.at(i, j) = rng.rational();
    return a;
}

} // namespace

TEST_CASE("matrix units")
{
    Operator e = matrix_unit(2, 1, 2);
    CHECK(e.at(0, 1) == Scalar(1));
    CHECK(e.at(0, 0).is_zero());
    CHECK(e.at(1, 0).is_zero());
    CHECK(matrix_unit(1, 1, 1).at(0, 0) == Scalar(1));
    CHECK(matrix_unit(2, 1, 2) * matrix_unit(2, 2, 1) == matrix_unit(2, 1, 1));
    CHECK_THROWS(matrix_unit(2, 3, 1));
    CHECK_THROWS(matrix_unit(2, 0, 1));
}

TEST_CASE("kron")
{
    Operator k = kron(Operator::identity(aux_legs(2, 1)), matrix_unit(2, 1, 2));
    CHECK(k.at(0, 1) == Scalar(1));
    CHECK(k.at(2, 3) == Scalar(1));
    int nonzero = 0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            nonzero += !k.at(i, j).is_zero();
    CHECK(nonzero == 2);
    CHECK(kron({Operator::identity(aux_legs(2, 1)), Operator::identity(aux_legs(3, 1))}) ==
          Operator::identity({Space{2, ""}, Space{3, ""}}));

    oracle::Rng rng(3);
    for (int t = 0; t < 5; ++t) {
        Operator a = random_op(rng, 2), b = random_op(rng, 2), c = random_op(rng, 2), d = random_op(rng, 2);
        Operator lhs = kron(a, b) * kron(c, d);
        CHECK(to_mat(lhs) == oracle::kron(oracle::mul(to_mat(a), to_mat(c)), oracle::mul(to_mat(b), to_mat(d))));
        CHECK(to_mat(kron(a, b)) == oracle::kron(to_mat(a), to_mat(b)));
    }
}

TEST_CASE("embed_leg")
{
    auto legs = aux_legs(2, 2);
    Operator a = matrix_unit(2, 1, 2), b = matrix_unit(2, 2, 2);
    CHECK(embed_leg(a, {1}, legs) == kron(a, Operator::identity(aux_legs(2, 1))));
    Operator e11 = matrix_unit(2, 1, 1), e22 = matrix_unit(2, 2, 2);
    CHECK(embed_leg(kron(e11, e22), {2, 1}, legs) == kron(e22, e11));
    CHECK(embed_leg(a, {1}, legs) * embed_leg(b, {2}, legs) == embed_leg(b, {2}, legs) * embed_leg(a, {1}, legs));
    CHECK_THROWS(embed_leg(kron(e11, e22), {1, 1}, legs));
    CHECK_THROWS(embed_leg(a, {3}, legs));

    // three legs, middle placement against the naive Kronecker oracle
    oracle::Rng rng(5);
    Operator x = random_op(rng, 2), y = random_op(rng, 2);
    auto l3 = aux_legs(2, 3);
    auto id = to_mat(Operator::identity(aux_legs(2, 1)));
    CHECK(to_mat(embed_leg(kron(x, y), {3, 1}, l3)) ==
          oracle::kron(oracle::kron(to_mat(y), id), to_mat(x)));
}

TEST_CASE("partial_trace")
{
    Operator p = flip(2);
    CHECK(partial_trace(p, {1, 2}).at(0, 0) == Scalar(2));
    oracle::Rng rng(9);
    Operator m = random_op(rng, 3);
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b) {
            Operator t = partial_trace(kron(matrix_unit(2, a, b), m), {1});
            CHECK(t == (a == b ? m : Operator(m.codomain(), m.domain())));
        }
    Operator x = random_op(rng, 3), y = random_op(rng, 3);
    CHECK(partial_trace(x * y, {1}) == partial_trace(y * x, {1}));
    // trace of the product computed by the oracle
    auto xy = oracle::mul(to_mat(x), to_mat(y));
    mpq_class tr = xy[0][0] + xy[1][1] + xy[2][2];
    CHECK(partial_trace(x * y, {1}).at(0, 0).raw() == tr);
    Operator rect(aux_legs(2, 1), aux_legs(3, 1));
    CHECK_THROWS(partial_trace(rect, {1}));
}

TEST_CASE("rational R-matrix")
{
    Flavor rat;
    CHECK(r_matrix(rat, 2, Scalar(0)) == flip(2));
    oracle::Rng rng(13);
    Scalar u = rng.rational();
    Operator r = r_matrix(rat, 2, u);
    // basis order v1v1, v1v2, v2v1, v2v2
    CHECK(r.at(1, 1) == u);
    CHECK(r.at(1, 2) == Scalar(1));
    CHECK(r.at(2, 1) == Scalar(1));
    CHECK(r.at(2, 2) == u);
    CHECK(r.at(0, 0) == u + Scalar(1));
    CHECK(r.at(3, 3) == u + Scalar(1));
}

TEST_CASE("trigonometric R-matrix at u = 1")
{
    Scalar q = make_scalar(2, 3);
    Flavor f = Flavor::trigonometric(q);
    Operator r = r_matrix(f, 2, Scalar(1));
    Operator expect = kron(matrix_unit(2, 1, 1), matrix_unit(2, 1, 1)) + kron(matrix_unit(2, 2, 2), matrix_unit(2, 2, 2)) +
                      kron(matrix_unit(2, 1, 2), matrix_unit(2, 2, 1)) + kron(matrix_unit(2, 2, 1), matrix_unit(2, 1, 2));
    CHECK(r == expect * (q - q.inverse()));
    CHECK_THROWS(Flavor::trigonometric(Scalar(1)));
    CHECK_THROWS(Flavor::trigonometric(Scalar(-1)));
    CHECK_THROWS(Flavor::trigonometric(Scalar(0)));
}

TEST_CASE("R-check")
{
    oracle::Rng rng(17);
    Flavor rat;
    for (int t = 0; t < 5; ++t) {
        Scalar u = rng.rational();
        if (u == Scalar(1) || u == Scalar(-1))
            continue;
        auto id = Operator::identity(aux_legs(3, 2));
        CHECK(r_check(rat, 3, u, true) * r_check(rat, 3, -u, true) == id);
        Flavor tr = Flavor::trigonometric(Scalar(2));
        Scalar w = rng.nonzero();
        if (w * Scalar(2) - make_scalar(1, 2) != Scalar(0) && w.inverse() * Scalar(2) - make_scalar(1, 2) != Scalar(0))
            CHECK(r_check(tr, 3, w, true) * r_check(tr, 3, w.inverse(), true) == id);
        // R(u) E_{a+1,a} (x) E_{a+1,a} = (u+1) E_{a+1,a} (x) E_{a+1,a}
        for (int a = 1; a < 3; ++a) {
            Operator ee = kron(matrix_unit(3, a + 1, a), matrix_unit(3, a + 1, a));
            CHECK(r_check(rat, 3, u) * ee == ee * (u + Scalar(1)));
            CHECK(r_matrix(rat, 3, u) * ee == ee * (u + Scalar(1)));
        }
    }
    CHECK(r_check(rat, 2, Scalar(0)) == Operator::identity(aux_legs(2, 2)));
    CHECK_THROWS_AS(r_check(rat, 2, Scalar(-1), true), PoleError);
}

TEST_CASE("R preserves two-dimensional blocks and restricts to rank N-1")
{
    oracle::Rng rng(19);
    for (int n = 2; n <= 4; ++n) {
        for (Flavor f : {Flavor(), Flavor::trigonometric(make_scalar(-3, 5))}) {
            Scalar u = rng.nonzero();
            Operator r = r_matrix(f, n, u);
            for (int i = 0; i < n * n; ++i)
                for (int j = 0; j < n * n; ++j) {
                    if (r.at(i, j).is_zero())
                        continue;
                    int a = i / n, b = i % n, c = j / n, d = j % n;
                    bool same_block = (a == c && b == d) || (a == d && b == c);
                    CHECK(same_block);
                }
            Operator small = r_matrix(f, n - 1 > 0 ? n - 1 : 1, u);
            for (int a = 0; a < n - 1; ++a)
                for (int b = 0; b < n - 1; ++b)
                    for (int c = 0; c < n - 1; ++c)
                        for (int d = 0; d < n - 1; ++d)
                            CHECK(r.at((a + 1) * n + b + 1, (c + 1) * n + d + 1) ==
                                  small.at(a * (n - 1) + b, c * (n - 1) + d));
        }
    }
}
