#include "doctest.h"
#include "support.hpp"

#include "nbv/errors.hpp"
#include "nbv/scalar.hpp"

using nbv::Scalar;
using nbv::make_scalar;

TEST_CASE("make_scalar canonical form")
{
    CHECK(make_scalar(6, 4).str() == "3/2");
    CHECK(make_scalar(0, 7).str() == "0/1");
    CHECK(make_scalar(3, -9).str() == "-1/3");
    CHECK_THROWS_AS(make_scalar(1, 0), nbv::ArithmeticError);
}

TEST_CASE("arithmetic examples")
{
    CHECK(make_scalar(1, 2) + make_scalar(1, 3) == make_scalar(5, 6));
    CHECK(Scalar(2).pow(-2) == make_scalar(1, 4));
    CHECK(Scalar(0).pow(0) == Scalar(1));
    CHECK_THROWS_AS(Scalar(1) / Scalar(0), nbv::ArithmeticError);
    CHECK_THROWS_AS(Scalar(0).pow(-1), nbv::ArithmeticError);
    try {
        (void)(make_scalar(3, 5) / Scalar(0));
    }
    catch (const nbv::ArithmeticError& e) {
        CHECK(std::string(e.what()).find("3/5") != std::string::npos);
    }
}

TEST_CASE("parse and print round trip")
{
    CHECK(Scalar::parse("5").str() == "5/1");
    CHECK(Scalar::parse("-3/7").str() == "-3/7");
    CHECK(Scalar::parse("+4/6") == make_scalar(2, 3));
    CHECK_THROWS(Scalar::parse("1/0"));
    CHECK_THROWS(Scalar::parse("abc"));
    CHECK_THROWS(Scalar::parse("1.5"));
    oracle::Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        Scalar s = rng.rational(1000);
        CHECK(Scalar::parse(s.str()) == s);
    }
}

TEST_CASE("field axioms on random triples")
{
    oracle::Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        Scalar a = rng.rational(), b = rng.rational(), c = rng.rational();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + (-a) == Scalar(0));
        if (!a.is_zero())
            CHECK(a * a.inverse() == Scalar(1));
        // canonical form is idempotent
        Scalar p = a * b;
        CHECK(Scalar(p.raw()) == p);
        CHECK(Scalar(p.raw()).str() == p.str());
    }
}

TEST_CASE("growth beyond machine words stays exact")
{
    Scalar x = make_scalar(13, 11).pow(60);
    Scalar y = x * make_scalar(11, 13).pow(60);
    CHECK(y == Scalar(1));
}
