#include <doctest.h>

#include "bmkit/bigint.hpp"

using namespace bmkit;

TEST_CASE("biguint arithmetic round trips through strings") {
    BigUint a(123456789012345ULL);
    CHECK(a.to_string() == "123456789012345");
    BigUint b = BigUint::pow(BigUint(2), 100);
    CHECK(b.to_string() == "1267650600228229401496703205376");
    CHECK((b - BigUint(1)).to_string() == "1267650600228229401496703205375");
    CHECK((BigUint(0) + BigUint(0)).is_zero());
}

TEST_CASE("biguint multiplication and gcd agree with small cases") {
    CHECK((BigUint(1000003) * BigUint(999983)).to_string() == "999985999949");
    CHECK(BigUint::gcd(BigUint(48), BigUint(180)).to_string() == "12");
    CHECK(BigUint::gcd(BigUint::pow(BigUint(6), 20), BigUint::pow(BigUint(4), 20)).to_string() ==
          BigUint::pow(BigUint(2), 20).to_string());
    CHECK(BigUint::div_exact(BigUint(7) * BigUint::pow(BigUint(10), 30), BigUint(7)).to_string() ==
          BigUint::pow(BigUint(10), 30).to_string());
}

TEST_CASE("rationals reduce and compare") {
    Rational r(6, 8);
    CHECK(r.to_string() == "3/4");
    CHECK(Rational(15, 16) == Rational::parse("15/16"));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
    CHECK_THROWS(Rational::parse("0.5"));
    CHECK(Rational::parse("7").to_string() == "7/1");
}
