#include "cm3/real.hpp"

#include <string>

#include "check.hpp"

using namespace cm3;

int main() {
    CHECK_THROWS(PrecisionContext(10), ErrorCode::ConfigError);
    PrecisionContext ctx(200);
    CHECK(ctx.bits == 200);

    // basic arithmetic keeps the larger operand precision
    BigReal a(3L, 200), b(7L, 100);
    CHECK((a + b).prec() == 200);
    CHECK((a * b).to_double() == 21.0);
    CHECK((a - b).sign() < 0);
    CHECK((b / a).to_double() > 2.33);

    // rationals survive exactly at high precision
    BigReal q(mpq_class(1, 3), 200);
    BigReal three_q = q * BigReal(3L, 200);
    CHECK(abs(three_q - BigReal(1L, 200)) < BigReal::pow2(-190, 200));

    // pi to 200 bits: check against a known 30-digit prefix
    std::string pis = BigReal::pi(200).str();
    CHECK(pis.substr(0, 32) == "3.141592653589793238462643383279");

    // exp(log(x)) = x well below working precision
    BigReal x(17.25, 200);
    CHECK(abs(exp(log(x)) - x) < BigReal::pow2(-180, 200));

    // sin^2 + cos^2 = 1
    BigReal t(0.731, 200);
    BigReal s = sin(t), c = cos(t);
    CHECK(abs(s * s + c * c - BigReal(1L, 200)) < BigReal::pow2(-190, 200));

    // pow2 is exact
    CHECK(BigReal::pow2(-3, 64).to_double() == 0.125);
    CHECK(BigReal::pow2(10, 64).to_double() == 1024.0);

    // rounding
    CHECK(BigReal(2.49, 100).nearest_integer() == 2);
    CHECK(BigReal(-2.51, 100).nearest_integer() == -3);
    CHECK(BigReal(mpz_class("123456789012345678901234567890"), 200)
              .nearest_integer() ==
          mpz_class("123456789012345678901234567890"));

    // decimal strings round-trip simple values
    CHECK(BigReal(0L, 100).str() == "0");
    CHECK(BigReal(-42L, 100).str() == "-42");
    CHECK(BigReal(0.5, 100).str() == "0.5");
    std::string tiny = BigReal(mpq_class(1, 1024), 100).str();
    CHECK(tiny.substr(0, 12) == "0.0009765625");

    // complex arithmetic
    BigComplex i(BigReal(0L, 200), BigReal(1L, 200));
    BigComplex one(BigReal(1L, 200), BigReal(0L, 200));
    BigComplex ii = i * i;
    CHECK(abs(ii + one) < BigReal::pow2(-190, 200));
    CHECK(abs2(i).to_double() == 1.0);
    CHECK(conj(i).im.sign() < 0);

    // division: (1+2i)/(3-4i) * (3-4i) = 1+2i
    BigComplex u(1.0, 2.0, 200), v(3.0, -4.0, 200);
    BigComplex w = u / v;
    CHECK(abs(w * v - u) < BigReal::pow2(-180, 200));

    // Euler: exp(i*pi) = -1
    BigComplex ipi(BigReal(0L, 200), BigReal::pi(200));
    BigComplex e = cexp(ipi);
    CHECK(abs(e + one) < BigReal::pow2(-190, 200));

    return check_summary("test_real");
}
