#include "cm3/linalg.hpp"

#include <vector>

#include "check.hpp"

using namespace cm3;

static BigComplex cpx(double re, double im, long prec = 200) {
    return BigComplex(re, im, prec);
}

int main() {
    PrecisionContext ctx(200);
    BigReal tol = BigReal::pow2(-150, 200);

    {  // (x - 1)(x - 2)(x - 3) = x^3 - 6x^2 + 11x - 6
        std::vector<BigComplex> c = {cpx(-6, 0), cpx(11, 0), cpx(-6, 0),
                                     cpx(1, 0)};
        auto r = poly_roots(c, ctx);
        CHECK(r.size() == 3);
        CHECK(abs(r[0] - cpx(1, 0)) < tol);
        CHECK(abs(r[1] - cpx(2, 0)) < tol);
        CHECK(abs(r[2] - cpx(3, 0)) < tol);
    }

    {  // x^2 + 1: conjugate pair sorted by imaginary part
        std::vector<BigComplex> c = {cpx(1, 0), cpx(0, 0), cpx(1, 0)};
        auto r = poly_roots(c, ctx);
        CHECK(r.size() == 2);
        CHECK(abs(r[0] - cpx(0, -1)) < tol);
        CHECK(abs(r[1] - cpx(0, 1)) < tol);
    }

    {  // x^6 + x^5 + ... + 1 = Phi_7 * (x+1)-free: roots of unity except 1
        std::vector<BigComplex> c(7, cpx(1, 0));
        auto r = poly_roots(c, ctx);
        CHECK(r.size() == 6);
        for (const auto& rt : r)
            CHECK(abs(abs(rt) - BigReal(1L, 200)) < tol);
        // sorted canonically: real parts ascending
        for (size_t i = 1; i < r.size(); ++i)
            CHECK(r[i].re >= r[i - 1].re - BigReal::pow2(-40, 200));
        auto pairs = conj_pairing(r, ctx);
        CHECK(pairs.size() == 3);
        for (auto [i, j] : pairs) {
            CHECK(r[i].im.sign() > 0);
            CHECK(abs(conj(r[i]) - r[j]) < tol);
        }
    }

    {  // totally real polynomial cannot be conjugate-paired
        std::vector<BigComplex> c = {cpx(-2, 0), cpx(0, 0), cpx(1, 0)};
        auto r = poly_roots(c, ctx);
        CHECK_THROWS(conj_pairing(r, ctx), ErrorCode::PermutationMismatch);
    }

    {  // leading zeros are trimmed
        std::vector<BigComplex> c = {cpx(-4, 0), cpx(0, 0), cpx(1, 0),
                                     cpx(0, 0), cpx(0, 0)};
        auto r = poly_roots(c, ctx);
        CHECK(r.size() == 2);
        CHECK(abs(r[0] - cpx(-2, 0)) < tol);
        CHECK(abs(r[1] - cpx(2, 0)) < tol);
    }

    {  // matrix inverse round-trips
        ComplexMatrix3 m;
        double vals[3][3][2] = {{{1, 1}, {2, 0}, {0, -1}},
                                {{0, 0}, {3, 1}, {1, 0}},
                                {{5, 0}, {0, 0}, {1, 2}}};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                m[i][j] = cpx(vals[i][j][0], vals[i][j][1]);
        auto inv = mat_inv3(m, ctx);
        auto prod = mat_mul3(m, inv);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                BigComplex want = (i == j) ? cpx(1, 0) : cpx(0, 0);
                CHECK(abs(prod[i][j] - want) < tol);
            }
    }

    {  // singular matrix is rejected
        ComplexMatrix3 m;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m[i][j] = cpx(i + j, 0);
        CHECK_THROWS(mat_inv3(m, ctx), ErrorCode::NearSingular);
    }

    {  // positive definiteness
        ComplexMatrix3 pd;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) pd[i][j] = cpx(i == j ? 2 : 0.5, 0);
        CHECK(is_pos_def(pd, ctx));
        pd[0][0] = cpx(-2, 0);
        CHECK(!is_pos_def(pd, ctx));
        // Hermitian with complex off-diagonal entries
        ComplexMatrix3 h;
        h[0][0] = cpx(3, 0);
        h[1][1] = cpx(3, 0);
        h[2][2] = cpx(3, 0);
        h[0][1] = cpx(0, 1);
        h[1][0] = cpx(0, -1);
        h[0][2] = cpx(0, 0);
        h[2][0] = cpx(0, 0);
        h[1][2] = cpx(1, 1);
        h[2][1] = cpx(1, -1);
        CHECK(is_pos_def(h, ctx));
        ComplexMatrix3 z{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) z[i][j] = cpx(0, 0);
        CHECK_THROWS(is_pos_def(z, ctx), ErrorCode::Indeterminate);
    }

    {  // rounding with tolerance
        BigReal t = BigReal::pow2(-30, 200);
        CHECK(round_to_integer(BigReal(5.0, 200) + BigReal::pow2(-40, 200),
                               t) == 5);
        CHECK_THROWS(round_to_integer(BigReal(5.25, 200), t),
                     ErrorCode::NotNearInteger);
        CHECK(round_to_integer(BigReal(-7L, 200), t) == -7);
    }

    return check_summary("test_linalg");
}
