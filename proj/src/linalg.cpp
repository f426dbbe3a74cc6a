#include "cm3/linalg.hpp"

#include <algorithm>
#include <cstddef>

namespace cm3 {

static BigComplex poly_eval(const std::vector<BigComplex>& c,
                            const BigComplex& x) {
    BigComplex acc = c.back();
    for (size_t i = c.size() - 1; i-- > 0;) acc = acc * x + c[i];
    return acc;
}

std::vector<BigComplex> poly_roots(const std::vector<BigComplex>& coeffs,
                                   const PrecisionContext& ctx) {
    long wp = ctx.bits + 64;  // guard digits for the iteration
    size_t n = coeffs.size();
    while (n > 0 && coeffs[n - 1].re.is_zero() && coeffs[n - 1].im.is_zero())
        --n;
    if (n < 2) throw Error(ErrorCode::ConfigError, "polynomial has no roots");
    size_t deg = n - 1;
    std::vector<BigComplex> c(coeffs.begin(), coeffs.begin() + (long)n);
    for (auto& ci : c) {
        if (!ci.is_finite())
            throw Error(ErrorCode::ConfigError, "non-finite coefficient");
    }
    std::vector<BigComplex> dc(deg);  // derivative
    for (size_t i = 1; i < n; ++i)
        dc[i - 1] = BigReal((long)i, wp) * c[i];

    // Cauchy-style bound: all roots lie within R = 1 + max |c_i / c_deg|.
    BigReal lead = abs(c[deg]);
    BigReal R(1L, wp);
    for (size_t i = 0; i < deg; ++i) {
        BigReal q = abs(c[i]) / lead;
        if (q > R) R = q;
    }
    R += BigReal(1L, wp);

    // initial guesses on a circle, rotated off the axes
    std::vector<BigComplex> r(deg, BigComplex(wp));
    BigReal two_pi = BigReal(2L, wp) * BigReal::pi(wp);
    for (size_t k = 0; k < deg; ++k) {
        BigReal ang = two_pi * (BigReal((long)k, wp) + BigReal(0.34, wp)) /
                      BigReal((long)deg, wp);
        r[k] = BigComplex(R * cos(ang), R * sin(ang));
    }

    BigReal eps = BigReal::pow2(-ctx.bits - 8, wp);
    long max_iter = 100 + ctx.bits / 2;
    bool converged = false;
    for (long iter = 0; iter < max_iter && !converged; ++iter) {
        converged = true;
        for (size_t k = 0; k < deg; ++k) {
            BigComplex p = poly_eval(c, r[k]);
            BigComplex dp = poly_eval(dc, r[k]);
            if (abs2(dp).is_zero()) {
                // nudge off a critical point
                r[k].re += eps;
                converged = false;
                continue;
            }
            BigComplex w = p / dp;  // Newton step
            BigComplex s(wp);
            for (size_t j = 0; j < deg; ++j) {
                if (j == k) continue;
                BigComplex d = r[k] - r[j];
                if (abs2(d).is_zero()) d.re += eps;
                s += BigComplex(BigReal(1L, wp), BigReal(0L, wp)) / d;
            }
            BigComplex denom =
                BigComplex(BigReal(1L, wp), BigReal(0L, wp)) - w * s;
            BigComplex corr = abs2(denom).is_zero() ? w : w / denom;
            r[k] -= corr;
            if (!r[k].is_finite())
                throw Error(ErrorCode::NoConvergence, "iterate diverged");
            BigReal scale = BigReal(1L, wp) + abs(r[k]);
            if (abs(corr) > eps * scale) converged = false;
        }
    }
    if (!converged)
        throw Error(ErrorCode::NoConvergence, "root iteration stalled");

    // residual check against the largest coefficient
    BigReal cmax(0L, wp);
    for (const auto& ci : c) {
        BigReal a = abs(ci);
        if (a > cmax) cmax = a;
    }
    BigReal rtol = BigReal::pow2(-ctx.bits / 2, wp) * cmax;
    for (const auto& rk : r) {
        if (abs(poly_eval(c, rk)) > rtol)
            throw Error(ErrorCode::NoConvergence, "residual too large");
    }

    // canonical order: ascending Re, clusters resolved by ascending Im
    std::sort(r.begin(), r.end(), [](const BigComplex& a, const BigComplex& b) {
        return a.re < b.re;
    });
    BigReal tol = BigReal::pow2(-ctx.bits / 4, wp);
    size_t i = 0;
    while (i < deg) {
        size_t j = i + 1;
        while (j < deg && r[j].re - r[i].re < tol) ++j;
        std::sort(r.begin() + (long)i, r.begin() + (long)j,
                  [](const BigComplex& a, const BigComplex& b) {
                      return a.im < b.im;
                  });
        i = j;
    }
    return r;
}

std::vector<std::pair<int, int>> conj_pairing(
    const std::vector<BigComplex>& roots, const PrecisionContext& ctx) {
    int n = (int)roots.size();
    BigReal tol = BigReal::pow2(-ctx.bits / 4, ctx.bits);
    std::vector<int> partner(n, -1);
    for (int i = 0; i < n; ++i) {
        if (!(abs(roots[i].im) > tol))
            throw Error(ErrorCode::PermutationMismatch,
                        "root too close to the real axis");
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            if (abs(conj(roots[i]) - roots[j]) < tol) {
                if (partner[i] != -1)
                    throw Error(ErrorCode::PermutationMismatch,
                                "conjugate partner not unique");
                partner[i] = j;
            }
        }
        if (partner[i] == -1)
            throw Error(ErrorCode::PermutationMismatch,
                        "no conjugate partner");
    }
    for (int i = 0; i < n; ++i) {
        if (partner[partner[i]] != i)
            throw Error(ErrorCode::PermutationMismatch,
                        "pairing is not an involution");
    }
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) {
        if (roots[i].im.sign() > 0) pairs.emplace_back(i, partner[i]);
    }
    std::sort(pairs.begin(), pairs.end());
    if (2 * (int)pairs.size() != n)
        throw Error(ErrorCode::PermutationMismatch, "odd pairing count");
    return pairs;
}

ComplexMatrix3 mat_mul3(const ComplexMatrix3& a, const ComplexMatrix3& b) {
    long wp = a[0][0].prec();
    ComplexMatrix3 out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            BigComplex s(wp);
            for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
            out[i][j] = s;
        }
    return out;
}

static BigComplex det3(const ComplexMatrix3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

ComplexMatrix3 mat_inv3(const ComplexMatrix3& m, const PrecisionContext& ctx) {
    BigComplex d = det3(m);
    BigReal floor = BigReal::pow2(-ctx.bits / 2, ctx.bits);
    if (!(abs(d) > floor))
        throw Error(ErrorCode::NearSingular, "3x3 determinant too small");
    ComplexMatrix3 inv;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
            int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
            // adjugate: cofactor of (j, i)
            inv[i][j] =
                (m[j1][i1] * m[j2][i2] - m[j1][i2] * m[j2][i1]) / d;
        }
    ComplexMatrix3 chk = mat_mul3(m, inv);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            BigComplex want(chk[i][j].prec());
            if (i == j) want.re = BigReal(1L, chk[i][j].prec());
            if (abs(chk[i][j] - want) > floor)
                throw Error(ErrorCode::NearSingular,
                            "inverse round-trip check failed");
        }
    return inv;
}

bool is_pos_def(const ComplexMatrix3& m, const PrecisionContext& ctx) {
    BigReal floor = BigReal::pow2(-ctx.bits / 2, ctx.bits);
    BigReal m1 = m[0][0].re;
    BigComplex d2 = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    BigComplex d3 = det3(m);
    const BigReal minors[3] = {m1, d2.re, d3.re};
    for (const BigReal& mi : minors) {
        if (!(abs(mi) > floor))
            throw Error(ErrorCode::Indeterminate,
                        "principal minor too close to zero");
    }
    return minors[0].sign() > 0 && minors[1].sign() > 0 &&
           minors[2].sign() > 0;
}

mpz_class round_to_integer(const BigReal& x, const BigReal& tol) {
    mpz_class z = x.nearest_integer();
    BigReal diff = abs(x - BigReal(z, x.prec()));
    if (diff > tol)
        throw Error(ErrorCode::NotNearInteger, "value " + x.str());
    return z;
}

}  // namespace cm3
