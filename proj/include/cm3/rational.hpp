#pragma once

#include <gmpxx.h>

#include <array>
#include <string>
#include <vector>

#include "cm3/error.hpp"
#include "cm3/real.hpp"

namespace cm3 {

using Rat = mpq_class;

// Parse "num/den" (or plain "num"); SchemaError on malformed input.
Rat parse_rational(const std::string& s);
std::string rational_str(const Rat& q);

// Element of K = Q[x]/(f) in the power basis 1, alpha, ..., alpha^5.
struct FieldElement {
    std::array<Rat, 6> c{};

    bool operator==(const FieldElement& o) const { return c == o.c; }
    bool is_zero() const {
        for (const auto& q : c)
            if (q != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (int i = 1; i < 6; ++i)
            if (c[i] != 0) return false;
        return true;
    }
};

FieldElement fe_zero();
FieldElement fe_one();
FieldElement fe_int(long n);

// Arithmetic in K for a monic integer sextic f (7 coefficients, constant
// term first, leading coefficient 1).
class FieldOps {
public:
    explicit FieldOps(const std::array<mpz_class, 7>& f);

    const std::array<mpz_class, 7>& poly() const { return f_; }

    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b) const;
    FieldElement neg(const FieldElement& a) const;
    FieldElement smul(const Rat& s, const FieldElement& a) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    FieldElement pow(const FieldElement& a, unsigned long e) const;
    // Multiplicative inverse via the extended Euclidean algorithm in Q[x].
    // Requires f squarefree so that gcd(a, f) is constant for a != 0.
    FieldElement inv(const FieldElement& a) const;

private:
    std::array<mpz_class, 7> f_;
    // x^(6+k) reduced mod f, k = 0..4, as rows of rationals
    std::array<std::array<Rat, 6>, 5> red_;
};

// gcd(f, f') is constant iff f is squarefree over Q.
bool poly_is_squarefree(const std::array<mpz_class, 7>& f);

// Horner evaluation of a rational-coefficient polynomial at a complex point.
BigComplex eval_poly(const std::vector<Rat>& coeffs, const BigComplex& x,
                     long prec);

}  // namespace cm3
