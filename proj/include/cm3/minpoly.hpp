#pragma once

#include <map>
#include <string>
#include <vector>

#include "cm3/lll.hpp"
#include "cm3/real.hpp"
#include "cm3/rosenhain.hpp"

namespace cm3 {

// Integer polynomial, constant term first, normalized to content 1 and
// positive leading coefficient.
struct IntegerPolynomial {
    std::vector<mpz_class> coeffs;

    int degree() const { return (int)coeffs.size() - 1; }
    // "x^3 + 22*x^2 - 16*x - 8" style rendering, highest degree first
    std::string str() const;
};

struct RecognitionResult {
    IntegerPolynomial poly;
    BigReal residual;   // |poly(z)| at working precision
    mpz_class height;   // max |coefficient|
};

BigComplex poly_eval(const IntegerPolynomial& p, const BigComplex& z);

// Recognize z as an algebraic number of degree <= maxdeg by lattice
// reduction on the standard knapsack-style basis: row j carries
// round(2^s Re z^j), round(2^s Im z^j) and the j-th unit tail. The
// degree search ascends and stops at the first accepted candidate, so
// minimality comes from the search order. A candidate is accepted when
// its height-normalized residual |p(z)|*height^(deg+1) falls below
// 2^(-bits/4); the normalization screens out accidental near-relations
// (convergent-type artifacts) that any lattice of this shape contains.
// scale_bits <= 0 selects the default s = bits - 10.
RecognitionResult algdep(const BigComplex& z, int maxdeg,
                         const PrecisionContext& ctx, int scale_bits = 0);

// algdep applied to each of the five Rosenhain invariants (keys 3..7)
std::map<int, RecognitionResult> recognize_rosenhain(
    const RosenhainSet& ros, int maxdeg, const PrecisionContext& ctx);

}  // namespace cm3
