#pragma once

#include <array>
#include <vector>

#include "cm3/real.hpp"

namespace cm3 {

using ComplexMatrix3 = std::array<std::array<BigComplex, 3>, 3>;
using ComplexVec = std::vector<BigComplex>;

// Roots of a complex-coefficient polynomial (ascending degree, c[deg] != 0),
// found simultaneously by the Aberth–Ehrlich iteration and returned in a
// canonical order: ascending real part, ties broken by ascending imaginary
// part (comparisons at a tolerance of 2^-(bits/4) so conjugate pairs sort
// deterministically).  Throws NoConvergence if the iteration stalls.
std::vector<BigComplex> poly_roots(const std::vector<BigComplex>& coeffs,
                                   const PrecisionContext& ctx);

// Pair the six roots of a real polynomial into conjugate pairs (i, j) with
// i < j and Im(roots[i]) > 0.  Throws PermutationMismatch when the pairing
// is not a fixed-point-free involution at the working tolerance.
std::vector<std::pair<int, int>> conj_pairing(
    const std::vector<BigComplex>& roots, const PrecisionContext& ctx);

// Inverse of a 3x3 complex matrix via adjugate.  Throws NearSingular when
// |det| < 2^-(bits/2), and validates the round-trip against the identity.
ComplexMatrix3 mat_inv3(const ComplexMatrix3& m, const PrecisionContext& ctx);

ComplexMatrix3 mat_mul3(const ComplexMatrix3& a, const ComplexMatrix3& b);

// Positive definiteness of a (numerically) Hermitian 3x3 matrix by leading
// principal minors; Indeterminate if any minor is within 2^-(bits/2) of 0.
bool is_pos_def(const ComplexMatrix3& m, const PrecisionContext& ctx);

// Round to the nearest integer; NotNearInteger if no integer lies within tol.
mpz_class round_to_integer(const BigReal& x, const BigReal& tol);

}  // namespace cm3
