#pragma once

#include <array>
#include <vector>

#include "cm3/bundle.hpp"
#include "cm3/minpoly.hpp"

namespace cm3 {

// Small prime arithmetic slots: p is capped at 2^14 throughout this module.
struct PrimeFieldElement {
    long value;  // 0 <= value < p
    long p;
};

// F_{p^n} for n in {2, 3}, modulus found by exhaustive search: the first
// monic polynomial (coefficients scanned in base-p counter order,
// constant digit least significant) with no root in F_p — for degree 2
// and 3 rootlessness is exactly irreducibility, and the scan is the
// verification.
struct ExtensionField {
    long p;
    int degree;
    std::array<long, 3> modulus;  // non-leading coefficients, constant first
};
ExtensionField make_extension(long p, int degree);

// Rosenhain model y^2 = x (x-1) (x-a3)...(x-a7) over F_p: the a_i must
// be pairwise distinct and avoid 0 and 1, else the model is singular.
struct CurveCandidate {
    long p;
    std::array<long, 5> a;
};
CurveCandidate make_curve(long p, const std::array<long, 5>& a);

// All roots of poly in F_p by exhaustive scan. Requires p prime,
// p <= 2^14 and p not dividing the leading coefficient (BadPrime).
std::vector<PrimeFieldElement> roots_mod_p(const IntegerPolynomial& poly,
                                           long p);

// #{(x, y) in F_{p^n}^2 : y^2 = f(x)} + 1 (one point at infinity for the
// degree-7 model), by exhaustive enumeration with a quadratic-character
// table over F_{p^n}.
long count_points(const CurveCandidate& curve, int n);

// Jacobian order from the three point counts: power sums
// s_i = p^i + 1 - N_i, elementary symmetric functions via Newton's
// identities, the functional equation e4 = p e2, e5 = p^2 e1, e6 = p^3,
// and P(1) = sum (-1)^j e_j. Throws NonIntegralSymmetricFunction when
// the counts are inconsistent (non-integral e_i or nonpositive order).
mpz_class jacobian_order(const std::array<long, 3>& counts, long p);

// N_{K/Q}(1 - pi) rounded to an integer. Checks |phi(pi)|^2 = p under
// every embedding first (NotWeilNumber otherwise).
mpz_class weil_norm(const FieldElement& pi, long p, const EmbeddingSet& E,
                    const PrecisionContext& ctx);

struct CurveSearchResult {
    CurveCandidate curve;
    bool twisted;                 // matched through the quadratic twist
    std::array<long, 3> counts;   // of the untwisted model as returned
};

// Iterate tuples (one root from each list) in lexicographic order, skip
// singular candidates, and return the first whose Jacobian order — or
// the order of its quadratic twist — equals target. The twist is
// accepted because neither the pi-vs-conjugate choice nor the model's
// twist class is pinned down by the construction. Throws NotFound when
// the enumeration is exhausted.
CurveSearchResult search_curve(
    const std::array<std::vector<PrimeFieldElement>, 5>& root_lists,
    const mpz_class& target, long p);

}  // namespace cm3
