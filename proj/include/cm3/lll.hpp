#pragma once

#include <gmpxx.h>

#include <vector>

namespace cm3 {

using IntegerRow = std::vector<mpz_class>;
using IntegerLattice = std::vector<IntegerRow>;

// Lattice basis reduction (Lenstra–Lenstra–Lovász) with parameter 0.99,
// all-integer arithmetic (lambda/d bookkeeping, exact divisions only).
// Rows must be linearly independent and of equal length.
// Throws DependentRows otherwise.
//
// The output is verified post-hoc with an exact rational Gram–Schmidt
// pass before being returned.
IntegerLattice lll_reduce(const IntegerLattice& basis);

// Exact check (rational Gram–Schmidt): size-reduced (|mu_ij| <= 1/2) and
// the Lovász condition with parameter 0.99 holds between adjacent rows.
bool is_lll_reduced(const IntegerLattice& basis);

}  // namespace cm3
