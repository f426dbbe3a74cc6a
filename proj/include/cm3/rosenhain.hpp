#pragma once

#include "cm3/theta.hpp"

namespace cm3 {

// Curve model y^2 = x(x-1)(x-a3)...(x-a7): a1 = 0 and a2 = 1 are fixed,
// the five remaining branch x-coordinates are the invariants.
struct RosenhainSet {
    std::map<int, BigComplex> a;  // keys 3..7
    EtaMapClass eta_used;
    std::string z_ref;
};

// +1 when k is outside the interval spanned by l and m, else -1
int epsilon(int k, int l, int m);

// epsilon(k,l,m) * (theta[U o (V+{k,l})] theta[U o (W+{k,l})] /
//                   (theta[U o (V+{k,m})] theta[U o (W+{k,m})]))^2
// = (a_k - a_l)/(a_k - a_m) for any split B - {inf} = V | W | {k,l,m}
// with |V| = |W| = 2.  Theta values come from the table, evaluated on
// demand when a class is missing.
BigComplex takase_ratio(const PeriodMatrix& Z, const EtaMapClass& eta,
                        int k, int l, int m, const BranchSubset& V,
                        const BranchSubset& W, const ThetaTable& table);

// a_i = (a_1 - a_i)/(a_1 - a_2) via the (k,l,m) = (1,i,2) ratio, with V
// the two smallest remaining indices.  Checks the observed vanishing
// pattern against the predicted profile for eta first.
RosenhainSet rosenhain_invariants(const PeriodMatrix& Z,
                                  const EtaMapClass& eta,
                                  const ThetaTable& table);

// Max over admissible S of |r_S / r_S0 - 1| where
// r_S = theta[eta_S]^4 (-1)^#(S n U) prod (a_i - a_j), the products over
// i in (S o U) - {inf}, j in B - (S o U) - {inf}; exactly constant in
// exact arithmetic, so the defect measures pipeline consistency.
BigReal thomae_check(const PeriodMatrix& Z, const EtaMapClass& eta,
                     const RosenhainSet& ros, const ThetaTable& table);

}  // namespace cm3
