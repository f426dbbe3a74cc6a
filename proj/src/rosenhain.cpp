#include "cm3/rosenhain.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace cm3 {

namespace {

// theta[eta_S] from the table; classes absent from the table (partial
// tables, or odd classes) are evaluated on demand.
BigComplex theta_of_subset(const EtaMapClass& eta, const BranchSubset& s,
                           const PeriodMatrix& Z, const ThetaTable& table) {
    Characteristic c = eta_of_subset(eta, s);
    auto it = table.values.find(c);
    if (it != table.values.end()) return it->second;
    if (e_star(c) == -1) return BigComplex(table.bits);  // odd: exactly 0
    return theta_constant(c, Z, PrecisionContext(table.bits)).value;
}

BranchSubset with(BranchSubset s, int a, int b) {
    s.insert(a);
    s.insert(b);
    return s;
}

void require_split(int k, int l, int m, const BranchSubset& V,
                   const BranchSubset& W) {
    auto in_range = [](int x) { return x >= 1 && x <= 7; };
    if (!in_range(k) || !in_range(l) || !in_range(m) || k == l || k == m ||
        l == m)
        throw Error(ErrorCode::ConfigError,
                    "takase indices must be distinct finite branch points");
    if (V.size() != 2 || W.size() != 2)
        throw Error(ErrorCode::ConfigError, "takase split parts must have size 2");
    BranchSubset all = {k, l, m};
    for (int x : V) all.insert(x);
    for (int x : W) all.insert(x);
    if (all.size() != 7 || *all.begin() < 1 || *all.rbegin() > 7)
        throw Error(ErrorCode::ConfigError,
                    "takase split must partition the finite branch points");
}

}  // namespace

int epsilon(int k, int l, int m) {
    return (k < std::min(l, m) || k > std::max(l, m)) ? 1 : -1;
}

BigComplex takase_ratio(const PeriodMatrix& Z, const EtaMapClass& eta,
                        int k, int l, int m, const BranchSubset& V,
                        const BranchSubset& W, const ThetaTable& table) {
    require_split(k, l, m, V, W);
    BranchSubset u = u_set(eta);
    BigComplex n1 = theta_of_subset(eta, sym_diff(u, with(V, k, l)), Z, table);
    BigComplex n2 = theta_of_subset(eta, sym_diff(u, with(W, k, l)), Z, table);
    BigComplex d1 = theta_of_subset(eta, sym_diff(u, with(V, k, m)), Z, table);
    BigComplex d2 = theta_of_subset(eta, sym_diff(u, with(W, k, m)), Z, table);
    BigComplex den = d1 * d2;
    if (abs(den) < BigReal::pow2(-table.bits / 2, table.bits))
        throw Error(ErrorCode::DenominatorNearZero,
                    "takase denominator below 2^-bits/2; eta map likely "
                    "inconsistent with the vanishing class");
    BigComplex q = (n1 * n2) / den;
    BigComplex r = q * q;
    if (epsilon(k, l, m) < 0) r = -r;
    return r;
}

RosenhainSet rosenhain_invariants(const PeriodMatrix& Z,
                                  const EtaMapClass& eta,
                                  const ThetaTable& table) {
    // The Takase quotients are only meaningful when the observed
    // vanishing pattern is the one this eta map predicts.
    BigReal small = BigReal::pow2(-table.bits / 2, table.bits);
    BigReal assured = BigReal::pow2(-table.bits / 4, table.bits);
    for (const auto& [s, predicted] : predicted_vanishing_profile(eta)) {
        Characteristic c = eta_of_subset(eta, s);
        auto it = table.values.find(c);
        if (it == table.values.end()) continue;  // odd class: not observable
        BigReal mag = abs(it->second);
        bool ok = predicted ? mag < small : mag >= assured;
        if (ok) continue;
        if (mag >= small && mag < assured)
            throw Error(ErrorCode::AmbiguousMagnitude,
                        "theta magnitude in the indeterminate band during "
                        "vanishing-profile check");
        throw Error(ErrorCode::DegenerateInvariants,
                    "observed theta vanishing pattern does not match the "
                    "profile predicted for this eta map");
    }

    RosenhainSet out;
    out.eta_used = eta;
    out.z_ref = Z.bundle_id;
    for (int i = 3; i <= 7; ++i) {
        BranchSubset rest;
        for (int x = 3; x <= 7; ++x)
            if (x != i) rest.insert(x);
        BranchSubset V(rest.begin(), std::next(rest.begin(), 2));
        BranchSubset W(std::next(rest.begin(), 2), rest.end());
        out.a.emplace(i, takase_ratio(Z, eta, 1, i, 2, V, W, table));
    }

    // The quotient formula determines each a_i only up to sign: the
    // squared quotient equals the cross-ratio squared, and the
    // tabulated sign rule resolves the square root correctly only for
    // real branch configurations.  The Thomae products are exactly
    // constant for the true signs and wildly inconsistent for any
    // other choice, so test all 32 assignments and keep the unique
    // consistent one.
    int best_mask = -1;
    BigReal best(1e300, table.bits), second(1e300, table.bits);
    for (int mask = 0; mask < 32; ++mask) {
        RosenhainSet cand = out;
        for (int j = 0; j < 5; ++j)
            if (mask & (1 << j)) cand.a.at(3 + j) = -cand.a.at(3 + j);
        BigReal d(1e300, table.bits);
        try {
            d = thomae_check(Z, eta, cand, table);
        } catch (const Error&) {
            continue;  // collapsing products: not a viable assignment
        }
        if (d < best) {
            second = best;
            best = d;
            best_mask = mask;
        } else if (d < second) {
            second = d;
        }
    }
    if (!(best < BigReal::pow2(-table.bits / 4, table.bits)) ||
        !(second > BigReal::pow2(-table.bits / 8, table.bits)))
        throw Error(ErrorCode::DegenerateInvariants,
                    "no unique sign assignment makes the branch products "
                    "consistent");
    for (int j = 0; j < 5; ++j)
        if (best_mask & (1 << j)) out.a.at(3 + j) = -out.a.at(3 + j);

    // a_i must avoid 0 and 1 (= a_1, a_2) and one another, else the
    // curve model degenerates.
    BigReal tol = BigReal::pow2(-table.bits / 4, table.bits);
    std::vector<BigComplex> vals;
    vals.emplace_back(0.0, 0.0, table.bits);
    vals.emplace_back(1.0, 0.0, table.bits);
    for (const auto& [i, ai] : out.a) {
        for (const auto& prev : vals)
            if (abs(ai - prev) < tol)
                throw Error(ErrorCode::DegenerateInvariants,
                            "rosenhain invariant a_" + std::to_string(i) +
                                " collides with 0, 1, or another invariant");
        vals.push_back(ai);
    }
    return out;
}

BigReal thomae_check(const PeriodMatrix& Z, const EtaMapClass& eta,
                     const RosenhainSet& ros, const ThetaTable& table) {
    BranchSubset u = u_set(eta);
    auto branch = [&](int i) -> BigComplex {
        if (i == 1) return BigComplex(0.0, 0.0, table.bits);
        if (i == 2) return BigComplex(1.0, 0.0, table.bits);
        return ros.a.at(i);
    };

    std::vector<BigComplex> ratios;
    for (const auto& [s, vanishes] : predicted_vanishing_profile(eta)) {
        if (vanishes) continue;  // only the 35 nonvanishing classes
        BigComplex th = theta_of_subset(eta, s, Z, table);
        BigComplex th2 = th * th;
        BigComplex r = th2 * th2;
        BranchSubset inside = sym_diff(s, u);
        int sign_card = 0;
        for (int x : s)
            if (u.count(x)) ++sign_card;
        if (sign_card % 2) r = -r;
        for (int i : inside) {
            if (i == kInfinity) continue;
            for (int j = 1; j <= 7; ++j)
                if (!inside.count(j)) r = r * (branch(i) - branch(j));
        }
        ratios.push_back(r);
    }

    if (ratios.empty())
        throw Error(ErrorCode::ConfigError,
                    "no nonvanishing classes in the predicted profile");
    BigReal defect(table.bits);
    const BigComplex& ref = ratios.front();
    if (abs(ref) < BigReal::pow2(-table.bits / 2, table.bits))
        throw Error(ErrorCode::DenominatorNearZero,
                    "thomae reference ratio below 2^-bits/2");
    BigComplex one(1.0, 0.0, table.bits);
    for (const auto& r : ratios) {
        BigReal d = abs(r / ref - one);
        if (d > defect) defect = d;
    }
    return defect;
}

}  // namespace cm3
