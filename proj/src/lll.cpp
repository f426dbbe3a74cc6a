#include "cm3/lll.hpp"

#include <cstddef>

#include "cm3/error.hpp"

namespace cm3 {

namespace {

mpz_class dot(const IntegerRow& a, const IntegerRow& b) {
    mpz_class s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

mpz_class exact_div(const mpz_class& num, const mpz_class& den) {
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

// round(num/den) for den > 0
mpz_class round_quot(const mpz_class& num, const mpz_class& den) {
    mpz_class q;
    mpz_class two_num = 2 * num + den;
    mpz_fdiv_q(q.get_mpz_t(), two_num.get_mpz_t(), mpz_class(2 * den).get_mpz_t());
    return q;
}

void check_shape(const IntegerLattice& basis) {
    if (basis.empty())
        throw Error(ErrorCode::DependentRows, "empty basis");
    for (const auto& row : basis)
        if (row.size() != basis[0].size())
            throw Error(ErrorCode::DependentRows, "ragged rows");
    if (basis.size() > basis[0].size())
        throw Error(ErrorCode::DependentRows,
                    "more rows than columns cannot be independent");
}

}  // namespace

IntegerLattice lll_reduce(const IntegerLattice& basis) {
    check_shape(basis);
    const size_t n = basis.size();
    IntegerLattice b = basis;

    // Integral Gram–Schmidt data: D[0]=1, D[i+1]=det Gram(b_0..b_i),
    // L[i][j] = D[j+1] * mu_ij.
    std::vector<mpz_class> D(n + 1);
    D[0] = 1;
    std::vector<std::vector<mpz_class>> L(n, std::vector<mpz_class>(n));

    auto gso_row = [&](size_t i) {
        for (size_t j = 0; j <= i; ++j) {
            mpz_class u = dot(b[i], b[j]);
            for (size_t k = 0; k < j; ++k)
                u = exact_div(D[k + 1] * u - L[i][k] * L[j][k], D[k]);
            if (j < i)
                L[i][j] = u;
            else {
                if (u <= 0)
                    throw Error(ErrorCode::DependentRows,
                                "rank deficiency at row " + std::to_string(i));
                D[i + 1] = u;
            }
        }
    };
    for (size_t i = 0; i < n; ++i) gso_row(i);

    // RED(k,l): make |mu_kl| <= 1/2
    auto red = [&](size_t k, size_t l) {
        if (2 * abs(L[k][l]) <= D[l + 1]) return;
        mpz_class q = round_quot(L[k][l], D[l + 1]);
        for (size_t c = 0; c < b[k].size(); ++c) b[k][c] -= q * b[l][c];
        for (size_t j = 0; j < l; ++j) L[k][j] -= q * L[l][j];
        L[k][l] -= q * D[l + 1];
    };

    // SWAP(k): exchange rows k-1 and k, update the integral GSO data
    auto swap_rows = [&](size_t k) {
        std::swap(b[k], b[k - 1]);
        for (size_t j = 0; j + 1 < k; ++j) std::swap(L[k][j], L[k - 1][j]);
        mpz_class lam = L[k][k - 1];
        mpz_class Bnew = exact_div(D[k - 1] * D[k + 1] + lam * lam, D[k]);
        for (size_t i = k + 1; i < n; ++i) {
            mpz_class t = L[i][k];
            L[i][k] = exact_div(D[k + 1] * L[i][k - 1] - lam * t, D[k]);
            L[i][k - 1] = exact_div(Bnew * t + lam * L[i][k], D[k + 1]);
        }
        D[k] = Bnew;
    };

    size_t k = 1;
    while (k < n) {
        red(k, k - 1);
        // Lovász with delta = 99/100: swap when
        // 100*(D[k+1]*D[k-1] + lam^2) < 99*D[k]^2
        mpz_class lam = L[k][k - 1];
        if (100 * (D[k + 1] * D[k - 1] + lam * lam) < 99 * D[k] * D[k]) {
            swap_rows(k);
            k = (k > 1) ? k - 1 : 1;
        } else {
            for (size_t l = k - 1; l-- > 0;) red(k, l);
            ++k;
        }
    }

    if (!is_lll_reduced(b))
        throw Error(ErrorCode::NoConvergence,
                    "exact verification of the reduced basis failed");
    return b;
}

bool is_lll_reduced(const IntegerLattice& basis) {
    check_shape(basis);
    const size_t n = basis.size();
    // Rational Gram–Schmidt: Bst[i] = |b*_i|^2, mu[i][j]
    std::vector<mpq_class> Bst(n);
    std::vector<std::vector<mpq_class>> mu(n, std::vector<mpq_class>(n));
    std::vector<std::vector<mpq_class>> bstar(n,
        std::vector<mpq_class>(basis[0].size()));
    for (size_t i = 0; i < n; ++i) {
        for (size_t c = 0; c < basis[i].size(); ++c)
            bstar[i][c] = mpq_class(basis[i][c]);
        for (size_t j = 0; j < i; ++j) {
            mpq_class num = 0;
            for (size_t c = 0; c < basis[i].size(); ++c)
                num += mpq_class(basis[i][c]) * bstar[j][c];
            num.canonicalize();
            if (Bst[j] == 0) return false;  // dependent rows
            mu[i][j] = num / Bst[j];
            mu[i][j].canonicalize();
            for (size_t c = 0; c < basis[i].size(); ++c)
                bstar[i][c] -= mu[i][j] * bstar[j][c];
        }
        mpq_class nrm = 0;
        for (size_t c = 0; c < basis[i].size(); ++c)
            nrm += bstar[i][c] * bstar[i][c];
        nrm.canonicalize();
        if (nrm == 0) return false;
        Bst[i] = nrm;
    }
    const mpq_class half(1, 2), delta(99, 100);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < i; ++j)
            if (abs(mu[i][j]) > half) return false;
    for (size_t k = 1; k < n; ++k) {
        mpq_class lhs = Bst[k];
        mpq_class rhs = (delta - mu[k][k - 1] * mu[k][k - 1]) * Bst[k - 1];
        rhs.canonicalize();
        if (lhs < rhs) return false;
    }
    return true;
}

}  // namespace cm3
