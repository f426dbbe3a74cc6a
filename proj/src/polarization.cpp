#include "cm3/polarization.hpp"

#include <algorithm>

namespace cm3 {

bool check_xi(const FieldElement& xi, const CMType& cm_type,
              const EmbeddingSet& E, const PrecisionContext& ctx) {
    BigReal tol = BigReal::pow2(-ctx.bits / 4, ctx.bits);
    for (int k = 0; k < 6; ++k) {
        BigComplex v = embed(xi, k, E, ctx.bits);
        if (!(abs(v.re) < tol)) return false;  // purely imaginary
        BigComplex s = -(v * v);
        if (!(abs(s.im) < tol)) return false;
        if (!(s.re > tol)) return false;  // -xi^2 totally positive
    }
    for (int i : cm_type) {
        BigComplex v = embed(xi, i, E, ctx.bits);
        if (!(v.im > tol)) return false;
    }
    return true;
}

std::vector<PolarizationCandidate> select_polarizations(
    const CMBundle& bundle, const CMType& cm_type, const EmbeddingSet& E,
    const PrecisionContext& ctx) {
    FieldOps ops = bundle.ops();
    for (const FieldElement& u : bundle.unit_reps) {
        FieldElement xi = ops.mul(u, bundle.b);
        if (!check_xi(xi, cm_type, E, ctx)) continue;
        std::vector<PolarizationCandidate> out;
        for (const FieldElement& eps : bundle.tp_unit_reps)
            out.push_back({ops.mul(eps, xi), cm_type});
        return out;
    }
    return {};
}

IntegerMatrix6 gram_matrix(const FieldElement& xi,
                           const std::vector<FieldElement>& ideal_basis,
                           const EmbeddingSet& E,
                           const PrecisionContext& ctx) {
    BigReal tol = BigReal::pow2(-ctx.bits / 4, ctx.bits);
    // cache embeddings of xi and the basis at every root
    std::array<BigComplex, 6> exi;
    std::array<std::array<BigComplex, 6>, 6> eb;
    for (int k = 0; k < 6; ++k) {
        exi[k] = embed(xi, k, E, ctx.bits);
        for (int i = 0; i < 6; ++i)
            eb[i][k] = embed(ideal_basis[(size_t)i], k, E, ctx.bits);
    }
    IntegerMatrix6 M;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            BigComplex s(ctx.bits);
            for (int k = 0; k < 6; ++k)
                s += exi[k] * eb[i][k] * eb[j][E.pairing[k]];
            if (!(abs(s.im) < tol))
                throw Error(ErrorCode::NotNearInteger,
                            "trace has residual imaginary part");
            M[i][j] = round_to_integer(s.re, tol);
        }
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            if (M[i][j] != -M[j][i])
                throw Error(ErrorCode::NotAlternating,
                            "rounded form is not antisymmetric");
    return M;
}

mpz_class det6(const IntegerMatrix6& m) {
    // fraction-free Gaussian elimination (Bareiss)
    std::array<std::array<mpz_class, 6>, 6> a = m;
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < 5; ++k) {
        if (a[k][k] == 0) {
            int piv = -1;
            for (int r = k + 1; r < 6; ++r)
                if (a[r][k] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) return 0;
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < 6; ++i)
            for (int j = k + 1; j < 6; ++j) {
                mpz_class num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_class q;
                mpz_divexact(q.get_mpz_t(), num.get_mpz_t(),
                             prev.get_mpz_t());
                a[i][j] = q;
            }
        prev = a[k][k];
    }
    return sign * a[5][5];
}

using Vec6 = std::array<mpz_class, 6>;

static mpz_class form(const IntegerMatrix6& M, const Vec6& x, const Vec6& y) {
    mpz_class s = 0;
    for (int i = 0; i < 6; ++i) {
        if (x[(size_t)i] == 0) continue;
        for (int j = 0; j < 6; ++j)
            s += x[(size_t)i] * M[i][j] * y[(size_t)j];
    }
    return s;
}

IntegerMatrix6 symplectic_basis(const IntegerMatrix6& M) {
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            if (M[i][j] != -M[j][i])
                throw Error(ErrorCode::NotAlternating,
                            "input form is not antisymmetric");
    if (det6(M) != 1)
        throw Error(ErrorCode::NotPrincipal, "determinant is not 1");

    std::vector<Vec6> rem(6);
    for (int i = 0; i < 6; ++i) rem[(size_t)i][(size_t)i] = 1;
    std::vector<Vec6> avec, bvec;

    for (int round = 0; round < 3; ++round) {
        // a = first remaining vector; it is primitive, so the pairings
        // B(a, -) over the remaining span have gcd 1
        Vec6 a = rem[0];
        rem.erase(rem.begin());
        size_t w_at = rem.size();
        for (size_t k = 0; k < rem.size(); ++k) {
            if (form(M, a, rem[k]) != 0) {
                w_at = k;
                break;
            }
        }
        if (w_at == rem.size())
            throw Error(ErrorCode::NotPrincipal, "degenerate form");
        Vec6 w = rem[w_at];
        // fold later vectors into w via unimodular 2x2 updates until
        // B(a, w) divides every remaining pairing with a
        for (size_t k = w_at + 1; k < rem.size(); ++k) {
            mpz_class bw = form(M, a, w);
            mpz_class bk = form(M, a, rem[k]);
            if (bk % bw == 0) continue;
            mpz_class g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(),
                       bw.get_mpz_t(), bk.get_mpz_t());
            // (w, u) <- (x w + y u, -(bk/g) w + (bw/g) u): determinant 1
            Vec6 nw, nu;
            mpz_class bw_g = bw / g, bk_g = bk / g;
            for (int t = 0; t < 6; ++t) {
                nw[(size_t)t] = x * w[(size_t)t] + y * rem[k][(size_t)t];
                nu[(size_t)t] =
                    -bk_g * w[(size_t)t] + bw_g * rem[k][(size_t)t];
            }
            w = nw;
            rem[k] = nu;
        }
        rem.erase(rem.begin() + (long)w_at);
        mpz_class p = form(M, a, w);
        if (p < 0) {
            for (auto& t : w) t = -t;
            p = -p;
        }
        if (p != 1)
            throw Error(ErrorCode::NotPrincipal, "pairing gcd exceeds 1");
        // clear the pair from the rest: u <- u + B(w,u) a - B(a,u) w
        for (auto& u : rem) {
            mpz_class cw = form(M, w, u);
            mpz_class ca = form(M, a, u);
            for (int t = 0; t < 6; ++t)
                u[(size_t)t] += cw * a[(size_t)t] - ca * w[(size_t)t];
        }
        avec.push_back(a);
        bvec.push_back(w);
    }

    IntegerMatrix6 U;
    for (int col = 0; col < 3; ++col)
        for (int row = 0; row < 6; ++row) {
            U[(size_t)row][(size_t)col] = avec[(size_t)col][(size_t)row];
            U[(size_t)row][(size_t)col + 3] = bvec[(size_t)col][(size_t)row];
        }
    // exact final verification: U^T M U = J
    for (int i = 0; i < 6; ++i) {
        Vec6 ui, uj;
        for (int t = 0; t < 6; ++t) ui[(size_t)t] = U[(size_t)t][(size_t)i];
        for (int j = 0; j < 6; ++j) {
            for (int t = 0; t < 6; ++t)
                uj[(size_t)t] = U[(size_t)t][(size_t)j];
            mpz_class want = 0;
            if (j == i + 3) want = 1;
            if (i == j + 3) want = -1;
            if (form(M, ui, uj) != want)
                throw Error(ErrorCode::NotSymplectic,
                            "transformed form is not J");
        }
    }
    return U;
}

PeriodMatrix build_period_matrix(const PolarizationCandidate& cand,
                                 const IntegerMatrix6& U,
                                 const CMBundle& bundle,
                                 const EmbeddingSet& E,
                                 const PrecisionContext& ctx) {
    FieldOps ops = bundle.ops();
    // symplectic basis elements in K
    std::vector<FieldElement> sym(6, fe_zero());
    for (int k = 0; k < 6; ++k) {
        for (int r = 0; r < 6; ++r) {
            if (U[(size_t)r][(size_t)k] == 0) continue;
            sym[(size_t)k] = ops.add(
                sym[(size_t)k],
                ops.smul(Rat(U[(size_t)r][(size_t)k]),
                         bundle.ideal_basis[(size_t)r]));
        }
    }
    // Omega_2 is the first column block and Omega_1 the second: with the
    // trace form Tr(xi x ybar) and U^T M U = ((0, I), (-I, 0)), this is the
    // labeling for which Im(Z) comes out positive definite (the opposite
    // split gives -Im on every symplectic basis; check the one-dimensional
    // case K = Q(i), xi = i/2, lattice Z + Zi).
    std::vector<int> idx(cand.cm_type.begin(), cand.cm_type.end());
    ComplexMatrix3 om1, om2;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
            om2[(size_t)i][(size_t)k] =
                embed(sym[(size_t)k], idx[(size_t)i], E, ctx.bits);
            om1[(size_t)i][(size_t)k] =
                embed(sym[(size_t)k + 3], idx[(size_t)i], E, ctx.bits);
        }
    ComplexMatrix3 Z = mat_mul3(mat_inv3(om2, ctx), om1);

    BigReal defect(0L, ctx.bits);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            BigReal d = abs(Z[(size_t)i][(size_t)j] - Z[(size_t)j][(size_t)i]);
            if (d > defect) defect = d;
        }
    if (!(defect < BigReal::pow2(-ctx.bits / 2, ctx.bits)))
        throw Error(ErrorCode::AsymmetryTooLarge, "defect " + defect.str());
    BigReal half(mpq_class(1, 2), ctx.bits);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            BigComplex avg = Z[(size_t)i][(size_t)j] + Z[(size_t)j][(size_t)i];
            avg.re *= half;
            avg.im *= half;
            Z[(size_t)i][(size_t)j] = avg;
            Z[(size_t)j][(size_t)i] = avg;
        }

    ComplexMatrix3 imz;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            imz[(size_t)i][(size_t)j] =
                BigComplex(Z[(size_t)i][(size_t)j].im, BigReal(0L, ctx.bits));
    if (!is_pos_def(imz, ctx))
        throw Error(ErrorCode::NotPositiveDefinite, "Im(Z) not positive");

    PeriodMatrix pm;
    pm.Z = Z;
    pm.bits = ctx.bits;
    pm.bundle_id = bundle.name;
    pm.cm_type = cand.cm_type;
    pm.xi = cand.xi;
    return pm;
}

}  // namespace cm3
