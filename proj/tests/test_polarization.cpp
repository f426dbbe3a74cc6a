#include "cm3/polarization.hpp"

#include <json.hpp>

#include <fstream>
#include <random>

#include "check.hpp"

using namespace cm3;

static IntegerMatrix6 std_j() {
    IntegerMatrix6 J{};
    for (int i = 0; i < 3; ++i) {
        J[(size_t)i][(size_t)i + 3] = 1;
        J[(size_t)i + 3][(size_t)i] = -1;
    }
    return J;
}

static IntegerMatrix6 transform(const IntegerMatrix6& M,
                                const IntegerMatrix6& U) {
    IntegerMatrix6 out{};
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            mpz_class s = 0;
            for (int k = 0; k < 6; ++k)
                for (int l = 0; l < 6; ++l)
                    s += U[(size_t)k][(size_t)i] * M[(size_t)k][(size_t)l] *
                         U[(size_t)l][(size_t)j];
            out[(size_t)i][(size_t)j] = s;
        }
    return out;
}

int main() {
    PrecisionContext ctx(200);
    IntegerMatrix6 J = std_j();

    CHECK(det6(J) == 1);
    {
        IntegerMatrix6 m = J;
        m[0][3] = 2;
        m[3][0] = -2;
        CHECK(det6(m) == 4);
    }

    {  // M = J gives the identity
        IntegerMatrix6 U = symplectic_basis(J);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                CHECK(U[(size_t)i][(size_t)j] == (i == j ? 1 : 0));
    }

    {  // interleaved pairs: U is the permutation undoing the interleave
        IntegerMatrix6 M{};
        for (int k = 0; k < 3; ++k) {
            M[(size_t)(2 * k)][(size_t)(2 * k + 1)] = 1;
            M[(size_t)(2 * k + 1)][(size_t)(2 * k)] = -1;
        }
        IntegerMatrix6 U = symplectic_basis(M);
        CHECK(transform(M, U) == J);
        int perm_cols[6] = {0, 2, 4, 1, 3, 5};
        for (int col = 0; col < 6; ++col)
            for (int row = 0; row < 6; ++row)
                CHECK(U[(size_t)row][(size_t)col] ==
                      (row == perm_cols[col] ? 1 : 0));
    }

    {  // scaled form is not principal
        IntegerMatrix6 M{};
        for (int i = 0; i < 3; ++i) {
            M[(size_t)i][(size_t)i + 3] = 2;
            M[(size_t)i + 3][(size_t)i] = -2;
        }
        CHECK_THROWS(symplectic_basis(M), ErrorCode::NotPrincipal);
    }
    {  // non-antisymmetric input
        IntegerMatrix6 M = J;
        M[0][0] = 1;
        CHECK_THROWS(symplectic_basis(M), ErrorCode::NotAlternating);
    }

    {  // property test: conjugates of J by random unimodular matrices
        std::mt19937 rng(12345);
        for (int trial = 0; trial < 20; ++trial) {
            IntegerMatrix6 U0{};
            for (int i = 0; i < 6; ++i) U0[(size_t)i][(size_t)i] = 1;
            // random shears and swaps keep det = +-1
            for (int step = 0; step < 30; ++step) {
                int i = (int)(rng() % 6), j = (int)(rng() % 6);
                if (i == j) continue;
                long c = (long)(rng() % 5) - 2;
                for (int r = 0; r < 6; ++r)
                    U0[(size_t)r][(size_t)j] +=
                        c * U0[(size_t)r][(size_t)i];
            }
            IntegerMatrix6 M = transform(J, U0);
            CHECK(det6(M) == 1);
            IntegerMatrix6 U = symplectic_basis(M);
            CHECK(transform(M, U) == J);
        }
    }

    // the zeta_7 fixture against the recorded polarization data
    CMBundle z7 = load_bundle_file("fixtures/bundles/zeta7.json");
    EmbeddingSet E = embeddings(z7, ctx);
    FieldOps ops = z7.ops();

    nlohmann::json exp =
        nlohmann::json::parse(std::ifstream("fixtures/expected/"
                                            "zeta7_polarization.json"));
    CMType type;
    for (const auto& i : exp["cm_type"]) type.insert(i.get<int>() - 1);
    FieldElement want_xi;
    for (int i = 0; i < 6; ++i)
        want_xi.c[(size_t)i] =
            parse_rational(exp["xi"][(size_t)i].get<std::string>());

    auto cands = select_polarizations(z7, type, E, ctx);
    CHECK(cands.size() == z7.tp_unit_reps.size());
    CHECK(cands.size() == 1);
    CHECK(cands[0].xi == want_xi);
    CHECK(check_xi(cands[0].xi, type, E, ctx));
    CHECK(!check_xi(fe_one(), type, E, ctx));
    {  // conjugate CM type rejects the same xi
        CMType conj_type;
        for (int i : type) conj_type.insert(E.pairing[i]);
        CHECK(!check_xi(cands[0].xi, conj_type, E, ctx));
    }

    IntegerMatrix6 M = gram_matrix(cands[0].xi, z7.ideal_basis, E, ctx);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            CHECK(M[(size_t)i][(size_t)j] ==
                  mpz_class(exp["gram"][(size_t)i][(size_t)j].get<long>()));
    for (int i = 0; i < 6; ++i) CHECK(M[(size_t)i][(size_t)i] == 0);
    CHECK(det6(M) == 1);

    {  // negated xi negates the form
        IntegerMatrix6 Mn =
            gram_matrix(ops.neg(cands[0].xi), z7.ideal_basis, E, ctx);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                CHECK(Mn[(size_t)i][(size_t)j] == -M[(size_t)i][(size_t)j]);
    }

    IntegerMatrix6 U = symplectic_basis(M);
    CHECK(transform(M, U) == J);

    PeriodMatrix pm = build_period_matrix(cands[0], U, z7, E, ctx);
    CHECK(pm.bundle_id == "zeta7");
    CHECK(pm.bits == 200);
    BigReal tol = BigReal::pow2(-90, 200);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(abs(pm.Z[(size_t)i][(size_t)j] -
                      pm.Z[(size_t)j][(size_t)i]).is_zero());
    for (int i = 0; i < 3; ++i) CHECK(pm.Z[(size_t)i][(size_t)i].im > tol);

    {  // conjugate type with the Phi-compatible xi has Im(Z) < 0
        CMType conj_type;
        for (int i : type) conj_type.insert(E.pairing[i]);
        PolarizationCandidate bad{cands[0].xi, conj_type};
        CHECK_THROWS(build_period_matrix(bad, U, z7, E, ctx),
                     ErrorCode::NotPositiveDefinite);
    }

    {  // determinism: a second full run reproduces Z digit for digit
        EmbeddingSet E2 = embeddings(z7, ctx);
        auto c2 = select_polarizations(z7, type, E2, ctx);
        IntegerMatrix6 M2 = gram_matrix(c2[0].xi, z7.ideal_basis, E2, ctx);
        PeriodMatrix pm2 =
            build_period_matrix(c2[0], symplectic_basis(M2), z7, E2, ctx);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                CHECK(pm.Z[(size_t)i][(size_t)j].re.str() ==
                      pm2.Z[(size_t)i][(size_t)j].re.str());
                CHECK(pm.Z[(size_t)i][(size_t)j].im.str() ==
                      pm2.Z[(size_t)i][(size_t)j].im.str());
            }
    }

    return check_summary("test_polarization");
}
