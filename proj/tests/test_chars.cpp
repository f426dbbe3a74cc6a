#include "cm3/chars.hpp"

#include <cstdio>
#include <set>

#include "check.hpp"

using namespace cm3;

static Characteristic ch(int a, int b, int c, int d, int e, int f) {
    Characteristic x;
    x.v = {a, b, c, d, e, f};
    return x;
}

int main() {
    // bit codec round trip
    for (int bits = 0; bits < 64; ++bits)
        CHECK(char_to_bits(bits_to_char(bits)) == bits);
    CHECK(char_to_bits(ch(1, 0, 1, 0, 0, 0)) == 5);

    // parity census: 36 even, 28 odd
    int even = 0, odd = 0;
    for (int bits = 0; bits < 64; ++bits)
        (e_star(bits_to_char(bits)) == 1 ? even : odd)++;
    CHECK(even == 36);
    CHECK(odd == 28);

    // e_two is symmetric and trivial on the diagonal
    Characteristic p = ch(1, 1, 0, 0, 1, 0), q = ch(0, 1, 1, 1, 0, 1);
    CHECK(e_two(p, q) == e_two(q, p));
    CHECK(e_two(p, p) == 1);

    // product identity e*(x+y+z) = e*(x) e*(y) e*(z) e2(x,y) e2(x,z) e2(y,z)
    // on all pairs and a sweep of triples
    int pair_violations = 0;
    for (int a = 0; a < 64; ++a)
        for (int b = 0; b < 64; ++b) {
            Characteristic x = bits_to_char(a), y = bits_to_char(b);
            Characteristic s = bits_to_char(a ^ b);
            if (e_star(s) != e_star(x) * e_star(y) * e_two(x, y))
                ++pair_violations;
        }
    CHECK(pair_violations == 0);
    int triple_violations = 0;
    for (int a = 0; a < 64; a += 3)
        for (int b = 1; b < 64; b += 5)
            for (int c = 2; c < 64; c += 9) {
                Characteristic x = bits_to_char(a), y = bits_to_char(b),
                               z = bits_to_char(c);
                Characteristic s = bits_to_char(a ^ b ^ c);
                int want = e_star(x) * e_star(y) * e_star(z) * e_two(x, y) *
                           e_two(x, z) * e_two(y, z);
                if (e_star(s) != want) ++triple_violations;
            }
    CHECK(triple_violations == 0);

    // golden eta table (identity class)
    EtaMapClass tilde = mumford_eta();
    CHECK(tilde.eta[0] == ch(1, 0, 0, 0, 0, 0));
    CHECK(tilde.eta[1] == ch(1, 0, 0, 1, 0, 0));
    CHECK(tilde.eta[2] == ch(0, 1, 0, 1, 0, 0));
    CHECK(tilde.eta[3] == ch(0, 1, 0, 1, 1, 0));
    CHECK(tilde.eta[4] == ch(0, 0, 1, 1, 1, 0));
    CHECK(tilde.eta[5] == ch(0, 0, 1, 1, 1, 1));
    CHECK(tilde.eta[6] == ch(0, 0, 0, 1, 1, 1));
    CHECK(validate_asygetic(tilde.eta));

    // its U set and distinguished even characteristic
    BranchSubset u_tilde = {2, 4, 6, kInfinity};
    CHECK(u_set(tilde) == u_tilde);
    CHECK(eta_of_subset(tilde, u_tilde) == ch(1, 1, 1, 1, 0, 1));
    CHECK(e_star(ch(1, 1, 1, 1, 0, 1)) == 1);

    // golden eta table (zero-characteristic class) and its matrix
    EtaMapClass bar = eta_bar();
    CHECK(bar.eta[0] == ch(1, 0, 0, 1, 0, 0));
    CHECK(bar.eta[1] == ch(0, 0, 1, 1, 1, 1));
    CHECK(bar.eta[2] == ch(0, 1, 0, 1, 1, 0));
    CHECK(bar.eta[3] == ch(1, 0, 1, 0, 0, 1));
    CHECK(bar.eta[4] == ch(1, 1, 0, 0, 1, 1));
    CHECK(bar.eta[5] == ch(0, 1, 1, 1, 0, 1));
    CHECK(bar.eta[6] == ch(1, 1, 1, 0, 1, 0));
    CHECK(validate_asygetic(bar.eta));
    CHECK(u_set(bar) == full_branch_set());
    CHECK(eta_of_subset(bar, full_branch_set()).is_zero());

    SymplecticF2 gb = gamma_bar();
    CHECK(is_symplectic_f2(gb));
    // gamma_bar moves even characteristics to odd ones (it must, to make
    // the distinguished characteristic zero), so it fails the Q test
    CHECK(!in_gamma12(gb));
    CHECK(gamma_star(gb) == gb);
    EtaMapClass moved = cm3::apply(gb, tilde);
    for (int i = 0; i < 7; ++i)
        CHECK(moved.eta[(size_t)i] == bar.eta[(size_t)i]);

    // complement invariance: eta_S = eta_{{1..7} minus S}
    BranchSubset s1 = {1, 2, 5, 6};
    BranchSubset s1c = {3, 4, 7};
    CHECK(eta_of_subset(tilde, s1) == eta_of_subset(tilde, s1c));
    CHECK(eta_of_subset(bar, s1) == eta_of_subset(bar, s1c));

    // sym_diff basics
    CHECK(sym_diff({1, 2, 3}, {3, 4}) == BranchSubset({1, 2, 4}));
    CHECK(sym_diff(s1, s1).empty());

    // asygetic validation rejects broken systems
    auto broken = tilde.eta;
    broken[6] = ch(0, 0, 0, 0, 0, 0);  // kills the zero-sum property
    CHECK(!validate_asygetic(broken));
    auto degenerate = tilde.eta;
    degenerate[1] = degenerate[0];  // e2 of equal entries is +1
    CHECK(!validate_asygetic(degenerate));
    auto low_rank = tilde.eta;
    for (auto& c : low_rank) c.v[5] = 0;
    CHECK(!validate_asygetic(low_rank));

    // symplectic / theta-subgroup membership tests
    CHECK(is_symplectic_f2(identity_f2()));
    CHECK(in_gamma12(identity_f2()));
    SymplecticF2 jmat{};  // half-swap: Q(Jx) = x2.x1 = Q(x)
    for (int k = 0; k < 3; ++k)
        jmat[(size_t)k][(size_t)k + 3] = jmat[(size_t)k + 3][(size_t)k] = 1;
    CHECK(is_symplectic_f2(jmat));
    CHECK(in_gamma12(jmat));
    SymplecticF2 bad = identity_f2();
    bad[0][0] = 0;  // singular
    CHECK(!is_symplectic_f2(bad));
    CHECK_THROWS(cm3::apply(bad, tilde), ErrorCode::NotSymplectic);
    // swapping a symplectic pair block-wise: x1 <-> x2 preserves the
    // pairing but turns Q into itself, so build a genuine non-member:
    // the shear adding x4 to x1 is symplectic yet moves Q
    SymplecticF2 shear = identity_f2();
    shear[0][3] = 1;  // conjugate pair column update keeps <.,.>
    CHECK(is_symplectic_f2(shear));
    CHECK(!in_gamma12(shear));

    // group action property on a composite
    SymplecticF2 comp = mul_f2(gb, shear);
    CHECK(is_symplectic_f2(comp));
    EtaMapClass via_comp = cm3::apply(comp, tilde);
    EtaMapClass via_steps = cm3::apply(gb, cm3::apply(shear, tilde));
    for (int i = 0; i < 7; ++i)
        CHECK(via_comp.eta[(size_t)i] == via_steps.eta[(size_t)i]);

    // gamma_for_delta: identity at the base characteristic
    Characteristic base = ch(1, 1, 1, 1, 0, 1);
    CHECK(gamma_for_delta(base) == identity_f2());

    // errors for inadmissible input
    CHECK_THROWS(gamma_for_delta(ch(1, 0, 0, 1, 0, 0)),
                 ErrorCode::OddCharacteristic);
    CHECK_THROWS(gamma_for_delta(ch(0, 0, 0, 0, 0, 0)),
                 ErrorCode::ZeroCharacteristic);

    // every even nonzero characteristic is reachable, and each witness
    // lies in the theta subgroup, maps base -> delta, and produces an
    // eta class whose U-set characteristic is delta again
    int reached = 0;
    for (int bits = 1; bits < 64; ++bits) {
        Characteristic delta = bits_to_char(bits);
        if (e_star(delta) != 1) continue;
        SymplecticF2 g = gamma_for_delta(delta);
        ++reached;
        CHECK(in_gamma12(g));
        CHECK(apply_matrix(g, base) == delta);
        EtaMapClass eta = cm3::apply(g, tilde);
        CHECK(u_set(eta) == u_tilde);  // theta subgroup preserves parity
        CHECK(eta_of_subset(eta, u_set(eta)) == delta);
    }
    CHECK(reached == 35);

    // binary table round trip
    const char* path = "build/gamma_table_test.bin";
    std::remove(path);
    write_gamma_table(path);
    auto loaded = read_gamma_table(path);
    CHECK(loaded.size() == 35);
    for (const auto& [bits, g] : loaded)
        CHECK(g == gamma_for_delta(bits_to_char(bits)));
    load_gamma_table(path);  // must accept its own output
    CHECK(gamma_for_delta(base) == identity_f2());
    // corrupt one record and expect validation to fail
    {
        FILE* fp = std::fopen(path, "rb+");
        CHECK(fp != nullptr);
        std::fseek(fp, 6, SEEK_SET);
        unsigned char b = 0;
        CHECK(std::fread(&b, 1, 1, fp) == 1);
        b ^= 1;
        std::fseek(fp, 6, SEEK_SET);
        std::fwrite(&b, 1, 1, fp);
        std::fclose(fp);
    }
    CHECK_THROWS(load_gamma_table(path), ErrorCode::ConfigError);
    // the failed load must leave the built-in table untouched
    CHECK(gamma_for_delta(base) == identity_f2());
    std::remove(path);
    CHECK_THROWS(read_gamma_table("build/no_such_table.bin"),
                 ErrorCode::ConfigError);

    // vanishing profile for the identity class: keyed by the 64 even
    // subsets of the finite branch points, exactly 35 do not vanish
    auto profile = predicted_vanishing_profile(tilde);
    CHECK(profile.size() == 64);
    int nonvanishing = 0;
    for (const auto& [s, vanishes] : profile) {
        CHECK(s.size() % 2 == 0);
        if (!vanishes) ++nonvanishing;
    }
    CHECK(nonvanishing == 35);
    CHECK(profile.at(BranchSubset{}) == false);  // theta[0] survives here
    CHECK(profile.at(BranchSubset{1, 3, 5, 7}) == true);  // the even zero
    // every odd characteristic must be flagged as vanishing
    for (const auto& [s, vanishes] : profile)
        if (e_star(eta_of_subset(tilde, s)) == -1) CHECK(vanishes);

    // for the zero-characteristic class the empty set itself vanishes
    auto profile_bar = predicted_vanishing_profile(bar);
    CHECK(profile_bar.at(BranchSubset{}) == true);
    int nonvanishing_bar = 0;
    for (const auto& [s, vanishes] : profile_bar)
        if (!vanishes) {
            ++nonvanishing_bar;
            CHECK(s.size() == 4);
        }
    CHECK(nonvanishing_bar == 35);

    return check_summary("test_chars");
}
