#pragma once

#include <array>
#include <map>
#include <set>
#include <string>

#include "cm3/error.hpp"

namespace cm3 {

// Half-integer theta characteristic: entry 1 encodes the value 1/2.
// v[0..2] is the first half, v[3..5] the second.
struct Characteristic {
    std::array<int, 6> v{};

    bool operator==(const Characteristic& o) const { return v == o.v; }
    bool operator<(const Characteristic& o) const { return v < o.v; }
    bool is_zero() const {
        for (int x : v)
            if (x) return false;
        return true;
    }
};

int char_to_bits(const Characteristic& c);          // bit k = v[k]
Characteristic bits_to_char(int bits);

// Branch points are 1..7 plus the point at infinity.
constexpr int kInfinity = 8;
using BranchSubset = std::set<int>;
BranchSubset full_branch_set();

// Eta map on branch points: eta[i-1] is eta_i for i = 1..7; eta_inf = 0.
struct EtaMapClass {
    std::array<Characteristic, 7> eta;
};

using SymplecticF2 = std::array<std::array<int, 6>, 6>;

SymplecticF2 identity_f2();
bool is_symplectic_f2(const SymplecticF2& g);
Characteristic apply_matrix(const SymplecticF2& g, const Characteristic& c);
SymplecticF2 mul_f2(const SymplecticF2& a, const SymplecticF2& b);

int e_star(const Characteristic& xi);                       // +1 or -1
int e_two(const Characteristic& xi, const Characteristic& zeta);
BranchSubset sym_diff(const BranchSubset& s, const BranchSubset& t);
Characteristic eta_of_subset(const EtaMapClass& eta, const BranchSubset& s);
BranchSubset u_set(const EtaMapClass& eta);
bool validate_asygetic(const std::array<Characteristic, 7>& cand);

EtaMapClass mumford_eta();
// The worked example pair: a symplectic matrix and its image of the
// Mumford eta map, used when the vanishing characteristic is zero.
// gamma_bar lies outside the theta subgroup: it swaps parities, which
// is exactly what lets the distinguished characteristic of eta_bar be 0.
SymplecticF2 gamma_bar();
EtaMapClass eta_bar();

SymplecticF2 gamma_star(const SymplecticF2& g);
EtaMapClass apply(const SymplecticF2& g, const EtaMapClass& eta);
bool in_gamma12(const SymplecticF2& g);

// Gamma_{1,2} element sending (111|101) to delta, from a precomputed
// 35-entry orbit table (delta must be even and nonzero).
SymplecticF2 gamma_for_delta(const Characteristic& delta);

// Binary table round-trip: 35 records of 6 bytes (1 byte delta bits,
// 5 bytes gamma bits; bit p of gamma = entry (p/6, p%6), little-endian
// within each byte).
void write_gamma_table(const std::string& path);
std::map<int, SymplecticF2> read_gamma_table(const std::string& path);
// Replace the built-in table by one loaded from a file (validated).
void load_gamma_table(const std::string& path);

// For each even subset of {1..7} (representing the class {S, S binary-or
// infinity-complement}): true when theta[eta_S] vanishes at a period
// matrix with this eta, per the cardinality criterion.
std::map<BranchSubset, bool> predicted_vanishing_profile(
    const EtaMapClass& eta);

}  // namespace cm3
