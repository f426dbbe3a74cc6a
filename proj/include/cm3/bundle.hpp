#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cm3/linalg.hpp"
#include "cm3/rational.hpp"

namespace cm3 {

struct VerifyData {
    long p;
    FieldElement pi;
};

struct CMBundle {
    std::string name;
    std::array<mpz_class, 7> f;  // constant term first, monic
    std::vector<FieldElement> ideal_basis;  // 6 elements, rank 6
    FieldElement b;
    std::vector<FieldElement> unit_reps;
    std::vector<FieldElement> tp_unit_reps;
    std::vector<std::vector<Rat>> galois_gens;       // optional, degree <= 5
    std::vector<std::set<int>> cm_types;             // optional, 0-based
    std::optional<VerifyData> verify;

    FieldOps ops() const { return FieldOps(f); }
};

struct EmbeddingSet {
    std::vector<BigComplex> roots;           // 6, canonical order
    std::array<int, 6> pairing;              // j -> index of conj root
};

// A CM type: three root indices, no two conjugate-paired.
using CMType = std::set<int>;

CMBundle parse_bundle(const std::string& text);
CMBundle load_bundle_file(const std::string& path);

EmbeddingSet embeddings(const CMBundle& bundle, const PrecisionContext& ctx);

BigComplex embed(const FieldElement& x, int root_index,
                 const EmbeddingSet& E, long prec);

// All 8 CM types in a deterministic order, grouped into the 4 conjugation
// classes {Phi, conj(Phi)}.
struct CMTypeList {
    std::vector<CMType> types;                    // 8
    std::vector<std::pair<int, int>> classes;     // 4 index pairs into types
};
CMTypeList all_cm_types(const EmbeddingSet& E);

// Permutations on root indices induced by the bundle's Galois generators,
// closed under composition.
std::vector<std::array<int, 6>> automorphism_permutations(
    const CMBundle& bundle, const EmbeddingSet& E,
    const PrecisionContext& ctx);

struct PrimitivityResult {
    std::vector<CMType> primitive;                // subset of input types
    std::vector<std::vector<int>> classes;        // indices into primitive
};
// A type is primitive when no nonidentity permutation stabilizes it.
// Equivalence is generated by the permutation action together with complex
// conjugation (a type and its conjugate always share a class).
PrimitivityResult primitivity_and_equivalence(
    const std::vector<CMType>& types,
    const std::vector<std::array<int, 6>>& perms,
    const std::array<int, 6>& pairing);

}  // namespace cm3
