#pragma once

#include "cm3/bundle.hpp"

namespace cm3 {

struct PolarizationCandidate {
    FieldElement xi;
    CMType cm_type;
};

using IntegerMatrix6 = std::array<std::array<mpz_class, 6>, 6>;

struct PeriodMatrix {
    ComplexMatrix3 Z;
    long bits;
    std::string bundle_id;
    CMType cm_type;
    FieldElement xi;
};

// xi qualifies when every embedding is purely imaginary, -xi^2 is totally
// positive, and Im(phi_i(xi)) > 0 for the three CM-type indices.
bool check_xi(const FieldElement& xi, const CMType& cm_type,
              const EmbeddingSet& E, const PrecisionContext& ctx);

// First unit representative u with check_xi(u*b) fixes xi; the returned
// candidates are eps*xi over the totally positive unit representatives.
// Empty when no representative works.
std::vector<PolarizationCandidate> select_polarizations(
    const CMBundle& bundle, const CMType& cm_type, const EmbeddingSet& E,
    const PrecisionContext& ctx);

// M[i][j] = Tr(xi * x_i * conj(x_j)), evaluated through the embeddings and
// rounded; exact antisymmetry enforced afterwards.
IntegerMatrix6 gram_matrix(const FieldElement& xi,
                           const std::vector<FieldElement>& ideal_basis,
                           const EmbeddingSet& E,
                           const PrecisionContext& ctx);

mpz_class det6(const IntegerMatrix6& m);

// Unimodular U with U^T M U = J, J = ((0, I3), (-I3, 0)); exact integers.
IntegerMatrix6 symplectic_basis(const IntegerMatrix6& M);

PeriodMatrix build_period_matrix(const PolarizationCandidate& cand,
                                 const IntegerMatrix6& U,
                                 const CMBundle& bundle,
                                 const EmbeddingSet& E,
                                 const PrecisionContext& ctx);

}  // namespace cm3
