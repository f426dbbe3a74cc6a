#pragma once

#include <map>
#include <vector>

#include "cm3/chars.hpp"
#include "cm3/polarization.hpp"

namespace cm3 {

struct ThetaTable {
    std::map<Characteristic, BigComplex> values;  // all 36 even classes
    std::map<Characteristic, int> radius_used;    // final B per class
    long bits = 0;
};

enum class PpavKind { Reducible, Hyperelliptic, PlaneQuartic };

struct Classification {
    PpavKind kind;
    // classes below the vanishing threshold, sorted; for Hyperelliptic
    // this has exactly one element, the distinguished characteristic
    std::vector<Characteristic> vanishing;

    const Characteristic& delta() const { return vanishing.front(); }
};

struct IgusaForms {
    BigComplex sigma140;
    BigComplex chi18;
};

// Truncated theta constant over n in [-B,B]^3 with the class lifted to
// half-integer entries in {0, 1/2}.  The second overload takes twice the
// lift as integers, allowing lifts shifted by integer vectors.
BigComplex theta_truncated(const Characteristic& xi, const PeriodMatrix& Z,
                           int B);
BigComplex theta_truncated(const std::array<long, 6>& twice_xi,
                           const PeriodMatrix& Z, int B);

struct ThetaResult {
    BigComplex value;
    int radius;
};

// Doubling-radius evaluation: sums at b0, 2*b0, 4*b0, ... until two
// consecutive radii agree within 2^-bits, capped at bmax.
ThetaResult theta_constant(const Characteristic& xi, const PeriodMatrix& Z,
                           const PrecisionContext& ctx, int b0 = 4,
                           int bmax = 64);

ThetaTable even_theta_table(const PeriodMatrix& Z,
                            const PrecisionContext& ctx, int b0 = 4,
                            int bmax = 64);

Classification classify(const ThetaTable& table, long vanish_exp);

IgusaForms igusa_forms(const ThetaTable& table);

}  // namespace cm3
