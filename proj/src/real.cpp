#include "cm3/real.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>

namespace cm3 {

std::string BigReal::str() const {
    if (!is_finite()) return "nan";
    if (is_zero()) return "0";
    // digits needed to round-trip the carried precision
    long digits = (long)std::ceil(prec() * 0.30103) + 2;
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, (size_t)digits, v_, MPFR_RNDN);
    std::string mant(s);
    mpfr_free_str(s);
    bool neg = !mant.empty() && mant[0] == '-';
    if (neg) mant.erase(0, 1);
    // strip trailing zeros of the mantissa (keep at least one digit)
    size_t last = mant.find_last_not_of('0');
    if (last == std::string::npos)
        mant = "0";
    else
        mant.erase(last + 1);
    std::string out;
    // mant is "d1d2..." meaning 0.d1d2... * 10^e
    if (e > 0 && (size_t)e <= mant.size() + 6 && (size_t)e >= mant.size()) {
        // pure integer
        mant.append((size_t)e - mant.size(), '0');
        out = mant;
    } else if (e > 0 && (size_t)e < mant.size()) {
        out = mant.substr(0, (size_t)e) + "." + mant.substr((size_t)e);
    } else if (e <= 0 && e > -6) {
        out = "0." + std::string((size_t)(-e), '0') + mant;
    } else {
        // scientific: d1.d2... e (e-1)
        out = mant.substr(0, 1);
        if (mant.size() > 1) out += "." + mant.substr(1);
        out += "e" + std::to_string((long)(e - 1));
    }
    if (neg) out = "-" + out;
    return out;
}

}  // namespace cm3
