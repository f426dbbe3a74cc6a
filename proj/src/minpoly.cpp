#include "cm3/minpoly.hpp"

#include <algorithm>

#include "cm3/error.hpp"

namespace cm3 {

namespace {

// strip trailing zero coefficients; content 1; leading coefficient > 0
IntegerPolynomial normalize(std::vector<mpz_class> c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.empty()) return {};
    mpz_class g = 0;
    for (const auto& x : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    for (auto& x : c) x /= g;
    if (c.back() < 0)
        for (auto& x : c) x = -x;
    return {std::move(c)};
}

mpz_class row_norm2(const IntegerRow& r) {
    mpz_class s = 0;
    for (const auto& x : r) s += x * x;
    return s;
}

mpz_class scaled_round(const BigReal& x, long s) {
    BigReal y(x);
    mpfr_mul_2si(y.raw(), y.raw(), s, MPFR_RNDN);
    return y.nearest_integer();
}

}  // namespace

std::string IntegerPolynomial::str() const {
    if (coeffs.empty()) return "0";
    std::string out;
    for (int d = degree(); d >= 0; --d) {
        const mpz_class& c = coeffs[(size_t)d];
        if (c == 0) continue;
        mpz_class a = abs(c);
        if (out.empty())
            out += (c < 0) ? "-" : "";
        else
            out += (c < 0) ? " - " : " + ";
        bool unit = (a == 1) && d > 0;
        if (!unit) out += a.get_str();
        if (d > 0) {
            if (!unit) out += "*";
            out += "x";
            if (d > 1) out += "^" + std::to_string(d);
        }
    }
    return out.empty() ? "0" : out;
}

BigComplex poly_eval(const IntegerPolynomial& p, const BigComplex& z) {
    long prec = z.re.prec();
    BigComplex acc(prec);
    for (size_t i = p.coeffs.size(); i-- > 0;) {
        acc = acc * z;
        acc.re = acc.re + BigReal(p.coeffs[i], prec);
    }
    return acc;
}

RecognitionResult algdep(const BigComplex& z, int maxdeg,
                         const PrecisionContext& ctx, int scale_bits) {
    if (maxdeg < 1)
        throw Error(ErrorCode::ConfigError, "maxdeg must be >= 1");
    const long bits = ctx.bits;
    const long s = scale_bits > 0 ? scale_bits : bits - 10;
    const BigReal accept = BigReal::pow2(-bits / 4, bits);

    // powers of z at working precision
    std::vector<BigComplex> pw;
    pw.reserve((size_t)maxdeg + 1);
    BigComplex one{BigReal(1.0, bits), BigReal(0.0, bits)};
    pw.push_back(one);
    for (int j = 1; j <= maxdeg; ++j) pw.push_back(pw.back() * z);

    for (int d = 1; d <= maxdeg; ++d) {
        IntegerLattice lat((size_t)d + 1);
        for (int j = 0; j <= d; ++j) {
            IntegerRow row((size_t)d + 3, mpz_class(0));
            row[0] = scaled_round(pw[(size_t)j].re, s);
            row[1] = scaled_round(pw[(size_t)j].im, s);
            row[(size_t)j + 2] = 1;
            lat[(size_t)j] = std::move(row);
        }
        IntegerLattice red = lll_reduce(lat);
        std::sort(red.begin(), red.end(),
                  [](const IntegerRow& a, const IntegerRow& b) {
                      return row_norm2(a) < row_norm2(b);
                  });

        const RecognitionResult* best = nullptr;
        RecognitionResult cand;
        for (size_t v = 0; v < red.size() && v < 3; ++v) {
            std::vector<mpz_class> c(red[v].begin() + 2, red[v].end());
            IntegerPolynomial p = normalize(std::move(c));
            if (p.coeffs.size() < 2) continue;  // constant or zero: no relation
            mpz_class h = 0;
            for (const auto& x : p.coeffs) h = std::max(h, mpz_class(abs(x)));
            BigReal r = abs(poly_eval(p, z));
            // A reduced vector always yields SOME small combination: for a
            // height-H candidate of degree e the pigeonhole floor is about
            // H^-(e+1), reached by accidental near-relations (continued
            // fraction convergents at e = 1 and their higher-degree
            // analogues). A genuine relation sits at the precision floor
            // instead, far below. Certify by the height-normalized
            // residual so accidental candidates are rejected at every
            // degree rather than shadowing the true relation.
            BigReal cert = r;
            BigReal hh(h, bits);
            for (int t = 0; t <= p.degree(); ++t) cert = cert * hh;
            if (!(cert < accept)) continue;
            if (!best || r < best->residual) {
                cand = {std::move(p), r, h};
                best = &cand;
            }
        }
        if (best) return cand;
    }
    throw Error(ErrorCode::NoRelationFound,
                "no integer relation of degree <= " + std::to_string(maxdeg) +
                    " within tolerance");
}

std::map<int, RecognitionResult> recognize_rosenhain(
    const RosenhainSet& ros, int maxdeg, const PrecisionContext& ctx) {
    std::map<int, RecognitionResult> out;
    for (const auto& [i, a] : ros.a) out.emplace(i, algdep(a, maxdeg, ctx));
    return out;
}

}  // namespace cm3
