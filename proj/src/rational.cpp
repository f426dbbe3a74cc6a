#include "cm3/rational.hpp"

#include <cctype>

namespace cm3 {

Rat parse_rational(const std::string& s) {
    if (s.empty())
        throw Error(ErrorCode::SchemaError, "empty rational literal");
    size_t slash = s.find('/');
    std::string num = (slash == std::string::npos) ? s : s.substr(0, slash);
    std::string den =
        (slash == std::string::npos) ? "1" : s.substr(slash + 1);
    auto valid_int = [](const std::string& t) {
        if (t.empty()) return false;
        size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit((unsigned char)t[i])) return false;
        return true;
    };
    if (!valid_int(num) || !valid_int(den))
        throw Error(ErrorCode::SchemaError, "bad rational literal: " + s);
    mpz_class n(num), d(den);
    if (d == 0)
        throw Error(ErrorCode::SchemaError, "zero denominator: " + s);
    Rat q(n, d);
    q.canonicalize();
    return q;
}

std::string rational_str(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

FieldElement fe_zero() { return FieldElement{}; }

FieldElement fe_one() {
    FieldElement e;
    e.c[0] = 1;
    return e;
}

FieldElement fe_int(long n) {
    FieldElement e;
    e.c[0] = n;
    return e;
}

FieldOps::FieldOps(const std::array<mpz_class, 7>& f) : f_(f) {
    if (f_[6] != 1)
        throw Error(ErrorCode::SchemaError, "defining polynomial not monic");
    // x^6 = -(f0 + f1 x + ... + f5 x^5); extend to x^10 by shifting
    std::array<Rat, 6> cur;
    for (int i = 0; i < 6; ++i) cur[i] = Rat(-f_[i]);
    red_[0] = cur;
    for (int k = 1; k < 5; ++k) {
        std::array<Rat, 6> nxt{};
        Rat top = cur[5];
        for (int i = 5; i >= 1; --i) nxt[i] = cur[i - 1];
        nxt[0] = 0;
        for (int i = 0; i < 6; ++i) nxt[i] += top * red_[0][i];
        red_[k] = nxt;
        cur = nxt;
    }
}

FieldElement FieldOps::add(const FieldElement& a,
                           const FieldElement& b) const {
    FieldElement r;
    for (int i = 0; i < 6; ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
}

FieldElement FieldOps::sub(const FieldElement& a,
                           const FieldElement& b) const {
    FieldElement r;
    for (int i = 0; i < 6; ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
}

FieldElement FieldOps::neg(const FieldElement& a) const {
    FieldElement r;
    for (int i = 0; i < 6; ++i) r.c[i] = -a.c[i];
    return r;
}

FieldElement FieldOps::smul(const Rat& s, const FieldElement& a) const {
    FieldElement r;
    for (int i = 0; i < 6; ++i) r.c[i] = s * a.c[i];
    return r;
}

FieldElement FieldOps::mul(const FieldElement& a,
                           const FieldElement& b) const {
    std::array<Rat, 11> prod{};
    for (int i = 0; i < 6; ++i) {
        if (a.c[i] == 0) continue;
        for (int j = 0; j < 6; ++j) {
            if (b.c[j] == 0) continue;
            prod[i + j] += a.c[i] * b.c[j];
        }
    }
    FieldElement r;
    for (int i = 0; i < 6; ++i) r.c[i] = prod[i];
    for (int k = 0; k < 5; ++k) {
        if (prod[6 + k] == 0) continue;
        for (int i = 0; i < 6; ++i) r.c[i] += prod[6 + k] * red_[k][i];
    }
    return r;
}

FieldElement FieldOps::pow(const FieldElement& a, unsigned long e) const {
    FieldElement r = fe_one();
    FieldElement base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

// polynomial division helpers over Q (dense vectors, ascending degree)
static std::vector<Rat> trim(std::vector<Rat> p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

static std::vector<Rat> poly_rem(std::vector<Rat> a,
                                 const std::vector<Rat>& b) {
    while (a.size() >= b.size() && !a.empty()) {
        Rat q = a.back() / b.back();
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[off + i] -= q * b[i];
        a = trim(std::move(a));
        if (a.size() < b.size()) break;
    }
    return a;
}

FieldElement FieldOps::inv(const FieldElement& a) const {
    if (a.is_zero())
        throw Error(ErrorCode::ConfigError, "inverse of zero");
    // extended Euclid: r0 = f, r1 = a; track t with t*a = r mod f
    std::vector<Rat> r0(7), r1(a.c.begin(), a.c.end());
    for (int i = 0; i < 7; ++i) r0[i] = Rat(f_[i]);
    r1 = trim(std::move(r1));
    std::vector<Rat> t0, t1 = {Rat(1)};
    while (r1.size() > 1) {
        // quotient of r0 by r1
        std::vector<Rat> q;
        std::vector<Rat> rem = r0;
        if (rem.size() >= r1.size()) {
            q.assign(rem.size() - r1.size() + 1, Rat(0));
            while (rem.size() >= r1.size() && !rem.empty()) {
                Rat qc = rem.back() / r1.back();
                size_t off = rem.size() - r1.size();
                q[off] = qc;
                for (size_t i = 0; i < r1.size(); ++i)
                    rem[off + i] -= qc * r1[i];
                rem = trim(std::move(rem));
            }
        }
        // (r0, r1) <- (r1, rem); (t0, t1) <- (t1, t0 - q*t1)
        std::vector<Rat> qt1(q.size() + t1.size(), Rat(0));
        for (size_t i = 0; i < q.size(); ++i)
            for (size_t j = 0; j < t1.size(); ++j) qt1[i + j] += q[i] * t1[j];
        std::vector<Rat> nt(std::max(t0.size(), qt1.size()), Rat(0));
        for (size_t i = 0; i < t0.size(); ++i) nt[i] += t0[i];
        for (size_t i = 0; i < qt1.size(); ++i) nt[i] -= qt1[i];
        r0 = r1;
        r1 = rem;
        t0 = t1;
        t1 = trim(std::move(nt));
        if (r1.empty())
            throw Error(ErrorCode::NonSquarefreeField,
                        "element shares a factor with f");
        if (r1.size() == 1) break;
    }
    // r1 is a nonzero constant: inverse = t1 / r1[0]
    FieldElement out;
    for (size_t i = 0; i < t1.size() && i < 6; ++i) out.c[i] = t1[i] / r1[0];
    return out;
}

bool poly_is_squarefree(const std::array<mpz_class, 7>& f) {
    std::vector<Rat> a(7), b(6);
    for (int i = 0; i < 7; ++i) a[i] = Rat(f[i]);
    for (int i = 1; i < 7; ++i) b[i - 1] = Rat(f[i]) * i;
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
        std::vector<Rat> r = poly_rem(a, b);
        a = b;
        b = trim(std::move(r));
    }
    return a.size() == 1;
}

BigComplex eval_poly(const std::vector<Rat>& coeffs, const BigComplex& x,
                     long prec) {
    BigComplex acc(prec);
    for (size_t i = coeffs.size(); i-- > 0;) {
        acc = acc * x;
        acc.re += BigReal(coeffs[i], prec);
    }
    return acc;
}

}  // namespace cm3
