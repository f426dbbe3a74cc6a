#include "cm3/theta.hpp"

#include <atomic>
#include <mutex>
#include <thread>

namespace cm3 {

namespace {

BigComplex cone(long prec) {
    return {BigReal(1.0, prec), BigReal(0.0, prec)};
}

// z^e for integer e (negative allowed), by binary powering
BigComplex cpow_int(const BigComplex& z, long e) {
    long prec = z.prec();
    BigComplex base = z;
    if (e < 0) {
        base = cone(prec) / z;
        e = -e;
    }
    BigComplex acc = cone(prec);
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

BigComplex mul_i_pow(const BigComplex& z, long e) {
    switch (((e % 4) + 4) % 4) {
        case 0: return z;
        case 1: return {-z.im, z.re};
        case 2: return {-z.re, -z.im};
        default: return {z.im, -z.re};
    }
}

// The innermost loops below run millions of times; these helpers work on
// preallocated operands through raw mpfr calls so no reallocation happens
// per lattice point.
struct CScratch {
    BigReal t1, t2;
    explicit CScratch(long prec) : t1(prec), t2(prec) {}
};

// dest = a * b; dest must not alias a or b
void cmul(BigComplex& dest, const BigComplex& a, const BigComplex& b,
          CScratch& s) {
    mpfr_mul(s.t1.raw(), a.re.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_mul(s.t2.raw(), a.im.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_sub(dest.re.raw(), s.t1.raw(), s.t2.raw(), MPFR_RNDN);
    mpfr_mul(s.t1.raw(), a.re.raw(), b.im.raw(), MPFR_RNDN);
    mpfr_mul(s.t2.raw(), a.im.raw(), b.re.raw(), MPFR_RNDN);
    mpfr_add(dest.im.raw(), s.t1.raw(), s.t2.raw(), MPFR_RNDN);
}

// sum += i^e * term
void add_i_pow(BigComplex& sum, const BigComplex& term, long e) {
    switch (((e % 4) + 4) % 4) {
        case 0:
            sum.re += term.re;
            sum.im += term.im;
            break;
        case 1:
            sum.re -= term.im;
            sum.im += term.re;
            break;
        case 2:
            sum.re -= term.re;
            sum.im -= term.im;
            break;
        default:
            sum.re += term.im;
            sum.im -= term.re;
            break;
    }
}

BigReal at_prec(const BigReal& x, long prec) {
    BigReal y(prec);
    mpfr_set(y.raw(), x.raw(), MPFR_RNDN);
    return y;
}

// truncated sum at an explicit working precision
BigComplex theta_sum(const std::array<long, 6>& twice_xi,
                     const PeriodMatrix& Z, int B, long prec) {
    const BigReal pi4 = BigReal::pi(prec) / BigReal(4.0, prec);
    const BigReal pi2 = pi4 + pi4;

    // Write the summation variable as m = 2n + c with c = 2*xi_1; the term
    // is exp(pi*i/4 * m^T Z m) * i^(m . d) with d = 2*xi_2.  Both factors
    // are products of per-axis powers updated multiplicatively as each m_j
    // steps by 2, so the lattice walk needs no transcendental calls.
    const long c[3] = {twice_xi[0], twice_xi[1], twice_xi[2]};
    const long d[3] = {twice_xi[3], twice_xi[4], twice_xi[5]};
    const int n_pts = 2 * B + 1;
    long lo[3];
    for (int j = 0; j < 3; ++j) lo[j] = -2L * B + c[j];

    BigComplex zl[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            zl[i][j] = {at_prec(Z.Z[(size_t)i][(size_t)j].re, prec),
                        at_prec(Z.Z[(size_t)i][(size_t)j].im, prec)};

    // u_j = exp(pi i Z_jj / 4); diag[j][idx] = u_j^(m^2), m = lo_j + 2 idx
    std::vector<std::vector<BigComplex>> diag(3);
    for (int j = 0; j < 3; ++j) {
        BigComplex u = cexp(mul_i_pow(
            BigComplex{pi4 * zl[j][j].re, pi4 * zl[j][j].im}, 1));
        BigComplex val = cpow_int(u, lo[j] * lo[j]);
        BigComplex ratio = cpow_int(u, 4 * lo[j] + 4);
        BigComplex ratio2 = cpow_int(u, 8);
        diag[(size_t)j].reserve((size_t)n_pts);
        for (int idx = 0; idx < n_pts; ++idx) {
            diag[(size_t)j].push_back(val);
            val = val * ratio;
            ratio = ratio * ratio2;
        }
    }

    // w_jk = exp(pi i Z_jk / 2); geometric tables of powers over each range
    auto cross_base = [&](int j, int k) {
        return cexp(mul_i_pow(
            BigComplex{pi2 * zl[j][k].re, pi2 * zl[j][k].im}, 1));
    };
    auto geom_table = [&](const BigComplex& w, long first_exp, long lo_m) {
        // entries (w^first_exp) * (w^2)^idx = w^(first_exp + 2 idx * 1),
        // i.e. w^(m * k) tables are built by passing w^k as the base
        std::vector<BigComplex> t;
        t.reserve((size_t)n_pts);
        BigComplex val = cpow_int(w, first_exp * lo_m);
        BigComplex step = cpow_int(w, 2 * first_exp);
        for (int idx = 0; idx < n_pts; ++idx) {
            t.push_back(val);
            val = val * step;
        }
        return t;
    };
    const BigComplex w12 = cross_base(0, 1), w13 = cross_base(0, 2),
                     w23 = cross_base(1, 2);
    // powers of the cross couplings indexed by the running coordinate
    std::vector<BigComplex> t12 = geom_table(w12, 1, lo[0]);   // w12^m1
    std::vector<BigComplex> t13 = geom_table(w13, 1, lo[0]);   // w13^m1
    std::vector<BigComplex> t23 = geom_table(w23, 1, lo[1]);   // w23^m2
    // the same couplings pre-raised to lo3, used to seed the inner run
    std::vector<BigComplex> s13 = geom_table(w13, lo[2], lo[0]);
    std::vector<BigComplex> s23 = geom_table(w23, lo[2], lo[1]);

    CScratch scr(prec);
    BigComplex sum{BigReal(0.0, prec), BigReal(0.0, prec)};
    BigComplex a1d(prec), a2(prec), y(prec), ysq(prec), f12sq(prec),
        tmp(prec), term(prec);
    BigComplex g[2] = {BigComplex(prec), BigComplex(prec)};
    BigComplex ypow[2] = {BigComplex(prec), BigComplex(prec)};
    for (int i1 = 0; i1 < n_pts; ++i1) {
        const long m1 = lo[0] + 2L * i1;
        const BigComplex& a1 = diag[0][(size_t)i1];
        const BigComplex& f12 = t12[(size_t)i1];
        cmul(f12sq, f12, f12, scr);
        int gc = 0;
        g[gc] = cpow_int(f12, lo[1]);  // w12^(m1 m2) with m2 running
        for (int i2 = 0; i2 < n_pts; ++i2) {
            const long m2 = lo[1] + 2L * i2;
            cmul(a1d, a1, diag[1][(size_t)i2], scr);
            cmul(a2, a1d, g[gc], scr);
            cmul(y, t13[(size_t)i1], t23[(size_t)i2], scr);
            cmul(ysq, y, y, scr);
            int pc = 0;
            // ypow = y^m3 starting at m3 = lo3, via the pre-raised tables
            cmul(ypow[pc], s13[(size_t)i1], s23[(size_t)i2], scr);
            long m3 = lo[2];
            for (int i3 = 0; i3 < n_pts; ++i3) {
                cmul(tmp, a2, diag[2][(size_t)i3], scr);
                cmul(term, tmp, ypow[pc], scr);
                add_i_pow(sum, term, m1 * d[0] + m2 * d[1] + m3 * d[2]);
                cmul(ypow[1 - pc], ypow[pc], ysq, scr);
                pc = 1 - pc;
                m3 += 2;
            }
            cmul(g[1 - gc], g[gc], f12sq, scr);
            gc = 1 - gc;
        }
    }
    return sum;
}

}  // namespace

BigComplex theta_truncated(const Characteristic& xi, const PeriodMatrix& Z,
                           int B) {
    std::array<long, 6> twice_xi;
    for (int k = 0; k < 6; ++k) twice_xi[(size_t)k] = xi.v[(size_t)k];
    return theta_truncated(twice_xi, Z, B);
}

BigComplex theta_truncated(const std::array<long, 6>& twice_xi,
                           const PeriodMatrix& Z, int B) {
    return theta_sum(twice_xi, Z, B, Z.bits + 64);
}

ThetaResult theta_constant(const Characteristic& xi, const PeriodMatrix& Z,
                           const PrecisionContext& ctx, int b0, int bmax) {
    if (b0 < 1 || bmax < b0)
        throw Error(ErrorCode::ConfigError, "bad radius bounds");
    const long prec = ctx.bits + 64;
    std::array<long, 6> twice_xi;
    for (int k = 0; k < 6; ++k) twice_xi[(size_t)k] = xi.v[(size_t)k];
    const BigReal tol = BigReal::pow2(-ctx.bits, prec);
    BigComplex prev = theta_sum(twice_xi, Z, b0, prec);
    for (int B = 2 * b0; B <= bmax; B *= 2) {
        BigComplex cur = theta_sum(twice_xi, Z, B, prec);
        if (abs(cur - prev) < tol) return {cur, B};
        prev = cur;
    }
    throw Error(ErrorCode::NoConvergence,
                "theta sum not stable by radius " + std::to_string(bmax));
}

ThetaTable even_theta_table(const PeriodMatrix& Z,
                            const PrecisionContext& ctx, int b0, int bmax) {
    std::vector<Characteristic> evens;
    for (int bits = 0; bits < 64; ++bits) {
        Characteristic c = bits_to_char(bits);
        if (e_star(c) == 1) evens.push_back(c);
    }

    std::vector<ThetaResult> results(
        evens.size(),
        ThetaResult{BigComplex{BigReal(0.0, 64), BigReal(0.0, 64)}, 0});
    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= evens.size()) return;
            try {
                results[i] = theta_constant(evens[i], Z, ctx, b0, bmax);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    unsigned n_threads = std::thread::hardware_concurrency();
    if (n_threads < 1) n_threads = 1;
    if (n_threads > evens.size()) n_threads = (unsigned)evens.size();
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);

    ThetaTable table;
    table.bits = ctx.bits;
    for (size_t i = 0; i < evens.size(); ++i) {
        table.values.emplace(evens[i], results[i].value);
        table.radius_used.emplace(evens[i], results[i].radius);
    }
    return table;
}

Classification classify(const ThetaTable& table, long vanish_exp) {
    if (table.values.size() != 36)
        throw Error(ErrorCode::ConfigError, "theta table incomplete");
    const long prec = table.bits + 64;
    const BigReal small = BigReal::pow2(-vanish_exp, prec);
    const BigReal gap = BigReal::pow2(-(vanish_exp / 2), prec);
    Classification out;
    for (const auto& [xi, value] : table.values) {
        BigReal a = abs(value);
        if (a < small)
            out.vanishing.push_back(xi);
        else if (a <= gap)
            throw Error(ErrorCode::AmbiguousMagnitude,
                        "theta magnitude in the gap band; raise precision");
    }
    if (out.vanishing.empty())
        out.kind = PpavKind::PlaneQuartic;
    else if (out.vanishing.size() == 1)
        out.kind = PpavKind::Hyperelliptic;
    else
        out.kind = PpavKind::Reducible;
    return out;
}

IgusaForms igusa_forms(const ThetaTable& table) {
    const long prec = table.bits + 64;
    std::vector<BigComplex> v8;
    BigComplex chi = cone(prec);
    for (const auto& [xi, value] : table.values) {
        chi = chi * value;
        BigComplex s = value * value;
        s = s * s;
        v8.push_back(s * s);
    }
    const size_t n = v8.size();
    // sigma = sum_i prod_{j != i} v8[j], via prefix/suffix products so the
    // vanishing entries never force a division
    std::vector<BigComplex> pre(n + 1, cone(prec)), suf(n + 1, cone(prec));
    for (size_t i = 0; i < n; ++i) pre[i + 1] = pre[i] * v8[i];
    for (size_t i = n; i > 0; --i) suf[i - 1] = suf[i] * v8[i - 1];
    BigComplex sigma{BigReal(0.0, prec), BigReal(0.0, prec)};
    for (size_t i = 0; i < n; ++i) sigma += pre[i] * suf[i + 1];
    return {sigma, chi};
}

}  // namespace cm3
