#include "cm3/bundle.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace cm3 {

using json = nlohmann::json;

static FieldElement parse_element(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 6)
        throw Error(ErrorCode::SchemaError,
                    std::string(what) + " must be an array of 6 rationals");
    FieldElement e;
    for (int i = 0; i < 6; ++i) {
        if (!j[i].is_string())
            throw Error(ErrorCode::SchemaError,
                        std::string(what) + " entries must be strings");
        e.c[i] = parse_rational(j[i].get<std::string>());
    }
    return e;
}

static bool rank6(const std::vector<FieldElement>& rows) {
    std::array<std::array<Rat, 6>, 6> m;
    for (int i = 0; i < 6; ++i) m[i] = rows[i].c;
    for (int col = 0; col < 6; ++col) {
        int piv = -1;
        for (int r = col; r < 6; ++r)
            if (m[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return false;
        std::swap(m[col], m[piv]);
        for (int r = col + 1; r < 6; ++r) {
            if (m[r][col] == 0) continue;
            Rat mult = m[r][col] / m[col][col];
            for (int c2 = col; c2 < 6; ++c2) m[r][c2] -= mult * m[col][c2];
        }
    }
    return true;
}

CMBundle parse_bundle(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::SchemaError, e.what());
    }
    if (!j.is_object())
        throw Error(ErrorCode::SchemaError, "top level must be an object");
    static const std::set<std::string> known = {
        "f",         "ideal_basis", "b",        "unit_reps",
        "tp_unit_reps", "galois_gens", "cm_types", "verify"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!known.count(it.key()))
            throw Error(ErrorCode::SchemaError, "unknown key: " + it.key());
    }
    for (const char* req : {"f", "ideal_basis", "b", "unit_reps",
                            "tp_unit_reps"}) {
        if (!j.contains(req))
            throw Error(ErrorCode::SchemaError,
                        std::string("missing key: ") + req);
    }

    CMBundle b;
    const json& jf = j["f"];
    if (!jf.is_array() || jf.size() != 7)
        throw Error(ErrorCode::SchemaError, "f must have 7 coefficients");
    for (int i = 0; i < 7; ++i) {
        if (!jf[i].is_number_integer())
            throw Error(ErrorCode::SchemaError, "f entries must be integers");
        b.f[i] = mpz_class((long)jf[i].get<long long>());
    }
    if (b.f[6] != 1)
        throw Error(ErrorCode::SchemaError, "f must be monic");
    if (!poly_is_squarefree(b.f))
        throw Error(ErrorCode::NonSquarefreeField, "gcd(f, f') nonconstant");

    const json& jib = j["ideal_basis"];
    if (!jib.is_array() || jib.size() != 6)
        throw Error(ErrorCode::SchemaError,
                    "ideal_basis must have 6 elements");
    for (const auto& row : jib)
        b.ideal_basis.push_back(parse_element(row, "ideal_basis"));
    if (!rank6(b.ideal_basis))
        throw Error(ErrorCode::RankDeficientIdeal,
                    "ideal basis is not full rank");

    b.b = parse_element(j["b"], "b");

    const json& jur = j["unit_reps"];
    if (!jur.is_array() || jur.empty())
        throw Error(ErrorCode::SchemaError, "unit_reps must be nonempty");
    for (const auto& u : jur)
        b.unit_reps.push_back(parse_element(u, "unit_reps"));

    const json& jtp = j["tp_unit_reps"];
    if (!jtp.is_array() || jtp.empty())
        throw Error(ErrorCode::SchemaError, "tp_unit_reps must be nonempty");
    for (const auto& u : jtp)
        b.tp_unit_reps.push_back(parse_element(u, "tp_unit_reps"));

    if (j.contains("galois_gens")) {
        const json& jg = j["galois_gens"];
        if (!jg.is_array())
            throw Error(ErrorCode::SchemaError, "galois_gens must be a list");
        for (const auto& g : jg) {
            FieldElement e = parse_element(g, "galois_gens");
            b.galois_gens.emplace_back(e.c.begin(), e.c.end());
        }
    }

    if (j.contains("cm_types")) {
        const json& jc = j["cm_types"];
        if (!jc.is_array())
            throw Error(ErrorCode::SchemaError, "cm_types must be a list");
        for (const auto& t : jc) {
            if (!t.is_array() || t.size() != 3)
                throw Error(ErrorCode::SchemaError,
                            "cm_types entries must have 3 indices");
            CMType ty;
            for (const auto& idx : t) {
                if (!idx.is_number_integer())
                    throw Error(ErrorCode::SchemaError,
                                "cm_types indices must be integers");
                long v = idx.get<long>();
                if (v < 1 || v > 6)
                    throw Error(ErrorCode::SchemaError,
                                "cm_types indices must be in 1..6");
                ty.insert((int)v - 1);
            }
            if (ty.size() != 3)
                throw Error(ErrorCode::SchemaError,
                            "cm_types indices must be distinct");
            b.cm_types.push_back(ty);
        }
    }

    if (j.contains("verify")) {
        const json& jv = j["verify"];
        if (!jv.is_object() || !jv.contains("p") || !jv.contains("pi") ||
            jv.size() != 2)
            throw Error(ErrorCode::SchemaError,
                        "verify must be {p, pi}");
        if (!jv["p"].is_number_integer())
            throw Error(ErrorCode::SchemaError, "verify.p must be integer");
        VerifyData v;
        v.p = jv["p"].get<long>();
        if (v.p < 2)
            throw Error(ErrorCode::SchemaError, "verify.p must be >= 2");
        v.pi = parse_element(jv["pi"], "verify.pi");
        b.verify = v;
    }
    return b;
}

CMBundle load_bundle_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::SchemaError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    CMBundle b = parse_bundle(ss.str());
    // derive a display name from the file name
    size_t slash = path.find_last_of('/');
    std::string base =
        (slash == std::string::npos) ? path : path.substr(slash + 1);
    size_t dot = base.find_last_of('.');
    b.name = (dot == std::string::npos) ? base : base.substr(0, dot);
    return b;
}

EmbeddingSet embeddings(const CMBundle& bundle, const PrecisionContext& ctx) {
    std::vector<BigComplex> coeffs;
    coeffs.reserve(7);
    for (int i = 0; i < 7; ++i)
        coeffs.emplace_back(BigReal(bundle.f[i], ctx.bits),
                            BigReal(0L, ctx.bits));
    auto roots = poly_roots(coeffs, ctx);
    if (roots.size() != 6)
        throw Error(ErrorCode::SchemaError, "f must have degree 6");
    BigReal tol = BigReal::pow2(-ctx.bits / 4, ctx.bits);
    for (const auto& r : roots) {
        if (!(abs(r.im) > tol))
            throw Error(ErrorCode::NotTotallyImaginary,
                        "f has a real root");
    }
    EmbeddingSet E;
    E.roots = roots;
    std::vector<std::pair<int, int>> pairs;
    try {
        pairs = conj_pairing(roots, ctx);
    } catch (const Error& e) {
        throw Error(ErrorCode::NotTotallyImaginary, e.what());
    }
    for (auto [i, jj] : pairs) {
        E.pairing[i] = jj;
        E.pairing[jj] = i;
    }
    return E;
}

BigComplex embed(const FieldElement& x, int root_index,
                 const EmbeddingSet& E, long prec) {
    std::vector<Rat> coeffs(x.c.begin(), x.c.end());
    return eval_poly(coeffs, E.roots[(size_t)root_index], prec);
}

CMTypeList all_cm_types(const EmbeddingSet& E) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < 6; ++i) {
        int jj = E.pairing[i];
        if (E.roots[i].im.sign() > 0) pairs.emplace_back(i, jj);
    }
    std::sort(pairs.begin(), pairs.end());
    CMTypeList out;
    for (int mask = 0; mask < 8; ++mask) {
        CMType t;
        for (int k = 0; k < 3; ++k)
            t.insert((mask >> k) & 1 ? pairs[k].second : pairs[k].first);
        out.types.push_back(t);
    }
    // conjugation flips every bit: mask <-> 7 - mask
    for (int m = 0; m < 4; ++m) out.classes.emplace_back(m, 7 - m);
    return out;
}

std::vector<std::array<int, 6>> automorphism_permutations(
    const CMBundle& bundle, const EmbeddingSet& E,
    const PrecisionContext& ctx) {
    if (bundle.galois_gens.empty())
        throw Error(ErrorCode::ConfigError, "no galois generators supplied");
    BigReal tol = BigReal::pow2(-ctx.bits / 4, ctx.bits);
    std::vector<std::array<int, 6>> gens;
    for (const auto& g : bundle.galois_gens) {
        std::array<int, 6> perm;
        std::array<bool, 6> used{};
        for (int jj = 0; jj < 6; ++jj) {
            BigComplex img = eval_poly(g, E.roots[(size_t)jj], ctx.bits);
            int hit = -1;
            for (int k = 0; k < 6; ++k) {
                if (abs(img - E.roots[(size_t)k]) < tol) {
                    if (hit != -1)
                        throw Error(ErrorCode::PermutationMismatch,
                                    "image near two roots");
                    hit = k;
                }
            }
            if (hit < 0)
                throw Error(ErrorCode::PermutationMismatch,
                            "image not near any root");
            if (used[(size_t)hit])
                throw Error(ErrorCode::PermutationMismatch,
                            "permutation not injective");
            used[(size_t)hit] = true;
            perm[(size_t)jj] = hit;
        }
        gens.push_back(perm);
    }
    // closure under composition
    std::array<int, 6> id;
    for (int i = 0; i < 6; ++i) id[(size_t)i] = i;
    std::vector<std::array<int, 6>> group = {id};
    bool grew = true;
    while (grew) {
        grew = false;
        for (size_t gi = 0; gi < group.size(); ++gi) {
            for (const auto& g : gens) {
                std::array<int, 6> comp;
                for (int i = 0; i < 6; ++i)
                    comp[(size_t)i] = g[(size_t)group[gi][(size_t)i]];
                if (std::find(group.begin(), group.end(), comp) ==
                    group.end()) {
                    group.push_back(comp);
                    grew = true;
                    if (group.size() > 6)
                        throw Error(ErrorCode::NotClosedGroup,
                                    "group order exceeds 6");
                }
            }
        }
    }
    if (6 % group.size() != 0)
        throw Error(ErrorCode::NotClosedGroup,
                    "group order does not divide 6");
    return group;
}

PrimitivityResult primitivity_and_equivalence(
    const std::vector<CMType>& types,
    const std::vector<std::array<int, 6>>& perms,
    const std::array<int, 6>& pairing) {
    auto apply = [](const std::array<int, 6>& p, const CMType& t) {
        CMType out;
        for (int i : t) out.insert(p[(size_t)i]);
        return out;
    };
    std::array<int, 6> id;
    for (int i = 0; i < 6; ++i) id[(size_t)i] = i;

    PrimitivityResult res;
    for (const auto& t : types) {
        bool prim = true;
        for (const auto& p : perms) {
            if (p == id) continue;
            if (apply(p, t) == t) {
                prim = false;
                break;
            }
        }
        if (prim) res.primitive.push_back(t);
    }
    // equivalence: union-find over permutation images and conjugation
    std::vector<int> cls(res.primitive.size());
    for (size_t i = 0; i < cls.size(); ++i) cls[i] = (int)i;
    auto find_type = [&](const CMType& t) -> int {
        for (size_t k = 0; k < res.primitive.size(); ++k)
            if (res.primitive[k] == t) return (int)k;
        return -1;
    };
    auto merge = [&](int a, int b) {
        if (a < 0 || b < 0 || cls[(size_t)a] == cls[(size_t)b]) return;
        int lo = std::min(cls[(size_t)a], cls[(size_t)b]);
        int hi = std::max(cls[(size_t)a], cls[(size_t)b]);
        for (auto& c : cls)
            if (c == hi) c = lo;
    };
    for (size_t i = 0; i < res.primitive.size(); ++i) {
        for (const auto& p : perms)
            merge((int)i, find_type(apply(p, res.primitive[i])));
        merge((int)i, find_type(apply(pairing, res.primitive[i])));
    }
    // renumber classes in first-appearance order
    std::vector<int> remap(cls.size(), -1);
    int out_n = 0;
    for (int c : cls)
        if (remap[(size_t)c] == -1) remap[(size_t)c] = out_n++;
    res.classes.assign((size_t)out_n, {});
    for (size_t i = 0; i < res.primitive.size(); ++i)
        res.classes[(size_t)remap[(size_t)cls[i]]].push_back((int)i);
    return res;
}

}  // namespace cm3
