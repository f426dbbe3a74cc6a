#include "cm3/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <thread>
#include <vector>

#include "cm3/bundle.hpp"
#include "cm3/chars.hpp"
#include "cm3/error.hpp"
#include "cm3/fpverify.hpp"
#include "cm3/minpoly.hpp"
#include "cm3/polarization.hpp"
#include "cm3/rosenhain.hpp"
#include "cm3/theta.hpp"

namespace cm3 {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kSoftwareVersion = "cm3 1.0.0";
constexpr int kSchemaVersion = 1;

std::string char_str(const Characteristic& c) {
    std::string s;
    for (int i = 0; i < 6; ++i) {
        if (i == 3) s.push_back('|');
        s.push_back(char('0' + c.v[(size_t)i]));
    }
    return s;
}

Json gamma_json(const SymplecticF2& g) {
    Json rows = Json::array();
    for (int i = 0; i < 6; ++i) {
        std::string row;
        for (int j = 0; j < 6; ++j) row.push_back(char('0' + g[(size_t)i][(size_t)j]));
        rows.push_back(row);
    }
    return rows;
}

Json xi_json(const FieldElement& xi) {
    Json a = Json::array();
    for (int i = 0; i < 6; ++i) a.push_back(rational_str(xi.c[(size_t)i]));
    return a;
}

Json cm_type_json(const CMType& t) {
    Json a = Json::array();
    for (int i : t) a.push_back(i);
    return a;
}

Json complex_json(const BigComplex& z) {
    return Json{{"re", z.re.str()}, {"im", z.im.str()}};
}

Json poly_json(const RecognitionResult& r) {
    Json coeffs = Json::array();
    for (const mpz_class& c : r.poly.coeffs) coeffs.push_back(c.get_str());
    return Json{{"degree", r.poly.degree()},
                {"coeffs_constant_first", coeffs},
                {"text", r.poly.str()},
                {"height", r.height.get_str()},
                {"residual", r.residual.str()}};
}

const char* kind_name(PpavKind k) {
    switch (k) {
        case PpavKind::Reducible: return "Reducible";
        case PpavKind::Hyperelliptic: return "Hyperelliptic";
        case PpavKind::PlaneQuartic: return "PlaneQuartic";
    }
    return "?";
}

// The orbit table stores gamma in Gamma_{1,2}; on characteristic classes
// mod 2 applying gamma and applying gamma* agree there.  Checked here on
// all 35 entries so both configuration paths are interchangeable.
void assert_gamma_actions_agree() {
    EtaMapClass tilde = mumford_eta();
    for (int bits = 1; bits < 64; ++bits) {
        Characteristic d = bits_to_char(bits);
        if (e_star(d) != 1) continue;
        SymplecticF2 g = gamma_for_delta(d);
        EtaMapClass via_g = cm3::apply(g, tilde);
        EtaMapClass via_star = cm3::apply(gamma_star(g), tilde);
        for (int i = 0; i < 7; ++i)
            if (!(via_g.eta[(size_t)i] == via_star.eta[(size_t)i]))
                throw Error(ErrorCode::NotSymplectic,
                            "gamma and gamma* disagree on the orbit table "
                            "at delta " + char_str(d));
    }
}

struct Task {
    int class_index;
    int cand_index;
    CMType type;
    PolarizationCandidate cand;
};

struct EntryResult {
    Json entry;
    bool errored = false;
};

struct Stage {
    const char* module;
    std::string detail;
};

EntryResult process_candidate(const Task& task, const CMBundle& bundle,
                              const EmbeddingSet& E,
                              const PipelineConfig& cfg, long vanish_exp) {
    PrecisionContext ctx(cfg.bits);
    EntryResult out;
    Json& e = out.entry;
    e["provenance"] = Json{{"bundle", bundle.name},
                           {"cm_type_class", task.class_index},
                           {"candidate", task.cand_index},
                           {"cm_type", cm_type_json(task.type)},
                           {"xi", xi_json(task.cand.xi)}};
    const char* module = "polarization";
    try {
        IntegerMatrix6 M =
            gram_matrix(task.cand.xi, bundle.ideal_basis, E, ctx);
        IntegerMatrix6 U = symplectic_basis(M);
        PeriodMatrix Z = build_period_matrix(task.cand, U, bundle, E, ctx);

        module = "theta-engine";
        ThetaTable table = even_theta_table(Z, ctx, cfg.b0, cfg.bmax);
        Classification cls = classify(table, vanish_exp);
        e["classification"] = kind_name(cls.kind);
        if (cfg.dump_theta) {
            Json th = Json::object();
            for (const auto& [xi_cls, val] : table.values) {
                Json one = complex_json(val);
                one["radius"] = table.radius_used.at(xi_cls);
                th[char_str(xi_cls)] = std::move(one);
            }
            e["theta"] = std::move(th);
        }

        if (cls.kind == PpavKind::Hyperelliptic) {
            module = "characteristic-algebra";
            Characteristic delta = cls.delta();
            e["delta"] = char_str(delta);
            SymplecticF2 g;
            EtaMapClass eta;
            if (delta.is_zero()) {
                g = gamma_bar();
                // gamma_bar lies outside Gamma_{1,2}: the class action
                // must use the dual matrix to land on eta_bar.
                eta = cm3::apply(gamma_star(g), mumford_eta());
                e["gamma_source"] = "gamma_bar";
            } else {
                g = gamma_for_delta(delta);
                eta = cfg.use_gamma_star
                          ? cm3::apply(gamma_star(g), mumford_eta())
                          : cm3::apply(g, mumford_eta());
                e["gamma_source"] = "orbit_table";
            }
            e["gamma"] = gamma_json(g);

            module = "rosenhain";
            RosenhainSet ros = rosenhain_invariants(Z, eta, table);
            Json inv = Json::object();
            for (const auto& [i, a] : ros.a)
                inv["a" + std::to_string(i)] = complex_json(a);
            e["invariants"] = std::move(inv);
            BigReal defect = thomae_check(Z, eta, ros, table);
            e["thomae_defect"] = defect.str();

            module = "minpoly";
            std::map<int, RecognitionResult> rec =
                recognize_rosenhain(ros, cfg.maxdeg, ctx);
            Json polys = Json::object();
            for (const auto& [i, r] : rec)
                polys["a" + std::to_string(i)] = poly_json(r);
            e["polynomials"] = std::move(polys);

            if (cfg.verify) {
                module = "fp-verify";
                const VerifyData& vd = *bundle.verify;
                std::array<std::vector<PrimeFieldElement>, 5> lists;
                for (int i = 3; i <= 7; ++i)
                    lists[(size_t)(i - 3)] =
                        roots_mod_p(rec.at(i).poly, vd.p);
                mpz_class target = weil_norm(vd.pi, vd.p, E, ctx);
                CurveSearchResult found =
                    search_curve(lists, target, vd.p);
                Json curve = Json::array();
                for (long a : found.curve.a) curve.push_back(a);
                Json counts = Json::array();
                for (long n : found.counts) counts.push_back(n);
                e["verification"] = Json{{"p", vd.p},
                                         {"target", target.get_str()},
                                         {"curve", std::move(curve)},
                                         {"twisted", found.twisted},
                                         {"counts", std::move(counts)},
                                         {"outcome", "verified"}};
            }
        }
        e["status"] = "ok";
    } catch (const Error& err) {
        e["status"] = "error";
        e["error"] = Json{{"module", module},
                          {"code", error_code_name(err.code())},
                          {"detail", err.what()}};
        out.errored = true;
    }
    return out;
}

}  // namespace

RunReport run_pipeline(const std::string& bundle_path,
                       const PipelineConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    PrecisionContext ctx(cfg.bits);
    long vanish_exp = cfg.vanish_exp > 0 ? cfg.vanish_exp : cfg.bits / 2;
    if (cfg.b0 < 1 || cfg.bmax < cfg.b0)
        throw Error(ErrorCode::ConfigError, "bad truncation radii");
    if (cfg.maxdeg < 1)
        throw Error(ErrorCode::ConfigError, "maxdeg must be positive");

    CMBundle bundle = load_bundle_file(bundle_path);
    if (cfg.verify && !bundle.verify)
        throw Error(ErrorCode::ConfigError,
                    "--verify requested but bundle '" + bundle.name +
                        "' has no verify block");

    if (!cfg.gamma_table_path.empty()) load_gamma_table(cfg.gamma_table_path);
    assert_gamma_actions_agree();

    EmbeddingSet E = embeddings(bundle, ctx);

    // One representative CM type per equivalence class: from the Galois
    // machinery when generators are supplied, otherwise the bundle's
    // explicit list.
    std::vector<CMType> reps;
    if (!bundle.galois_gens.empty()) {
        auto perms = automorphism_permutations(bundle, E, ctx);
        CMTypeList all = all_cm_types(E);
        PrimitivityResult pr =
            primitivity_and_equivalence(all.types, perms, E.pairing);
        for (const auto& cls : pr.classes)
            reps.push_back(pr.primitive[(size_t)cls.front()]);
    } else if (!bundle.cm_types.empty()) {
        reps = bundle.cm_types;
    } else {
        throw Error(ErrorCode::SchemaError,
                    "bundle supplies neither Galois generators nor "
                    "explicit CM types");
    }

    std::vector<Task> tasks;
    std::vector<Json> classes_without_candidates;
    for (size_t k = 0; k < reps.size(); ++k) {
        auto cands = select_polarizations(bundle, reps[k], E, ctx);
        if (cands.empty()) {
            Json e;
            e["provenance"] = Json{{"bundle", bundle.name},
                                   {"cm_type_class", (int)k},
                                   {"cm_type", cm_type_json(reps[k])}};
            e["status"] = "error";
            e["error"] =
                Json{{"module", "polarization"},
                     {"code", error_code_name(ErrorCode::NotPrincipal)},
                     {"detail", "no unit representative yields a "
                                "principal polarization for this type"}};
            classes_without_candidates.push_back(std::move(e));
            continue;
        }
        for (size_t j = 0; j < cands.size(); ++j)
            tasks.push_back(Task{(int)k, (int)j, reps[k], cands[j]});
    }

    // Bounded worker pool over candidates; the report below is assembled
    // single-threaded in task order, so scheduling never changes output.
    std::vector<EntryResult> results(tasks.size());
    size_t workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, std::max<size_t>(tasks.size(), 1));
    if (workers <= 1) {
        for (size_t i = 0; i < tasks.size(); ++i)
            results[i] = process_candidate(tasks[i], bundle, E, cfg,
                                           vanish_exp);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < tasks.size();
                     i = next.fetch_add(1))
                    results[i] = process_candidate(tasks[i], bundle, E,
                                                   cfg, vanish_exp);
            });
        for (auto& t : pool) t.join();
    }

    RunReport report;
    Json& doc = report.doc;
    doc["schema_version"] = kSchemaVersion;
    doc["software"] = kSoftwareVersion;
    doc["bundle"] = bundle.name;
    doc["bundle_path"] = bundle_path;
    doc["config"] =
        Json{{"bits", cfg.bits},
             {"b0", cfg.b0},
             {"bmax", cfg.bmax},
             {"vanish_exp", vanish_exp},
             {"maxdeg", cfg.maxdeg},
             {"verify", cfg.verify},
             {"dump_theta", cfg.dump_theta},
             {"gamma_action", cfg.use_gamma_star ? "gamma_star" : "gamma"},
             {"gamma_table", cfg.gamma_table_path.empty()
                                 ? "built-in"
                                 : cfg.gamma_table_path}};
    doc["cm_type_classes"] = (int)reps.size();
    Json entries = Json::array();
    for (auto& e : classes_without_candidates) {
        ++report.module_errors;
        entries.push_back(std::move(e));
    }
    for (auto& r : results) {
        if (r.errored) ++report.module_errors;
        entries.push_back(std::move(r.entry));
    }
    doc["entries"] = std::move(entries);
    doc["module_errors"] = report.module_errors;
    auto t1 = std::chrono::steady_clock::now();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f",
                  std::chrono::duration<double>(t1 - t0).count());
    doc["elapsed_seconds"] = buf;
    return report;
}

}  // namespace cm3
