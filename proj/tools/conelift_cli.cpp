// conelift command-line tool: certificate generation and verification, chain
// lengths, membership oracles, lift validation/factorization, SDD
// decomposition, audits, and Ramsey-based factor bounds. JSON in, JSON out.

#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "conelift/json_io.hpp"

using namespace conelift;

namespace {

// exit codes: 0 ok/pass/consistent, 1 error, 2 refuted/failed, 3 inconclusive
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitRefuted = 2;
constexpr int kExitInconclusive = 3;

struct GlobalOpts {
    double tol = 1e-9;
    std::uint64_t seed = 0x5eed5eedULL;
    bool tol_given = false;
    bool seed_given = false;
    std::string config_path;
    std::string out_path;
};

Config make_config(const GlobalOpts& g) {
    Config cfg;
    if (!g.config_path.empty()) {
        json j = load_json_file(g.config_path);
        cfg.tol = j.value("tol", cfg.tol);
        cfg.face_tol = j.value("face_tol", cfg.face_tol);
        cfg.cluster_factor = j.value("cluster_factor", cfg.cluster_factor);
        cfg.strict_slack = j.value("strict_slack", cfg.strict_slack);
        cfg.jacobi_sweep_cap = j.value("jacobi_sweep_cap", cfg.jacobi_sweep_cap);
        cfg.simplex_iter_cap = j.value("simplex_iter_cap", cfg.simplex_iter_cap);
        cfg.dykstra_iter_cap = j.value("dykstra_iter_cap", cfg.dykstra_iter_cap);
        cfg.dykstra_tol = j.value("dykstra_tol", cfg.dykstra_tol);
        cfg.hyp_samples = j.value("hyp_samples", cfg.hyp_samples);
        cfg.seed = j.value("seed", cfg.seed);
        cfg.ramsey_loop_cap = j.value("ramsey_loop_cap", cfg.ramsey_loop_cap);
        cfg.ramsey_bit_cap = j.value("ramsey_bit_cap", cfg.ramsey_bit_cap);
        cfg.brute_node_budget = j.value("brute_node_budget", cfg.brute_node_budget);
    }
    // explicit command-line flags beat the config file
    if (g.tol_given) cfg.tol = g.tol;
    if (g.seed_given) cfg.seed = g.seed;
    return cfg;
}

void emit(const GlobalOpts& g, const json& j) {
    if (g.out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        save_json_file(g.out_path, j);
}

std::vector<Vec> vec_list_from_json(const json& j) {
    std::vector<Vec> out;
    for (const auto& row : j) out.push_back(vec_from_json(row));
    return out;
}

std::vector<PrimalSample> primal_samples_from_json(const json& j) {
    std::vector<PrimalSample> out;
    for (const auto& s : j)
        out.push_back({vec_from_json(s.at("x")), vec_from_json(s.at("preimage"))});
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cone face-lattice, neighborliness, lift and obstruction toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    auto* tol_opt = app.add_option("--tol", g.tol, "base tolerance (default 1e-9)");
    auto* seed_opt = app.add_option("--seed", g.seed, "RNG seed recorded in outputs");
    app.add_option("--config", g.config_path, "JSON config overriding defaults");
    app.add_option("--out", g.out_path, "write JSON output to this path instead of stdout");

    // certify
    auto* certify = app.add_subcommand("certify", "generate a self-verified neighborliness bundle");
    int c_k = 2, c_N = 10;
    std::string c_family = "psd-moment";
    certify->add_option("--k", c_k, "neighborliness order")->required();
    certify->add_option("--family", c_family, "psd-moment | point-eval")->required();
    certify->add_option("--N", c_N, "number of labeled rays (<= 50)")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "verify a certificate bundle");
    std::string v_in;
    verify->add_option("--in", v_in, "bundle JSON")->required();

    // chain
    auto* chain = app.add_subcommand("chain", "chain length of a cone, with optional witness");
    std::string ch_in;
    bool ch_witness = false;
    chain->add_option("--in", ch_in, "ConeDesc JSON")->required();
    chain->add_flag("--witness", ch_witness, "also emit a maximal witness chain when exact");

    // member
    auto* member_cmd = app.add_subcommand("member", "membership oracles");
    std::string m_cone, m_x;
    bool m_dual = false, m_relint = false;
    member_cmd->add_option("--cone", m_cone, "ConeDesc JSON")->required();
    member_cmd->add_option("--x", m_x, "point JSON (array)")->required();
    member_cmd->add_flag("--dual", m_dual, "test dual membership");
    member_cmd->add_flag("--relint", m_relint, "test relative-interior membership");

    // face
    auto* face_cmd = app.add_subcommand("face", "minimal face of a point");
    std::string f_cone, f_x;
    face_cmd->add_option("--cone", f_cone, "ConeDesc JSON")->required();
    face_cmd->add_option("--x", f_x, "point JSON (array)")->required();

    // select
    auto* select_cmd = app.add_subcommand("select", "chain-bounded subset selection");
    std::string s_cone, s_points;
    select_cmd->add_option("--cone", s_cone, "ConeDesc JSON")->required();
    select_cmd->add_option("--points", s_points, "JSON array of points")->required();

    // hyp-check
    auto* hc = app.add_subcommand("hyp-check", "probabilistic hyperbolicity evidence");
    std::string hc_p, hc_e;
    int hc_samples = 200;
    hc->add_option("--p", hc_p, "MultiPoly JSON")->required();
    hc->add_option("--e", hc_e, "direction JSON (array)")->required();
    hc->add_option("--samples", hc_samples, "random directions (default 200)");

    // hyp-eig
    auto* he = app.add_subcommand("hyp-eig", "hyperbolic eigenvalues of a point");
    std::string he_p, he_e, he_x;
    he->add_option("--p", he_p, "MultiPoly JSON")->required();
    he->add_option("--e", he_e, "direction JSON (array)")->required();
    he->add_option("--x", he_x, "point JSON (array)")->required();

    // lift-validate
    auto* lv = app.add_subcommand("lift-validate", "sample-based lift validation");
    std::string lv_lift, lv_primal, lv_dual;
    lv->add_option("--lift", lv_lift, "LiftDesc JSON")->required();
    lv->add_option("--primal", lv_primal, "[{x, preimage}] JSON")->required();
    lv->add_option("--dual", lv_dual, "JSON array of dual points")->required();

    // lift-factorize
    auto* lf = app.add_subcommand("lift-factorize", "factorization tables of a proper lift");
    std::string lf_lift, lf_primal, lf_dual;
    lf->add_option("--lift", lf_lift, "LiftDesc JSON")->required();
    lf->add_option("--primal", lf_primal, "[{x, preimage}] JSON")->required();
    lf->add_option("--dual", lf_dual, "JSON array of dual points")->required();

    // sdd
    auto* sdd = app.add_subcommand("sdd", "scaled-diagonally-dominant decomposition / demo lift");
    std::string sdd_in;
    int sdd_demo = 0;
    bool sdd_emit_preimage = false;
    sdd->add_option("--in", sdd_in, "symmetric matrix JSON");
    sdd->add_option("--demo-lift", sdd_demo, "emit the (S+^2)^m demo lift of this order");
    sdd->add_flag("--preimage", sdd_emit_preimage,
                  "emit an {x, preimage} sample for the demo lift instead of raw blocks");

    // audit
    auto* audit_cmd = app.add_subcommand("audit", "audit a certificate + factorization bundle");
    std::string a_in;
    bool a_demo = false;
    audit_cmd->add_option("--in", a_in, "audit bundle JSON");
    audit_cmd->add_flag("--demo", a_demo, "audit the built-in pigeonhole bundle");

    // bound
    auto* bound_cmd = app.add_subcommand("bound", "factor-count lower bound from neighborliness");
    int b_k = 1;
    std::uint64_t b_N = 10;
    bound_cmd->add_option("--k", b_k, "neighborliness order")->required();
    bound_cmd->add_option("--N", b_N, "certificate family size |V|")->required();

    // ramsey
    auto* ramsey_cmd = app.add_subcommand("ramsey", "Ramsey upper bound / brute oracle");
    int r_k = 1, r_m = 3, r_size = 0;
    std::uint64_t r_n = 2;
    bool r_brute = false;
    ramsey_cmd->add_option("--k", r_k, "uniformity")->required();
    ramsey_cmd->add_option("--m", r_m, "monochromatic target size")->required();
    ramsey_cmd->add_option("--n", r_n, "color count")->required();
    ramsey_cmd->add_flag("--brute", r_brute, "run the exhaustive oracle instead");
    ramsey_cmd->add_option("--size", r_size, "ground-set size for --brute");

    CLI11_PARSE(app, argc, argv);

    try {
        g.tol_given = tol_opt->count() > 0;
        g.seed_given = seed_opt->count() > 0;
        Config cfg = make_config(g);

        if (*certify) {
            CertFamily fam = family_from_name(c_family);
            NeighborlinessCertificate cert;
            if (fam == CertFamily::PsdMoment)
                cert = make_moment_bundle(c_k, c_N);
            else if (fam == CertFamily::PointEval)
                cert = make_pointeval_bundle(c_k, c_N);
            else
                throw InvalidInput("certify: family must be psd-moment or point-eval");
            VerifyReport rep = verify_neighborly(cert, cfg.tol, cfg);
            json j = certificate_to_json(cert);
            j["verified"] = verify_report_to_json(rep);
            j["seed"] = cfg.seed;
            emit(g, j);
            return rep.pass ? kExitOk : kExitRefuted;
        }
        if (*verify) {
            NeighborlinessCertificate cert = certificate_from_json(load_json_file(v_in));
            VerifyReport rep = verify_neighborly(cert, cfg.tol, cfg);
            emit(g, verify_report_to_json(rep));
            return rep.pass ? kExitOk : kExitRefuted;
        }
        if (*chain) {
            ConeDesc K = cone_from_json(load_json_file(ch_in));
            ChainLength c = chain_length(K, cfg);
            std::cout << (c.exact ? "" : "<= ") << c.value << (c.exact ? " (exact)" : " (bound)")
                      << "\n";
            json j{{"schema_version", kSchemaVersion}, {"value", c.value}, {"exact", c.exact}};
            if (ch_witness && c.exact) {
                json wit = json::array();
                for (const FaceDesc& f : chain_witness(K, c.value, cfg))
                    wit.push_back(face_to_json(K, f, cfg));
                j["witness"] = wit;
            }
            if (!g.out_path.empty()) save_json_file(g.out_path, j);
            return kExitOk;
        }
        if (*member_cmd) {
            ConeDesc K = cone_from_json(load_json_file(m_cone));
            Vec x = vec_from_json(load_json_file(m_x));
            bool res = m_dual ? dual_member(K, x, cfg.tol, cfg)
                              : (m_relint ? relint_member(K, x, cfg.tol, cfg)
                                          : member(K, x, cfg.tol, cfg));
            json j{{"schema_version", kSchemaVersion},
                   {"query", m_dual ? "dual" : (m_relint ? "relint" : "member")},
                   {"result", res}};
            emit(g, j);
            return kExitOk;
        }
        if (*face_cmd) {
            ConeDesc K = cone_from_json(load_json_file(f_cone));
            Vec x = vec_from_json(load_json_file(f_x));
            FaceDesc f = minimal_face(K, x, cfg);
            json j = face_to_json(K, f, cfg);
            j["chain_length"] = face_chain_length(K, f, cfg);
            emit(g, j);
            return kExitOk;
        }
        if (*select_cmd) {
            ConeDesc K = cone_from_json(load_json_file(s_cone));
            std::vector<Vec> pts = vec_list_from_json(load_json_file(s_points));
            auto I = subset_select(K, pts, cfg);
            json sel = json::array();
            for (std::size_t i : I) sel.push_back(i + 1);  // 1-based labels
            emit(g, json{{"schema_version", kSchemaVersion}, {"selected", sel}});
            return kExitOk;
        }
        if (*hc) {
            MultiPoly p = multipoly_from_json(load_json_file(hc_p));
            Vec e = vec_from_json(load_json_file(hc_e));
            auto res = hyperbolicity_check(p, e, hc_samples, cfg.seed, cfg.tol, cfg);
            json j{{"schema_version", kSchemaVersion},
                   {"pass", res.pass},
                   {"samples", hc_samples},
                   {"seed", res.seed},
                   {"worst_residual", res.worst_residual}};
            if (!res.pass) j["witness"] = vec_to_json(res.witness);
            emit(g, j);
            return res.pass ? kExitOk : kExitRefuted;
        }
        if (*he) {
            MultiPoly p = multipoly_from_json(load_json_file(he_p));
            Vec e = vec_from_json(load_json_file(he_e));
            Vec x = vec_from_json(load_json_file(he_x));
            HyperbolicSpectrum s = hyp_eigenvalues(p, e, x, cfg.tol, cfg);
            emit(g, json{{"schema_version", kSchemaVersion},
                         {"eigenvalues", s.eigenvalues},
                         {"rank", s.rank},
                         {"rank_ambiguous", s.rank_ambiguous}});
            return kExitOk;
        }
        if (*lv) {
            LiftDesc lift = lift_from_json(load_json_file(lv_lift));
            auto primal = primal_samples_from_json(load_json_file(lv_primal));
            auto duals = vec_list_from_json(load_json_file(lv_dual));
            LiftValidation rep = validate_lift(lift, primal, duals, cfg.tol, cfg);
            json j{{"schema_version", kSchemaVersion},
                   {"primal_ok", rep.primal_ok},
                   {"dual_ok", rep.dual_ok},
                   {"max_primal_residual", rep.max_primal_residual},
                   {"worst_dual_value", rep.worst_dual_value},
                   {"failures", rep.failures},
                   {"seed", cfg.seed}};
            emit(g, j);
            return (rep.primal_ok && rep.dual_ok) ? kExitOk : kExitRefuted;
        }
        if (*lf) {
            LiftDesc lift = lift_from_json(load_json_file(lf_lift));
            auto primal = primal_samples_from_json(load_json_file(lf_primal));
            auto duals = vec_list_from_json(load_json_file(lf_dual));
            FactorizeOutcome out = factorize(lift, primal, duals, cfg.tol, cfg);
            json j = factorization_to_json(out.data);
            j["max_identity_residual"] = out.max_identity_residual;
            j["max_decomposition_residual"] = out.max_decomposition_residual;
            j["iterations"] = out.max_iterations;
            j["seed"] = cfg.seed;
            emit(g, j);
            return kExitOk;
        }
        if (*sdd) {
            if (sdd_demo > 0) {
                emit(g, lift_to_json(sdd_demo_lift(sdd_demo)));
                return kExitOk;
            }
            if (sdd_in.empty()) throw InvalidInput("sdd: provide --in or --demo-lift");
            SymMatrix X = sym_from_json(load_json_file(sdd_in));
            SddResult res = sdd_decompose(X, cfg.tol, cfg);
            if (sdd_emit_preimage) {
                if (!res.ok) throw InvalidInput("sdd: " + res.reason);
                emit(g, json{{"x", vec_to_json(X.full_vec())},
                             {"preimage", vec_to_json(sdd_preimage(X.order(), res.blocks))}});
                return kExitOk;
            }
            json blocks = json::array();
            for (const SddBlock& b : res.blocks)
                blocks.push_back({{"i", b.i + 1},
                                  {"j", b.j + 1},
                                  {"block", {{b.a, b.b}, {b.b, b.c}}}});
            emit(g, json{{"schema_version", kSchemaVersion},
                         {"ok", res.ok},
                         {"reason", res.reason},
                         {"blocks", blocks}});
            return res.ok ? kExitOk : kExitRefuted;
        }
        if (*audit_cmd) {
            AuditBundle bundle;
            if (a_demo)
                bundle = make_pigeonhole_bundle(cfg.seed);
            else if (!a_in.empty())
                bundle = audit_bundle_from_json(load_json_file(a_in));
            else
                throw InvalidInput("audit: provide --in or --demo");
            AuditVerdict v = audit(bundle.cert, bundle.fd, cfg.tol, cfg);
            json j = audit_verdict_to_json(v);
            j["seed"] = cfg.seed;
            emit(g, j);
            switch (v.kind) {
                case AuditVerdict::Kind::Consistent: return kExitOk;
                case AuditVerdict::Kind::Refuted: return kExitRefuted;
                case AuditVerdict::Kind::Inconclusive: return kExitInconclusive;
            }
        }
        if (*bound_cmd) {
            std::uint64_t m = min_factors_bound(b_k, b_N, cfg);
            std::cout << m << "\n";
            if (!g.out_path.empty())
                save_json_file(g.out_path, json{{"schema_version", kSchemaVersion},
                                                {"k", b_k},
                                                {"N", b_N},
                                                {"min_factors", m}});
            return kExitOk;
        }
        if (*ramsey_cmd) {
            if (r_brute) {
                if (r_size <= 0) throw InvalidInput("ramsey --brute: provide --size");
                BruteResult res = ramsey_brute(r_k, r_m, static_cast<int>(r_n), r_size, cfg);
                bool forced = res.outcome == BruteResult::Outcome::Forced;
                std::cout << (forced ? "forced" : "counterexample") << "\n";
                json j{{"schema_version", kSchemaVersion},
                       {"outcome", forced ? "forced" : "counterexample"},
                       {"nodes_explored", res.nodes_explored}};
                if (!forced) j["coloring"] = res.coloring;
                if (!g.out_path.empty()) save_json_file(g.out_path, j);
                return kExitOk;
            }
            BigUint r = ramsey_upper(r_k, r_m, r_n, cfg);
            std::cout << r.to_decimal() << "\n";
            if (!g.out_path.empty())
                save_json_file(g.out_path, json{{"schema_version", kSchemaVersion},
                                                {"value", r.to_decimal()}});
            return kExitOk;
        }
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
