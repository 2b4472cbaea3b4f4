// qe: certified evaluation of Weierstrass/Serre functions, identity
// verification suites, bounded dependence detection, Liouville certificates
// and auxiliary bound calculators. JSON on stdout, human summary on stderr.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qe/bounds.hpp"
#include "qe/dependence.hpp"
#include "qe/json_io.hpp"
#include "qe/lattice.hpp"
#include "qe/liouville.hpp"
#include "qe/riemann.hpp"
#include "qe/serre.hpp"
#include "qe/suites.hpp"
#include "qe/vandermonde.hpp"
#include "qe/weierstrass.hpp"

using nlohmann::json;

namespace {

mpfr_prec_t default_prec() {
    if (const char *env = std::getenv("QE_DEFAULT_PREC")) {
        long p = std::atol(env);
        if (p >= 16 && p <= 1 << 20) return static_cast<mpfr_prec_t>(p);
    }
    return 128;
}

json ball_json(const qe::BallComplex &z, mpfr_prec_t prec) {
    return json{{"mid", qe::complex_mid_string(z)}, {"rad", qe::ball_rad_string(z)}, {"prec", prec}};
}

json ball_json(const qe::BallReal &x, mpfr_prec_t prec) {
    return json{{"mid", x.mid().to_string()}, {"rad", qe::ball_rad_string(x)}, {"prec", prec}};
}

struct LatticeArgs {
    std::string preset = "square";
    std::string omega1, omega2;
    std::string spec_file;

    void attach(CLI::App *cmd) {
        cmd->add_option("--preset", preset, "lattice preset (square, hexagonal, rectangular-2)");
        cmd->add_option("--omega1", omega1, "first period, complex literal");
        cmd->add_option("--omega2", omega2, "second period, complex literal");
        cmd->add_option("--lattice", spec_file, "JSON file with {\"omega1\":..,\"omega2\":..} or {\"preset\":..}");
    }

    qe::Lattice build(mpfr_prec_t prec) const {
        std::string p1 = omega1, p2 = omega2, pre = preset;
        if (!spec_file.empty()) {
            std::ifstream in(spec_file);
            if (!in) throw qe::ParseError("cannot open lattice spec: " + spec_file);
            json spec = json::parse(in);
            if (spec.contains("preset")) pre = spec["preset"].get<std::string>();
            if (spec.contains("omega1")) p1 = spec["omega1"].get<std::string>();
            if (spec.contains("omega2")) p2 = spec["omega2"].get<std::string>();
        }
        if (!p1.empty() || !p2.empty()) {
            if (p1.empty() || p2.empty()) throw qe::ParseError("both --omega1 and --omega2 are required");
            return qe::Lattice::make(qe::parse_complex(p1, prec + 32), qe::parse_complex(p2, prec + 32), prec);
        }
        return qe::Lattice::preset(pre, prec);
    }
};

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::stringstream ss(s);
    while (std::getline(ss, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

const char *verdict_str(qe::Verdict v) { return qe::to_string(v); }

json verdict_json(const qe::RelationVerdict &v) {
    json j;
    j["kind"] = v.kind == qe::RelationKind::Dependent ? "Dependent" : "NoRelationUpTo";
    j["relation"] = v.relation;
    j["certainty"] = v.certainty == qe::Certainty::Exact ? "Exact" : "Heuristic";
    j["bound"] = v.bound;
    j["prec"] = static_cast<long>(v.precision_bits);
    j["residual"] = ball_json(v.residual, v.precision_bits);
    return j;
}

json chain_json(const qe::ChainRecord &rec) {
    json j;
    j["k"] = rec.k;
    j["qk"] = rec.qk.to_string();
    json pks = json::array();
    for (const auto &p : rec.pk) pks.push_back(p.get_str());
    j["pk"] = pks;
    json dists = json::array();
    for (const auto &d : rec.distances) {
        dists.push_back(json{{"log_lo", d.log_lo.mid().to_string(20)},
                             {"log_hi", d.log_hi.mid().to_string(20)},
                             {"nearest_integer_certified", verdict_str(d.is_nearest)},
                             {"sandwich", verdict_str(d.sandwich)}});
    }
    j["distances"] = dists;
    json ineqs = json::array();
    for (const auto &iq : rec.inequalities) {
        ineqs.push_back(json{{"lhs", iq.lhs},
                             {"rhs", iq.rhs},
                             {"verdict", verdict_str(iq.verdict)},
                             {"log_margin", iq.log_margin.mid().to_string(20)}});
    }
    j["inequalities"] = ineqs;
    j["overall"] = verdict_str(rec.overall);
    return j;
}

json certificate_json(const qe::LiouvilleCertificate &cert) {
    json j;
    j["n"] = cert.n;
    j["depth"] = cert.depth;
    j["signs"] = cert.signs_row_major;
    json recs = json::array();
    for (const auto &r : cert.records) recs.push_back(chain_json(r));
    j["records"] = recs;
    j["all_pass"] = cert.all_pass;
    return j;
}

void write_atomic(const std::string &path, const std::string &content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw qe::InvalidInput("cannot write " + tmp);
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw qe::InvalidInput("cannot rename to " + path);
}

struct Emitter {
    std::string command;
    mpfr_prec_t prec;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    std::string out_file;
    bool json_only = false;

    int emit(const std::string &status, const json &payload, const std::string &summary) {
        json doc;
        doc["command"] = command;
        doc["status"] = status;
        doc["precision_bits"] = static_cast<long>(prec);
        doc["timing_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        doc["payload"] = payload;
        std::string text = doc.dump(2) + "\n";
        if (!out_file.empty()) write_atomic(out_file, text);
        else std::fputs(text.c_str(), stdout);
        if (!summary.empty() && !json_only) std::fprintf(stderr, "%s\n", summary.c_str());
        return status == "ok" ? 0 : 1;
    }
};

std::vector<std::vector<int>> parse_signs(const std::string &spec, int n, int depth, std::uint64_t seed) {
    std::vector<std::vector<int>> signs(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(depth), 1));
    if (spec == "random") {
        qe::Rng rng(seed);
        for (auto &row : signs)
            for (auto &s : row) s = rng.sign();
        return signs;
    }
    std::string flat;
    for (char c : spec)
        if (c == '+' || c == '-') flat += c;
    if (flat.size() == static_cast<std::size_t>(depth) && n > 1) {
        // one row given: replicate across components
        for (auto &row : signs)
            for (int l = 0; l < depth; ++l) row[static_cast<std::size_t>(l)] = flat[static_cast<std::size_t>(l)] == '+' ? 1 : -1;
        return signs;
    }
    if (flat.size() != static_cast<std::size_t>(n * depth))
        throw qe::ParseError("sign string must have n*depth entries (row-major) or equal depth");
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < depth; ++l)
            signs[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] =
                flat[static_cast<std::size_t>(i * depth + l)] == '+' ? 1 : -1;
    return signs;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"certified Weierstrass/Serre evaluation and verification"};
    app.require_subcommand(1);
    app.fallthrough(); // allow global flags after the subcommand

    mpfr_prec_t prec = default_prec();
    std::uint64_t seed = 1;
    std::string out_file;
    bool json_only = false;
    app.add_option("--prec", prec, "working precision in bits")->capture_default_str();
    app.add_option("--seed", seed, "seed for randomized suites")->capture_default_str();
    app.add_option("--out", out_file, "write the JSON result atomically to this file");
    app.add_flag("--json", json_only, "suppress the human-readable summary stream");

    // --- eval ---------------------------------------------------------------
    auto *eval = app.add_subcommand("eval", "evaluate sigma/zeta/wp/wp'/serre at a point");
    std::string fn = "wp", z_str, u_str;
    LatticeArgs eval_lat;
    eval->add_option("--fn", fn, "wp | wp_prime | zeta | sigma | serre")->required();
    eval->add_option("--z", z_str, "evaluation point, complex literal")->required();
    eval->add_option("--u", u_str, "Serre parameter (fn = serre)");
    eval_lat.attach(eval);

    // --- verify --------------------------------------------------------------
    auto *verify = app.add_subcommand("verify", "run a residual verification suite");
    std::string suite = "all";
    long trials = 20;
    LatticeArgs verify_lat;
    verify->add_option("--suite", suite, "legendre | periodicity | sigma-monodromy | ode | lambda | torsion | vandermonde | all");
    verify->add_option("--trials", trials, "trial count")->capture_default_str();
    verify_lat.attach(verify);

    // --- liouville -----------------------------------------------------------
    auto *liou = app.add_subcommand("liouville", "Strong-Schanuel tuple certificates");
    auto *liou_gen = liou->add_subcommand("gen", "build a tuple and certify its chain");
    int ln = 1, ldepth = 3, lkmax = 2;
    std::string lsigns = "+";
    liou_gen->add_option("--n", ln, "tuple size")->capture_default_str();
    liou_gen->add_option("--signs", lsigns, "row-major +- string, one row, or 'random'")->capture_default_str();
    liou_gen->add_option("--depth", ldepth, "sign depth (>= kmax+1)")->capture_default_str();
    liou_gen->add_option("--kmax", lkmax, "verify chain at k = 1..kmax (kmax <= 2)")->capture_default_str();
    auto *liou_verify = liou->add_subcommand("verify", "re-verify a certificate file");
    std::string liou_in;
    liou_verify->add_option("--in", liou_in, "certificate JSON")->required();

    // --- deps ----------------------------------------------------------------
    auto *deps = app.add_subcommand("deps", "bounded dependence detectors");
    auto *deps_mult = deps->add_subcommand("mult", "multiplicative relation among values");
    std::string dvals, dstrategy = "auto";
    long dbound = 3;
    deps_mult->add_option("--values", dvals, "comma-separated rationals or complex literals")->required();
    deps_mult->add_option("--bound", dbound, "max |h_i|")->capture_default_str();
    deps_mult->add_option("--strategy", dstrategy, "auto | exhaustive | lll")->capture_default_str();
    auto *deps_two = deps->add_subcommand("two", "simultaneous relation for (v_i, w_i) pairs");
    std::string dpairs;
    deps_two->add_option("--pairs", dpairs, "semicolon-separated pairs 'v,w'")->required();
    deps_two->add_option("--bound", dbound, "max |h_i|");
    deps_two->add_option("--strategy", dstrategy, "auto | exhaustive | lll");
    auto *deps_iv = deps->add_subcommand("iv", "Q-linear dependence of the C^2 vectors");
    std::string dts, dus;
    long dH = 4;
    LatticeArgs deps_lat;
    deps_iv->add_option("--t", dts, "comma-separated exponents t_i (complex literals)");
    deps_iv->add_option("--u", dus, "semicolon-separated Serre parameters");
    deps_iv->add_option("--bound", dH, "max |h|")->capture_default_str();
    deps_lat.attach(deps_iv);
    auto *deps_cm = deps->add_subcommand("cm", "CM-extended dependence check");
    deps_cm->add_option("--t", dts, "comma-separated exponents t_i");
    deps_cm->add_option("--u", dus, "semicolon-separated Serre parameters");
    deps_cm->add_option("--bound", dH, "max |h|");
    deps_lat.attach(deps_cm);
    auto *deps_zeta = deps->add_subcommand("zeta-relation", "a_i zeta(u_i) = eta(sum a_i u_i) check");
    std::string dcoeffs;
    deps_zeta->add_option("--a", dcoeffs, "comma-separated integers")->required();
    deps_zeta->add_option("--u", dus, "semicolon-separated Serre parameters")->required();
    deps_lat.attach(deps_zeta);

    // --- bounds ----------------------------------------------------------------
    auto *bounds = app.add_subcommand("bounds", "auxiliary quantitative lemmas");
    auto *b_feldman = bounds->add_subcommand("feldman", "root-distance bound check");
    std::string bpoly, btheta;
    b_feldman->add_option("--poly", bpoly, "integer coefficients, ascending degree")->required();
    b_feldman->add_option("--theta", btheta, "complex literal")->required();
    auto *b_baker = bounds->add_subcommand("baker", "one-logarithm lower bound check");
    std::string balpha, bbeta;
    int bD = 1;
    b_baker->add_option("--alpha", balpha, "nonzero rational")->required();
    b_baker->add_option("--beta", bbeta, "nonzero rational")->required();
    b_baker->add_option("--degree", bD, "field degree D")->capture_default_str();
    auto *b_height = bounds->add_subcommand("height", "absolute logarithmic height of p/q");
    std::string bp = "1", bq = "1";
    b_height->add_option("--p", bp)->required();
    b_height->add_option("--q", bq)->required();

    // --- riemann ----------------------------------------------------------------
    auto *riemann = app.add_subcommand("riemann", "Dirichlet-series zeta in Re(s) >= 2");
    auto *r_eval = riemann->add_subcommand("eval", "evaluate zeta_R(s)");
    std::string rs;
    r_eval->add_option("--s", rs, "complex literal with Re(s) >= 2")->required();
    auto *r_check = riemann->add_subcommand("check", "certify |zeta_R(s) - 1| < 2^(1-sigma)");
    r_check->add_option("--s", rs, "complex literal with Re(s) >= 3")->required();

    // --- vdm ----------------------------------------------------------------
    auto *vdm = app.add_subcommand("vdm", "confluent Vandermonde determinants");
    auto *v_det = vdm->add_subcommand("det", "closed form vs direct elimination");
    std::string vblocks, vshift = "0";
    v_det->add_option("--blocks", vblocks, "block syntax: w=<complex>:t=<int>,...")->required();
    v_det->add_option("--shift", vshift, "shift A in r_t(T) = (A+T)^t")->capture_default_str();
    auto *v_k = vdm->add_subcommand("k", "superfactorial k(t)");
    long vt = 0;
    v_k->add_option("--t", vt)->required();
    auto *v_xi = vdm->add_subcommand("xi", "lower bound check for xi_a");
    std::string vw, vq, vA = "0";
    int vT = 1;
    v_xi->add_option("--w", vw, "comma-separated nonzero nodes")->required();
    v_xi->add_option("--coeffs", vq, "rows t=0..T separated by ';', entries by ','")->required();
    v_xi->add_option("--T", vT)->required();
    v_xi->add_option("--A", vA)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Emitter em;
    em.prec = prec;
    em.out_file = out_file;
    em.json_only = json_only;
    for (int i = 1; i < argc; ++i) em.command += std::string(i > 1 ? " " : "") + argv[i];

    try {
        if (*eval) {
            qe::Lattice lat = eval_lat.build(prec);
            qe::WeierstrassContext ctx(lat);
            qe::BallComplex z = qe::parse_complex(z_str, prec + 32);
            qe::BallComplex value(prec);
            if (fn == "wp") value = ctx.wp(z);
            else if (fn == "wp_prime") value = ctx.wp_prime(z);
            else if (fn == "zeta") value = ctx.zeta(z);
            else if (fn == "sigma") value = ctx.sigma(z);
            else if (fn == "serre") {
                if (u_str.empty()) throw qe::ParseError("--u required for fn=serre");
                qe::SerrePoint sp(ctx, qe::parse_complex(u_str, prec + 32));
                value = qe::serre_f(ctx, sp, z);
            } else throw qe::ParseError("unknown function: " + fn);
            return em.emit("ok", json{{"value", ball_json(value, prec)}}, fn + "(" + z_str + ") = " + value.to_string());
        }

        if (*verify) {
            qe::SuiteOptions opt;
            opt.preset = verify_lat.preset;
            if (!verify_lat.omega1.empty())
                opt.omegas = {qe::parse_complex(verify_lat.omega1, prec + 32),
                              qe::parse_complex(verify_lat.omega2, prec + 32)};
            opt.trials = trials;
            opt.prec = prec;
            opt.seed = seed;
            qe::SuiteResult res = qe::run_suite(suite, opt);
            json checks = json::array();
            for (const auto &c : res.checks)
                checks.push_back(json{{"name", c.name}, {"verdict", verdict_str(c.verdict)}, {"residual", c.residual}});
            json payload{{"suite", res.suite}, {"ok", res.ok}, {"checks", checks}};
            std::string summary = "suite " + suite + ": " + (res.ok ? "ok" : "FAIL") + " (" +
                                  std::to_string(res.checks.size()) + " checks)";
            return em.emit(res.ok ? "ok" : "fail", payload, summary);
        }

        if (*liou_gen) {
            if (lkmax > 2) {
                em.emit("fail", json{{"error", "kmax must be <= 2"}}, "depth exceeded");
                return 3;
            }
            if (ldepth < lkmax + 1) ldepth = lkmax + 1;
            auto signs = parse_signs(lsigns, ln, ldepth, seed);
            qe::LiouvilleTuple tuple = qe::build_tuple(ln, signs, ldepth);
            qe::LiouvilleCertificate cert = qe::make_certificate(tuple, lkmax, prec);
            return em.emit(cert.all_pass ? "ok" : "fail", certificate_json(cert),
                           std::string("liouville chain: ") + (cert.all_pass ? "all pass" : "FAIL"));
        }

        if (*liou_verify) {
            std::ifstream in(liou_in);
            if (!in) throw qe::ParseError("cannot open " + liou_in);
            json file = json::parse(in);
            json doc = file.contains("payload") ? file["payload"] : file;
            int n = doc.at("n").get<int>();
            int depth = doc.at("depth").get<int>();
            std::string signs_str = doc.at("signs").get<std::string>();
            auto signs = parse_signs(signs_str, n, depth, seed);
            qe::LiouvilleTuple tuple = qe::build_tuple(n, signs, depth);
            int kmax = static_cast<int>(doc.at("records").size());
            qe::LiouvilleCertificate cert = qe::make_certificate(tuple, kmax, prec);
            json fresh = certificate_json(cert);
            bool match = cert.all_pass;
            std::string why = cert.all_pass ? "" : "recomputed chain does not pass";
            // integrity: stored exact integers and verdicts must match
            for (std::size_t r = 0; match && r < fresh["records"].size(); ++r) {
                const json &stored = doc.at("records").at(r);
                const json &mine = fresh["records"][r];
                if (stored.at("pk") != mine.at("pk")) {
                    match = false;
                    why = "p_k mismatch";
                }
                if (match && stored.at("qk") != mine.at("qk")) {
                    match = false;
                    why = "q_k mismatch";
                }
                if (match && stored.at("overall") != mine.at("overall")) {
                    match = false;
                    why = "verdict mismatch";
                }
            }
            json payload{{"match", match}, {"recomputed", fresh}};
            if (!match) payload["reason"] = why;
            return em.emit(match ? "ok" : "fail", payload,
                           match ? "certificate verified" : ("certificate REJECTED: " + why));
        }

        if (*deps_mult || *deps_two) {
            qe::SearchStrategy strat = qe::SearchStrategy::Auto;
            if (dstrategy == "exhaustive") strat = qe::SearchStrategy::Exhaustive;
            else if (dstrategy == "lll") strat = qe::SearchStrategy::Reduction;
            else if (dstrategy != "auto") throw qe::ParseError("unknown strategy: " + dstrategy);
            qe::RelationVerdict v;
            if (*deps_mult) {
                auto toks = split(dvals, ',');
                bool exact = true;
                for (const auto &t : toks) exact = exact && qe::parse_rational(t).has_value();
                if (exact) {
                    std::vector<mpq_class> vals;
                    for (const auto &t : toks) vals.push_back(*qe::parse_rational(t));
                    v = qe::find_multiplicative_relation(vals, dbound, strat, prec);
                } else {
                    std::vector<qe::BallComplex> vals;
                    for (const auto &t : toks) vals.push_back(qe::parse_complex(t, prec));
                    v = qe::find_multiplicative_relation(vals, dbound, strat, prec);
                }
            } else {
                std::vector<std::pair<mpq_class, mpq_class>> exact_pairs;
                std::vector<std::pair<qe::BallComplex, qe::BallComplex>> ball_pairs;
                bool exact = true;
                auto pair_toks = split(dpairs, ';');
                for (const auto &pt : pair_toks) {
                    auto two = split(pt, ',');
                    if (two.size() != 2) throw qe::ParseError("pair must be 'v,w': " + pt);
                    exact = exact && qe::parse_rational(two[0]) && qe::parse_rational(two[1]);
                }
                if (exact) {
                    for (const auto &pt : pair_toks) {
                        auto two = split(pt, ',');
                        exact_pairs.emplace_back(*qe::parse_rational(two[0]), *qe::parse_rational(two[1]));
                    }
                    v = qe::find_relation_two_params(exact_pairs, dbound, strat, prec);
                } else {
                    for (const auto &pt : pair_toks) {
                        auto two = split(pt, ',');
                        ball_pairs.emplace_back(qe::parse_complex(two[0], prec), qe::parse_complex(two[1], prec));
                    }
                    v = qe::find_relation_two_params(ball_pairs, dbound, strat, prec);
                }
            }
            std::string summary = v.kind == qe::RelationKind::Dependent ? "Dependent" : "NoRelationUpTo";
            return em.emit("ok", verdict_json(v), summary);
        }

        if (*deps_iv || *deps_cm) {
            qe::Lattice lat = deps_lat.build(prec);
            qe::WeierstrassContext ctx(lat);
            std::vector<qe::BallComplex> ts;
            for (const auto &t : split(dts, ',')) ts.push_back(qe::parse_complex(t, prec + 32));
            std::vector<qe::SerrePoint> us;
            for (const auto &u : split(dus, ';')) us.emplace_back(ctx, qe::parse_complex(u, prec + 32));
            if (*deps_iv) {
                qe::RelationVerdict v = qe::check_condition_iv(lat, ts, us, dH, prec);
                return em.emit("ok", verdict_json(v),
                               v.kind == qe::RelationKind::Dependent ? "Dependent" : "NoRelationUpTo");
            }
            qe::CmRelationReport rep = qe::check_cm_condition(lat, ts, us, dH, prec);
            json payload = verdict_json(rep.verdict);
            payload["pairing_integers"] = rep.pairing_integers;
            return em.emit("ok", payload,
                           rep.verdict.kind == qe::RelationKind::Dependent ? "Dependent" : "NoRelationUpTo");
        }

        if (*deps_zeta) {
            qe::Lattice lat = deps_lat.build(prec);
            qe::WeierstrassContext ctx(lat);
            std::vector<long> as;
            for (const auto &t : split(dcoeffs, ',')) as.push_back(std::stol(t));
            std::vector<qe::SerrePoint> us;
            for (const auto &u : split(dus, ';')) us.emplace_back(ctx, qe::parse_complex(u, prec + 32));
            qe::ZetaRelationReport rep = qe::check_zeta_relation(ctx, as, us, seed, prec);
            json payload{{"in_lattice", rep.in_lattice},
                         {"zeta_equation", verdict_str(rep.zeta_equation)},
                         {"periodicity", verdict_str(rep.periodicity)},
                         {"holds", rep.holds}};
            if (rep.in_lattice) {
                payload["omega0"] = json{{"a", rep.omega0.a}, {"b", rep.omega0.b}};
                payload["equation_residual"] = ball_json(rep.equation_residual, prec);
            }
            return em.emit("ok", payload, rep.holds ? "relation holds" : "relation does not hold");
        }

        if (*b_feldman) {
            qe::IntPolynomial F = qe::IntPolynomial::parse(bpoly);
            qe::FeldmanReport rep = qe::feldman_check(F, qe::parse_complex(btheta, prec + 32), prec);
            json payload{{"nearest", qe::complex_mid_string(rep.nearest)},
                         {"multiplicity", rep.multiplicity},
                         {"lhs", ball_json(rep.lhs, prec)},
                         {"rhs", ball_json(rep.rhs, prec)},
                         {"verdict", verdict_str(rep.verdict)}};
            return em.emit(rep.verdict == qe::Verdict::Pass ? "ok" : "fail", payload,
                           std::string("feldman: ") + verdict_str(rep.verdict));
        }

        if (*b_baker) {
            auto a = qe::parse_rational(balpha), b = qe::parse_rational(bbeta);
            if (!a || !b) throw qe::ParseError("alpha and beta must be rationals");
            qe::BakerReport rep = qe::baker_lower_bound(*a, *b, bD, prec);
            json payload{{"log_A", ball_json(rep.log_A, prec)},
                         {"B", ball_json(rep.B, prec)},
                         {"log_bound", ball_json(rep.log_bound, prec)},
                         {"lhs", ball_json(rep.lhs, prec)},
                         {"verdict", verdict_str(rep.verdict)}};
            return em.emit(rep.verdict == qe::Verdict::Pass ? "ok" : "fail", payload,
                           std::string("baker: ") + verdict_str(rep.verdict));
        }

        if (*b_height) {
            qe::BallReal h = qe::log_height_rational(mpz_class(bp), mpz_class(bq), prec);
            return em.emit("ok", json{{"height", ball_json(h, prec)}}, "h = " + h.to_string());
        }

        if (*r_eval) {
            qe::ZetaDomainPoint s(qe::parse_complex(rs, prec + 32));
            qe::BallComplex z = qe::zeta_r(s, prec);
            return em.emit("ok", json{{"value", ball_json(z, prec)}}, "zeta_R = " + z.to_string());
        }

        if (*r_check) {
            qe::ZetaDomainPoint s(qe::parse_complex(rs, prec + 32));
            qe::ZetaTailReport rep = qe::tail_inequality_check(s, prec);
            json payload{{"zeta", ball_json(rep.zeta, prec)},
                         {"lhs", ball_json(rep.lhs, prec)},
                         {"rhs", ball_json(rep.rhs, prec)},
                         {"verdict", verdict_str(rep.verdict)}};
            return em.emit(rep.verdict == qe::Verdict::Pass ? "ok" : "fail", payload,
                           std::string("riemann tail: ") + verdict_str(rep.verdict));
        }

        if (*v_det) {
            qe::ConfluentSystem sys;
            sys.prec = prec;
            sys.shift = qe::parse_real(vshift, prec);
            for (const auto &blk : split(vblocks, ',')) {
                auto parts = split(blk, ':');
                if (parts.size() != 2 || parts[0].rfind("w=", 0) != 0 || parts[1].rfind("t=", 0) != 0)
                    throw qe::ParseError("block syntax: w=<complex>:t=<int>");
                sys.blocks.emplace_back(qe::parse_complex(parts[0].substr(2), prec), std::stoi(parts[1].substr(2)));
            }
            qe::BallComplex closed = qe::det_closed_form(sys);
            qe::BallComplex direct = qe::det_direct(qe::build_matrix(sys), prec);
            bool match = (closed - direct).contains_zero();
            json payload{{"closed_form", ball_json(closed, prec)},
                         {"direct", ball_json(direct, prec)},
                         {"match", match},
                         {"dimension", sys.dimension()}};
            return em.emit(match ? "ok" : "fail", payload, match ? "oracle match" : "MISMATCH");
        }

        if (*v_k) {
            if (vt < 0) throw qe::ParseError("t must be >= 0");
            mpz_class k = qe::superfactorial_k(static_cast<unsigned long>(vt));
            return em.emit("ok", json{{"k", k.get_str()}}, "k(" + std::to_string(vt) + ") = " + k.get_str());
        }

        if (*v_xi) {
            std::vector<qe::BallComplex> ws;
            for (const auto &w : split(vw, ',')) ws.push_back(qe::parse_complex(w, prec));
            std::vector<std::vector<qe::BallComplex>> qs;
            for (const auto &row : split(vq, ';')) {
                qs.emplace_back();
                for (const auto &c : split(row, ',')) qs.back().push_back(qe::parse_complex(c, prec));
            }
            qe::XiBoundReport rep = qe::xi_lower_bound_check(ws, qs, vT, qe::parse_real(vA, prec), prec);
            json payload{{"max_xi", ball_json(rep.max_xi, prec)},
                         {"inv_norm", ball_json(rep.inv_norm, prec)},
                         {"eta", ball_json(rep.eta, prec)},
                         {"bound", ball_json(rep.bound, prec)},
                         {"verdict", verdict_str(rep.verdict)}};
            return em.emit(rep.verdict == qe::Verdict::Pass ? "ok" : "fail", payload,
                           std::string("xi bound: ") + verdict_str(rep.verdict));
        }

        throw qe::ParseError("no subcommand handled");
    } catch (const qe::ParseError &e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return 2;
    } catch (const qe::PoleAtLatticePoint &e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return 3;
    } catch (const qe::DomainError &e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return 3;
    } catch (const qe::DepthUnrepresentable &e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return 3;
    } catch (const qe::DepthExceeded &e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return 3;
    } catch (const qe::DegenerateLattice &e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return 3;
    } catch (const qe::Error &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
