// gtzeta: exact Gel'fand-Tsetlin calculus for GL(n) with the archimedean
// zeta-constant verifier.  Every subcommand prints one deterministic JSON
// document (or TSV with --format tsv) and uses exit codes
//   0  success
//   1  verification mismatch
//   2  usage error / rejected input (machine-parsable error codes)

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "gtzeta/action.hpp"
#include "gtzeta/arch.hpp"
#include "gtzeta/branch.hpp"
#include "gtzeta/det_model.hpp"
#include "gtzeta/family.hpp"
#include "gtzeta/pairing.hpp"
#include "gtzeta/serialize.hpp"
#include "gtzeta/wedge.hpp"

using namespace gtzeta;

namespace {

struct Output {
    std::string text;
    int exit_code = 0;
};

std::string dump(const json& j) { return j.dump() + "\n"; }

// ---------------------------------------------------------------------------
// subcommand bodies
// ---------------------------------------------------------------------------

Output cmd_patterns(const Weight& lambda, const std::string& format) {
    const auto& pats = enumerate_patterns(lambda);
    if (format == "tsv") {
        std::string out;
        for (const auto& m : pats) out += m.str() + "\n";
        return {out, 0};
    }
    json arr = json::array();
    for (const auto& m : pats) arr.push_back(pattern_json(m));
    return {dump({{"lambda", weight_json(lambda)}, {"count", pats.size()}, {"patterns", arr}}), 0};
}

Output cmd_dim(const Weight& lambda, const std::string& format) {
    BigInt d = weyl_dim(lambda);
    if (format == "tsv") return {d.get_str() + "\n", 0};
    return {dump({{"lambda", weight_json(lambda)}, {"dim", d.get_str()}}), 0};
}

json action_json_oracle(const Weight& lambda, int i, int j) {
    const auto& tab = pattern_table(lambda);
    json entries = json::array();
    for (const auto& m : tab.patterns()) {
        auto img = coords_in_xi(lambda, det_applyE(i, j, xi_polynomial(lambda, m)));
        for (const auto& [to, c] : img)
            entries.push_back({{"from", pattern_json(m)}, {"to", pattern_json(to)},
                               {"coeff", c.str()}});
    }
    return {{"lambda", weight_json(lambda)}, {"i", i}, {"j", j}, {"entries", entries}};
}

Output cmd_action(const Weight& lambda, int i, int j, bool oracle, const std::string& format) {
    json doc;
    const char* cachedir = std::getenv("GTZETA_CACHE_DIR");
    std::string cachefile;
    if (cachedir && !oracle) {
        std::string key = "action_" + std::to_string(lambda.n());
        for (long x : lambda.v) key += "_" + std::to_string(x);
        key += "_" + std::to_string(i) + "_" + std::to_string(j) + ".json";
        cachefile = std::string(cachedir) + "/" + key;
        std::ifstream in(cachefile);
        if (in) {
            std::stringstream ss;
            ss << in.rdbuf();
            doc = json::parse(ss.str());
        }
    }
    if (doc.is_null())
        doc = oracle ? action_json_oracle(lambda, i, j) : action_matrix_json(matrix_E(lambda, i, j));
    if (!cachefile.empty()) {
        std::ofstream out(cachefile);
        if (out) out << doc.dump();
    }
    if (format == "tsv") {
        std::string out;
        for (const auto& e : doc["entries"])
            out += e["from"].dump() + "\t" + e["to"].dump() + "\t" +
                   e["coeff"].get<std::string>() + "\n";
        return {out, 0};
    }
    return {dump(doc), 0};
}

Output cmd_branch(const Weight& lambda, const Weight& mu, const std::string& format) {
    if (!interlaces(lambda, mu))
        throw Error(Errc::interlacing_violation, "branch: mu must interlace lambda");
    json inj = json::array();
    std::string tsv;
    for (const auto& m : pattern_table(mu).patterns()) {
        inj.push_back({{"from", pattern_json(m)}, {"to", pattern_json(m.stacked(lambda))}});
        tsv += m.str() + "\t" + m.stacked(lambda).str() + "\n";
    }
    if (format == "tsv") return {tsv, 0};
    return {dump({{"lambda", weight_json(lambda)}, {"mu", weight_json(mu)}, {"inject", inj}}), 0};
}

Output cmd_tensor_cartan(const Weight& l1, const Weight& l2, bool oracle,
                         const std::string& format) {
    const Weight sum = l1 + l2;
    json table = json::array();
    std::string tsv;
    for (const auto& mpp : pattern_table(sum).patterns()) {
        TensorVector img = oracle ? cartan_inject_oracle(l1, l2, mpp)
                                  : cartan_inject(l1, l2, RepVector::unit(sum, mpp));
        json terms = json::array();
        for (const auto& [key, c] : img.coords) {
            terms.push_back({{"M", pattern_json(key.first)}, {"Mp", pattern_json(key.second)},
                             {"coeff", c.str()}});
            tsv += mpp.str() + "\t" + key.first.str() + "\t" + key.second.str() + "\t" +
                   c.str() + "\n";
        }
        table.push_back({{"Mpp", pattern_json(mpp)}, {"terms", terms}});
    }
    if (format == "tsv") return {tsv, 0};
    return {dump({{"lambda", weight_json(l1)}, {"lambdap", weight_json(l2)}, {"table", table}}),
            0};
}

Output cmd_pair(const Weight& lambda, const std::optional<Weight>& mu, long l,
                const std::string& format) {
    json rows = json::array();
    std::string tsv;
    if (!mu) {
        for (const auto& m : pattern_table(lambda).patterns()) {
            Rat v = Rat(parity_sign(m.q())) * m.r();
            rows.push_back({{"M", pattern_json(m)}, {"N", pattern_json(m.dual())},
                            {"value", v.str()}});
            tsv += m.str() + "\t" + m.dual().str() + "\t" + v.str() + "\n";
        }
    } else {
        if (!interlaces(lambda.dual(), mu->shifted(-l)))
            throw Error(Errc::interlacing_violation, "pair: mu - l must interlace lambda^vee");
        const auto& tabmu = pattern_table(*mu);
        for (const auto& m : pattern_table(lambda).patterns()) {
            GTPattern nu = m.hat().shifted(-l).dual();
            if (!tabmu.contains(nu)) continue;
            Rat v = Rat(parity_sign(m.q())) * m.r();
            rows.push_back(
                {{"M", pattern_json(m)}, {"N", pattern_json(nu)}, {"value", v.str()}});
            tsv += m.str() + "\t" + nu.str() + "\t" + v.str() + "\n";
        }
    }
    if (format == "tsv") return {tsv, 0};
    json doc = {{"lambda", weight_json(lambda)}, {"entries", rows}};
    if (mu) {
        doc["mu"] = weight_json(*mu);
        doc["l"] = l;
    }
    return {dump(doc), 0};
}

json coefc_report(const Weight& lambda, long w, const Weight& mu, long wp, long m,
                  bool timings) {
    auto t0 = std::chrono::steady_clock::now();
    Rat got = extract_cm(lambda, w, mu, wp, m);
    Rat want = cm_closed_form(lambda.n(), wp, mu, m);
    auto t1 = std::chrono::steady_clock::now();
    json rep = {{"lambda", weight_json(lambda)},
                {"w", w},
                {"mu", weight_json(mu)},
                {"w_prime", wp},
                {"m", m},
                {"c_extracted", got.str()},
                {"c_closed_form", want.str()},
                {"match", got == want}};
    if (timings)
        rep["wall_time_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    return rep;
}

struct GridCase {
    Weight lambda;
    long w;
    Weight mu;
    long wp;
    long m;
};

std::vector<GridCase> coefc_grid_cases(const std::string& which) {
    std::vector<GridCase> cases;
    auto admissible_m = [](const Weight& lam, long w, const Weight& mu, long wp,
                           std::vector<long>& out) {
        for (long m = -12; m <= 12; ++m)
            if (interlaces(lam.dual(), mu.shifted(m)) &&
                interlaces(lam.shifted(-w), mu.dual().shifted(wp + m)))
                out.push_back(m);
    };
    if (which == "n2") {
        for (long base : {-1L, 0L})
            for (long spread = 0; spread <= 3; ++spread)
                for (long w = -1; w <= 2; ++w)
                    for (long wp = -1; wp <= 2; ++wp)
                        for (long u = -2; u <= 2; ++u) {
                            Weight lam({base + spread, base}), mu({u});
                            std::vector<long> ms;
                            admissible_m(lam, w, mu, wp, ms);
                            for (long m : ms) cases.push_back({lam, w, mu, wp, m});
                        }
    } else if (which == "n3") {
        Weight lam({1, 0, -1});
        for (long w = 0; w <= 1; ++w)
            for (long wp = 0; wp <= 1; ++wp)
                for (const auto& mu :
                     {Weight({0, 0}), Weight({1, 0}), Weight({1, -1}), Weight({0, -1})}) {
                    std::vector<long> ms;
                    admissible_m(lam, w, mu, wp, ms);
                    for (long m : ms) cases.push_back({lam, w, mu, wp, m});
                }
    } else {
        throw Error(Errc::invalid_weight, "unknown grid '" + which + "' (use n2 or n3)");
    }
    return cases;
}

Output cmd_coefc_grid(const std::string& which, int jobs, bool timings,
                      const std::string& format) {
    auto cases = coefc_grid_cases(which);
    std::vector<json> reports(cases.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            size_t k = next.fetch_add(1);
            if (k >= cases.size()) return;
            const auto& c = cases[k];
            reports[k] = coefc_report(c.lambda, c.w, c.mu, c.wp, c.m, timings);
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    size_t passed = 0;
    json arr = json::array();
    std::string tsv;
    for (const auto& r : reports) {
        if (r["match"].get<bool>()) ++passed;
        arr.push_back(r);
        tsv += r["lambda"].dump() + "\t" + std::to_string(r["w"].get<long>()) + "\t" +
               r["mu"].dump() + "\t" + std::to_string(r["w_prime"].get<long>()) + "\t" +
               std::to_string(r["m"].get<long>()) + "\t" + r["c_extracted"].get<std::string>() +
               "\t" + r["c_closed_form"].get<std::string>() + "\t" +
               (r["match"].get<bool>() ? "true" : "false") + "\n";
    }
    int code = passed == cases.size() ? 0 : 1;
    if (format == "tsv") return {tsv, code};
    return {dump({{"grid", which}, {"total", cases.size()}, {"passed", passed}, {"cases", arr}}),
            code};
}

EmbeddingWeightFamily parse_family(const std::string& s) {
    std::vector<std::pair<Weight, Weight>> places;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t semi = s.find(';', pos);
        std::string place =
            s.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
        size_t bar = place.find('|');
        if (bar == std::string::npos)
            places.emplace_back(parse_weight(place), parse_weight(place));
        else
            places.emplace_back(parse_weight(place.substr(0, bar)),
                                parse_weight(place.substr(bar + 1)));
        if (semi == std::string::npos) break;
        pos = semi + 1;
    }
    return EmbeddingWeightFamily::from_places(places);
}

Output cmd_critical(const std::string& lamfam, const std::string& mufam,
                    const std::string& format) {
    auto fl = parse_family(lamfam);
    auto fm = parse_family(mufam);
    auto iv = critical_points(fl, fm);
    auto pw = purity_weight(fl);
    auto pwp = purity_weight(fm);
    json doc;
    doc["purity_w"] = pw ? json(*pw) : json(nullptr);
    doc["purity_w_prime"] = pwp ? json(*pwp) : json(nullptr);
    if (iv) {
        doc["empty"] = false;
        doc["m_min"] = iv->first;
        doc["m_max"] = iv->second;
    } else {
        doc["empty"] = true;
    }
    if (format == "tsv")
        return {iv ? std::to_string(iv->first) + "\t" + std::to_string(iv->second) + "\n"
                   : std::string("empty\n"),
                0};
    return {dump(doc), 0};
}

Output cmd_lfactor(const std::string& d, const std::string& nu, const std::string& dp,
                   const std::string& nup, const std::string& format) {
    Weight wd = parse_weight(d);
    Weight wdp = dp.empty() ? Weight() : parse_weight(dp);
    std::vector<Rat> vnu = parse_rat_list(nu);
    std::vector<Rat> vnup = nup.empty() ? std::vector<Rat>{} : parse_rat_list(nup);
    std::vector<long> dd(wd.v.begin(), wd.v.end());
    std::vector<long> ddp(wdp.v.begin(), wdp.v.end());
    auto lf = l_factor_arch(dd, vnu, ddp, vnup);
    auto gn = gamma_n_factor(vnu, dd);
    auto gnp = gamma_n_factor(vnup, ddp);
    auto tolist = [](const GammaProduct& g) {
        json a = json::array();
        for (const auto& s : g.sorted_list()) a.push_back(s.str());
        return a;
    };
    if (format == "tsv") {
        std::string out;
        for (const auto& s : lf.sorted_list()) out += "L\t" + s.str() + "\n";
        for (const auto& s : gn.sorted_list()) out += "gamma_n\t" + s.str() + "\n";
        for (const auto& s : gnp.sorted_list()) out += "gamma_np\t" + s.str() + "\n";
        return {out, 0};
    }
    return {dump({{"l_shifts", tolist(lf)}, {"gamma_n", tolist(gn)}, {"gamma_np", tolist(gnp)}}),
            0};
}

Output cmd_pcheck(const Weight& lambda, long p, const std::string& format) {
    auto rep = p_integral_check(lambda, p);
    json rvals = json::array();
    for (const auto& [m, v] : rep.r_valuations)
        rvals.push_back({{"M", pattern_json(m)}, {"val", v}});
    json evals = json::array();
    for (const auto& e : rep.entry_valuations)
        evals.push_back({{"i", e.i}, {"j", e.j}, {"from", pattern_json(e.from)},
                         {"to", pattern_json(e.to)}, {"val", e.val}});
    if (format == "tsv") {
        std::string out = "self_dual\t" + std::string(rep.self_dual ? "true" : "false") + "\n";
        for (const auto& [m, v] : rep.r_valuations)
            out += "r\t" + m.str() + "\t" + std::to_string(v) + "\n";
        return {out, 0};
    }
    return {dump({{"lambda", weight_json(lambda)},
                  {"p", p},
                  {"bound", rep.bound},
                  {"above_bound", rep.above_bound},
                  {"self_dual", rep.self_dual},
                  {"r_valuations", rvals},
                  {"entry_valuations_nonzero", evals},
                  {"min_entry_valuation", rep.min_entry_valuation}}),
            0};
}

Output dispatch_batch_line(const json& req);

Output cmd_batch(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw Error(Errc::invalid_weight, "batch: cannot open input file " + file);
    std::string line, out;
    int worst = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            json req = json::parse(line);
            Output o = dispatch_batch_line(req);
            out += o.text;
            worst = std::max(worst, o.exit_code);
        } catch (const Error& e) {
            out += dump(error_json(e));
            worst = 2;
        } catch (const std::exception& e) {
            out += dump(json{{"error", {{"code", "E_USAGE"}, {"message", e.what()}}}});
            worst = 2;
        }
    }
    return {out, worst};
}

Output dispatch_batch_line(const json& req) {
    const std::string cmd = req.at("cmd").get<std::string>();
    const std::string format = req.value("format", "json");
    if (cmd == "patterns") return cmd_patterns(weight_from_json(req.at("lambda")), format);
    if (cmd == "dim") return cmd_dim(weight_from_json(req.at("lambda")), format);
    if (cmd == "action")
        return cmd_action(weight_from_json(req.at("lambda")), req.at("i").get<int>(),
                          req.at("j").get<int>(), req.value("oracle", false), format);
    if (cmd == "branch")
        return cmd_branch(weight_from_json(req.at("lambda")), weight_from_json(req.at("mu")),
                          format);
    if (cmd == "tensor-cartan")
        return cmd_tensor_cartan(weight_from_json(req.at("lambda")),
                                 weight_from_json(req.at("lambdap")), req.value("oracle", false),
                                 format);
    if (cmd == "pair") {
        std::optional<Weight> mu;
        if (req.contains("mu")) mu = weight_from_json(req.at("mu"));
        return cmd_pair(weight_from_json(req.at("lambda")), mu, req.value("l", 0L), format);
    }
    if (cmd == "coefc-verify") {
        json rep = coefc_report(weight_from_json(req.at("lambda")), req.at("w").get<long>(),
                                weight_from_json(req.at("mu")), req.at("wprime").get<long>(),
                                req.at("m").get<long>(), req.value("timings", false));
        return {dump(rep), rep["match"].get<bool>() ? 0 : 1};
    }
    if (cmd == "critical")
        return cmd_critical(req.at("lambda_family").get<std::string>(),
                            req.at("mu_family").get<std::string>(), format);
    if (cmd == "lfactor")
        return cmd_lfactor(req.at("d").get<std::string>(), req.at("nu").get<std::string>(),
                           req.value("dp", ""), req.value("nup", ""), format);
    if (cmd == "p-check")
        return cmd_pcheck(weight_from_json(req.at("lambda")), req.at("p").get<long>(), format);
    throw Error(Errc::invalid_weight, "batch: unknown cmd '" + cmd + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact GL(n) Gel'fand-Tsetlin calculus and archimedean constants"};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "tsv"}));

    std::string lambda_s, mu_s, lambdap_s, lamfam_s, mufam_s, d_s, nu_s, dp_s, nup_s, grid_s,
        input_s;
    int i = 1, j = 1, jobs = 1;
    long w = 0, wp = 0, m = 0, l = 0, p = 2;
    bool oracle = false, timings = false;

    auto* c_pat = app.add_subcommand("patterns", "enumerate G(lambda)");
    c_pat->add_option("--lambda", lambda_s)->required();

    auto* c_dim = app.add_subcommand("dim", "Weyl dimension of V_lambda");
    c_dim->add_option("--lambda", lambda_s)->required();

    auto* c_act = app.add_subcommand("action", "matrix of E_{i,j} in the xi basis");
    c_act->add_option("--lambda", lambda_s)->required();
    c_act->add_option("--i", i)->required();
    c_act->add_option("--j", j)->required();
    c_act->add_flag("--oracle", oracle, "compute through the determinantal model");

    auto* c_br = app.add_subcommand("branch", "branching injection table GL_{n-1} -> GL_n");
    c_br->add_option("--lambda", lambda_s)->required();
    c_br->add_option("--mu", mu_s)->required();

    auto* c_tc = app.add_subcommand("tensor-cartan", "Cartan-component injector coefficients");
    c_tc->add_option("--lambda", lambda_s)->required();
    c_tc->add_option("--lambdap", lambdap_s)->required();
    c_tc->add_flag("--oracle", oracle, "compute through the determinantal model");

    auto* c_pair = app.add_subcommand("pair", "invariant pairing tables");
    c_pair->add_option("--lambda", lambda_s)->required();
    c_pair->add_option("--mu", mu_s);
    c_pair->add_option("--l", l);

    auto* c_cv = app.add_subcommand("coefc-verify", "verify the zeta-constant closed form");
    c_cv->add_option("--lambda", lambda_s);
    c_cv->add_option("--w", w);
    c_cv->add_option("--mu", mu_s);
    c_cv->add_option("--wprime", wp);
    c_cv->add_option("--m", m);
    c_cv->add_option("--grid", grid_s, "run a built-in verification grid (n2 or n3)");
    c_cv->add_option("--jobs", jobs, "parallel workers for grid runs");
    c_cv->add_flag("--timings", timings, "include wall_time_ms (non-deterministic)");

    auto* c_cr = app.add_subcommand("critical", "critical twists of a weight-family pair");
    c_cr->add_option("--lambda-family", lamfam_s)->required();
    c_cr->add_option("--mu-family", mufam_s)->required();

    auto* c_lf = app.add_subcommand("lfactor", "archimedean L-factor and Gamma_n data");
    c_lf->add_option("--d", d_s)->required();
    c_lf->add_option("--nu", nu_s)->required();
    c_lf->add_option("--dp", dp_s);
    c_lf->add_option("--nup", nup_s);

    auto* c_pc = app.add_subcommand("p-check", "p-integrality scan of r(M) and action matrices");
    c_pc->add_option("--lambda", lambda_s)->required();
    c_pc->add_option("--p", p)->required();

    auto* c_bat = app.add_subcommand("batch", "run JSONL requests from a file");
    c_bat->add_option("--input", input_s)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        std::cout << dump(json{{"error", {{"code", "E_USAGE"}, {"message", e.what()}}}});
        return 2;
    }

    try {
        Output out;
        if (c_pat->parsed()) {
            out = cmd_patterns(parse_weight(lambda_s), format);
        } else if (c_dim->parsed()) {
            out = cmd_dim(parse_weight(lambda_s), format);
        } else if (c_act->parsed()) {
            out = cmd_action(parse_weight(lambda_s), i, j, oracle, format);
        } else if (c_br->parsed()) {
            out = cmd_branch(parse_weight(lambda_s), parse_weight(mu_s), format);
        } else if (c_tc->parsed()) {
            out = cmd_tensor_cartan(parse_weight(lambda_s), parse_weight(lambdap_s), oracle,
                                    format);
        } else if (c_pair->parsed()) {
            std::optional<Weight> mu;
            if (!mu_s.empty()) mu = parse_weight(mu_s);
            out = cmd_pair(parse_weight(lambda_s), mu, l, format);
        } else if (c_cv->parsed()) {
            if (!grid_s.empty()) {
                out = cmd_coefc_grid(grid_s, jobs, timings, format);
            } else {
                if (lambda_s.empty() || mu_s.empty())
                    throw Error(Errc::invalid_weight, "coefc-verify needs --lambda/--mu or --grid");
                json rep =
                    coefc_report(parse_weight(lambda_s), w, parse_weight(mu_s), wp, m, timings);
                out = {dump(rep), rep["match"].get<bool>() ? 0 : 1};
            }
        } else if (c_cr->parsed()) {
            out = cmd_critical(lamfam_s, mufam_s, format);
        } else if (c_lf->parsed()) {
            out = cmd_lfactor(d_s, nu_s, dp_s, nup_s, format);
        } else if (c_pc->parsed()) {
            out = cmd_pcheck(parse_weight(lambda_s), p, format);
        } else if (c_bat->parsed()) {
            out = cmd_batch(input_s);
        }
        std::cout << out.text;
        return out.exit_code;
    } catch (const Error& e) {
        std::cout << dump(error_json(e));
        return 2;
    } catch (const std::exception& e) {
        std::cout << dump(json{{"error", {{"code", "E_INTERNAL"}, {"message", e.what()}}}});
        return 2;
    }
}
