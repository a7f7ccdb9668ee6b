#include "oestrip/run.hpp"
#include <json.hpp>
#include <cstdlib>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>
#include <chrono>

namespace oestrip {

ProblemParams RunConfig::params() const {
    ProblemParams p;
    p.k0 = Cx(1.0, im_k0_rel);
    p.a = k0a;   // Re k0 fixed at 1, the strip width carries k0*a
    p.eta = Cx(eta_re, eta_im);
    p.theta_inc = theta_inc_deg * M_PI / 180.0;
    return p;
}

void RunConfig::validate() const {
    if (mode != "oe" && mode != "bie" && mode != "compare")
        throw ConfigError("mode must be oe|bie|compare");
    if (prob_case != "antisym" && prob_case != "sym" && prob_case != "total")
        throw ConfigError("case must be antisym|sym|total");
    if (format != "csv" && format != "json") throw ConfigError("format must be csv|json");
    if (n_gamma < 16) throw ConfigError("n_gamma must be >= 16");
    if (n_panels < 16 || n_panels > 512) throw ConfigError("n_panels must be in [16,512]");
    if (n_theta < 2) throw ConfigError("n_theta must be >= 2");
    if (!(k0a > 0)) throw ConfigError("k0a must be > 0");
    if (!(tol_start > 0 && tol_start < 1e-2)) throw ConfigError("bad tol_start");
    if (!(delta_theta_deg > 0 && delta_theta_deg < 90)) throw ConfigError("bad delta_theta_deg");
    params().validate();
}

int max_threads() {
    int n = int(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("OESTRIP_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return n;
}

int validate_alpha_sign(const ProblemParams& p, double tol_start) {
    GammaMesh mesh = build_gamma(p, 50, tol_start);
    double eps = 5e-3 * std::abs(p.k0);
    double best = 1e300;
    int best_sign = -1;
    for (int sign : {-1, +1}) {
        double worst = 0;
        try {
            CoefficientTable t = march(mesh, Case::Antisym, sign);
            for (double h : {0.02, 0.05, 0.1}) {
                size_t jk = 0;
                double dmin = 1e300;
                for (size_t i = 0; i < mesh.size(); ++i) {
                    double d = std::abs(mesh.nodes[i].imag() - h * std::abs(p.k0));
                    if (d < dmin) { dmin = d; jk = i; }
                }
                worst = std::max(worst, oe_residual(t, jk, eps));
            }
        } catch (const NumericalFailure&) {
            worst = 1e300;
        }
        if (worst < best) { best = worst; best_sign = sign; }
    }
    return best_sign;
}

namespace {

CompareReport make_report(const DirectivityTable& oe, const DirectivityTable& bie) {
    CompareReport rep;
    size_t n = oe.theta.size();
    rep.abs_diff_a.assign(n, 0);
    rep.abs_diff_s.assign(n, 0);
    double d2a = 0, r2a = 0, d2s = 0, r2s = 0, mxa = 0, mxs = 0, ma = 0, ms = 0;
    for (size_t i = 0; i < n; ++i) {
        if (oe.dropped[i] || bie.dropped[i]) continue;
        if (!oe.S_a.empty()) {
            double d = std::abs(oe.S_a[i] - bie.S_a[i]);
            double dd = std::abs(std::abs(oe.S_a[i]) - std::abs(bie.S_a[i]));
            rep.abs_diff_a[i] = d;
            d2a += dd * dd;
            r2a += std::norm(bie.S_a[i]);
            mxa = std::max(mxa, dd);
            ma = std::max(ma, std::abs(bie.S_a[i]));
        }
        if (!oe.S_s.empty()) {
            double d = std::abs(oe.S_s[i] - bie.S_s[i]);
            double dd = std::abs(std::abs(oe.S_s[i]) - std::abs(bie.S_s[i]));
            rep.abs_diff_s[i] = d;
            d2s += dd * dd;
            r2s += std::norm(bie.S_s[i]);
            mxs = std::max(mxs, dd);
            ms = std::max(ms, std::abs(bie.S_s[i]));
        }
    }
    if (r2a > 0) { rep.l2_a = std::sqrt(d2a / r2a); rep.linf_a = mxa / ma; }
    if (r2s > 0) { rep.l2_s = std::sqrt(d2s / r2s); rep.linf_s = mxs / ms; }
    return rep;
}

} // namespace

RunResult run_pipeline(const RunConfig& cfg) {
    cfg.validate();
    ProblemParams p = cfg.params();
    bool want_a = cfg.prob_case != "sym";
    bool want_s = cfg.prob_case != "antisym";
    auto thetas = theta_grid(cfg.n_theta, cfg.delta_theta_deg);
    int nt = max_threads();

    RunResult res;
    if (cfg.mode != "bie") {
        auto t0 = std::chrono::steady_clock::now();
        res.sign_alpha = want_a ? validate_alpha_sign(p, cfg.tol_start) : -1;
        GammaMesh mesh = build_gamma(p, cfg.n_gamma, cfg.tol_start);
        index(mesh);  // sanity: wrong deformation/branch aborts early
        CoefficientTable ta, ts;
        if (want_a) ta = march(mesh, Case::Antisym, res.sign_alpha);
        if (want_s) ts = march(mesh, Case::Sym, res.sign_alpha);
        res.oe_table = directivity_oe(want_a ? &ta : nullptr, want_s ? &ts : nullptr,
                                      thetas, nt, cfg.rk4_substeps);
        if (cfg.verbose) {
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0).count();
            std::cerr << "oe stage: " << ms << " ms, sign_alpha=" << res.sign_alpha << "\n";
        }
    }
    if (cfg.mode != "oe") {
        auto t0 = std::chrono::steady_clock::now();
        Panelization pan(cfg.n_panels, p.a);
        res.bie_table = bie_directivity(p, pan, thetas, want_a, want_s);
        if (cfg.verbose) {
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0).count();
            std::cerr << "bie stage: " << ms << " ms\n";
        }
    }
    if (cfg.mode == "compare")
        res.compare = make_report(res.oe_table, res.bie_table);
    return res;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::ordered_json config_json(const RunConfig& c, int sign_alpha) {
    nlohmann::ordered_json j;
    j["k0a"] = c.k0a;
    j["im_k0_rel"] = c.im_k0_rel;
    j["eta_re"] = c.eta_re;
    j["eta_im"] = c.eta_im;
    j["theta_inc_deg"] = c.theta_inc_deg;
    j["mode"] = c.mode;
    j["case"] = c.prob_case;
    j["n_gamma"] = c.n_gamma;
    j["rk4_substeps"] = c.rk4_substeps;
    j["n_panels"] = c.n_panels;
    j["n_theta"] = c.n_theta;
    j["delta_theta_deg"] = c.delta_theta_deg;
    j["tol_start"] = c.tol_start;
    j["eps_shore"] = c.eps_shore;
    j["eps_deg"] = c.eps_deg;
    j["format"] = c.format;
    j["sign_alpha"] = sign_alpha;
    return j;
}

void emit_cols(std::string& s, const std::vector<Cx>& col, size_t i, bool present) {
    if (!present) return;
    s += ',' + fmt(col[i].real()) + ',' + fmt(col[i].imag()) + ',' + fmt(std::abs(col[i]));
}

} // namespace

std::string serialize_csv(const RunConfig& cfg, const RunResult& res) {
    std::string s = "# oestrip directivity table\n# config:";
    auto j = config_json(cfg, res.sign_alpha);
    for (auto& [k, v] : j.items()) s += ' ' + k + '=' + v.dump();
    s += '\n';
    if (res.compare) {
        s += "# compare: l2_a=" + fmt(res.compare->l2_a) + " linf_a=" + fmt(res.compare->linf_a) +
             " l2_s=" + fmt(res.compare->l2_s) + " linf_s=" + fmt(res.compare->linf_s) + "\n";
    }
    const DirectivityTable& t = (cfg.mode == "bie") ? res.bie_table : res.oe_table;
    bool both = cfg.mode == "compare";
    std::string head = "theta_deg";
    auto add_head = [&](const std::string& tag, const DirectivityTable& tb) {
        if (!tb.S_a.empty()) head += ",re_" + tag + "S_a,im_" + tag + "S_a,abs_" + tag + "S_a";
        if (!tb.S_s.empty()) head += ",re_" + tag + "S_s,im_" + tag + "S_s,abs_" + tag + "S_s";
        if (!tb.S_total.empty())
            head += ",re_" + tag + "S_total,im_" + tag + "S_total,abs_" + tag + "S_total";
    };
    add_head(both ? "oe_" : "", t);
    if (both) add_head("bie_", res.bie_table);
    s += head + '\n';
    for (size_t i = 0; i < t.theta.size(); ++i) {
        if (t.dropped[i]) continue;
        std::string row = fmt(t.theta[i] * 180.0 / M_PI);
        emit_cols(row, t.S_a, i, !t.S_a.empty());
        emit_cols(row, t.S_s, i, !t.S_s.empty());
        emit_cols(row, t.S_total, i, !t.S_total.empty());
        if (both) {
            const DirectivityTable& b = res.bie_table;
            emit_cols(row, b.S_a, i, !b.S_a.empty());
            emit_cols(row, b.S_s, i, !b.S_s.empty());
            emit_cols(row, b.S_total, i, !b.S_total.empty());
        }
        s += row + '\n';
    }
    return s;
}

std::string serialize_json(const RunConfig& cfg, const RunResult& res) {
    nlohmann::ordered_json out;
    out["config"] = config_json(cfg, res.sign_alpha);
    nlohmann::ordered_json meta;
    meta["methods"] = cfg.mode == "compare" ? nlohmann::ordered_json::array({"OE", "BIE"})
                      : cfg.mode == "oe" ? nlohmann::ordered_json::array({"OE"})
                                         : nlohmann::ordered_json::array({"BIE"});
    meta["sign_alpha"] = res.sign_alpha;
    out["metadata"] = meta;

    auto table_json = [](const DirectivityTable& t) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (size_t i = 0; i < t.theta.size(); ++i) {
            nlohmann::ordered_json r;
            r["theta_deg"] = t.theta[i] * 180.0 / M_PI;
            r["dropped"] = bool(t.dropped[i]);
            auto put = [&](const char* key, const std::vector<Cx>& col) {
                if (col.empty()) { r[key] = nullptr; return; }
                r[key] = {{"re", col[i].real()}, {"im", col[i].imag()}, {"abs", std::abs(col[i])}};
            };
            put("S_a", t.S_a);
            put("S_s", t.S_s);
            put("S_total", t.S_total);
            rows.push_back(r);
        }
        return rows;
    };
    if (cfg.mode != "bie") out["table"] = table_json(res.oe_table);
    if (cfg.mode == "bie") out["table"] = table_json(res.bie_table);
    if (cfg.mode == "compare") out["table_bie"] = table_json(res.bie_table);
    if (res.compare) {
        nlohmann::ordered_json c;
        c["l2_a"] = res.compare->l2_a;
        c["linf_a"] = res.compare->linf_a;
        c["l2_s"] = res.compare->l2_s;
        c["linf_s"] = res.compare->linf_s;
        c["abs_diff_a"] = res.compare->abs_diff_a;
        c["abs_diff_s"] = res.compare->abs_diff_s;
        out["compare"] = c;
    }
    return out.dump(2) + "\n";
}

int run(const RunConfig& cfg) {
    try {
        RunResult res = run_pipeline(cfg);
        std::string payload = cfg.format == "csv" ? serialize_csv(cfg, res)
                                                  : serialize_json(cfg, res);
        if (cfg.out_path.empty()) {
            std::cout << payload;
        } else {
            std::ofstream f(cfg.out_path, std::ios::binary);
            if (!f) throw IoError("cannot open output file: " + cfg.out_path);
            f << payload;
            if (!f.good()) throw IoError("write failed: " + cfg.out_path);
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
}

} // namespace oestrip
