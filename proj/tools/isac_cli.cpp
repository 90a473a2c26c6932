/**
 * isac — command-line front end for the secure-ISAC secrecy-distortion
 * toolkit.
 *
 * Subcommands
 *   check-degraded  degradedness report (factorization checks + LP witness)
 *   estimators      optimal per-letter state estimators and their distortions
 *   region          sweep a coding-theorem bound over input laws → CSV
 *   lemma1          binary-example closed form vs entropy oracle → CSV
 *   simulate        Monte-Carlo check of the distortion floors
 *   make-binary     write a channel spec file for the binary example
 *
 * Exit codes: 0 success; 1 domain/validation errors (bad parameters,
 * malformed spec content); 2 I/O errors (unreadable/unwritable files).
 * All output is deterministic for a fixed configuration: floats are
 * printed with printf "%.11e" (12 significant digits) and file writes
 * are atomic (temp file + rename).
 */

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "isac/binary_example.hpp"
#include "isac/channel.hpp"
#include "isac/channel_io.hpp"
#include "isac/degradedness.hpp"
#include "isac/estimation.hpp"
#include "isac/regions.hpp"
#include "isac/simulate.hpp"
#include "isac/util.hpp"

namespace {

using isac::format_float;

/** Output sink: collects stdout text so writes happen once, at the end. */
struct Out {
    std::string text;
    void line(const std::string& s) {
        text += s;
        text += '\n';
    }
    void kv(const std::string& key, const std::string& value) {
        line(key + ": " + value);
    }
    void kv(const std::string& key, double value) {
        kv(key, format_float(value));
    }
    void flush() { std::fwrite(text.data(), 1, text.size(), stdout); }
};

std::string yesno(bool b) { return b ? "yes" : "no"; }

isac::ChannelFile load_or_throw(const std::string& path) {
    return isac::load_channel_file(path);
}

/** The law a spec file provides, or the uniform full-support P_AX. */
isac::InputLaw law_for(const isac::ChannelFile& f, bool strict,
                       const char* who) {
    if (strict || !f.law.has_value()) {
        if (!strict && !f.law.has_value())
            throw isac::DomainError(
                std::string(who) +
                ": spec file has no input_law; add one or pass --strict");
        isac::InputLaw law;
        law.V = 0;
        law.A = f.channel.A;
        law.X = f.channel.X;
        law.mass.assign(static_cast<std::size_t>(law.A) * law.X,
                        1.0 / (law.A * law.X));
        return law;
    }
    return *f.law;
}

/* ---------------------------------------------------------------- */
/*  check-degraded                                                   */
/* ---------------------------------------------------------------- */

int run_check_degraded(const std::string& path, bool strict, double tol,
                       bool as_json) {
    isac::ChannelFile f = load_or_throw(path);
    isac::InputLaw law = law_for(f, strict, "check-degraded");
    isac::DegradednessReport rep =
        isac::degradedness_report(f.channel, law, tol);

    Out out;
    if (as_json) {
        isac::ordered_json j;
        j["channel"] = path;
        j["mode"] = strict ? "strict-uniform" : "input-law";
        j["tolerance"] = tol;
        j["physically_degraded"] = rep.physically_degraded;
        j["pd_residual"] = rep.pd_residual;
        j["reversely_degraded"] = rep.reversely_degraded;
        j["rpd_residual"] = rep.rpd_residual;
        j["stochastically_degraded"] = rep.stochastically_degraded;
        j["lp_residual"] = rep.lp_residual;
        if (rep.witness.has_value()) {
            isac::ordered_json rows = isac::ordered_json::array();
            const isac::StochasticWitness& w = *rep.witness;
            for (int r = 0; r < w.rows; ++r) {
                isac::ordered_json row = isac::ordered_json::array();
                for (int c = 0; c < w.cols; ++c)
                    row.push_back(format_float(
                        w.T[static_cast<std::size_t>(r) * w.cols + c]));
                rows.push_back(row);
            }
            j["witness_rows_y1s1_cols_y2s2"] = rows;
        }
        out.line(j.dump(2));
    } else {
        out.kv("channel", path);
        out.kv("mode", std::string(strict ? "strict-uniform" : "input-law"));
        out.kv("tolerance", tol);
        out.kv("physically_degraded", yesno(rep.physically_degraded));
        out.kv("pd_residual", rep.pd_residual);
        out.kv("reversely_degraded", yesno(rep.reversely_degraded));
        out.kv("rpd_residual", rep.rpd_residual);
        out.kv("stochastically_degraded",
               yesno(rep.stochastically_degraded));
        out.kv("lp_residual", rep.lp_residual);
        if (rep.witness.has_value()) {
            const isac::StochasticWitness& w = *rep.witness;
            out.line("witness T(y2,s2|y1,s1) (rows (y1,s1) s1-fastest; "
                     "cols (y2,s2) s2-fastest):");
            for (int r = 0; r < w.rows; ++r) {
                std::string rowtext = "  ";
                for (int c = 0; c < w.cols; ++c) {
                    if (c) rowtext += ' ';
                    rowtext += format_float(
                        w.T[static_cast<std::size_t>(r) * w.cols + c]);
                }
                out.line(rowtext);
            }
        }
    }
    out.flush();
    return 0;
}

/* ---------------------------------------------------------------- */
/*  estimators                                                       */
/* ---------------------------------------------------------------- */

int run_estimators(const std::string& path, bool as_json) {
    isac::ChannelFile f = load_or_throw(path);
    isac::InputLaw law = law_for(f, false, "estimators");

    Out out;
    isac::ordered_json j;
    if (as_json) j["channel"] = path;
    else out.kv("channel", path);

    for (int side = 1; side <= 2; ++side) {
        isac::EstimatorTable est =
            isac::optimal_estimator(f.channel, law, side);
        double dist = isac::expected_distortion(f.channel, law, est);
        if (as_json) {
            isac::ordered_json e;
            e["expected_distortion"] = dist;
            isac::ordered_json cells = isac::ordered_json::array();
            for (int a = 0; a < est.A; ++a)
                for (int x = 0; x < est.X; ++x)
                    for (int y1 = 0; y1 < est.Y1; ++y1)
                        for (int y2 = 0; y2 < est.Y2; ++y2)
                            cells.push_back(est.at(a, x, y1, y2));
            e["table_axy1y2_last_fastest"] = cells;
            j["estimator_s" + std::to_string(side)] = e;
        } else {
            out.line("estimator for S" + std::to_string(side) +
                     " (minimizes expected d" + std::to_string(side) + "):");
            out.kv("  expected_distortion", dist);
            out.line("  table rows (a,x); columns (y1,y2), y2 fastest:");
            for (int a = 0; a < est.A; ++a)
                for (int x = 0; x < est.X; ++x) {
                    std::string row = "    a=" + std::to_string(a) +
                                      " x=" + std::to_string(x) + ":";
                    for (int y1 = 0; y1 < est.Y1; ++y1)
                        for (int y2 = 0; y2 < est.Y2; ++y2)
                            row += ' ' + std::to_string(est.at(a, x, y1, y2));
                    out.line(row);
                }
        }
    }
    if (as_json) out.line(j.dump(2));
    out.flush();
    return 0;
}

/* ---------------------------------------------------------------- */
/*  region                                                           */
/* ---------------------------------------------------------------- */

int run_region(const std::string& path, int theorem, int grid, int samples,
               std::uint64_t seed, const std::string& out_path) {
    isac::ChannelFile f = load_or_throw(path);
    isac::SweepConfig cfg;
    cfg.grid = grid;
    cfg.samples = samples;
    cfg.seed = seed;
    if (theorem >= 3 && f.binary.has_value()) cfg.binary = f.binary;
    isac::SweepResult sr = isac::sweep_region(f.channel, theorem, cfg);
    std::string csv = isac::region_csv(sr);
    isac::atomic_write_text(out_path, csv);

    std::size_t pareto = 0;
    for (const isac::RegionPoint& p : sr.points) pareto += p.pareto ? 1 : 0;
    Out out;
    out.kv("theorem", std::to_string(theorem));
    out.kv("points", std::to_string(sr.points.size()));
    out.kv("pareto_points", std::to_string(pareto));
    out.kv("wrote", out_path);
    out.flush();
    return 0;
}

/* ---------------------------------------------------------------- */
/*  lemma1                                                           */
/* ---------------------------------------------------------------- */

std::string lemma1_csv(double lambda, double alpha,
                       const std::vector<std::pair<double, double>>& pq) {
    std::string csv = "p,q,r_closed,r_oracle,d1,d2,max_term_gap\n";
    for (auto [p, q] : pq) {
        isac::BinaryParams bp{lambda, alpha, p, q};
        isac::Lemma1Reconcile rec = isac::reconcile(bp);
        csv += format_float(p);
        csv += ',';
        csv += format_float(q);
        csv += ',';
        csv += format_float(rec.closed.r_max);
        csv += ',';
        csv += format_float(rec.oracle.r_max);
        csv += ',';
        csv += format_float(rec.closed.d1_min);
        csv += ',';
        csv += format_float(rec.closed.d2_min);
        csv += ',';
        csv += format_float(rec.max_gap);
        csv += '\n';
    }
    return csv;
}

int run_lemma1(double lambda, double alpha, std::optional<double> p,
               std::optional<double> q, int grid,
               const std::string& out_path) {
    if (p.has_value() != q.has_value())
        throw isac::DomainError("lemma1: --p and --q must be given together");
    if (p.has_value() && grid > 0)
        throw isac::DomainError("lemma1: --grid excludes --p/--q");
    if (!p.has_value() && grid <= 0)
        throw isac::DomainError("lemma1: give either --p/--q or --grid N");
    if (grid == 1)
        throw isac::DomainError("lemma1: --grid must be ≥ 2 (points per axis)");

    std::vector<std::pair<double, double>> pq;
    if (p.has_value()) {
        pq.emplace_back(*p, *q);
    } else {
        for (int i = 0; i < grid; ++i)
            for (int k = 0; k < grid; ++k)
                pq.emplace_back(static_cast<double>(i) / (grid - 1),
                                static_cast<double>(k) / (grid - 1));
    }
    std::string csv = lemma1_csv(lambda, alpha, pq);
    Out out;
    if (out_path.empty()) {
        out.text = csv;
    } else {
        isac::atomic_write_text(out_path, csv);
        out.kv("points", std::to_string(pq.size()));
        out.kv("wrote", out_path);
    }
    out.flush();
    return 0;
}

/* ---------------------------------------------------------------- */
/*  simulate                                                         */
/* ---------------------------------------------------------------- */

int run_simulate(const std::string& path, long long n, std::uint64_t seed,
                 bool as_json) {
    isac::ChannelFile f = load_or_throw(path);
    isac::InputLaw law = law_for(f, false, "simulate");
    isac::SimulationReport rep =
        isac::simulate_report(f.channel, law, n, seed);

    Out out;
    if (as_json) {
        isac::ordered_json j;
        j["channel"] = path;
        j["samples"] = rep.n;
        j["seed"] = rep.seed;
        j["analytic_d1"] = rep.analytic_d1;
        j["empirical_d1"] = rep.empirical_d1;
        j["analytic_d2"] = rep.analytic_d2;
        j["empirical_d2"] = rep.empirical_d2;
        j["l1_gap"] = rep.l1_gap;
        out.line(j.dump(2));
    } else {
        out.kv("channel", path);
        out.kv("samples", std::to_string(rep.n));
        out.kv("seed", std::to_string(rep.seed));
        out.kv("analytic_d1", rep.analytic_d1);
        out.kv("empirical_d1", rep.empirical_d1);
        out.kv("analytic_d2", rep.analytic_d2);
        out.kv("empirical_d2", rep.empirical_d2);
        out.kv("l1_gap", rep.l1_gap);
    }
    out.flush();
    return 0;
}

/* ---------------------------------------------------------------- */
/*  make-binary                                                      */
/* ---------------------------------------------------------------- */

int run_make_binary(double lambda, double alpha, double p, double q,
                    const std::string& out_path) {
    isac::BinaryParams bp{lambda, alpha, p, q};
    auto [ch, law] = isac::binary_example_channel(bp);
    isac::ChannelFile f;
    f.channel = ch;
    f.law = law;
    f.binary = bp;
    isac::save_channel_file(out_path, f);
    Out out;
    out.kv("wrote", out_path);
    out.flush();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "isac — secrecy-distortion regions of secure ISAC channels with "
        "transmitter actions"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::simple);

    // ---- check-degraded ------------------------------------------
    std::string cd_path;
    bool cd_strict = false, cd_json = false;
    double cd_tol = 1e-9;
    CLI::App* cd = app.add_subcommand(
        "check-degraded",
        "Report whether the channel factorizes as physically degraded "
        "(P(a,x) P(s1|a) P(y1|s1,x) P(y2,s2|y1,s1)), as reversely "
        "physically degraded (roles of links 1 and 2 swapped), and/or as "
        "stochastically degraded (phase-1 simplex feasibility for a "
        "garbling T(y2,s2|y1,s1) reproducing P(Y2,S2|A,X)).");
    cd->add_option("spec-file", cd_path, "channel spec file")->required();
    cd->add_flag("--strict", cd_strict,
                 "ignore the file's input law; check against the uniform "
                 "full-support P(A,X)");
    cd->add_option("--tol", cd_tol, "decision tolerance (default 1e-9)")
        ->check(CLI::PositiveNumber);
    cd->add_flag("--json", cd_json, "emit structured JSON");

    // ---- estimators ----------------------------------------------
    std::string es_path;
    bool es_json = false;
    CLI::App* es = app.add_subcommand(
        "estimators",
        "Print the optimal per-letter state estimators, the posterior-"
        "cost minimizers Shat_j(a,x,y1,y2) = argmin_s E[d_j(S_j, s) | "
        "a,x,y1,y2], and their expected distortions E[d_j(S_j, Shat_j)] "
        "(the distortion floors D_1, D_2 of every region theorem).");
    es->add_option("spec-file", es_path, "channel spec file")->required();
    es->add_flag("--json", es_json, "emit structured JSON");

    // ---- region --------------------------------------------------
    std::string rg_path, rg_out;
    int rg_theorem = 0, rg_grid = 0, rg_samples = 0;
    std::uint64_t rg_seed = 0;
    CLI::App* rg = app.add_subcommand(
        "region",
        "Sweep input laws and tabulate a secrecy-distortion bound: "
        "Theorem 1 (partial secrecy, physically degraded), Theorem 2 "
        "(partial secrecy, reversely degraded), Theorem 3 (full secrecy, "
        "physically degraded), Theorem 4 (full secrecy, reversely "
        "degraded). Emits CSV with the law parameters, R1 cap, the "
        "theorem's second cap, the rate, the distortion floors, and a "
        "Pareto flag.");
    rg->add_option("spec-file", rg_path, "channel spec file")->required();
    rg->add_option("--theorem", rg_theorem, "theorem id (1|2|3|4)")
        ->required()
        ->check(CLI::Range(1, 4));
    rg->add_option("--grid", rg_grid,
                   "lattice resolution (binary (p,q) mode: points per axis; "
                   "generic mode: simplex denominator)")
        ->check(CLI::NonNegativeNumber);
    rg->add_option("--samples", rg_samples,
                   "seeded random laws appended after the lattice")
        ->check(CLI::NonNegativeNumber);
    rg->add_option("--seed", rg_seed, "RNG seed (default 0)");
    rg->add_option("--out", rg_out, "output CSV path")->required();

    // ---- lemma1 --------------------------------------------------
    double l1_lambda = 0.0, l1_alpha = 0.0;
    std::optional<double> l1_p, l1_q;
    int l1_grid = 0;
    std::string l1_out;
    CLI::App* l1 = app.add_subcommand(
        "lemma1",
        "Binary multiplicative-Bernoulli example (Y1=S1*X, Y2=S2*X): "
        "evaluate the closed forms for the Theorem-3 full-secrecy rate "
        "min{H(S1|Y2,S2)+H(Y1|S1,Y2,S2)-H(S1|Y1,Y2,S2,X,A), I(X,A;Y1,S1)} "
        "and the distortion floors (1-p)min{lambda,1-lambda} and "
        "(1-p)[(1-q)min{1-alpha+alpha*lambda, alpha-alpha*lambda} + "
        "q*min{1-alpha*lambda, alpha*lambda}], next to an independent "
        "entropy oracle, per point or on a (p,q) grid.");
    l1->add_option("--lambda", l1_lambda, "state parameter lambda in [0,1]")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    l1->add_option("--alpha", l1_alpha, "state parameter alpha in [0,1]")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    l1->add_option("--p", [&l1_p](const CLI::results_t& r) {
          l1_p = std::stod(r[0]);
          return true;
      },
      "input parameter p in [0,1] (with --q)")
        ->check(CLI::Range(0.0, 1.0))
        ->type_name("FLOAT");
    l1->add_option("--q", [&l1_q](const CLI::results_t& r) {
          l1_q = std::stod(r[0]);
          return true;
      },
      "action-noise parameter q in [0,1] (with --p)")
        ->check(CLI::Range(0.0, 1.0))
        ->type_name("FLOAT");
    l1->add_option("--grid", l1_grid,
                   "points per axis over the (p,q) square (N*N rows)")
        ->check(CLI::NonNegativeNumber);
    l1->add_option("--out", l1_out,
                   "output CSV path (omit to print CSV to stdout)");

    // ---- simulate ------------------------------------------------
    std::string sm_path;
    long long sm_n = 0;
    std::uint64_t sm_seed = 0;
    bool sm_json = false;
    CLI::App* sm = app.add_subcommand(
        "simulate",
        "Draw n i.i.d. samples of (A,X,S1,S2,Y1,Y2), run the optimal "
        "estimators over the batch, and report empirical vs analytic "
        "expected distortions E[d_j(S_j, Shat_j)] (the quantities the "
        "region theorems cap by D_1, D_2) plus the L1 gap between the "
        "empirical and exact joint distributions.");
    sm->add_option("spec-file", sm_path, "channel spec file")->required();
    sm->add_option("-n,--samples", sm_n, "number of samples")
        ->required()
        ->check(CLI::PositiveNumber);
    sm->add_option("--seed", sm_seed, "RNG seed (default 0)");
    sm->add_flag("--json", sm_json, "emit structured JSON");

    // ---- make-binary ---------------------------------------------
    double mb_lambda = 0.0, mb_alpha = 0.0, mb_p = 0.0, mb_q = 0.0;
    std::string mb_out;
    CLI::App* mb = app.add_subcommand(
        "make-binary",
        "Write a channel spec file for the binary multiplicative-"
        "Bernoulli example at (lambda, alpha, p, q): state kernel "
        "P(S1,S2|A), deterministic outputs Y1=S1*X, Y2=S2*X, Hamming "
        "distortions, and the product input law P(X=1)=p, A=X+Bern(q).");
    mb->add_option("--lambda", mb_lambda, "lambda in [0,1]")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    mb->add_option("--alpha", mb_alpha, "alpha in [0,1]")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    mb->add_option("--p", mb_p, "p in [0,1]")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    mb->add_option("--q", mb_q, "q in [0,1]")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    mb->add_option("--out", mb_out, "output spec path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;  // --help exits 0; bad flags → 1
    }

    try {
        if (cd->parsed())
            return run_check_degraded(cd_path, cd_strict, cd_tol, cd_json);
        if (es->parsed()) return run_estimators(es_path, es_json);
        if (rg->parsed())
            return run_region(rg_path, rg_theorem, rg_grid, rg_samples,
                              rg_seed, rg_out);
        if (l1->parsed())
            return run_lemma1(l1_lambda, l1_alpha, l1_p, l1_q, l1_grid,
                              l1_out);
        if (sm->parsed()) return run_simulate(sm_path, sm_n, sm_seed, sm_json);
        if (mb->parsed())
            return run_make_binary(mb_lambda, mb_alpha, mb_p, mb_q, mb_out);
    } catch (const isac::IoError& e) {
        std::fprintf(stderr, "I/O error: %s\n", e.what());
        return 2;
    } catch (const isac::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;  // unreachable: require_subcommand(1)
}
