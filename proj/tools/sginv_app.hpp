#pragma once

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sparseginv/report.hpp"
#include "sparseginv/sparseginv.hpp"

namespace sginv {

using namespace sparseginv;

struct Options {
    std::string command;
    std::string input;
    std::string format;
    std::string h_path;
    std::string h_format;
    std::string json_path;
    std::string sigma;
    std::string tau;
    double eps = 0.1;
    double tol = 1e-8;
    double zero_tol = 1e-12;
    bool tol_given = false;
    unsigned long long seed = 0;
    bool no_timing = false;
};

inline std::vector<std::size_t> parse_index_list(const std::string& text, const char* what)
{
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(item, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos == 0 || pos != item.size() || v < 1) {
            throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be a comma list of 1-based indices");
        }
        out.push_back(static_cast<std::size_t>(v - 1));
    }
    if (out.empty()) {
        throw Error(ErrorCode::InvalidArgument, std::string(what) + " is empty");
    }
    return out;
}

inline io::MatrixFormat resolve_format(const std::string& name, const std::string& path)
{
    return name.empty() ? io::format_from_path(path) : io::format_from_name(name);
}

inline void fill_result(report::RunReport& rep, const GinvResult& res)
{
    rep.method = std::string(method_name(res.method));
    rep.one_norm = res.one_norm;
    rep.nnz = res.nnz;
    rep.flags = res.flags;
    rep.reflexive = res.reflexive;
    rep.selection = res.selection;
    rep.H = res.H;
}

inline void fill_certificate(report::RunReport& rep, const Matrix& a, const GinvResult& res,
                             const DualCertificate& cert, const Tolerances& tol)
{
    report::CertificateSummary s;
    s.objective = cert.objective;
    s.feasibility_scale = cert.feasibility_scale;
    s.certified_ratio = certify(a, res, cert, tol);
    rep.certificate = s;
}

inline report::RunReport execute(const Options& opt, const Tolerances& tol)
{
    const Matrix a = io::parse_matrix(opt.input, resolve_format(opt.format, opt.input));
    report::RunReport rep;
    rep.m = a.rows();
    rep.n = a.cols();
    rep.rank = rank(a, tol);
    rep.a_one_norm = entrywise_norms(a, tol).one_norm;

    auto selection_from_flags = [&]() -> std::optional<SubmatrixSelection> {
        if (opt.sigma.empty() && opt.tau.empty()) {
            return std::nullopt;
        }
        if (opt.sigma.empty() || opt.tau.empty()) {
            throw Error(ErrorCode::InvalidArgument, "--sigma and --tau must be given together");
        }
        return SubmatrixSelection{parse_index_list(opt.sigma, "--sigma"), parse_index_list(opt.tau, "--tau")};
    };

    const std::string& cmd = opt.command;
    if (cmd == "info") {
        if (rep.rank == 0) {
            throw Error(ErrorCode::ZeroMatrix, "rank-0 input");
        }
        auto res = make_result(a, mp_pseudoinverse(a, tol), Method::block, tol);
        fill_result(rep, res);
        rep.method = "mp_pseudoinverse";
    } else if (cmd == "block") {
        auto sel = selection_from_flags();
        if (!sel) {
            throw Error(ErrorCode::InvalidArgument, "block requires --sigma and --tau");
        }
        const auto res = build_block_ginv(a, *sel, tol);
        fill_result(rep, res);
        fill_certificate(rep, a, res, build_dual_certificate(a, *sel, tol), tol);
    } else if (cmd == "rank1") {
        const auto [res, cert] = solve_rank1(a, tol);
        fill_result(rep, res);
        fill_certificate(rep, a, res, build_dual_certificate(a, *res.selection, tol), tol);
        rep.details = {{"i_star", cert.i_star + 1}, {"j_star", cert.j_star + 1},
                       {"dual_w", report::round12(cert.dual_w)},
                       {"dual_objective", report::round12(cert.dual_objective)}};
    } else if (cmd == "rank2") {
        const auto [res, cert] = solve_rank2_nonneg(a, tol);
        fill_result(rep, res);
        fill_certificate(rep, a, res, cert, tol);
    } else if (cmd == "approx" || cmd == "certify") {
        LocalSearchConfig cfg;
        cfg.epsilon = opt.eps;
        auto sel = selection_from_flags();
        if (cmd == "certify" && sel) {
            const auto res = build_block_ginv(a, *sel, tol);
            fill_result(rep, res);
            fill_certificate(rep, a, res, build_dual_certificate(a, *sel, tol), tol);
        } else {
            cfg.init = sel;
            const auto out = approx_ginv(a, cfg, tol);
            fill_result(rep, out.result);
            fill_certificate(rep, a, out.result, out.certificate, tol);
            rep.details = {{"epsilon", opt.eps},
                           {"swaps_accepted", out.report.swaps_accepted},
                           {"converged", out.report.converged},
                           {"abs_det", report::round12(out.report.abs_det)}};
        }
        if (cmd == "certify") {
            rep.method = "certify";
        }
    } else if (cmd == "lp") {
        const auto [res, sol] = min_norm_ginv_lp(a, tol);
        fill_result(rep, res);
        rep.details = {{"status", std::string(lp_status_name(sol.status))},
                       {"pivot_count", sol.pivot_count},
                       {"objective", report::round12(sol.objective)}};
    } else if (cmd == "verify") {
        if (opt.h_path.empty()) {
            throw Error(ErrorCode::InvalidArgument, "verify requires --h");
        }
        const Matrix h = io::parse_matrix(opt.h_path, resolve_format(opt.h_format, opt.h_path));
        const auto res = make_result(a, h, Method::block, tol);
        fill_result(rep, res);
        rep.method = "verify";
    } else {
        throw Error(ErrorCode::InvalidArgument, "unknown command '" + cmd + "'");
    }
    return rep;
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline void print_table(std::ostream& out, const report::RunReport& rep)
{
    out << std::setprecision(12);
    out << "method           " << rep.method << '\n';
    out << "size             " << rep.m << " x " << rep.n << '\n';
    out << "rank             " << rep.rank << '\n';
    out << "||A||_1          " << rep.a_one_norm << '\n';
    out << "||H||_1          " << rep.one_norm << '\n';
    out << "nnz(H)           " << rep.nnz << '\n';
    out << "P1 P2 P3 P4      " << yes_no(rep.flags.p1) << ' ' << yes_no(rep.flags.p2) << ' '
        << yes_no(rep.flags.p3) << ' ' << yes_no(rep.flags.p4) << '\n';
    out << "reflexive        " << yes_no(rep.reflexive) << '\n';
    if (rep.selection) {
        out << "sigma            ";
        for (auto i : rep.selection->rows) {
            out << i + 1 << ' ';
        }
        out << "\ntau              ";
        for (auto i : rep.selection->cols) {
            out << i + 1 << ' ';
        }
        out << '\n';
    }
    if (rep.certificate) {
        out << "dual objective   " << rep.certificate->objective << '\n';
        out << "feasibility s*   " << rep.certificate->feasibility_scale << '\n';
        out << "certified_ratio  " << rep.certificate->certified_ratio << '\n';
    }
    out << "H =\n";
    for (std::size_t i = 0; i < rep.H.rows(); ++i) {
        out << "  ";
        for (std::size_t j = 0; j < rep.H.cols(); ++j) {
            out << std::setw(14) << report::round12(rep.H(i, j));
        }
        out << '\n';
    }
    out << "time (ms)        " << rep.ms << '\n';
}

inline void emit_json(const std::string& path, const nlohmann::json& j, std::ostream& out)
{
    if (path == "-") {
        out << j.dump(2) << '\n';
        return;
    }
    std::ofstream f(path);
    if (!f) {
        throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
    }
    f << j.dump(2) << '\n';
}

/// Full command-line entry point; returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    CLI::App app{"Sparse reflexive generalized inverses", "sginv"};
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1);
    Options opt;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"info", "dimensions, rank and the Moore-Penrose pseudoinverse"},
        {"block", "block generalized inverse on a given --sigma/--tau submatrix"},
        {"rank1", "exact minimum 1-norm generalized inverse of a rank-1 matrix"},
        {"rank2", "exact minimum 1-norm inverse of a sign-normalizable rank-2 matrix"},
        {"approx", "local-search approximation with a dual certificate"},
        {"lp", "exact minimum 1-norm generalized inverse by linear programming"},
        {"verify", "Penrose properties and reflexivity of a candidate --h"},
        {"certify", "certified approximation ratio of a block construction"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--input,-i", opt.input, "matrix file")->required();
        sub->add_option("--format", opt.format, "mtx or csv (default: from extension)");
        sub->add_option("--tol", opt.tol, "relative residual tolerance (default 1e-8, or $GINV_TOL)");
        sub->add_option("--zero-tol", opt.zero_tol, "magnitude at or below which an entry is zero");
        sub->add_option("--json", opt.json_path, "write the JSON report here ('-' for stdout)");
        sub->add_option("--seed", opt.seed, "seed for randomized utilities");
        sub->add_flag("--no-timing", opt.no_timing, "report ms as 0 for byte-reproducible output");
        if (name == "approx" || name == "certify") {
            sub->add_option("--eps", opt.eps, "local search epsilon (default 0.1)");
        }
        if (name == "block" || name == "approx" || name == "certify") {
            sub->add_option("--sigma", opt.sigma, "comma list of 1-based row indices");
            sub->add_option("--tau", opt.tau, "comma list of 1-based column indices");
        }
        if (name == "verify") {
            sub->add_option("--h", opt.h_path, "candidate generalized inverse file")->required();
            sub->add_option("--h-format", opt.h_format, "format of --h (default: from extension)");
        }
        sub->callback([&opt, sub, name = name] {
            opt.command = name;
            opt.tol_given = sub->count("--tol") > 0;
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        Tolerances tol;
        tol.residual_tol = opt.tol;
        if (!opt.tol_given) {
            if (const char* env = std::getenv("GINV_TOL")) {
                try {
                    tol.residual_tol = std::stod(env);
                } catch (const std::exception&) {
                    throw Error(ErrorCode::InvalidArgument, "GINV_TOL is not a number");
                }
            }
        }
        tol.zero_tol = opt.zero_tol;
        if (!(tol.residual_tol >= 0.0) || !(tol.zero_tol >= 0.0) || !(opt.eps >= 0.0)) {
            throw Error(ErrorCode::InvalidArgument, "tolerances and --eps must be nonnegative");
        }

        const auto start = std::chrono::steady_clock::now();
        report::RunReport rep = execute(opt, tol);
        const auto stop = std::chrono::steady_clock::now();
        rep.ms = opt.no_timing ? 0.0 : std::chrono::duration<double, std::milli>(stop - start).count();

        if (opt.json_path != "-") {
            print_table(out, rep);
        }
        if (!opt.json_path.empty()) {
            emit_json(opt.json_path, report::to_json(rep), out);
        }
        if (rep.details.contains("converged") && !rep.details["converged"].get<bool>()) {
            err << "error: NotConverged: local search hit its swap cap; no guarantee holds\n";
            return 2;
        }
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        if (!opt.json_path.empty() && opt.json_path != "-") {
            std::ofstream f(opt.json_path);
            f << nlohmann::json{{"error", std::string(e.name())}, {"message", e.what()}}.dump(2) << '\n';
        } else if (opt.json_path == "-") {
            out << nlohmann::json{{"error", std::string(e.name())}, {"message", e.what()}}.dump(2) << '\n';
        }
        return 2;
    }
}

} // namespace sginv
