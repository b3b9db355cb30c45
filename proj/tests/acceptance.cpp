// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "sparseginv/sparseginv.hpp"
#include "test_support.hpp"

using namespace sparseginv;
using testsupport::Generator;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream why;
    std::string note;

    void require(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            why << what;
        }
        ok = ok && cond;
    }
};

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

Matrix random_nonneg_rank2(Generator& gen, std::size_t max_dim)
{
    while (true) {
        Matrix a = gen.uniform(gen.size(2, max_dim), 2, 0.0, 3.0) * gen.uniform(2, gen.size(2, max_dim), 0.0, 3.0);
        if (rank(a) == 2) {
            return a;
        }
    }
}

Matrix random_flips(Generator& gen, const Matrix& a)
{
    SignScaling s;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        s.row_signs.push_back(gen.coin() ? 1 : -1);
    }
    for (std::size_t j = 0; j < a.cols(); ++j) {
        s.col_signs.push_back(gen.coin() ? 1 : -1);
    }
    return apply_scaling(a, s);
}

void criterion1(Check& c)
{
    const Matrix a = testsupport::tall_3x2();
    const double opt = min_norm_ginv_lp(a).second.objective;
    c.require(near(opt, 1.5, 1e-8), "LP objective " + fmt(opt));
    testsupport::for_each_subset(3, 2, [&](const std::vector<std::size_t>& rows) {
        const double norm = build_block_ginv(a, {rows, {0, 1}}).one_norm;
        c.require(near(norm, 2.0, 1e-8), "block norm " + fmt(norm));
    });
    const auto out = approx_ginv(a, {0.0});
    c.require(near(out.result.one_norm, 2.0, 1e-8), "local search norm " + fmt(out.result.one_norm));
    const double ratio = certify(a, out.result, out.certificate);
    c.require(ratio <= 4.0, "certified ratio " + fmt(ratio));
}

void criterion2(Check& c)
{
    const Matrix a = testsupport::tall_4x3();
    const double opt = min_norm_ginv_lp(a).second.objective;
    c.require(near(opt, 3.35, 1e-8), "LP objective " + fmt(opt));
    std::vector<double> norms;
    testsupport::for_each_subset(4, 3, [&](const std::vector<std::size_t>& rows) {
        norms.push_back(build_block_ginv(a, {rows, {0, 1, 2}}).one_norm);
    });
    std::sort(norms.begin(), norms.end());
    const std::vector<double> expected{3.6, 4.0, 4.25, 5.0};
    for (std::size_t k = 0; k < 4; ++k) {
        c.require(near(norms[k], expected[k], 1e-8), "block norm " + fmt(norms[k]));
    }
    const double ratio = norms[0] / opt;
    c.require(near(ratio, 72.0 / 67.0, 1e-8) && ratio <= 9.0, "best block / OPT " + fmt(ratio));
}

void criterion3(Check& c)
{
    Generator gen(1003);
    for (int t = 0; t < 300 && c.ok; ++t) {
        const Matrix a = gen.low_rank(gen.size(1, 7), gen.size(1, 7), 1, -2.2, 2.2);
        const auto [res, cert] = solve_rank1(a);
        const double opt = min_norm_ginv_lp(a).second.objective;
        c.require(near(res.one_norm, opt, 1e-7), "trial " + std::to_string(t) + " objective gap");
        c.require(res.nnz == 1, "trial " + std::to_string(t) + " nnz");
        c.require(res.reflexive, "trial " + std::to_string(t) + " not reflexive");
        c.require(rank1_dual_violation(a, rank1_dual(a, cert)) <= 1e-9, "trial " + std::to_string(t) + " dual");
    }
}

void criterion4(Check& c)
{
    Generator gen(1004);
    for (int t = 0; t < 200 && c.ok; ++t) {
        const Matrix a = random_nonneg_rank2(gen, 6);
        const auto [res, cert] = solve_rank2_nonneg(a);
        const double opt = min_norm_ginv_lp(a).second.objective;
        c.require(near(res.one_norm, opt, 1e-7), "trial " + std::to_string(t) + " objective gap");
        c.require(cert.feasibility_scale <= 1.0 + 1e-8,
                  "trial " + std::to_string(t) + " scale " + fmt(cert.feasibility_scale));
    }
}

void criterion5(Check& c)
{
    Generator gen(1005);
    double worst = 0.0;
    std::size_t swaps = 0;
    for (int t = 0; t < 200 && c.ok; ++t) {
        const std::size_t r = gen.size(1, 3);
        const Matrix a = gen.low_rank(gen.size(r, 7), gen.size(r, 7), r);
        const double opt = min_norm_ginv_lp(a).second.objective;
        for (double eps : {0.0, 0.1}) {
            const auto out = approx_ginv(a, {eps});
            const double bound = static_cast<double>(r * r) * (1 + eps) * (1 + eps);
            const double h = out.result.one_norm;
            const std::string tag = "trial " + std::to_string(t) + " eps " + fmt(eps);
            c.require(out.report.converged, tag + " not converged");
            c.require(h <= bound * opt * (1 + 1e-12), tag + " norm bound");
            c.require(std::abs(out.certificate.objective - h) <= 1e-9 * h, tag + " objective mismatch");
            c.require(out.certificate.feasibility_scale <= bound + 1e-8, tag + " scale");
            worst = std::max(worst, h / opt);
            swaps += out.report.swaps_accepted;
        }
    }
    c.note = "worst ||H||_1/OPT " + fmt(worst) + ", " + std::to_string(swaps) + " swaps";
}

void require_block_properties(Check& c, const Matrix& a, const GinvResult& res, const std::string& tag)
{
    const std::size_t r = rank(a);
    const auto pr = penrose_residuals(a, res.H);
    c.require(pr.p1 <= 1e-8 && pr.p2 <= 1e-8, tag + " residuals " + fmt(pr.p1) + " " + fmt(pr.p2));
    c.require(rank(res.H) == r, tag + " rank");
    c.require(res.nnz <= r * r, tag + " nnz");
}

void criterion6(Check& c)
{
    Generator gen(1006);
    for (int t = 0; t < 150 && c.ok; ++t) {
        const std::string tag = "trial " + std::to_string(t);
        const std::size_t r = gen.size(1, 3);
        const Matrix a = gen.low_rank(gen.size(r, 7), gen.size(r, 7), r);
        const auto out = approx_ginv(a, {0.1});
        require_block_properties(c, a, out.result, tag + " approx");
        require_block_properties(c, a, build_block_ginv(a, out.report.selection), tag + " block");
        if (r == 1) {
            require_block_properties(c, a, solve_rank1(a).first, tag + " rank1");
        }
        const Matrix b = random_flips(gen, random_nonneg_rank2(gen, 6));
        require_block_properties(c, b, solve_rank2_nonneg(b).first, tag + " rank2");
    }
}

void criterion7(Check& c)
{
    Generator gen(1007);
    std::size_t swaps = 0;
    for (int t = 0; t < 20 && c.ok; ++t) {
        const Matrix a = gen.integers(20, 5, -3, 3) * gen.integers(5, 20, -3, 3);
        if (rank(a) != 5) {
            --t;
            continue;
        }
        const auto rep = local_search_submatrix(a, {0.1});
        const std::string tag = "trial " + std::to_string(t);
        c.require(rep.converged, tag + " not converged");
        const auto& traj = rep.abs_det_trajectory;
        for (std::size_t k = 1; k < traj.size(); ++k) {
            c.require(traj[k] > 1.1 * traj[k - 1], tag + " weak swap");
        }
        const auto [lo, hi] = std::minmax_element(traj.begin(), traj.end());
        const double bound = std::log(*hi / *lo) / std::log(1.1);
        c.require(static_cast<double>(rep.swaps_accepted) <= bound + 1e-9, tag + " swap count");
        swaps += rep.swaps_accepted;
    }
    c.note = std::to_string(swaps) + " swaps over 20 runs";
}

void criterion8(Check& c)
{
    Generator gen(1008);
    for (int t = 0; t < 50 && c.ok; ++t) {
        const std::string tag = "trial " + std::to_string(t);
        const std::size_t r = gen.size(1, 3);
        const Matrix a = gen.low_rank(gen.size(r, 7), gen.size(r, 7), r);
        const Matrix at = a.transpose();
        const Matrix b = gen.uniform(a.rows(), 1, -3.0, 3.0);
        const Matrix x = mp_pseudoinverse(a) * b;
        const double scale = (at * a).frobenius() * x.frobenius() + (at * b).frobenius();
        c.require((at * a * x - at * b).frobenius() <= 1e-8 * scale, tag + " normal equations");

        const Matrix y = gen.uniform(a.cols(), 1, -3.0, 3.0);
        const Matrix rhs = a * y;
        const double s2 = std::max(1.0, a.frobenius() * y.frobenius());
        const auto out = approx_ginv(a, {0.1});
        for (const Matrix& h : {out.result.H, min_norm_ginv_lp(a).first.H, mp_pseudoinverse(a)}) {
            c.require((a * (h * rhs) - rhs).frobenius() <= 1e-8 * s2, tag + " consistent system");
        }
    }
}

void criterion9(Check& c)
{
    Generator gen(1009);
    for (int t = 0; t < 100 && c.ok; ++t) {
        const Matrix base = gen.uniform(gen.size(1, 7), gen.size(1, 7), 0.0, 4.0);
        const Matrix flipped = random_flips(gen, base);
        const Matrix scaled = apply_scaling(flipped, sign_normalize(flipped));
        for (double v : scaled.data()) {
            c.require(v >= -1e-12, "trial " + std::to_string(t) + " negative entry");
        }
    }
    try {
        sign_normalize(testsupport::tall_3x2());
        c.require(false, "tall example was normalized");
    } catch (const Error& e) {
        c.require(e.code() == ErrorCode::NotSignNormalizable, std::string("wrong error ") + e.what());
    }
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        const char* name;
        double limit_s;
        std::function<void(Check&)> run;
    };
    const std::vector<Criterion> criteria{
        {1, "rank-2 counterexample", 1.0, criterion1},
        {2, "rank-3 example", 1.0, criterion2},
        {3, "rank-1 exactness", 30.0, criterion3},
        {4, "rank-2 nonnegative exactness", 60.0, criterion4},
        {5, "approximation guarantee", 120.0, criterion5},
        {6, "reflexivity and sparsity", 0.0, criterion6},
        {7, "local-search termination", 60.0, criterion7},
        {8, "least-squares and consistent systems", 0.0, criterion8},
        {9, "sign normalization", 0.0, criterion9},
    };
    int failures = 0;
    for (const auto& cr : criteria) {
        Check c;
        const auto start = std::chrono::steady_clock::now();
        try {
            cr.run(c);
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (cr.limit_s > 0.0) {
            c.require(secs < cr.limit_s, "runtime " + fmt(secs) + " s over limit " + fmt(cr.limit_s) + " s");
        }
        const std::string extra = c.ok ? c.note : c.why.str();
        std::printf("%s criterion %d: %s (%.3f s)%s%s\n", c.ok ? "PASS" : "FAIL", cr.id, cr.name, secs,
                    extra.empty() ? "" : "; ", extra.c_str());
        failures += c.ok ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
