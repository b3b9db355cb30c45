// Minimal walk through the library on a small rank-2 matrix.

#include <iostream>

#include "sparseginv/sparseginv.hpp"

int main()
{
    using namespace sparseginv;

    const Matrix a{{1, 1}, {1, -1}, {2, 0}};
    std::cout << "rank(A) = " << rank(a) << "\n";

    const auto block = build_block_ginv(a, {{0, 1}, {0, 1}});
    std::cout << "block inverse   ||H||_1 = " << block.one_norm << "  nnz = " << block.nnz << "\n";

    const auto approx = approx_ginv(a);
    std::cout << "local search    ||H||_1 = " << approx.result.one_norm
              << "  certified ratio <= " << certify(a, approx.result, approx.certificate) << "\n";

    const auto [lp, sol] = min_norm_ginv_lp(a);
    std::cout << "linear program  ||H||_1 = " << sol.objective << "  pivots = " << sol.pivot_count << "\n";

    const auto flags = lp.flags;
    std::cout << "P1..P4 of the LP optimum: " << flags.p1 << flags.p2 << flags.p3 << flags.p4 << "\n";
}
