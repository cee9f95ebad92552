// Throwaway smoke driver used during bring-up; superseded by the doctest suites.
#include "invlab/invariance.hpp"

#include <chrono>
#include <cstdio>

using namespace invlab;

static void solve_and_report(const char* tag, const SystemDef& s, int qdeg = -1) {
    auto t0 = std::chrono::steady_clock::now();
    AnsatzSpec spec = default_menu(s, qdeg);
    SolveResult r = solve_invariance(s, spec);
    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] menu{%s} unknowns=%d functions=%d rows=%d rank=%d nullity=%d (%.2fs)\n", tag,
                r.stats.menu.c_str(), r.stats.cols, r.stats.n_functions, r.stats.rows, r.stats.rank,
                r.stats.nullity, dt);
    const Bivector P = frame::canonical_poisson();
    std::printf("  contains P:  %s\n", r.contains(P) ? "yes" : "NO");
    std::printf("  contains HP: %s\n", r.contains(s.H * P) ? "yes" : "NO");
    if (const KnownTensor* kt = s.find_bivector("P_tilde"))
        std::printf("  contains P_tilde: %s\n", r.contains(kt->tensor) ? "yes" : "NO");
}

int main() {
    solve_and_report("henon_heiles", build_henon_heiles(1, 1));
    solve_and_report("cubic_nonhomogeneous", build_cubic_nonhomogeneous(1, 1));
    solve_and_report("toda_family", build_toda_family(4, 4, 1, 1));
    solve_and_report("g2_toda open", build_g2_toda(false));
    solve_and_report("g2_toda periodic", build_g2_toda(true));
    solve_and_report("kepler", build_kepler(1));
    return 0;
}
// qdeg-3 Kepler probe (temporary)
