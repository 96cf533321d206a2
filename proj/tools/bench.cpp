// Benchmark: growth-table evaluation, OpenMP kernel vs the serial reference.
#include <chrono>
#include <cstdlib>
#include <iostream>

#include "slowtorus/dynamics.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace slowtorus;

namespace {

double seconds(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

bool rows_equal(const std::vector<GrowthRecord>& a, const std::vector<GrowthRecord>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].N != b[i].N) return false;
        if (mpfr_cmp(a[i].gamma.lo(), b[i].gamma.lo()) != 0) return false;
        if (mpfr_cmp(a[i].gamma.hi(), b[i].gamma.hi()) != 0) return false;
        if (mpfr_cmp(a[i].Wmax.lo(), b[i].Wmax.lo()) != 0) return false;
        if (mpfr_cmp(a[i].Wmax.hi(), b[i].Wmax.hi()) != 0) return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    long rows = argc > 1 ? std::atol(argv[1]) : 2000;
    long prec = argc > 2 ? std::atol(argv[2]) : 256;
    int grid = argc > 3 ? std::atoi(argv[3]) : 32;

    Settings settings;
    auto [st, ac] = build(GrowthFunction::parse("log2:2,1"), 2, ConstantsProfile{}, settings);
    Rat c = choose_c(st);
    std::vector<Int> sched = make_schedule(st, rows, 0, true);

    std::cout << "growth table: " << sched.size() << " rows, " << prec << "-bit, grid " << grid
              << "\n";
#ifdef _OPENMP
    std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "threads: 1 (built without OpenMP)\n";
#endif

    auto t0 = std::chrono::steady_clock::now();
    auto serial = growth_table_serial(st, c, ac.alpha, sched, prec, grid);
    auto t1 = std::chrono::steady_clock::now();
    auto parallel = growth_table(st, c, ac.alpha, sched, prec, grid);
    auto t2 = std::chrono::steady_clock::now();

    double ts = seconds(t0, t1), tp = seconds(t1, t2);
    std::cout << "serial reference: " << ts << " s\n";
    std::cout << "openmp kernel:    " << tp << " s\n";
    std::cout << "speedup:          " << (tp > 0 ? ts / tp : 0.0) << "x\n";
    bool same = rows_equal(serial, parallel);
    std::cout << "rows bitwise identical: " << (same ? "yes" : "NO") << "\n";
    return same ? 0 : 1;
}
