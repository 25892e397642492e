// Serial vs OpenMP bracket-parallel bisection on the discretized isotonic
// problem. Usage: bench_eigensolver [grid_n] [levels] [repeats]

#include "lienard/spectral.hpp"
#include "lienard/tridiagonal.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

int main(int argc, char** argv) {
    namespace chrono = std::chrono;
    const std::size_t grid_n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 24000;
    const std::size_t levels = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 10;
    const int repeats = argc > 3 ? std::atoi(argv[3]) : 3;

    const lienard::RadialGrid grid(1e-3, 12.0, grid_n);
    const auto t = lienard::discretize({0.0, 1.0}, grid);

    auto time = [&](auto&& solve) {
        std::vector<double> ev;
        const auto t0 = chrono::steady_clock::now();
        for (int r = 0; r < repeats; ++r)
            ev = solve();
        const auto t1 = chrono::steady_clock::now();
        return std::pair{ev, chrono::duration<double, std::milli>(t1 - t0).count() / repeats};
    };

    const auto [serial, ms_serial] = time([&] { return lienard::specfun::eig_tridiagonal_serial(t, levels); });
    const auto [parallel, ms_parallel] = time([&] { return lienard::specfun::eig_tridiagonal(t, levels); });

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::cout << "grid_n " << grid_n << "  levels " << levels << "  threads " << threads << '\n'
              << "serial   " << ms_serial << " ms\n"
              << "parallel " << ms_parallel << " ms\n"
              << "speedup  " << ms_serial / ms_parallel << '\n'
              << "bit-identical " << (serial == parallel ? "yes" : "NO") << '\n';
    return serial == parallel ? 0 : 1;
}
