// Times the data-parallel kernels against their serial reference paths:
// exact row reduction and dense interpolation grids. Both paths compute
// identical results (exact arithmetic), so the interesting number is the
// wall-clock ratio on the current machine.

#include <chrono>
#include <cstdio>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "nullkit/linalg.hpp"
#include "nullkit/poly.hpp"

using namespace nullkit;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) fn();
    auto dt = std::chrono::steady_clock::now() - t0;
    return std::chrono::duration<double, std::milli>(dt).count() / reps;
}

Matrix random_matrix(const FieldCtxPtr& ctx, std::size_t n, Rng& rng) {
    Matrix m(ctx, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = ctx->uniform(rng);
    return m;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: not enabled\n");
#endif
    std::printf("%-34s %12s %12s %8s\n", "kernel", "serial ms", "parallel ms", "ratio");

    {
        auto F = FieldCtx::make_prime(10007);
        Rng rng(1);
        for (std::size_t n : {128, 256}) {
            Matrix base = random_matrix(F, n, rng);
            double ts = time_ms([&] { Matrix m = base; row_reduce(m, Exec::serial); }, 3);
            double tp = time_ms([&] { Matrix m = base; row_reduce(m, Exec::parallel); }, 3);
            std::printf("row_reduce GF(p) %4zux%-4zu          %12.2f %12.2f %7.2fx\n", n, n, ts, tp,
                        ts / tp);
        }
        auto E = make_field(2, 1 << 16, 1);
        Matrix base = random_matrix(E, 96, rng);
        double ts = time_ms([&] { Matrix m = base; row_reduce(m, Exec::serial); }, 3);
        double tp = time_ms([&] { Matrix m = base; row_reduce(m, Exec::parallel); }, 3);
        std::printf("row_reduce GF(2^16) 96x96          %12.2f %12.2f %7.2fx\n", ts, tp, ts / tp);
    }

    {
        auto F = FieldCtx::make_prime(10007);
        Rng rng(2);
        MultiPoly f(F, 3);
        for (int t = 0; t < 40; ++t) {
            Monomial m(3, 0);
            std::int64_t left = 8;
            for (int v = 0; v < 3; ++v) {
                m[v] = static_cast<std::uint32_t>(rng.below(left + 1));
                left -= m[v];
            }
            f.add_term(m, F->uniform(rng));
        }
        auto oracle = [&](std::span<const FieldElement> pt) { return f.eval(pt); };
        Rng ra(3), rb(3);
        double ts = time_ms([&] { interpolate_dense(oracle, F, 3, 8, &ra, Exec::serial); }, 3);
        double tp = time_ms([&] { interpolate_dense(oracle, F, 3, 8, &rb, Exec::parallel); }, 3);
        std::printf("interpolate_dense r=3 d=8          %12.2f %12.2f %7.2fx\n", ts, tp, ts / tp);
    }
    return 0;
}
