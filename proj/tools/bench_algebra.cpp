// Times the serial reference product kernel against the OpenMP one on the
// dense augmentation workload: d = (1+y_1)...(1+y_n) - 1, squared twice.

#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "cohen/algebra.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace cohen;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <typename Kernel>
std::pair<Element, double> run(Kernel&& kernel, const Element& d, int reps) {
    Element d2 = kernel(d, d);
    Element d4 = kernel(d2, d2);
    auto start = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) {
        d2 = kernel(d, d);
        d4 = kernel(d2, d2);
    }
    return {d4, seconds_since(start) / reps};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"benchmark the serial vs OpenMP product kernels"};
    int n = 8;
    int reps = 3;
    app.add_option("--n", n, "number of letters (7..12)")->default_val(8);
    app.add_option("--reps", reps, "timed repetitions")->default_val(3);
    CLI11_PARSE(app, argc, argv);

    if (n < 2 || n > Context::kMaxLetters) {
        std::cerr << "n out of range\n";
        return 2;
    }

    Context ctx(n, 4);
    Element e = Element::unit(ctx);
    for (int i = 1; i <= n; ++i)
        e = mul(e, Element::unit(ctx) + Element::generator(ctx, i));
    Element d = e - Element::unit(ctx);

    std::cout << "n = " << n << ", dense augmentation element with " << d.term_count()
              << " terms\n";
#ifdef _OPENMP
    std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "built without OpenMP; both kernels run serially\n";
#endif

    auto [serial_result, serial_time] = run(detail::mul_serial, d, reps);
    std::cout << "serial:   " << serial_time << " s per (d*d)*(d*d), "
              << serial_result.term_count() << " result terms\n";

    auto [parallel_result, parallel_time] = run(detail::mul_parallel, d, reps);
    std::cout << "parallel: " << parallel_time << " s per (d*d)*(d*d), "
              << parallel_result.term_count() << " result terms\n";

    if (serial_result != parallel_result) {
        std::cerr << "kernel results disagree\n";
        return 3;
    }
    std::cout << "results identical; speedup " << serial_time / parallel_time << "x\n";
    return 0;
}
