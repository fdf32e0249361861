#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "filn/catalog.hpp"
#include "filn/polymat.hpp"

using namespace filn;

namespace {

double now() {
#ifdef _OPENMP
    return omp_get_wtime();
#else
    return 0.0;
#endif
}

// Dense random alternating structure; not a Filippov algebra, which is the
// point: every tuple pair produces a nonzero residual and real work.
NAry random_alternating(int n, int k, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coef(-9, 9);
    NAry mu(n, k);
    for (const auto& I : increasing_tuples(k, n)) {
        Vec v(static_cast<size_t>(k));
        for (auto& s : v) s = Scalar(Rational(coef(rng)));
        mu.add_product(I, v);
    }
    return mu;
}

void bench_filippov(int n, int k, int reps) {
    NAry mu = random_alternating(n, k, 42);
    double t0 = now();
    size_t serial_count = 0;
    for (int r = 0; r < reps; ++r) serial_count = check_filippov_serial(mu).violations.size();
    double t1 = now();
    size_t parallel_count = 0;
    for (int r = 0; r < reps; ++r) parallel_count = check_filippov(mu).violations.size();
    double t2 = now();
    std::printf("filippov  n=%d k=%-2d  serial %8.3fs  openmp %8.3fs  speedup %5.2fx  %s\n", n, k,
                t1 - t0, t2 - t1, (t1 - t0) / std::max(t2 - t1, 1e-9),
                serial_count == parallel_count ? "match" : "MISMATCH");
}

void bench_polymat(int n, int reps) {
    NAry mu = make(CatalogId::D(n, n + 1));
    PolyMat R = symbolic_right_mult(mu, "x");
    double t0 = now();
    PolyMat s;
    for (int r = 0; r < reps; ++r) s = poly_mat_mul_serial(R, R, 0);
    double t1 = now();
    PolyMat p;
    for (int r = 0; r < reps; ++r) p = poly_mat_mul(R, R, 0);
    double t2 = now();
    bool match = true;
    for (size_t i = 0; i < s.a.size(); ++i)
        if (!(s.a[i] == p.a[i])) { match = false; break; }
    std::printf("polymat   n=%d D%d    serial %8.3fs  openmp %8.3fs  speedup %5.2fx  %s\n", n,
                n + 1, t1 - t0, t2 - t1, (t1 - t0) / std::max(t2 - t1, 1e-9),
                match ? "match" : "MISMATCH");

    double t3 = now();
    Poly ts;
    for (int r = 0; r < reps; ++r) ts = trace_of_product_serial(s, p, 0);
    double t4 = now();
    Poly tp;
    for (int r = 0; r < reps; ++r) tp = trace_of_product(s, p, 0);
    double t5 = now();
    std::printf("trprod    n=%d D%d    serial %8.3fs  openmp %8.3fs  speedup %5.2fx  %s\n", n,
                n + 1, t4 - t3, t5 - t4, (t4 - t3) / std::max(t5 - t4, 1e-9),
                ts == tp ? "match" : "MISMATCH");
}

void bench_profiles(int n) {
    std::vector<NAry> mus;
    for (const auto& row : expected_table(n)) mus.push_back(make(row.id));
    ProfileConfig cfg = ProfileConfig::defaults(n);
#ifdef _OPENMP
    int max_threads = omp_get_max_threads();
    omp_set_num_threads(1);
#endif
    double t0 = now();
    auto serial = profile_batch(mus, cfg);
    double t1 = now();
#ifdef _OPENMP
    omp_set_num_threads(max_threads);
#endif
    auto parallel = profile_batch(mus, cfg);
    double t2 = now();
    bool match = serial.size() == parallel.size();
    for (size_t i = 0; match && i < serial.size(); ++i) match = serial[i] == parallel[i];
    std::printf("profiles  n=%d        serial %8.3fs  openmp %8.3fs  speedup %5.2fx  %s\n", n,
                t1 - t0, t2 - t1, (t1 - t0) / std::max(t2 - t1, 1e-9),
                match ? "match" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    int k = argc > 1 ? std::atoi(argv[1]) : 11;
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run the serial path\n");
#endif
    bench_filippov(3, k, 1);
    bench_polymat(5, 3);
    bench_profiles(4);
    return 0;
}
