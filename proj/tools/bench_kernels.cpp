// Benchmark of the OpenMP kernels against their serial reference
// implementations: exact matrix multiplication and batch summand
// verification. Run with OMP_NUM_THREADS to vary the thread count.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "potentsum/decompose.hpp"

using namespace potentsum;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Matrix<CycloNum> random_matrix(std::mt19937_64& rng, const CycloFieldPtr& field, int n) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> pow(0, field->k() - 1);
  Matrix<CycloNum> m = Matrix<CycloNum>::zeros(n, n, CycloNum(field));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.at(i, j) = CycloNum::omega_power(field, pow(rng)).scaled(Rational(num(rng)));
  return m;
}

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e100;
  for (int i = 0; i < reps; ++i) {
    auto start = Clock::now();
    f();
    best = std::min(best, seconds_since(start));
  }
  return best;
}

}  // namespace

int main() {
  auto field = CycloField::get(4);
  std::mt19937_64 rng(20240915);

#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled; both columns run the serial kernel\n");
#endif

  std::printf("\n-- exact matmul, Q(zeta_4) --\n");
  std::printf("%6s %12s %12s %9s\n", "n", "serial [s]", "parallel [s]", "speedup");
  for (int n : {16, 32, 48, 64, 96}) {
    Matrix<CycloNum> a = random_matrix(rng, field, n);
    Matrix<CycloNum> b = random_matrix(rng, field, n);
    volatile bool sink = false;
    double ts = best_of(3, [&] { sink = matmul_serial(a, b).is_zero(); });
#ifdef _OPENMP
    double tp = best_of(3, [&] { sink = matmul_parallel(a, b).is_zero(); });
#else
    double tp = best_of(3, [&] { sink = matmul_serial(a, b).is_zero(); });
#endif
    if (matmul_serial(a, b) != matmul(a, b)) {
      std::printf("kernel mismatch at n=%d\n", n);
      return 1;
    }
    std::printf("%6d %12.4f %12.4f %8.2fx\n", n, ts, tp, ts / tp);
    (void)sink;
  }

  std::printf("\n-- batch summand verification (32 summands, 24x24) --\n");
  Matrix<CycloNum> zero = Matrix<CycloNum>::zeros(24, 24, CycloNum(field));
  Decomposition<CycloNum> dec;
  dec.target = zero;
  for (int i = 0; i < 16; ++i) {
    Matrix<CycloNum> m = random_matrix(rng, field, 24);
    Summand<CycloNum> plus{m, SummandKind::Potent, 5, {}, "bench"};
    Summand<CycloNum> minus{-m, SummandKind::Potent, 5, {}, "bench"};
    dec.summands.push_back(plus);
    dec.summands.push_back(minus);
  }
  double ts = best_of(3, [&] { verify_decomposition_serial(dec); });
  double tp = best_of(3, [&] { verify_decomposition(dec); });
  std::printf("serial %.4f s, parallel %.4f s, speedup %.2fx\n", ts, tp, ts / tp);
  return 0;
}
