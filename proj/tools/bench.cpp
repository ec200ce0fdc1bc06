// Compares the serial and OpenMP sweep kernels on the margin evaluations the
// library actually runs. The (value, index) merge makes both paths return
// bitwise-identical results; this reports the wall-clock ratio.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "copos/cones.hpp"
#include "copos/jacobi.hpp"
#include "copos/rng.hpp"
#include "copos/sweep.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <class F>
double ms_of(F&& f) {
  auto t0 = Clock::now();
  f();
  auto t1 = Clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, std::size_t n, double serial_ms, double parallel_ms,
            bool identical) {
  std::printf("%-28s n=%-9zu serial %9.2f ms   parallel %9.2f ms   ratio %5.2fx   %s\n", name, n,
              serial_ms, parallel_ms, serial_ms / parallel_ms,
              identical ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n_cheap = 1u << 21;
  std::size_t n_eigen = 1u << 15;
  if (argc > 1) {
    n_cheap = static_cast<std::size_t>(std::strtoull(argv[1], nullptr, 10));
    n_eigen = n_cheap / 64 + 8;
  }
  std::printf("threads: %d\n", copos::max_threads());

  {
    // Closed-form COP(2) margin along a pencil A + t J.
    copos::SymMat A = copos::SymMat::from_rows({{1.0, -2.0}, {-2.0, 1.0}});
    copos::SymMat J = copos::SymMat::ones(2);
    auto f = [&](std::size_t i) {
      double t = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n_cheap);
      return copos::cop2_min(A + J * t).first;
    };
    copos::MinLoc s, p;
    double ts = ms_of([&] { s = copos::min_sweep_serial(n_cheap, f); });
    double tp = ms_of([&] { p = copos::min_sweep_parallel(n_cheap, f); });
    report("cop2 pencil margin", n_cheap, ts, tp, s.value == p.value && s.index == p.index);
  }

  {
    // Jacobi minimum eigenvalue of a rotating 4x4 family.
    copos::Rng rng(7);
    copos::SymMat base = copos::random_gaussian_sym(4, rng);
    copos::SymMat bump = copos::random_gaussian_sym(4, rng);
    auto f = [&](std::size_t i) {
      double t = static_cast<double>(i) / static_cast<double>(n_eigen);
      return copos::min_eigenvalue(base + bump * t);
    };
    copos::MinLoc s, p;
    double ts = ms_of([&] { s = copos::min_sweep_serial(n_eigen, f); });
    double tp = ms_of([&] { p = copos::min_sweep_parallel(n_eigen, f); });
    report("jacobi 4x4 min eigenvalue", n_eigen, ts, tp,
           s.value == p.value && s.index == p.index);
  }

  {
    // Bulk fill of Lorentz boundary margins.
    copos::ConeRef lor = copos::ConeRef::lorentz(3);
    auto f = [&](std::size_t i) {
      double phi = 6.283185307179586 * static_cast<double>(i) / static_cast<double>(n_cheap);
      return copos::member(lor, copos::lorentz3_ray(phi)).margin;
    };
    std::vector<double> a, b;
    double ts = ms_of([&] {
      a.resize(n_cheap);
      copos::fill_serial(n_cheap, a.data(), f);
    });
    double tp = ms_of([&] { b = copos::fill(n_cheap, f); });
    report("lorentz boundary margins", n_cheap, ts, tp, a == b);
  }
  return 0;
}
