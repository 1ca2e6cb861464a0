// Wall-clock comparison of the OpenMP kernels with their serial references.
// Each pair must produce identical results; the run fails otherwise.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "spider/link_invariant.hpp"
#include "spider/sl3_clasp.hpp"
#include "spider/sl3_reduce.hpp"
#include "spider/sl3_webs.hpp"
#include "spider/theta3j.hpp"

using namespace spider;

namespace {

template <class F>
double seconds(F&& f, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    sl3::clear_closed_cache();
    auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

bool row(const char* name, double par, double ser, bool same) {
  std::printf("%-40s %10.3f %10.3f %8.2fx  %s\n", name, par, ser, ser / par, same ? "same" : "MISMATCH");
  return same;
}

}  // namespace

int main(int argc, char** argv) {
  int reps = argc > 1 ? std::stoi(argv[1]) : 3;
  std::printf("threads: %d, best of %d\n", omp_get_max_threads(), reps);
  std::printf("%-40s %10s %10s %9s\n", "kernel", "openmp s", "serial s", "speedup");
  bool ok = true;

  {
    link::LinkDiagram t = link::braid_closure(2, {1, 1, 1});
    t.colors = {{2, 0}};
    sl3::clasp(2, 0);
    LaurentPoly a, b;
    double par = seconds([&] { a = link::G3(t); }, reps);
    double ser = seconds([&] { b = link::G3_reference(t); }, reps);
    ok &= row("G3 trefoil colored (2,0)", par, ser, a == b);
  }
  {
    link::LinkDiagram d = link::braid_closure(4, {1, -2, 3, 1, -2, 3, -1, 2});
    LaurentPoly a, b;
    double par = seconds([&] { a = link::G3(d); }, reps);
    double ser = seconds([&] { b = link::G3_reference(d); }, reps);
    ok &= row("G3 4-braid closure, 8 crossings", par, ser, a == b);
  }
  {
    WebSum p = sl3::clasp(3, 2);
    WebSum sq = glue(p, p, sl3::segregated(3, 2));
    WebSum a, b;
    sl3::ReduceOptions serial;
    serial.parallel = false;
    double par = seconds([&] { a = sl3::reduce(sq); }, reps);
    double ser = seconds([&] { b = sl3::reduce(sq, serial); }, reps);
    ok &= row("reduce clasp(3,2) squared", par, ser, a == b);
    double ref = seconds([&] { b = sl3::reduce_reference(sq); }, reps);
    ok &= row("reduce vs depth-first reference", par, ref, a == b);
  }
  {
    theta::Triple t{{{1, 2}, {1, 2}, {1, 2}}};
    theta::ThetaOptions serial;
    serial.parallel = false;
    std::vector<std::vector<RatFunc>> a, b;
    double par = seconds([&] { a = theta::theta_matrix(t); }, reps);
    double ser = seconds([&] { b = theta::theta_matrix(t, serial); }, reps);
    ok &= row("theta matrix (1,2)^3", par, ser, a == b);
  }
  return ok ? 0 : 1;
}
