// Times the OpenMP-parallel kernels against their serial reference
// implementations and cross-checks that both return the same answer.
// Usage: gfperm-bench [field-spec]   (default p=3,m=1,n=8)

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gfperm/analysis.hpp"
#include "gfperm/field_spec.hpp"
#include "gfperm/rng.hpp"
#include "gfperm/translators.hpp"
#include "gfperm/verify.hpp"

using namespace gfperm;

namespace {

template <class Fn>
double ms_of(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

int g_mismatches = 0;

void row(const char* name, double serial_ms, double parallel_ms, bool same) {
  std::printf("%-16s %12.2f %12.2f %10.2fx  %s\n", name, serial_ms, parallel_ms,
              parallel_ms > 0 ? serial_ms / parallel_ms : 0.0, same ? "ok" : "MISMATCH");
  if (!same) ++g_mismatches;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string spec = argc > 1 ? argv[1] : "p=3,m=1,n=8";
  const FieldTower t = tower_from_spec(spec);
  std::printf("field %s (order %llu)\n", format_field_spec(t).c_str(),
              static_cast<unsigned long long>(t.order()));
#ifdef _OPENMP
  std::printf("openmp enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("openmp disabled; parallel entry points run their serial path\n");
#endif
  std::printf("%-16s %12s %12s %10s\n", "kernel", "serial_ms", "parallel_ms", "speedup");

  Rng rng(42);
  const GroundFn f = ground_fn_from_fn(
      t, [&](Elt x) { return t.trace(x); }, "Tr(x)");
  const FieldMap h = random_field_map(t, rng);

  {
    TranslatorSpace a, b;
    const double s = ms_of([&] { a = lambda_space_serial(t, f); });
    const double p = ms_of([&] { b = lambda_space(t, f); });
    row("lambda_space", s, p, a.value_of == b.value_of);
  }
  {
    MultiplierSet a, b;
    const double s = ms_of([&] { a = mob_set_serial(t, h); });
    const double p = ms_of([&] { b = mob_set(t, h); });
    row("mob_set", s, p, a.members == b.members);
  }
  {
    DirectionSet a, b;
    const double s = ms_of([&] { a = direction_set_serial(t, h); });
    const double p = ms_of([&] { b = direction_set(t, h); });
    row("direction_set", s, p, a.members == b.members);
  }
  return g_mismatches == 0 ? 0 : 1;
}
