#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "toricount/counting.hpp"
#include "toricount/oracle.hpp"
#include "toricount/problem.hpp"

using namespace toricount;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

BuiltProblem load(const char* name) {
  return build_problem(parse_problem(slurp(std::string(TORICOUNT_FIXTURES_DIR) + "/" + name)));
}

IntMatrix random_matrix(Rng& rng, int rows, int cols, long bound) {
  IntMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = Int(rng.uniform(-bound, bound));
  return m;
}

void bm_hermite(benchmark::State& state) {
  Rng rng(1);
  int n = static_cast<int>(state.range(0));
  IntMatrix m = random_matrix(rng, n, n, 50);
  for (auto _ : state) benchmark::DoNotOptimize(hermite_normal_form(m));
}
BENCHMARK(bm_hermite)->Arg(4)->Arg(8)->Arg(12);

void bm_smith(benchmark::State& state) {
  Rng rng(2);
  int n = static_cast<int>(state.range(0));
  IntMatrix m = random_matrix(rng, n, n, 50);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(bm_smith)->Arg(4)->Arg(8)->Arg(12);

void bm_mixed_volume_3d(benchmark::State& state) {
  Rng rng(3);
  std::vector<PointSet> sets;
  for (int i = 0; i < 3; ++i)
    sets.push_back(random_point_set(rng, 3, static_cast<int>(state.range(0)), 4));
  for (auto _ : state) benchmark::DoNotOptimize(mixed_volume(sets));
}
BENCHMARK(bm_mixed_volume_3d)->Arg(4)->Arg(6)->Arg(8);

void bm_count_fixture(benchmark::State& state, const char* name) {
  BuiltProblem p = load(name);
  for (auto _ : state) benchmark::DoNotOptimize(count_components(p.data, p.fan));
}
BENCHMARK_CAPTURE(bm_count_fixture, p2_o1, "p2_o1.json");
BENCHMARK_CAPTURE(bm_count_fixture, hirzebruch_f1, "hirzebruch_f1.json");
BENCHMARK_CAPTURE(bm_count_fixture, p1xp1_fibers, "p1xp1_fibers.json");

void bm_resultant_oracle(benchmark::State& state) {
  Rng rng(4);
  auto [a, b] = draw_resultant_pair(rng, 6, 3);
  uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bernstein_count_with_retries(a, b, seed++, 10));
  }
}
BENCHMARK(bm_resultant_oracle);

}  // namespace

BENCHMARK_MAIN();
