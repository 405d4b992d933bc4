#include <benchmark/benchmark.h>

#include <numeric>

#include "obk/generate.hpp"
#include "obk/render.hpp"

namespace {

using namespace obk;

/// Every class parallel and alike oriented: the longest dependency chains.
LinkPlacement chain_placement(int genus, int components) {
  PlacementShape shape;
  shape.genus = genus;
  shape.boundary_count = 2;
  shape.classes.assign(1, std::vector<Sign>(static_cast<std::size_t>(components), Sign::positive));
  for (std::size_t i = 1; i < shape.classes[0].size(); i += 2) shape.classes[0][i] = Sign::negative;
  Rng rng(1);
  return make_placement(shape, rng);
}

void BM_TwistMatrix(benchmark::State& state) {
  const Surface s = Surface::make(static_cast<int>(state.range(0)), 3);
  HomologyVector c = s.zero();
  std::iota(c.begin(), c.end(), Coeff{-2});
  for (auto _ : state) benchmark::DoNotOptimize(twist_matrix(s, c));
}
BENCHMARK(BM_TwistMatrix)->Arg(1)->Arg(4)->Arg(16);

void BM_MonodromyAction(benchmark::State& state) {
  Rng rng(2);
  const OpenBook ob = random_open_book(rng, 3, 3, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(monodromy_homology_action(ob));
}
BENCHMARK(BM_MonodromyAction)->Arg(4)->Arg(32);

void BM_BuildSchedule(benchmark::State& state) {
  const LinkPlacement p = chain_placement(1, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_schedule(p));
}
BENCHMARK(BM_BuildSchedule)->Arg(2)->Arg(8)->Arg(16);

void BM_ApplySchedule(benchmark::State& state) {
  const LinkPlacement p = chain_placement(1, static_cast<int>(state.range(0)));
  const Certificate cert = build_schedule(p);
  for (auto _ : state) benchmark::DoNotOptimize(apply_schedule(p, cert));
}
BENCHMARK(BM_ApplySchedule)->Arg(2)->Arg(8)->Arg(16);

void BM_PermuteAndCheck(benchmark::State& state) {
  PlacementShape shape{0, 3, {{Sign::positive}, {Sign::negative}, {Sign::positive}, {Sign::positive}}};
  Rng rng(3);
  const LinkPlacement p = make_placement(shape, rng);
  const Certificate cert = build_schedule(p);
  const std::vector<std::size_t> perm{3, 1, 0, 2};
  for (auto _ : state) benchmark::DoNotOptimize(permute_and_check(p, cert, perm));
}
BENCHMARK(BM_PermuteAndCheck);

void BM_EmitParse(benchmark::State& state) {
  const LinkPlacement p = chain_placement(2, 8);
  const Document doc{kFormatVersion, CertificateDocument{p, apply_schedule(p, build_schedule(p)).certificate}};
  for (auto _ : state) benchmark::DoNotOptimize(parse_document(emit(doc)));
}
BENCHMARK(BM_EmitParse);

void BM_RoundTripSg(benchmark::State& state) {
  Rng rng(4);
  const SgCertificate t = transverse_certificate(random_witness(rng, 2));
  for (auto _ : state) benchmark::DoNotOptimize(roundtrip_sg(t));
}
BENCHMARK(BM_RoundTripSg);

void BM_RenderCertificate(benchmark::State& state) {
  const LinkPlacement p = chain_placement(2, 6);
  const CertificateDocument doc{p, build_schedule(p)};
  for (auto _ : state) benchmark::DoNotOptimize(render_svg(doc));
}
BENCHMARK(BM_RenderCertificate);

}  // namespace

BENCHMARK_MAIN();
