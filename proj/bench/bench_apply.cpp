#include <benchmark/benchmark.h>

#include "qdg/hilbert.hpp"

namespace {

qdg::DenseState random_state(int sites, int dim) {
  std::vector<qdg::Site> s;
  for (int i = 0; i < sites; ++i) s.push_back({"s" + std::to_string(i), dim});
  qdg::DenseState st{qdg::TensorFactorSpace(s), {}};
  st.amp.resize(st.space.total_dim());
  for (std::size_t i = 0; i < st.amp.size(); ++i) st.amp[i] = qdg::cplx(std::sin(0.37 * i), std::cos(0.11 * i));
  return st;
}

qdg::SiteOperator three_site_op(const qdg::DenseState& st) {
  const auto& s = st.space.sites();
  std::vector<qdg::Site> sup{s[1], s[s.size() / 2], s.back()};
  const int d = s[1].dim * s[s.size() / 2].dim * s.back().dim;
  qdg::Mat m = qdg::Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) m(i, (i * 7 + 3) % d) = qdg::cplx(1.0, 0.5);
  return qdg::SiteOperator::from_dense(sup, m);
}

void BM_apply_serial(benchmark::State& state) {
  const auto st = random_state(static_cast<int>(state.range(0)), 3);
  const auto op = three_site_op(st);
  for (auto _ : state) benchmark::DoNotOptimize(qdg::apply_serial(op, st));
  state.SetItemsProcessed(state.iterations() * st.amp.size());
}

void BM_apply_openmp(benchmark::State& state) {
  const auto st = random_state(static_cast<int>(state.range(0)), 3);
  const auto op = three_site_op(st);
  for (auto _ : state) benchmark::DoNotOptimize(qdg::apply(op, st));
  state.SetItemsProcessed(state.iterations() * st.amp.size());
}

}  // namespace

BENCHMARK(BM_apply_serial)->Arg(8)->Arg(11)->Arg(13);
BENCHMARK(BM_apply_openmp)->Arg(8)->Arg(11)->Arg(13);
BENCHMARK_MAIN();
