#include <benchmark/benchmark.h>

#include "stbc/simulator.hpp"
#include "stbc/verify.hpp"

using namespace stbc;

namespace {

CycMatrix random_matrix(const CodeSpec& s, Rng& rng) {
  std::vector<std::int64_t> z(2 * s.n * s.n);
  for (auto& v : z) v = 2 * rng.uniform_int(0, 3) - 3;
  return left_regular_matrix(s, ells_from_coordinates(s, z)).matrix;
}

void BM_CyclotomicMul(benchmark::State& st) {
  const CodeSpec s = construct_A(static_cast<int>(st.range(0)));
  Rng rng(1, 1);
  const auto m = random_matrix(s, rng);
  const CyclotomicInt a = m[0][0].lift(s.conductor), b = m[1][0].lift(s.conductor);
  for (auto _ : st) benchmark::DoNotOptimize(a * b);
  st.SetLabel("conductor " + std::to_string(s.conductor));
}
BENCHMARK(BM_CyclotomicMul)->Arg(2)->Arg(5)->Arg(9);

void BM_ExactDet(benchmark::State& st) {
  const CodeSpec s = construct_B(static_cast<int>(st.range(0)));
  Rng rng(2, 1);
  const auto m = random_matrix(s, rng);
  for (auto _ : st) benchmark::DoNotOptimize(exact_det(m));
}
BENCHMARK(BM_ExactDet)->DenseRange(2, 6);

void BM_SphereDecode(benchmark::State& st) {
  const Codebook book = row_delete(build_codebook(perfect_3x3_spec(), 2), {0});
  const ChannelModel ch{book.n_t, 2, book.T, db_to_linear(static_cast<double>(st.range(0)))};
  const double theta = book.theta(ch.snr);
  std::uint64_t t = 0;
  for (auto _ : st) {
    st.PauseTiming();
    Rng rng(3, 0, t++);
    const Eigen::MatrixXcd h = ch.draw_channel(rng);
    std::vector<std::int64_t> z(book.real_dim());
    for (auto& v : z) v = 2 * rng.uniform_int(0, 1) - 1;
    const Eigen::MatrixXcd y = theta * h * book.codeword(z) + ch.draw_noise(rng);
    st.ResumeTiming();
    benchmark::DoNotOptimize(sphere_decode(book, y, h, theta));
  }
}
BENCHMARK(BM_SphereDecode)->Arg(10)->Arg(20);

void BM_NvdExhaustive(benchmark::State& st) {
  const Codebook book = build_codebook(construct_A(2), 2);
  for (auto _ : st) benchmark::DoNotOptimize(check_nvd(book, NvdMode::Exhaustive, 0, 1, 1));
}
BENCHMARK(BM_NvdExhaustive)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
