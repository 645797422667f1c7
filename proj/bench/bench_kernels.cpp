// OpenMP kernels against the serial reference on a 1242x375 frame.
// Parallel variants take the thread count as the benchmark argument.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "reference.hpp"
#include "scenes.hpp"
#include "zoom3d/loss.hpp"
#include "zoom3d/pipeline.hpp"
#include "zoom3d/render.hpp"
#include "zoom3d/reproject.hpp"

using namespace zoom3d;

namespace {

constexpr int kWidth = 1242;
constexpr int kHeight = 375;

struct Frame {
    Image image = fixtures::natural_image(kWidth, kHeight, 3);
    DisparityMap dn = fixtures::ramp_disparity(kWidth, kHeight);
    ZoomParams params{2.0, 32};
    FlowField flow = weighted_zoom_flow(zoom_in_flow(params, identity_grid(kWidth, kHeight)), dn);
    Image other = upscale(image, 1.05);
};

const Frame& frame() {
    static const Frame f;
    return f;
}

void set_threads(benchmark::State& state) { omp_set_num_threads(static_cast<int>(state.range(0))); }

void BM_Upscale(benchmark::State& state) {
    set_threads(state);
    for (auto _ : state) benchmark::DoNotOptimize(upscale(frame().image, 1.7));
}
void BM_UpscaleReference(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(reference::upscale(frame().image, 1.7));
}

void BM_OracleRender(benchmark::State& state) {
    set_threads(state);
    for (auto _ : state) benchmark::DoNotOptimize(render_zoom_in(frame().image, frame().dn, frame().params));
}
void BM_OracleRenderReference(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(reference::render_oracle(frame().image, frame().dn, frame().params));
}

void BM_ForwardSplat(benchmark::State& state) {
    set_threads(state);
    for (auto _ : state) benchmark::DoNotOptimize(forward_splat(frame().image, frame().dn, frame().params));
}
void BM_ForwardSplatReference(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::forward_splat(frame().image, frame().dn, frame().params));
    }
}

void BM_BackwardWarp(benchmark::State& state) {
    set_threads(state);
    for (auto _ : state) benchmark::DoNotOptimize(backward_warp(frame().image, frame().flow));
}
void BM_BackwardWarpReference(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(reference::backward_warp(frame().image, frame().flow));
}

void BM_Ssim(benchmark::State& state) {
    set_threads(state);
    for (auto _ : state) benchmark::DoNotOptimize(ssim(frame().image, frame().other));
}
void BM_SsimReference(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(reference::ssim(frame().image, frame().other, 3));
}

void BM_PerceptualLoss(benchmark::State& state) {
    set_threads(state);
    const BlurGradientExtractor fx;
    for (auto _ : state) benchmark::DoNotOptimize(perceptual_loss(frame().image, frame().other, fx));
}

void BM_CycleStage(benchmark::State& state) {
    set_threads(state);
    for (auto _ : state) benchmark::DoNotOptimize(cycle_stage(frame().image, frame().dn, frame().params, {}));
}

void thread_args(benchmark::internal::Benchmark* b) {
    b->Arg(1);
    if (omp_get_num_procs() > 1) b->Arg(omp_get_num_procs());
    b->Unit(benchmark::kMillisecond)->UseRealTime();
}

}  // namespace

BENCHMARK(BM_Upscale)->Apply(thread_args);
BENCHMARK(BM_UpscaleReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleRender)->Apply(thread_args);
BENCHMARK(BM_OracleRenderReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ForwardSplat)->Apply(thread_args);
BENCHMARK(BM_ForwardSplatReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BackwardWarp)->Apply(thread_args);
BENCHMARK(BM_BackwardWarpReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Ssim)->Apply(thread_args);
BENCHMARK(BM_SsimReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PerceptualLoss)->Apply(thread_args);
BENCHMARK(BM_CycleStage)->Apply(thread_args);

BENCHMARK_MAIN();
