#include <benchmark/benchmark.h>

#include "subdyn/chow.hpp"
#include "subdyn/heights.hpp"
#include "subdyn/parse.hpp"

using namespace subdyn;

namespace {

RingPtr q3() { return PolyRing::make(FieldDesc::rationals(), {"x", "y", "z"}); }

Morphism squaring() {
    RingPtr r = q3();
    return Morphism::make(r, {parse_poly("x^2", r), parse_poly("y^2", r), parse_poly("z^2", r)});
}

void bench_groebner_image(benchmark::State& state) {
    Morphism f = squaring();
    Subvariety X = Subvariety::make(f.ring(), {parse_poly("x + 2*y - 3*z", f.ring())});
    for (auto _ : state) {
        Subvariety Y = forward_image(f, X);
        benchmark::DoNotOptimize(Y.degree());
    }
}
BENCHMARK(bench_groebner_image);

void bench_macaulay_quadrics(benchmark::State& state) {
    RingPtr r = q3();
    std::vector<Polynomial> forms = {parse_poly("x^2 + 2*y*z", r),
                                     parse_poly("y^2 - x*z + z^2", r),
                                     parse_poly("z^2 + x*y", r)};
    for (auto _ : state) {
        Scalar res = macaulay_resultant(forms);
        benchmark::DoNotOptimize(res.is_zero());
    }
}
BENCHMARK(bench_macaulay_quadrics);

void bench_image_via_resultant(benchmark::State& state) {
    Morphism f = squaring();
    Polynomial g = parse_poly("x + 2*y - 3*z", f.ring());
    for (auto _ : state) {
        auto out = image_via_resultant(f, g);
        benchmark::DoNotOptimize(out.image_form.nterms());
    }
}
BENCHMARK(bench_image_via_resultant);

void bench_orbit_f2(benchmark::State& state) {
    RingPtr r = PolyRing::make(FieldDesc::prime(2), {"x", "y", "z"});
    Morphism f = Morphism::make(r, {parse_poly("z^2", r), parse_poly("y^2 + x*z + z^2", r),
                                    parse_poly("x^2", r)});
    Subvariety X = Subvariety::make(r, {parse_poly("y + z", r)});
    for (auto _ : state) {
        OrbitReport rep = iterate_orbit(f, X, 16);
        benchmark::DoNotOptimize(rep.period);
    }
}
BENCHMARK(bench_orbit_f2);

void bench_canonical_height(benchmark::State& state) {
    Morphism f = squaring();
    Subvariety X = Subvariety::make(f.ring(), {parse_poly("x - 2*y", f.ring())});
    for (auto _ : state) {
        HeightEstimate est = canonical_height(f, X, 4);
        benchmark::DoNotOptimize(est.value);
    }
}
BENCHMARK(bench_canonical_height);

} // namespace

BENCHMARK_MAIN();
