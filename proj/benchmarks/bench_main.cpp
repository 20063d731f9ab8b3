#include <forge/dsl/parser.hpp>
#include <forge/form.hpp>
#include <forge/numeric.hpp>

#include <benchmark/benchmark.h>

#include <cmath>

namespace {

using namespace forge;

const std::vector<std::string> plane{"x", "y"};
const std::vector<std::string> space{"x", "y", "z"};

void BM_SimplifyRational(benchmark::State& state)
{
    const Expr e = dsl::parse_expression("(x^2 - y^2)/(x - y) + (x*y + x)/(y + 1) - 2*x");
    for (auto _ : state) benchmark::DoNotOptimize(simplify(e));
}
BENCHMARK(BM_SimplifyRational);

void BM_DifferentiateQuotient(benchmark::State& state)
{
    const Expr e = dsl::parse_expression("(x^2*y + x - 1)/((2*x - 3*x^2 - 3*x*y)^2 + 1)");
    for (auto _ : state) benchmark::DoNotOptimize(differentiate(e, "x"));
}
BENCHMARK(BM_DifferentiateQuotient);

void BM_SecondDerivativeVanishes(benchmark::State& state)
{
    DForm b(space, 1);
    b.add_term({0}, dsl::parse_expression("y*z*sin(x)"));
    b.add_term({1}, dsl::parse_expression("x^2*exp(z)"));
    b.add_term({2}, dsl::parse_expression("exp(x)*y/(1 + z^2)"));
    for (auto _ : state) benchmark::DoNotOptimize(exterior_derivative(exterior_derivative(b)).is_zero());
}
BENCHMARK(BM_SecondDerivativeVanishes);

void BM_ResidueLoopIntegral(benchmark::State& state)
{
    DForm t(plane, 1);
    t.add_term({0}, dsl::parse_expression("-y/(x^2 + y^2)"));
    t.add_term({1}, dsl::parse_expression("x/(x^2 + y^2)"));
    const Path circle{Circle{0, 0, 1}};
    const int panels = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(line_integral(t, circle, panels).value);
}
BENCHMARK(BM_ResidueLoopIntegral)->Arg(16)->Arg(64)->Arg(256);

void BM_CompositeGauss(benchmark::State& state)
{
    const int panels = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(composite_gauss([](double s) { return std::exp(-s * s); }, -3.0, 3.0, panels));
    }
}
BENCHMARK(BM_CompositeGauss)->Arg(64)->Arg(1024);

} // namespace

BENCHMARK_MAIN();
