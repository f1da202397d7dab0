#include "entfilm/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "entfilm/errors.hpp"

namespace entfilm {

namespace {

// QUADPACK qk21 abscissae and weights.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525800790, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// Gauss 10-point weights for the odd Kronrod nodes (kXgk[1], kXgk[3], ...).
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

bool heap_less(const auto& x, const auto& y) { return x.error < y.error; }

}  // namespace

AdaptiveIntegrator::AdaptiveIntegrator(double rel_tol, double abs_tol, int max_subdivisions)
    : rel_tol_(rel_tol), abs_tol_(abs_tol), max_subdivisions_(max_subdivisions) {
    if (!(rel_tol > 0.0)) throw DomainError("rel_tol must be positive");
    if (!(abs_tol >= 0.0)) throw DomainError("abs_tol must be non-negative");
    if (max_subdivisions < 1) throw DomainError("max_subdivisions must be at least 1");
}

int AdaptiveIntegrator::add_function(Function f) {
    functions_.push_back(std::move(f));
    return static_cast<int>(functions_.size()) - 1;
}

void AdaptiveIntegrator::add_interval(int fn, double a, double b, int pieces) {
    if (pieces < 1) pieces = 1;
    const double h = (b - a) / pieces;
    for (int i = 0; i < pieces; ++i) {
        const double lo = a + i * h;
        const double hi = (i + 1 == pieces) ? b : a + (i + 1) * h;
        push(evaluate(fn, lo, hi));
    }
}

AdaptiveIntegrator::Panel AdaptiveIntegrator::evaluate(int fn, double a, double b) const {
    const Function& f = functions_.at(static_cast<std::size_t>(fn));
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const std::complex<double> fc = f(center);
    std::complex<double> kronrod = fc * kWgk[10];
    std::complex<double> gauss{0.0, 0.0};  // the 10-point Gauss rule has no centre node
    for (int j = 0; j < 10; ++j) {
        const double dx = half * kXgk[j];
        const std::complex<double> pair = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * pair;
        if (j % 2 == 1) gauss += kWg[j / 2] * pair;
    }
    kronrod *= half;
    gauss *= half;
    return {fn, a, b, kronrod, std::abs(kronrod - gauss)};
}

void AdaptiveIntegrator::push(Panel p) {
    heap_.push_back(p);
    std::push_heap(heap_.begin(), heap_.end(), heap_less<Panel, Panel>);
}

std::complex<double> AdaptiveIntegrator::total() const {
    std::complex<double> sum{0.0, 0.0};
    for (const Panel& p : heap_) sum += p.value;
    return sum;
}

double AdaptiveIntegrator::total_error() const {
    double sum = 0.0;
    for (const Panel& p : heap_) sum += p.error;
    return sum;
}

AdaptiveIntegrator::Result AdaptiveIntegrator::run() {
    for (;;) {
        const std::complex<double> value = total();
        const double error = total_error();
        const double target = std::max(abs_tol_, rel_tol_ * std::abs(value));
        if (error <= target || heap_.empty()) return {value, error, subdivisions_, true};
        if (subdivisions_ >= max_subdivisions_) return {value, error, subdivisions_, false};

        std::pop_heap(heap_.begin(), heap_.end(), heap_less<Panel, Panel>);
        const Panel worst = heap_.back();
        heap_.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Panel at floating-point resolution; keep it and give up refining.
            push(worst);
            return {value, error, subdivisions_, false};
        }
        push(evaluate(worst.fn, worst.a, mid));
        push(evaluate(worst.fn, mid, worst.b));
        ++subdivisions_;
    }
}

}  // namespace entfilm
