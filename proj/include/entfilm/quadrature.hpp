#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace entfilm {

// Globally adaptive 21-point Gauss-Kronrod integration of complex functions
// over a set of panels. Every panel may carry its own integrand; the panel with
// the largest error estimate is bisected until the summed estimate drops below
// max(abs_tol, rel_tol * |result|).
class AdaptiveIntegrator {
public:
    using Function = std::function<std::complex<double>(double)>;

    struct Result {
        std::complex<double> value;
        double error_estimate = 0.0;
        int subdivisions = 0;
        bool converged = false;
    };

    AdaptiveIntegrator(double rel_tol, double abs_tol, int max_subdivisions);

    // Registers an integrand and returns its handle.
    int add_function(Function f);

    // Adds [a, b] of function `fn`, pre-split into `pieces` equal panels.
    void add_interval(int fn, double a, double b, int pieces = 1);

    // Refines until converged or the subdivision budget is spent. May be called
    // again after adding more intervals; earlier panels are kept.
    Result run();

private:
    struct Panel {
        int fn;
        double a;
        double b;
        std::complex<double> value;
        double error;
    };

    Panel evaluate(int fn, double a, double b) const;
    void push(Panel p);
    std::complex<double> total() const;
    double total_error() const;

    double rel_tol_;
    double abs_tol_;
    int max_subdivisions_;
    int subdivisions_ = 0;
    std::vector<Function> functions_;
    std::vector<Panel> heap_;  // max-heap on error
};

}  // namespace entfilm
