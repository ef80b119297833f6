#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace edgeroll::detail {

struct MinimizeResult {
    std::vector<double> x;
    double value = 0.0;
    double grad_norm = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Objective callback: returns f(x) and fills grad (same size as x).
using ObjectiveFn = std::function<double(const std::vector<double>&, std::vector<double>&)>;

/// Dense inverse-Hessian BFGS with Armijo backtracking. Problem sizes here
/// are tiny (tens of variables), so no sparsity or limited-memory tricks.
inline MinimizeResult minimize_bfgs(const ObjectiveFn& fn, std::vector<double> x, double grad_tol,
                                    int max_iters) {
    const size_t n = x.size();
    std::vector<double> h(n * n, 0.0); // inverse Hessian approximation
    for (size_t i = 0; i < n; ++i) {
        h[i * n + i] = 1.0;
    }

    std::vector<double> grad(n), grad_new(n), dir(n), x_new(n), s(n), y(n), hy(n);
    double f = fn(x, grad);

    MinimizeResult result;
    int iter = 0;
    for (; iter < max_iters; ++iter) {
        double gnorm = 0.0;
        for (double g : grad) {
            gnorm += g * g;
        }
        gnorm = std::sqrt(gnorm);
        if (gnorm < grad_tol) {
            result.converged = true;
            break;
        }

        double descent = 0.0;
        for (size_t i = 0; i < n; ++i) {
            dir[i] = 0.0;
            for (size_t j = 0; j < n; ++j) {
                dir[i] -= h[i * n + j] * grad[j];
            }
        }
        for (size_t i = 0; i < n; ++i) {
            descent += dir[i] * grad[i];
        }
        if (!(descent < 0.0)) {
            // Stale curvature; fall back to steepest descent.
            for (size_t i = 0; i < n; ++i) {
                h[i * n + i] = 1.0;
            }
            for (size_t i = 0; i < n; ++i) {
                for (size_t j = 0; j < n; ++j) {
                    if (i != j) h[i * n + j] = 0.0;
                }
            }
            for (size_t i = 0; i < n; ++i) {
                dir[i] = -grad[i];
            }
            descent = -gnorm * gnorm;
        }

        double t = 1.0;
        double f_new = f;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            for (size_t i = 0; i < n; ++i) {
                x_new[i] = x[i] + t * dir[i];
            }
            f_new = fn(x_new, grad_new);
            if (std::isfinite(f_new) && f_new <= f + 1e-4 * t * descent) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) {
            break; // step collapsed; x is as good as the model gets
        }

        double sy = 0.0;
        for (size_t i = 0; i < n; ++i) {
            s[i] = x_new[i] - x[i];
            y[i] = grad_new[i] - grad[i];
            sy += s[i] * y[i];
        }
        x.swap(x_new);
        grad.swap(grad_new);
        f = f_new;

        double snorm = 0.0, ynorm = 0.0;
        for (size_t i = 0; i < n; ++i) {
            snorm += s[i] * s[i];
            ynorm += y[i] * y[i];
        }
        if (sy > 1e-12 * std::sqrt(snorm * ynorm)) {
            const double rho = 1.0 / sy;
            // h = (I - rho s y^T) h (I - rho y s^T) + rho s s^T
            for (size_t i = 0; i < n; ++i) {
                hy[i] = 0.0;
                for (size_t j = 0; j < n; ++j) {
                    hy[i] += h[i * n + j] * y[j];
                }
            }
            double yhy = 0.0;
            for (size_t i = 0; i < n; ++i) {
                yhy += y[i] * hy[i];
            }
            for (size_t i = 0; i < n; ++i) {
                for (size_t j = 0; j < n; ++j) {
                    h[i * n + j] += rho * rho * yhy * s[i] * s[j] + rho * s[i] * s[j] -
                                    rho * (s[i] * hy[j] + hy[i] * s[j]);
                }
            }
        }
    }

    double gnorm = 0.0;
    for (double g : grad) {
        gnorm += g * g;
    }
    result.x = std::move(x);
    result.value = f;
    result.grad_norm = std::sqrt(gnorm);
    result.iterations = iter;
    return result;
}

} // namespace edgeroll::detail
