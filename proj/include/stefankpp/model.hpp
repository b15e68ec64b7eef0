#pragma once

#include <cmath>
#include <functional>
#include <span>

#include "stefankpp/errors.hpp"

namespace stefankpp {

/**
 * Shared model constants: diffusion d, linear growth a, saturation b, and the
 * free-boundary coefficient mu (front normal speed = mu * |grad u|).
 *
 * Immutable value type; all fields must be strictly positive.
 */
struct ModelParams {
    double d = 1.0;  ///< diffusion coefficient
    double a = 1.0;  ///< linear growth rate
    double b = 1.0;  ///< saturation coefficient
    double mu = 1.0; ///< free-boundary coefficient

    /// Latent-heat jump carried by the enthalpy formulation.
    double latent_heat() const { return d / mu; }
    /// Upper bound for every admissible wave speed.
    double c_max() const { return 2.0 * std::sqrt(a * d); }
    /// Carrying capacity of the logistic reaction.
    double carrying_capacity() const { return a / b; }
    /// Diffusion length; the natural spatial scale of front profiles.
    double diffusion_length() const { return std::sqrt(d / a); }
};

/// Returns `p` unchanged if all fields are strictly positive and finite,
/// otherwise throws NonPositiveParameter naming the offending field.
ModelParams validate(const ModelParams& p);

/**
 * Reaction term g(x, u) with a Lipschitz bound K such that g(x,u) <= K*u.
 *
 * The logistic instance g = a*u - b*u^2 is kept as plain coefficients so hot
 * solver loops can inline it; arbitrary position-dependent reactions go
 * through `custom`.
 */
struct Reaction {
    double a = 0.0;
    double b = 0.0;
    double lipschitz_bound = 0.0;
    std::function<double(std::span<const double> x, double u)> custom;

    double evaluate(std::span<const double> x, double u) const {
        if (custom) return custom(x, u);
        return u * (a - b * u);
    }
    /// Position-independent fast path used by the grid solvers.
    double evaluate(double u) const {
        if (custom) return custom({}, u);
        return u * (a - b * u);
    }
    bool is_logistic() const { return !custom; }
};

/// The canonical reaction a*u - b*u^2 with K = a.
Reaction logistic_reaction(const ModelParams& params);

} // namespace stefankpp
