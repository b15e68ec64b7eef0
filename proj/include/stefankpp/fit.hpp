#pragma once

#include <cstddef>
#include <span>

#include "stefankpp/errors.hpp"

namespace stefankpp {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms = 0.0;
    std::size_t n = 0;
};

/// Ordinary least squares y ~ slope*t + intercept over samples with
/// t in [t1, t2]. Throws WindowTooShort when fewer than min_samples fall
/// inside the window.
LineFit fit_line(std::span<const double> t, std::span<const double> y, double t1, double t2,
                 std::size_t min_samples = 10);

} // namespace stefankpp
