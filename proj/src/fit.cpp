#include "stefankpp/fit.hpp"

#include <cmath>

namespace stefankpp {

LineFit fit_line(std::span<const double> t, std::span<const double> y, double t1, double t2,
                 std::size_t min_samples) {
    if (t.size() != y.size()) throw SolverError("fit_line: length mismatch");
    double st = 0, sy = 0, stt = 0, sty = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t1 || t[i] > t2) continue;
        st += t[i];
        sy += y[i];
        stt += t[i] * t[i];
        sty += t[i] * y[i];
        ++n;
    }
    if (n < min_samples) throw WindowTooShort("fit_line: fewer samples in window than required");

    const double nn = static_cast<double>(n);
    const double det = nn * stt - st * st;
    if (det == 0.0) throw SolverError("fit_line: degenerate window");

    LineFit f;
    f.n = n;
    f.slope = (nn * sty - st * sy) / det;
    f.intercept = (sy - f.slope * st) / nn;

    double ss = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t1 || t[i] > t2) continue;
        const double r = y[i] - (f.slope * t[i] + f.intercept);
        ss += r * r;
    }
    f.rms = std::sqrt(ss / nn);
    return f;
}

} // namespace stefankpp
