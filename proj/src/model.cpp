#include "stefankpp/model.hpp"

#include <cmath>

namespace stefankpp {

ModelParams validate(const ModelParams& p) {
    auto ok = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!ok(p.d)) throw NonPositiveParameter("d");
    if (!ok(p.a)) throw NonPositiveParameter("a");
    if (!ok(p.b)) throw NonPositiveParameter("b");
    if (!ok(p.mu)) throw NonPositiveParameter("mu");
    return p;
}

Reaction logistic_reaction(const ModelParams& params) {
    validate(params);
    Reaction r;
    r.a = params.a;
    r.b = params.b;
    r.lipschitz_bound = params.a; // g(x,u) = u(a - b u) <= a u for u >= 0
    return r;
}

} // namespace stefankpp
