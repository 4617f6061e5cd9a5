#include "corrwork/information.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace corrwork {

Nats binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("binary_entropy: probability outside [0, 1]");
    }
    // Evaluate on the smaller branch so h2(p) and h2(1-p) share one code path.
    const double q = std::min(p, 1.0 - p);
    if (q <= 0.0) {
        return Nats{0.0};
    }
    return Nats{-q * std::log(q) - (1.0 - q) * std::log1p(-q)};
}

Nats mutual_information(CorrelationValue e) {
    const double h = binary_entropy(0.5 * (1.0 + e.value())).value;
    return Nats{std::max(0.0, kLn2 - h)};
}

Nats conditional_entropy(CorrelationValue e) {
    return binary_entropy(0.5 * (1.0 + e.value()));
}

Nats mutual_information_law(const CorrelationLaw& law, Angle theta) {
    const double t = theta.radians();
    switch (law.kind()) {
        case LawKind::ClassicalLinear:
            return Nats{std::max(0.0, kLn2 - binary_entropy(std::clamp(t / kPi, 0.0, 1.0)).value)};
        case LawKind::QuantumCosine: {
            const double s = std::sin(0.5 * t);
            return Nats{std::max(0.0, kLn2 - binary_entropy(std::clamp(s * s, 0.0, 1.0)).value)};
        }
        case LawKind::SuperQuantumStep:
            return Nats{2.0 * t / kPi - 1.0 == 0.0 ? 0.0 : kLn2};
        case LawKind::Tabulated:
            break;
    }
    return mutual_information(law.evaluate(theta));
}

}  // namespace corrwork
