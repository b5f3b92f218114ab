#include "lambda_esd/tolerances.hpp"

#include <cmath>
#include <cstdlib>

namespace lambda_esd {

Tolerances Tolerances::from_environment() {
    Tolerances tol;
    if (const char* env = std::getenv("LAMBDA_ESD_TOLERANCE")) {
        char* end = nullptr;
        double value = std::strtod(env, &end);
        if (end != env && *end == '\0' && std::isfinite(value) && value > 0.0) {
            tol.state_validation = value;
        }
    }
    return tol;
}

const Tolerances& default_tolerances() {
    static const Tolerances tol = Tolerances::from_environment();
    return tol;
}

} // namespace lambda_esd
