#include "gtpinch/policy.hpp"

#include <cmath>
#include <string>

#include "gtpinch/error.hpp"

namespace gtpinch {

void NumericPolicy::validate() const {
    auto check = [](double v, const char* name) {
        if (!std::isfinite(v) || v <= 0.0) {
            throw Error(ErrorKind::InvalidArgument,
                        std::string(name) + " must be finite and positive, got " + std::to_string(v));
        }
    };
    check(herm_tol, "herm_tol");
    check(cluster_tol, "cluster_tol");
    check(psd_tol, "psd_tol");
    check(residual_tol, "residual_tol");
}

}  // namespace gtpinch
