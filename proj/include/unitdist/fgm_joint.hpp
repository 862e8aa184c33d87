#pragma once

#include <cmath>
#include <stdexcept>

#include "base_positive.hpp"

namespace unitdist::fgm_joint {

using base_positive::PositiveDistSpec;

enum class DependenceKind { independent, fgm };

// A bivariate law on the positive quadrant: either the independent product
// of two marginals, or the pair coupled by the one-parameter polynomial
// copula density 1 + alpha (2 F_X(x) - 1)(2 F_Y(y) - 1), alpha in [-1, 1].
class JointSpec {
public:
    static JointSpec independent(PositiveDistSpec margx, PositiveDistSpec margy) {
        return JointSpec(std::move(margx), std::move(margy), DependenceKind::independent, 0.0);
    }
    static JointSpec fgm(PositiveDistSpec margx, PositiveDistSpec margy, double alpha) {
        return JointSpec(std::move(margx), std::move(margy), DependenceKind::fgm, alpha);
    }

    const PositiveDistSpec& margx() const noexcept { return margx_; }
    const PositiveDistSpec& margy() const noexcept { return margy_; }
    DependenceKind dependence() const noexcept { return dep_; }
    double alpha() const noexcept { return alpha_; }

private:
    JointSpec(PositiveDistSpec margx, PositiveDistSpec margy, DependenceKind dep, double alpha)
        : margx_(margx), margy_(margy), dep_(dep), alpha_(alpha) {
        if (!(std::isfinite(alpha_) && alpha_ >= -1.0 && alpha_ <= 1.0))
            throw std::invalid_argument("copula dependence parameter must lie in [-1, 1]");
    }

    PositiveDistSpec margx_;
    PositiveDistSpec margy_;
    DependenceKind dep_;
    double alpha_;
};

// Joint density at (x, y). The coupled form factors as
// f_X f_Y [1 + alpha g(x) g(y)] with g = 2F - 1, so each coordinate's cdf is
// computed exactly once. |g| <= 1 guarantees the bracket, hence the density,
// is nonnegative for every admissible alpha.
inline double joint_pdf(const JointSpec& joint, double x, double y) {
    const double fx = base_positive::pdf(joint.margx(), x);
    const double fy = base_positive::pdf(joint.margy(), y);
    if (joint.dependence() == DependenceKind::independent) return fx * fy;
    const double gx = 2.0 * base_positive::cdf(joint.margx(), x) - 1.0;
    const double gy = 2.0 * base_positive::cdf(joint.margy(), y) - 1.0;
    return fx * fy * (1.0 + joint.alpha() * (gx * gy));
}

}  // namespace unitdist::fgm_joint
