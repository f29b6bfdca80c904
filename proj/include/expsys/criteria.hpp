#pragma once

#include "expsys/convexfun.hpp"
#include "expsys/distributions.hpp"
#include "expsys/geometry.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace expsys {

enum class Verdict { evidence_satisfied, evidence_violated, inconclusive };

std::string to_string(Verdict v);

/// A condition of the second group does not apply to the given weight.
struct InapplicableCriterion : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Finite truncation of the limits: radii r, window ratios a > 1 (R = a r), and an
    optional independent list of outer radii R used by the unbounded-sup criterion. */
struct SweepGrid {
    std::vector<double> r_values;
    std::vector<double> a_values;
    std::vector<double> R_values;

    static SweepGrid geometric(double r_min, double r_max, int nr, double a_min = 2.0, double a_max = 64.0,
                               int na = 12);
    /// grid whose largest window a_max * r_max ends at 80% of the truncation radius
    static SweepGrid for_truncation(double truncation, double r_min = 2.0, int nr = 24, double a_min = 2.0,
                                    double a_max = 64.0, int na = 12);

    /// throws std::invalid_argument unless the lists are strictly increasing, r >= r_min and a > 1
    void validate(double r_min) const;
};

struct GridValue {
    double r;
    double a;  // NaN for one-parameter functionals
    double R;  // a r, or the outer radius
    double value;
};

struct Trend {
    double slope = 0.0;          // least-squares slope against ln r over the top half
    double top_window = 0.0;     // estimate from the top quartile of r
    double second_window = 0.0;  // estimate from the second quartile of r
    double extrapolated = 0.0;   // intercept of the fit against 1/r
};

struct CriterionReport {
    std::string criterion;
    std::vector<std::pair<std::string, double>> parameters;
    std::string weight;  // weight kind for the f-criteria
    SweepGrid grid;
    std::vector<GridValue> values;
    double estimate = 0.0;
    double threshold = 0.0;
    double tolerance = 0.0;
    Verdict verdict_ge = Verdict::inconclusive;
    Verdict verdict_gt = Verdict::inconclusive;
    Trend trend;
    /// outer aggregates of the double-limit functionals
    std::optional<double> outer_sup, outer_inf;
    bool applicable = true;
    std::string note;
};

struct CriteriaOptions {
    int jobs = 1;
    /// windows end at this fraction of the truncation radius
    double truncation_fraction = 0.8;
};

CriterionReport evaluate_NG(const PointDistribution& Z, const ConvexBody& body, const SweepGrid& grid,
                            const CriteriaOptions& opts = {});
CriterionReport evaluate_B1(const PointDistribution& Z, const ConvexBody& body, double p, const SweepGrid& grid,
                            const CriteriaOptions& opts = {});
CriterionReport evaluate_B2(const PointDistribution& Z, const ConvexBody& body, const SweepGrid& grid,
                            const CriteriaOptions& opts = {});
CriterionReport evaluate_B3(const PointDistribution& Z, const ConvexBody& body, double p, const SweepGrid& grid,
                            const CriteriaOptions& opts = {});

CriterionReport evaluate_T1_I(const PointDistribution& Z, const ConvexDecreasingFunction& f, double P,
                              const SweepGrid& grid, const CriteriaOptions& opts = {});

/// numerator of the ratio functionals: the Stieltjes sum or its integration-by-parts form
enum class Numerator { stieltjes, transformed };

CriterionReport evaluate_T1_II1(const PointDistribution& Z, const ConvexDecreasingFunction& f, double P,
                                const SweepGrid& grid, const CriteriaOptions& opts = {},
                                Numerator numerator = Numerator::stieltjes);
CriterionReport evaluate_T1_II2(const PointDistribution& Z, const ConvexDecreasingFunction& f, double P,
                                const SweepGrid& grid, const CriteriaOptions& opts = {},
                                Numerator numerator = Numerator::transformed);

/// Probe grid in the variable s = ln t: window starts s and window lengths ln a.
struct ProbeGrid {
    std::vector<double> s_values;
    std::vector<double> log_a_values;
    /// decades [10^k, 10^(k+1)] of s used by the divergence test
    int first_decade = 0;
    int last_decade = 12;

    static ProbeGrid standard();
};

struct WindowSample {
    double s;
    double log_a;
    double value;
};

struct Classification {
    Verdict if_diverges = Verdict::inconclusive;
    Verdict lni_infinite = Verdict::inconclusive;
    std::vector<double> decade_increments;  // integral of f(t^2)/t over each decade of s
    std::vector<WindowSample> windows;
    std::vector<double> psi;  // liminf estimate over s for each log_a
    double decay_ratio = 1.0; // top-quartile over second-quartile minimum at the largest a
};

Classification classify_f(const ConvexDecreasingFunction& f, const ProbeGrid& probe = ProbeGrid::standard());

}  // namespace expsys
