#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace expsys {

struct OneSided {
    double left;
    double right;
};

/** A positive convex decreasing function of one positive variable.

    Both the catalog functions and the smoothing stages built from them implement
    this interface; the radial constructions only need values and derivatives. */
class ConvexWeight {
public:
    virtual ~ConvexWeight() = default;

    /// values are defined on [domain_start(), domain_end()]
    virtual double domain_start() const = 0;
    virtual double domain_end() const;

    virtual double value(double x) const = 0;
    /// one-sided derivatives, defined for domain_start() < x
    virtual OneSided derivative(double x) const = 0;
    /// throws std::domain_error where the function is not twice differentiable
    virtual double second_derivative(double x) const = 0;
};

struct ConstantKind {
    double c;
};
struct PowerKind {
    double p;  // value x^-p
};
struct ReciprocalLogKind {
    int depth;  // value 1/(ln o ... o ln)(x), `depth` logarithms
};
struct PiecewiseLinearKind {
    std::vector<double> x;  // strictly increasing knots
    std::vector<double> v;  // values; constant after the last knot
};

/// The weight catalog: constant, negative power, reciprocal iterated logarithm and
/// convex piecewise-linear tables. The factories validate positivity, monotonicity
/// and convexity and throw std::invalid_argument otherwise.
class ConvexDecreasingFunction final : public ConvexWeight {
public:
    using Kind = std::variant<ConstantKind, PowerKind, ReciprocalLogKind, PiecewiseLinearKind>;

    static ConvexDecreasingFunction constant(double c, double r0 = 1.0);
    static ConvexDecreasingFunction power(double p, double r0 = 1.0);
    /// r0 defaults to the tower e^e^...^e of height `depth` (depth 1..3)
    static ConvexDecreasingFunction reciprocal_log(int depth);
    static ConvexDecreasingFunction piecewise_linear(std::vector<double> x, std::vector<double> v);

    const Kind& kind() const { return kind_; }
    std::string kind_name() const;
    bool is_constant() const { return std::holds_alternative<ConstantKind>(kind_); }

    /// start of the domain; equals the natural r0 unless extended below it
    double r0() const { return start_; }
    double domain_start() const override { return start_; }

    double value(double x) const override;
    OneSided derivative(double x) const override;
    double second_derivative(double x) const override;

    /// f(e^y), usable far beyond the double range of x
    double value_at_log(double y) const;

    /// integral of f(t^2)/t over [e^s, e^(s + log_a)], computed in the variable ln t
    double log_window_integral(double s, double log_a) const;
    /// integral of f(t^2)/t over [r, R]
    double weight_integral(double r, double R) const;

    /// Copy extended affinely below r0 down to `new_start` with slope f'_+(r0).
    /// The extension stays convex, decreasing and positive.
    ConvexDecreasingFunction extended_below(double new_start) const;

    /// Same function times a positive factor.
    ConvexDecreasingFunction scaled(double factor) const;
    double factor() const { return factor_; }

private:
    ConvexDecreasingFunction(Kind k, double r0);

    double natural_value(double x) const;
    OneSided natural_derivative(double x) const;

    Kind kind_;
    double r0_;     // natural domain start
    double start_;  // <= r0_, affine below r0_
    double factor_ = 1.0;
};

/** Verifies the chord inequality for convex decreasing functions at r0 < x1 < x2:
    0 >= f'(x2) >= (f(x2) - f(x1))/(x2 - x1) >= f'(x1) for both one-sided derivatives,
    with absolute tolerance 1e-10. Throws std::invalid_argument unless x1 < x2. */
bool chord_inequality_check(const ConvexWeight& f, double x1, double x2);

/** One stage f_n of the smoothing sequence: the chord interpolant of f on a knot set
    with spacing and value gaps at most 2^-n, each interior kink replaced by a cubic
    patch on [x_k - delta_k, x_k + delta_k] whose second derivative is a hat of
    integral equal to the slope jump. The result is C^2, convex and decreasing on
    [knots.front(), knots.back()]. */
class SmoothingStage final : public ConvexWeight {
public:
    SmoothingStage(int n, std::vector<double> knots, std::vector<double> values);

    int n() const { return n_; }
    const std::vector<double>& knots() const { return x_; }
    double patch_halfwidth(std::size_t k) const { return delta_[k]; }

    double domain_start() const override { return x_.front(); }
    double domain_end() const override { return x_.back(); }
    double value(double x) const override;
    OneSided derivative(double x) const override;
    double second_derivative(double x) const override;

    /// chord interpolant l_n before smoothing
    double chord_value(double x) const;

private:
    struct Local {
        std::size_t seg;      // segment index
        std::ptrdiff_t knot;  // patch knot or -1
        double u;             // offset from the patch start
    };
    Local locate(double x) const;

    int n_;
    std::vector<double> x_, v_, slope_, delta_;
};

struct SmoothingOptions {
    double x_begin = 0.0;      // 0 means r0 of the base function
    double x_end = 0.0;        // 0 means x_begin + window
    double window = 256.0;
    double value_cap = 1e6;    // largest admissible f(x_begin)
};

struct SmoothingSequence {
    ConvexDecreasingFunction base;
    std::vector<std::shared_ptr<const SmoothingStage>> stages;  // stages[n-1] is f_n

    const SmoothingStage& stage(int n) const { return *stages.at(static_cast<std::size_t>(n - 1)); }
};

SmoothingSequence build_smoothing(const ConvexDecreasingFunction& f, int n_max,
                                  const SmoothingOptions& opts = {});

}  // namespace expsys
