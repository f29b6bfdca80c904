#include "expsys/criteria.hpp"

#include "expsys/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace expsys {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> geometric_list(double lo, double hi, int n)
{
    if (n < 1 || !(lo > 0.0) || !(hi >= lo))
        throw std::invalid_argument("bad geometric list");
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] = n == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    v.back() = hi;
    return v;
}

void require_increasing(const std::vector<double>& v, const char* what)
{
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1]))
            throw std::invalid_argument(std::string(what) + " must be strictly increasing");
}

struct Fit {
    double intercept = 0.0;
    double slope = 0.0;
    double max_residual = 0.0;
};

Fit least_squares(const std::vector<double>& x, const std::vector<double>& y)
{
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    Fit f;
    f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    f.intercept = my - f.slope * mx;
    for (std::size_t i = 0; i < x.size(); ++i)
        f.max_residual = std::max(f.max_residual, std::abs(y[i] - f.intercept - f.slope * x[i]));
    return f;
}

// index ranges of the quartiles of n sorted entries
struct Quartiles {
    std::size_t half, third, n;
};

Quartiles quartiles(std::size_t n) { return {n / 2, (3 * n) / 4, n}; }

double max_over(const std::vector<double>& v, std::size_t lo, std::size_t hi)
{
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = lo; i < hi; ++i)
        m = std::max(m, v[i]);
    return m;
}

/** Three-valued verdicts from the profile g(r) over the r grid.

    Each of the top two quartile windows is fitted by L + b r^-kappa, where r^-kappa is
    the decay of the finite-r correction. A window supports the condition when its
    estimate lies within the window tolerance of the threshold; the window tolerance is
    the larger of 1e-6 * threshold and the distance from the estimate to L plus twice
    the largest fit residual. */
void assign_verdicts(CriterionReport& rep, const std::vector<double>& r, const std::vector<double>& g, double kappa)
{
    const double thr = rep.threshold;
    const std::size_t n = r.size();
    rep.tolerance = 1e-6 * thr;
    if (n < 8) {
        rep.note = "fewer than eight grid radii inside the truncation; no verdict";
        return;
    }
    const Quartiles q = quartiles(n);
    auto fit_window = [&](std::size_t lo, std::size_t hi, auto xform) {
        std::vector<double> x, y;
        for (std::size_t i = lo; i < hi; ++i) {
            x.push_back(xform(r[i]));
            y.push_back(g[i]);
        }
        return least_squares(x, y);
    };
    const auto decay = [kappa](double x) { return std::pow(x, -kappa); };
    const auto lnx = [](double x) { return std::log(x); };
    const Fit top_fit = fit_window(q.third, n, decay);
    const Fit second_fit = fit_window(q.half, q.third, decay);
    const Fit trend = fit_window(q.half, n, lnx);

    const double top = rep.trend.top_window, second = rep.trend.second_window;
    const double L = top_fit.intercept;
    rep.trend.extrapolated = L;
    rep.trend.slope = trend.slope;
    const double tol = std::max(1e-6 * thr, std::abs(L - top) + 2.0 * top_fit.max_residual);
    const double tol2 =
        std::max(1e-6 * thr, std::abs(second_fit.intercept - second) + 2.0 * second_fit.max_residual);
    rep.tolerance = tol;

    const double drift = trend.slope * (std::log(r.back()) - std::log(r[q.half]));
    const bool top_ok = top >= thr - tol, second_ok = second >= thr - tol2;
    if (top_ok && second_ok && (drift >= -tol || L >= thr - tol))
        rep.verdict_ge = Verdict::evidence_satisfied;
    else if (!top_ok && !second_ok)
        rep.verdict_ge = Verdict::evidence_violated;
    else
        rep.verdict_ge = Verdict::inconclusive;

    if (rep.verdict_ge == Verdict::evidence_satisfied && top > thr + tol && second > thr + tol2 && L > thr + tol)
        rep.verdict_gt = Verdict::evidence_satisfied;
    else if (rep.verdict_ge == Verdict::evidence_violated || (top <= thr && L <= thr + tol))
        rep.verdict_gt = Verdict::evidence_violated;
    else
        rep.verdict_gt = Verdict::inconclusive;
}

double body_threshold(const ConvexBody& body)
{
    const double prm = perimeter(body);
    if (!(prm > 0.0))
        throw std::invalid_argument("body must have positive perimeter");
    return prm / (2.0 * std::numbers::pi);
}

std::vector<double> clip_radii(const std::vector<double>& r, double limit)
{
    std::vector<double> out;
    for (double x : r)
        if (x <= limit)
            out.push_back(x);
    return out;
}

// one-parameter functional v(r) on the grid radii up to the truncation limit
CriterionReport single_parameter(std::string name, const PointDistribution& Z, const SweepGrid& grid,
                                 const CriteriaOptions& opts, double threshold, double kappa,
                                 const std::function<double(double)>& v)
{
    CriterionReport rep;
    rep.criterion = std::move(name);
    rep.grid = grid;
    rep.threshold = threshold;
    const std::vector<double> r = clip_radii(grid.r_values, opts.truncation_fraction * Z.truncation_radius());
    const auto vals = parallel_map(r.size(), opts.jobs, [&](std::size_t i) { return v(r[i]); });
    for (std::size_t i = 0; i < r.size(); ++i)
        rep.values.push_back({r[i], kNaN, r[i], vals[i]});
    if (r.empty()) {
        rep.note = "no grid radius inside the truncation";
        return rep;
    }
    const Quartiles q = quartiles(r.size());
    rep.trend.top_window = max_over(vals, q.third, q.n);
    rep.trend.second_window = max_over(vals, q.half, q.third);
    rep.estimate = rep.trend.top_window;
    assign_verdicts(rep, r, vals, kappa);
    return rep;
}

enum class Outer { inf_over_a, sup_over_a };

/** Double-limit functional v(r, a) with inner limsup over r and outer aggregation over a
    (inner_over_r), or inner limsup over a and outer limsup over r. */
CriterionReport double_parameter(std::string name, const PointDistribution& Z, const SweepGrid& grid,
                                 const CriteriaOptions& opts, double threshold, bool inner_over_r, Outer outer,
                                 const std::function<double(double, double)>& v)
{
    CriterionReport rep;
    rep.criterion = std::move(name);
    rep.grid = grid;
    rep.threshold = threshold;
    if (grid.a_values.empty())
        throw std::invalid_argument("grid needs window ratios a");
    const double a_max = grid.a_values.back();
    const std::vector<double> r =
        clip_radii(grid.r_values, opts.truncation_fraction * Z.truncation_radius() / a_max);
    const std::vector<double>& a = grid.a_values;
    const std::size_t nr = r.size(), na = a.size();
    if (nr == 0) {
        rep.note = "no grid radius with a_max * r inside the truncation";
        return rep;
    }
    const auto rows = parallel_map(nr, opts.jobs, [&](std::size_t i) {
        std::vector<double> row(na);
        for (std::size_t j = 0; j < na; ++j)
            row[j] = v(r[i], a[j]);
        return row;
    });
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < na; ++j)
            rep.values.push_back({r[i], a[j], a[j] * r[i], rows[i][j]});

    const Quartiles qr = quartiles(nr), qa = quartiles(na);
    // psi over a for the r rows [lo, hi)
    auto psi = [&](std::size_t lo, std::size_t hi) {
        std::vector<double> p(na, -std::numeric_limits<double>::infinity());
        for (std::size_t j = 0; j < na; ++j)
            for (std::size_t i = lo; i < hi; ++i)
                p[j] = std::max(p[j], rows[i][j]);
        return p;
    };
    auto aggregate = [&](const std::vector<double>& p, Outer how) {
        if (how == Outer::sup_over_a)
            return max_over(p, qa.third, na);
        return *std::min_element(p.begin(), p.end());
    };

    std::vector<double> g(nr);
    if (inner_over_r) {
        const auto top = psi(qr.third, nr), second = psi(qr.half, qr.third);
        rep.outer_sup = aggregate(top, Outer::sup_over_a);
        rep.outer_inf = aggregate(top, Outer::inf_over_a);
        rep.trend.top_window = aggregate(top, outer);
        rep.trend.second_window = aggregate(second, outer);
        for (std::size_t i = 0; i < nr; ++i)
            g[i] = aggregate(rows[i], outer);
    } else {
        for (std::size_t i = 0; i < nr; ++i)
            g[i] = max_over(rows[i], qa.third, na);
        rep.trend.top_window = max_over(g, qr.third, nr);
        rep.trend.second_window = max_over(g, qr.half, qr.third);
        rep.outer_sup = rep.trend.top_window;
        double lo = std::numeric_limits<double>::infinity();
        for (std::size_t i = qr.third; i < nr; ++i)
            lo = std::min(lo, *std::min_element(rows[i].begin(), rows[i].end()));
        rep.outer_inf = lo;
    }
    rep.estimate = rep.trend.top_window;
    assign_verdicts(rep, r, g, 1.0);
    return rep;
}

// integral of Z^rad(t) (t/r)^p / t over [1, r], summed from the top segment down
double inner_scaled(const RadialCounting& rc, double r, double p)
{
    const auto& x = rc.jump_radii;
    const auto& c = rc.cumulative_counts;
    auto k = static_cast<std::ptrdiff_t>(std::upper_bound(x.begin(), x.end(), r) - x.begin()) - 1;
    double hi = r, acc = 0.0;
    while (k >= 0 && hi > 1.0) {
        const double lo = std::max(x[static_cast<std::size_t>(k)], 1.0);
        const auto z = static_cast<double>(c[static_cast<std::size_t>(k)]);
        const double bp = std::pow(hi / r, p);
        if (z * bp / p <= 1e-17 * acc)
            break;
        acc += z * (bp - std::pow(lo / r, p)) / p;
        hi = lo;
        --k;
    }
    return acc;
}

// integral of Z^rad(t) (r/t)^p / t over [r, infinity), Z^rad constant past the last jump
double outer_scaled(const RadialCounting& rc, double r, double p)
{
    const auto& x = rc.jump_radii;
    const auto& c = rc.cumulative_counts;
    if (x.empty())
        return 0.0;
    auto k = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), r) - x.begin());
    double lo = r, acc = 0.0;
    const auto total = static_cast<double>(rc.total());
    for (;;) {
        const double z = k == 0 ? 0.0 : static_cast<double>(c[k - 1]);
        const double ap = std::pow(r / lo, p);
        if (k == x.size()) {
            acc += z * ap / p;
            break;
        }
        if (total * ap / p <= 1e-17 * acc)
            break;
        acc += z * (ap - std::pow(r / x[k], p)) / p;
        lo = x[k];
        ++k;
    }
    return acc;
}

}  // namespace

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::evidence_satisfied:
        return "evidence-satisfied";
    case Verdict::evidence_violated:
        return "evidence-violated";
    default:
        return "inconclusive";
    }
}

SweepGrid SweepGrid::geometric(double r_min, double r_max, int nr, double a_min, double a_max, int na)
{
    SweepGrid g;
    g.r_values = geometric_list(r_min, r_max, nr);
    g.a_values = geometric_list(a_min, a_max, na);
    return g;
}

SweepGrid SweepGrid::for_truncation(double truncation, double r_min, int nr, double a_min, double a_max, int na)
{
    const double r_max = 0.8 * truncation / a_max;
    if (!(r_max > r_min))
        throw std::invalid_argument("truncation radius too small for the requested grid");
    return geometric(r_min, r_max, nr, a_min, a_max, na);
}

void SweepGrid::validate(double r_min) const
{
    if (r_values.empty())
        throw std::invalid_argument("grid has no radii");
    require_increasing(r_values, "r_values");
    require_increasing(a_values, "a_values");
    require_increasing(R_values, "R_values");
    if (r_values.front() < r_min)
        throw std::invalid_argument("grid radii must start at r >= " + std::to_string(r_min));
    if (!a_values.empty() && !(a_values.front() > 1.0))
        throw std::invalid_argument("window ratios must exceed 1");
}

CriterionReport evaluate_NG(const PointDistribution& Z, const ConvexBody& body, const SweepGrid& grid,
                            const CriteriaOptions& opts)
{
    const double thr = body_threshold(body);
    grid.validate(1.0);
    const auto m = CountingMoment::power(radial_counting(Z), -1.0);
    auto rep = single_parameter("NG", Z, grid, opts, thr, 1.0, [&](double r) { return m(1.0, r) / r; });
    rep.parameters = {{"perimeter", perimeter(body)}};
    return rep;
}

CriterionReport evaluate_B1(const PointDistribution& Z, const ConvexBody& body, double p, const SweepGrid& grid,
                            const CriteriaOptions& opts)
{
    if (!(p >= 0.0 && p < 1.0))
        throw std::invalid_argument("p must lie in [0, 1)");
    const double thr = body_threshold(body) / (1.0 - p * p);
    grid.validate(1.0);
    const RadialCounting rc = radial_counting(Z);
    const auto lower = CountingMoment::power(rc, -1.0 - p), upper = CountingMoment::power(rc, -1.0 + p);
    auto rep = single_parameter("B1", Z, grid, opts, thr, 1.0 - p, [&](double r) {
        if (p == 0.0)
            return lower(1.0, r) / r;
        return (std::pow(r, p) * lower(1.0, r) + std::pow(r, -p) * upper(1.0, r)) / (2.0 * r);
    });
    rep.parameters = {{"p", p}, {"perimeter", perimeter(body)}};
    return rep;
}

CriterionReport evaluate_B3(const PointDistribution& Z, const ConvexBody& body, double p, const SweepGrid& grid,
                            const CriteriaOptions& opts)
{
    if (!(p > 1.0) || !std::isfinite(p))
        throw std::invalid_argument("p must exceed 1");
    const double thr = body_threshold(body) * p * p / (p * p - 1.0);
    grid.validate(1.0);
    const RadialCounting rc = radial_counting(Z);
    const auto m = CountingMoment::power(rc, -1.0);
    auto rep = single_parameter("B3", Z, grid, opts, thr, 1.0, [&](double r) {
        return (2.0 * m(1.0, r) - inner_scaled(rc, r, p) + outer_scaled(rc, r, p)) / (2.0 * r);
    });
    rep.parameters = {{"p", p}, {"perimeter", perimeter(body)}};
    return rep;
}

CriterionReport evaluate_B2(const PointDistribution& Z, const ConvexBody& body, const SweepGrid& grid,
                            const CriteriaOptions& opts)
{
    const double thr = body_threshold(body);
    grid.validate(0.0);
    const auto m = CountingMoment::power(radial_counting(Z), -2.0);
    auto rep = double_parameter("B2", Z, grid, opts, thr, true, Outer::inf_over_a,
                                [&](double r, double a) { return m(r, a * r) / std::log(a); });
    rep.parameters = {{"perimeter", perimeter(body)}};
    return rep;
}

CriterionReport evaluate_T1_I(const PointDistribution& Z, const ConvexDecreasingFunction& f, double P,
                              const SweepGrid& grid, const CriteriaOptions& opts)
{
    if (!(P > 0.0))
        throw std::invalid_argument("P must be positive");
    const double t_min = std::sqrt(f.domain_start());
    grid.validate(t_min);
    const double thr = P / (2.0 * std::numbers::pi);
    const double limit = opts.truncation_fraction * Z.truncation_radius();

    // windows must grow without bound, so the outer radii form their own list
    SweepGrid used = grid;
    if (used.R_values.empty()) {
        const double a_min = grid.a_values.empty() ? 2.0 : grid.a_values.front();
        const double a_max = grid.a_values.empty() ? 64.0 : grid.a_values.back();
        const double R_hi = std::isfinite(limit) ? limit : grid.r_values.back() * a_max;
        const double R_lo = grid.r_values.front() * a_min;
        if (R_hi > R_lo)
            used.R_values = geometric_list(R_lo, R_hi, 2 * static_cast<int>(grid.r_values.size()));
    }

    struct Cell {
        double r, a, R;
    };
    std::vector<Cell> cells;
    for (double r : used.r_values)
        for (double R : used.R_values)
            if (R > r && R <= limit)
                cells.push_back({r, R / r, R});

    const StieltjesPrefix counted(radial_counting(Z),
                                  [&f, t_min](double t) { return t < t_min ? 0.0 : f.value(t * t) / t; });
    const auto D = parallel_map(cells.size(), opts.jobs, [&](std::size_t i) {
        return counted.sum(cells[i].r, cells[i].R) - thr * f.weight_integral(cells[i].r, cells[i].R);
    });

    CriterionReport rep;
    rep.criterion = "T1_I";
    rep.parameters = {{"P", P}};
    rep.weight = f.kind_name();
    rep.grid = used;
    rep.threshold = thr;
    for (std::size_t i = 0; i < cells.size(); ++i)
        rep.values.push_back({cells[i].r, cells[i].a, cells[i].R, D[i]});
    rep.trend.extrapolated = kNaN;
    if (cells.empty()) {
        rep.note = "no window inside the truncation";
        return rep;
    }

    // running sup of D over windows with R <= R_k, against K(R_k) = int f(t^2)/t from the first r
    std::vector<double> levels;
    for (const auto& c : cells)
        levels.push_back(c.R);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    std::vector<std::size_t> order(cells.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return cells[x].R < cells[y].R; });
    std::vector<double> S, K;
    double sup = -std::numeric_limits<double>::infinity();
    std::size_t pos = 0;
    const double r_first = grid.r_values.front();
    for (double level : levels) {
        while (pos < order.size() && cells[order[pos]].R <= level)
            sup = std::max(sup, D[order[pos++]]);
        if (level <= r_first)
            continue;
        S.push_back(sup);
        K.push_back(f.weight_integral(r_first, level));
    }
    rep.estimate = S.empty() ? sup : S.back();
    rep.tolerance = 1e-6 * thr;
    const std::size_t n = S.size();
    if (n < 4) {
        rep.note = "fewer than four window levels; no verdict";
        return rep;
    }
    const std::size_t half = n / 2;
    const Fit first = least_squares({K.begin(), K.begin() + static_cast<std::ptrdiff_t>(half)},
                                    {S.begin(), S.begin() + static_cast<std::ptrdiff_t>(half)});
    const Fit last = least_squares({K.begin() + static_cast<std::ptrdiff_t>(half), K.end()},
                                   {S.begin() + static_cast<std::ptrdiff_t>(half), S.end()});
    const double span = K.back() - K[half];
    const double tol = 1e-6 * thr + (span > 0.0 ? 2.0 * last.max_residual / span : 0.0);
    rep.tolerance = tol;
    rep.trend.slope = last.slope;
    rep.trend.top_window = S.back();
    rep.trend.second_window = S[half];
    rep.parameters.push_back({"early_slope", first.slope});
    if (last.slope > tol && last.slope >= 0.5 * first.slope)
        rep.verdict_ge = Verdict::evidence_satisfied;
    else if (last.slope <= tol)
        rep.verdict_ge = Verdict::evidence_violated;
    else
        rep.verdict_ge = Verdict::inconclusive;
    rep.verdict_gt = rep.verdict_ge;
    return rep;
}

namespace {

CriterionReport ratio_criterion(std::string name, const PointDistribution& Z, const ConvexDecreasingFunction& f,
                                double P, const SweepGrid& grid, const CriteriaOptions& opts, Numerator numerator,
                                bool inner_over_r)
{
    if (!(P > 0.0))
        throw std::invalid_argument("P must be positive");
    const double t_min = std::sqrt(f.domain_start());
    grid.validate(t_min);
    const RadialCounting rc = radial_counting(Z);

    std::function<double(double, double)> num;
    std::optional<StieltjesPrefix> prefix;
    std::optional<CountingMoment> moment;
    if (numerator == Numerator::stieltjes) {
        prefix.emplace(rc, [&f, t_min](double t) { return t < t_min ? 0.0 : f.value(t * t) / t; });
        num = [&](double r, double R) { return prefix->sum(r, R); };
    } else if (f.is_constant()) {
        moment.emplace(CountingMoment::power(rc, -2.0));
        num = [&](double r, double R) { return f.value(r * r) * (*moment)(r, R); };
    } else {
        moment.emplace(CountingMoment::kernel(rc, transformed_kernel(f), t_min));
        num = [&](double r, double R) { return (*moment)(r, R); };
    }

    auto rep = double_parameter(std::move(name), Z, grid, opts, P / (2.0 * std::numbers::pi), inner_over_r,
                                Outer::sup_over_a, [&](double r, double a) {
                                    return num(r, a * r) / f.log_window_integral(std::log(r), std::log(a));
                                });
    rep.parameters = {{"P", P}};
    rep.weight = f.kind_name();
    rep.note = numerator == Numerator::stieltjes ? "numerator: stieltjes" : "numerator: transformed";
    return rep;
}

}  // namespace

CriterionReport evaluate_T1_II1(const PointDistribution& Z, const ConvexDecreasingFunction& f, double P,
                                const SweepGrid& grid, const CriteriaOptions& opts, Numerator numerator)
{
    if (classify_f(f).if_diverges != Verdict::evidence_satisfied)
        throw InapplicableCriterion("condition II.1 inapplicable");
    return ratio_criterion("T1_II1", Z, f, P, grid, opts, numerator, false);
}

CriterionReport evaluate_T1_II2(const PointDistribution& Z, const ConvexDecreasingFunction& f, double P,
                                const SweepGrid& grid, const CriteriaOptions& opts, Numerator numerator)
{
    if (classify_f(f).lni_infinite != Verdict::evidence_satisfied)
        throw InapplicableCriterion("condition II.2 inapplicable");
    return ratio_criterion("T1_II2", Z, f, P, grid, opts, numerator, true);
}

ProbeGrid ProbeGrid::standard()
{
    ProbeGrid g;
    g.s_values = geometric_list(1.0, 1e6, 40);
    g.log_a_values = geometric_list(0.5, 1e3, 20);
    return g;
}

Classification classify_f(const ConvexDecreasingFunction& f, const ProbeGrid& probe)
{
    Classification out;
    const double s_min = 0.5 * std::log(f.domain_start());

    // (if): increments of the integral over decades of s
    for (int k = probe.first_decade; k <= probe.last_decade; ++k) {
        const double lo = std::pow(10.0, k);
        if (lo < s_min)
            continue;
        out.decade_increments.push_back(f.log_window_integral(lo, 9.0 * lo));
    }
    const std::size_t nd = out.decade_increments.size();
    if (nd >= 2) {
        const double last = out.decade_increments[nd - 1], prev = out.decade_increments[nd - 2];
        if (last > 0.0 && last >= 0.5 * prev)
            out.if_diverges = Verdict::evidence_satisfied;
        else if (last <= 0.1 * prev)
            out.if_diverges = Verdict::evidence_violated;
    }

    // (lni): liminf over s of the window integral, for each window length
    std::vector<double> s;
    for (double x : probe.s_values)
        if (x >= s_min)
            s.push_back(x);
    const std::size_t ns = s.size(), na = probe.log_a_values.size();
    if (ns < 4 || na < 2)
        return out;
    const Quartiles q = quartiles(ns);
    std::vector<double> second(na);
    out.psi.assign(na, std::numeric_limits<double>::infinity());
    second.assign(na, std::numeric_limits<double>::infinity());
    for (std::size_t j = 0; j < na; ++j) {
        const double la = probe.log_a_values[j];
        for (std::size_t i = 0; i < ns; ++i) {
            const double w = f.log_window_integral(s[i], la);
            out.windows.push_back({s[i], la, w});
            if (i >= q.third)
                out.psi[j] = std::min(out.psi[j], w);
            else if (i >= q.half)
                second[j] = std::min(second[j], w);
        }
    }
    const double top = out.psi.back(), sec = second.back();
    out.decay_ratio = sec > 0.0 ? top / sec : 0.0;
    if (!(top > 0.0) || out.decay_ratio < 1.0 - 1e-9) {
        out.lni_infinite = Verdict::evidence_violated;
    } else {
        // growth with the window: psi proportional to ln a when f has a positive limit
        const std::size_t mid = na / 2;
        const double expected = probe.log_a_values.back() / probe.log_a_values[mid];
        if (out.psi.back() / out.psi[mid] >= 0.5 * expected)
            out.lni_infinite = Verdict::evidence_satisfied;
    }
    return out;
}

}  // namespace expsys
