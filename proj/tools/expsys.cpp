// Command-line front end: hull, criteria, classify-f, verify-riesz,
// construct-smoothing, profile-subharmonic.

#include "expsys/io.hpp"
#include "expsys/parallel.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <numbers>

using namespace expsys;
namespace fs = std::filesystem;
using io::Json;

namespace {

enum Exit { kOk = 0, kInput = 2, kEvaluator = 3, kInequality = 4, kRelocation = 5 };

struct Common {
    std::string input, body, f, grid, out;
    std::uint64_t seed = 0;
    int jobs = 1;
    int samples = 0;
};

void setup_logging()
{
    auto logger = spdlog::stderr_color_mt("expsys");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    spdlog::set_level(spdlog::level::warn);
    if (const char* env = std::getenv("EXPSYS_LOG")) {
        const auto level = spdlog::level::from_str(env);
        if (level != spdlog::level::off || std::string(env) == "off")
            spdlog::set_level(level);
    }
}

// writes to <out>/<name>, or to stdout when no output directory was given
void emit(const Common& c, const std::string& name, const std::string& text)
{
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    io::write_text(fs::path(c.out) / name, text);
    spdlog::info("wrote {}", (fs::path(c.out) / name).string());
}

PointDistribution load_distribution(const Common& c)
{
    if (c.input.empty())
        throw io::InputError("missing --input distribution spec");
    if (fs::path(c.input).extension() == ".csv")
        return io::read_distribution_csv(c.input);
    return io::parse_distribution(io::load_spec(c.input), c.seed);
}

ConvexBody load_body(const Common& c)
{
    if (c.body.empty())
        throw io::InputError("missing --body spec");
    return io::parse_body(io::load_spec(c.body));
}

ConvexDecreasingFunction load_function(const Common& c)
{
    if (c.f.empty())
        throw io::InputError("missing --f spec");
    return io::parse_function(io::load_spec(c.f));
}

int cmd_hull(const Common& c)
{
    if (c.input.empty())
        throw io::InputError("missing --input points file");
    const auto pts = io::read_points_file(c.input);
    const ConvexBody body = convex_hull(pts);
    Json j;
    j["type"] = body.type_name();
    j["perimeter"] = perimeter(body);
    j["body"] = io::body_to_json(body);
    j["vertices"] = Json::array();
    if (!body.is<Disk>())
        for (const auto& v : vertices(body))
            j["vertices"].push_back({v.re, v.im});
    const int n = c.samples > 0 ? c.samples : 16;
    j["support_samples"] = Json::array();
    for (int k = 0; k < n; ++k) {
        const double th = 2.0 * std::numbers::pi * k / n;
        j["support_samples"].push_back({{"theta", th}, {"value", support(body, {std::cos(th), std::sin(th)})}});
    }
    const auto m = arc_length_measure(body);
    j["arc_length"] = {{"atoms", Json::array()}, {"density", m.density}, {"total", m.total_mass()}};
    for (const auto& a : m.atoms)
        j["arc_length"]["atoms"].push_back({{"angle", a.angle}, {"weight", a.weight}});
    emit(c, "hull.json", io::dump(j));
    return kOk;
}

struct CriteriaArgs {
    std::vector<std::string> names{"NG", "B1", "B2", "B3", "T1_I", "T1_II1", "T1_II2"};
    double p1 = 0.5;
    double p3 = 2.0;
    double P = 0.0;
};

int cmd_criteria(const Common& c, const CriteriaArgs& args)
{
    const PointDistribution Z = load_distribution(c);
    const ConvexBody body = load_body(c);
    const bool needs_f = std::any_of(args.names.begin(), args.names.end(),
                                     [](const std::string& n) { return n.rfind("T1", 0) == 0; });
    std::optional<ConvexDecreasingFunction> f;
    if (needs_f)
        f = load_function(c);
    const SweepGrid grid = io::parse_grid(c.grid.empty() ? Json::object() : io::load_spec(c.grid),
                                          Z.truncation_radius());
    const double P = args.P > 0.0 ? args.P : perimeter(body);
    if (P < perimeter(body))
        spdlog::warn("P = {} is below the perimeter {} of the body", P, perimeter(body));
    const CriteriaOptions opts{.jobs = c.jobs};
    spdlog::info("distribution {} with {} points, truncation {}", Z.label(), Z.total_multiplicity(),
                 Z.truncation_radius());

    int status = kOk;
    for (const auto& name : args.names) {
        CriterionReport rep;
        try {
            if (name == "NG")
                rep = evaluate_NG(Z, body, grid, opts);
            else if (name == "B1")
                rep = evaluate_B1(Z, body, args.p1, grid, opts);
            else if (name == "B2")
                rep = evaluate_B2(Z, body, grid, opts);
            else if (name == "B3")
                rep = evaluate_B3(Z, body, args.p3, grid, opts);
            else if (name == "T1_I")
                rep = evaluate_T1_I(Z, *f, P, grid, opts);
            else if (name == "T1_II1")
                rep = evaluate_T1_II1(Z, *f, P, grid, opts);
            else if (name == "T1_II2")
                rep = evaluate_T1_II2(Z, *f, P, grid, opts);
            else
                throw io::InputError("unknown criterion \"" + name + "\"");
        } catch (const InapplicableCriterion& e) {
            rep = {};
            rep.criterion = name;
            rep.applicable = false;
            rep.note = e.what();
            rep.grid = grid;
            rep.weight = f ? f->kind_name() : "";
            rep.parameters = {{"P", P}};
            spdlog::warn("{}: {}", name, e.what());
        } catch (const io::InputError&) {
            throw;
        } catch (const std::exception& e) {
            rep = {};
            rep.criterion = name;
            rep.note = std::string("error: ") + e.what();
            rep.grid = grid;
            status = kEvaluator;
            spdlog::error("{}: {}", name, e.what());
        }
        emit(c, name + ".json", io::dump(io::report_to_json(rep)));
        if (!c.out.empty())
            emit(c, name + ".csv", io::report_to_csv(rep));
        spdlog::info("{}: estimate {} threshold {} verdict {}", name, rep.estimate, rep.threshold,
                     to_string(rep.verdict_ge));
    }
    return status;
}

int cmd_classify(const Common& c)
{
    const auto f = load_function(c);
    Json out;
    out["weight"] = f.kind_name();
    out["r0"] = f.r0();
    const Json body = io::classification_to_json(classify_f(f));
    for (const auto& [k, v] : body.items())
        out[k] = v;
    emit(c, "classification.json", io::dump(out));
    return kOk;
}

struct RieszArgs {
    int suite = 20;
    bool self_test = false;
    double min_gap = 1e-3;
    double sigma = 1.0;
    std::vector<double> r_values{2.0, 4.0, 8.0};
    double R_max = 1e4;
    int nR = 25;
};

int cmd_verify_riesz(const Common& c, const RieszArgs& args)
{
    const ConvexBody body = load_body(c);
    const auto f = c.f.empty() ? ConvexDecreasingFunction::constant(1.0) : load_function(c);
    const int samples = c.samples > 0 ? c.samples : 4096;
    const std::uint64_t seed = c.seed != 0 ? c.seed : 42;

    const auto cases = lemma_suite(args.suite, seed);
    const LemmaOptions lopts{.circle_samples = samples, .min_relative_gap = args.min_gap, .negate_v = args.self_test};
    const auto reports = parallel_map(cases.size(), c.jobs, [&](std::size_t i) {
        const auto& k = cases[i];
        const RadialSubharmonic h(std::make_shared<ConvexDecreasingFunction>(k.f), k.R, k.r);
        return lemma22_check_relocating(k.g, k.g.growth_body(), h, lopts);
    });

    Json j;
    j["suite"] = {{"count", args.suite}, {"seed", seed}, {"samples", samples}, {"self_test", args.self_test}};
    j["cases"] = Json::array();
    std::string slack_csv = "case,r,R,lhs,rhs,slack,error_estimate\n";
    bool failed = false;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& rep = reports[i];
        const bool ok = rep.slack >= -rep.quadrature_error_estimate;
        failed = failed || !ok;
        j["cases"].push_back({{"case", cases[i].name},
                              {"weight", cases[i].f.kind_name()},
                              {"r", rep.test_radius},
                              {"R", cases[i].R},
                              {"lhs", rep.lhs},
                              {"rhs", rep.rhs},
                              {"slack", rep.slack},
                              {"error_estimate", rep.quadrature_error_estimate},
                              {"support_mass", rep.support_mass},
                              {"boundary_term", rep.boundary_term},
                              {"verdict", ok ? "pass" : "fail"}});
        slack_csv += cases[i].name + ',' + io::format_double(rep.test_radius) + ',' + io::format_double(cases[i].R) +
                     ',' + io::format_double(rep.lhs) + ',' + io::format_double(rep.rhs) + ',' +
                     io::format_double(rep.slack) + ',' + io::format_double(rep.quadrature_error_estimate) + '\n';
        if (!ok)
            spdlog::error("{}: slack {} below -{}", cases[i].name, rep.slack, rep.quadrature_error_estimate);
    }

    // deficit sweep for sin(sigma z) against the given body
    std::vector<double> Rs;
    const double R_lo = 2.0 * args.r_values.back();
    for (int k = 0; k < args.nR; ++k)
        Rs.push_back(R_lo * std::pow(args.R_max / R_lo, static_cast<double>(k) / (args.nR - 1)));
    const auto g = TestEntireFunction::sine_type(args.sigma);
    const auto rows = theorem2_sweep(g, body, f, args.r_values, Rs);
    std::string deficit_csv = "r,R,deficit\n";
    Json drows = Json::array();
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& row : rows) {
        drows.push_back({{"r", row.r}, {"R", row.R}, {"deficit", row.deficit}});
        deficit_csv += io::format_double(row.r) + ',' + io::format_double(row.R) + ',' +
                       io::format_double(row.deficit) + '\n';
        lo = std::min(lo, row.deficit);
        hi = std::max(hi, row.deficit);
    }
    j["deficit"] = {{"sigma", args.sigma},
                    {"body", io::body_to_json(body)},
                    {"weight", f.kind_name()},
                    {"band", rows.empty() ? 0.0 : hi - lo},
                    {"rows", drows}};
    j["verdict"] = failed ? "fail" : "pass";

    emit(c, "riesz.json", io::dump(j));
    if (!c.out.empty()) {
        emit(c, "slack.csv", slack_csv);
        emit(c, "deficit.csv", deficit_csv);
    }
    return failed ? kInequality : kOk;
}

int cmd_smoothing(const Common& c, int n_max, double x_end)
{
    const auto f = load_function(c);
    const auto seq = build_smoothing(f, n_max, {.x_begin = f.r0(), .x_end = x_end});
    const int count = c.samples > 0 ? c.samples : 1000;
    const double x0 = seq.stages.front()->domain_start(), x1 = seq.stages.front()->domain_end();

    std::vector<double> xs(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        xs[static_cast<std::size_t>(i)] = x0 + (x1 - x0) * i / (count - 1);
    Json j;
    j["weight"] = f.kind_name();
    j["window"] = {x0, x1};
    j["stages"] = Json::array();
    std::string csv = "x,f";
    for (int n = 1; n <= n_max; ++n)
        csv += ",f_" + std::to_string(n);
    csv += '\n';
    for (int n = 1; n <= n_max; ++n) {
        const auto& s = seq.stage(n);
        double sup = 0.0, halfwidth = 0.0;
        for (double x : xs)
            sup = std::max(sup, std::abs(s.value(x) - f.value(x)));
        for (std::size_t k = 0; k < s.knots().size(); ++k)
            halfwidth = std::max(halfwidth, s.patch_halfwidth(k));
        j["stages"].push_back({{"n", n},
                               {"knots", s.knots().size()},
                               {"sup_error", sup},
                               {"bound", 1.0 / n},
                               {"max_patch_halfwidth", halfwidth}});
    }
    for (double x : xs) {
        csv += io::format_double(x) + ',' + io::format_double(f.value(x));
        for (int n = 1; n <= n_max; ++n)
            csv += ',' + io::format_double(seq.stage(n).value(x));
        csv += '\n';
    }
    emit(c, "smoothing.json", io::dump(j));
    if (!c.out.empty())
        emit(c, "smoothing.csv", csv);
    return kOk;
}

int cmd_profile(const Common& c, double R, double r, double rho_min, double rho_max)
{
    const auto f = load_function(c);
    const RadialSubharmonic h(std::make_shared<ConvexDecreasingFunction>(f), R, r);
    const auto rows = radial_profile(h, rho_min, rho_max, c.samples > 0 ? c.samples : 200);
    Json j;
    j["weight"] = f.kind_name();
    j["R"] = R;
    j["r"] = r;
    j["rows"] = Json::array();
    std::string csv = "rho,F_R,V_star,laplacian\n";
    for (const auto& row : rows) {
        j["rows"].push_back(
            {{"rho", row.rho}, {"F_R", row.F_R}, {"V_star", row.V_star}, {"laplacian", row.laplacian}});
        csv += io::format_double(row.rho) + ',' + io::format_double(row.F_R) + ',' + io::format_double(row.V_star) +
               ',' + (std::isnan(row.laplacian) ? std::string() : io::format_double(row.laplacian)) + '\n';
    }
    emit(c, "profile.json", io::dump(j));
    if (!c.out.empty())
        emit(c, "profile.csv", csv);
    return kOk;
}

void add_common(CLI::App* cmd, Common& c, bool input, bool body, bool f, bool grid)
{
    if (input)
        cmd->add_option("--input", c.input, "input file or inline JSON");
    if (body)
        cmd->add_option("--body", c.body, "convex body spec (inline JSON or file)");
    if (f)
        cmd->add_option("--f", c.f, "weight function spec (inline JSON or file)");
    if (grid)
        cmd->add_option("--grid", c.grid, "sweep grid spec (inline JSON or file)");
    cmd->add_option("--out", c.out, "output directory (stdout when absent)");
    cmd->add_option("--seed", c.seed, "seed for random generators");
    cmd->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--samples", c.samples, "sample count");
}

}  // namespace

int main(int argc, char** argv)
{
    setup_logging();
    CLI::App app{"Evaluators for completeness criteria of exponential systems"};
    app.require_subcommand(1);
    Common c;

    auto* hull = app.add_subcommand("hull", "convex hull, perimeter, support samples and arc-length atoms");
    add_common(hull, c, true, false, false, false);

    CriteriaArgs crit;
    auto* criteria = app.add_subcommand("criteria", "evaluate completeness criteria on a grid");
    add_common(criteria, c, true, true, true, true);
    criteria->add_option("--criteria", crit.names, "subset of NG B1 B2 B3 T1_I T1_II1 T1_II2")->delimiter(',');
    criteria->add_option("--p1", crit.p1, "p for B1, in [0, 1)");
    criteria->add_option("--p3", crit.p3, "p for B3, > 1");
    criteria->add_option("--P", crit.P, "P for the T1 criteria (default: perimeter of the body)");

    auto* classify = app.add_subcommand("classify-f", "classify a weight by the two divergence conditions");
    add_common(classify, c, false, false, true, false);

    RieszArgs riesz;
    auto* verify = app.add_subcommand("verify-riesz", "Riesz-mass inequality suite and deficit sweep");
    add_common(verify, c, false, true, true, false);
    verify->add_option("--suite", riesz.suite, "number of seeded cases")->check(CLI::NonNegativeNumber);
    verify->add_flag("--self-test", riesz.self_test, "negate V to exercise the failure path");
    verify->add_option("--min-gap", riesz.min_gap, "smallest relative gap between the test circle and a zero");
    verify->add_option("--sigma", riesz.sigma, "type of the sine function in the deficit sweep");
    verify->add_option("--r-values", riesz.r_values, "inner radii of the deficit sweep")->delimiter(',');
    verify->add_option("--R-max", riesz.R_max, "largest outer radius of the deficit sweep");

    int n_max = 8;
    double x_end = 0.0;
    auto* smoothing = app.add_subcommand("construct-smoothing", "smoothing sequence f_1..f_n");
    add_common(smoothing, c, false, false, true, false);
    smoothing->add_option("--n", n_max, "number of stages")->check(CLI::Range(1, 30));
    smoothing->add_option("--x-end", x_end, "end of the smoothing window");

    double R = 0.0, r = 0.0, rho_min = 0.0, rho_max = 0.0;
    auto* profile = app.add_subcommand("profile-subharmonic", "radial profile of F_R, V* and the Laplacian");
    add_common(profile, c, false, false, true, false);
    profile->add_option("--R", R, "outer radius")->required();
    profile->add_option("--r", r, "inner radius of the inversion");
    profile->add_option("--rho-min", rho_min, "first profile radius");
    profile->add_option("--rho-max", rho_max, "last profile radius");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInput;
    }

    try {
        if (*hull)
            return cmd_hull(c);
        if (*criteria)
            return cmd_criteria(c, crit);
        if (*classify)
            return cmd_classify(c);
        if (*verify)
            return cmd_verify_riesz(c, riesz);
        if (*smoothing)
            return cmd_smoothing(c, n_max, x_end);
        if (*profile) {
            const auto f = load_function(c);
            const double lo = rho_min > 0.0 ? rho_min : std::sqrt(f.domain_start());
            const double hi = rho_max > 0.0 ? rho_max : 1.5 * R;
            return cmd_profile(c, R, r, lo, hi);
        }
    } catch (const io::InputError& e) {
        spdlog::error("{}", e.what());
        return kInput;
    } catch (const RelocationExhausted& e) {
        spdlog::error("{}", e.what());
        return kRelocation;
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return kEvaluator;
    }
    return kOk;
}
