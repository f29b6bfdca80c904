#include "expsys/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace expsys::io {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double number(const Json& j, const char* key)
{
    if (!j.contains(key))
        throw InputError(std::string("missing field \"") + key + "\"");
    const Json& v = j.at(key);
    if (!v.is_number())
        throw InputError(std::string("field \"") + key + "\" must be a number");
    return v.get<double>();
}

double number_or(const Json& j, const char* key, double fallback)
{
    return j.contains(key) ? number(j, key) : fallback;
}

std::int64_t integer(const Json& j, const char* key)
{
    const double v = number(j, key);
    if (v != std::floor(v) || std::abs(v) > 9e15)
        throw InputError(std::string("field \"") + key + "\" must be an integer");
    return static_cast<std::int64_t>(v);
}

PlanePoint pair(const Json& j)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw InputError("expected a point [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<double> number_list(const Json& j, const char* key)
{
    std::vector<double> out;
    if (!j.contains(key))
        return out;
    if (!j.at(key).is_array())
        throw InputError(std::string("field \"") + key + "\" must be an array");
    for (const auto& v : j.at(key)) {
        if (!v.is_number())
            throw InputError(std::string("field \"") + key + "\" must hold numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

// runs a parser, turning library argument errors into input errors
template <class F>
auto guarded(const char* what, F&& fn)
{
    try {
        return fn();
    } catch (const InputError& e) {
        throw InputError(std::string(what) + ": " + e.what());
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string(what) + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string(what) + ": " + e.what());
    } catch (const std::domain_error& e) {
        throw InputError(std::string(what) + ": " + e.what());
    }
}

std::vector<std::string> split_fields(const std::string& line)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',' || c == ' ' || c == '\t' || c == '\r') {
            if (!cur.empty())
                out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty())
        out.push_back(cur);
    return out;
}

bool parse_double(const std::string& s, double& out)
{
    const char* end = s.data() + s.size();
    const auto res = std::from_chars(s.data(), end, out);
    return res.ec == std::errc() && res.ptr == end && std::isfinite(out);
}

std::string strip_comment(const std::string& line)
{
    const auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

void dump_into(const Json& j, std::string& out, int depth)
{
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    const std::string close(static_cast<std::size_t>(2 * depth), ' ');
    switch (j.type()) {
    case Json::value_t::number_float:
        out += std::isfinite(j.get<double>()) ? format_double(j.get<double>()) : "null";
        break;
    case Json::value_t::array:
        if (j.empty()) {
            out += "[]";
            break;
        }
        if (std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); })) {
            out += '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                dump_into(j[i], out, depth + 1);
                if (i + 1 < j.size())
                    out += ", ";
            }
            out += ']';
            break;
        }
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            out += pad;
            dump_into(j[i], out, depth + 1);
            out += i + 1 < j.size() ? ",\n" : "\n";
        }
        out += close + "]";
        break;
    case Json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            break;
        }
        out += "{\n";
        std::size_t i = 0;
        for (const auto& [k, v] : j.items()) {
            out += pad + Json(k).dump() + ": ";
            dump_into(v, out, depth + 1);
            out += ++i < j.size() ? ",\n" : "\n";
        }
        out += close + "}";
        break;
    }
    default:
        out += j.dump();
    }
}

}  // namespace

Json load_spec(const std::string& arg)
{
    const auto first = arg.find_first_not_of(" \t\n");
    const bool inline_json = first != std::string::npos && (arg[first] == '{' || arg[first] == '[');
    const std::string text = inline_json ? arg : read_file(arg);
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError((inline_json ? std::string("inline JSON") : arg) + ": " + e.what());
    }
}

ConvexBody parse_body(const Json& j)
{
    return guarded("body", [&] {
        const std::string type = j.at("type").get<std::string>();
        if (type == "polygon") {
            std::vector<PlanePoint> v;
            for (const auto& p : j.at("vertices"))
                v.push_back(pair(p));
            return convex_hull(v);
        }
        if (type == "disk")
            return ConvexBody::disk(pair(j.at("center")), number(j, "radius"));
        if (type == "segment")
            return ConvexBody::segment(pair(j.at("a")), pair(j.at("b")));
        if (type == "point")
            return ConvexBody::point(pair(j.at("p")));
        throw InputError("unknown body type \"" + type + "\"");
    });
}

Json body_to_json(const ConvexBody& body)
{
    auto xy = [](PlanePoint p) { return Json::array({p.re, p.im}); };
    Json j;
    j["type"] = body.type_name();
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Polygon>) {
                j["vertices"] = Json::array();
                for (const auto& v : s.vertices)
                    j["vertices"].push_back(xy(v));
            } else if constexpr (std::is_same_v<T, Disk>) {
                j["center"] = xy(s.center);
                j["radius"] = s.radius;
            } else if constexpr (std::is_same_v<T, Segment>) {
                j["a"] = xy(s.a);
                j["b"] = xy(s.b);
            } else {
                j["p"] = xy(s.p);
            }
        },
        body.shape());
    return j;
}

PointDistribution parse_distribution(const Json& j, std::uint64_t default_seed)
{
    return guarded("distribution", [&]() -> PointDistribution {
        if (!j.is_object())
            throw InputError("expected an object");
        if (j.contains("merge")) {
            PointDistribution acc;
            bool first = true;
            for (const auto& part : j.at("merge")) {
                auto d = parse_distribution(part, default_seed);
                acc = first ? std::move(d) : acc.merged_with(d);
                first = false;
            }
            return acc;
        }
        if (j.contains("csv"))
            return read_distribution_csv(j.at("csv").get<std::string>());
        if (j.contains("points")) {
            std::vector<WeightedPoint> pts;
            for (const auto& p : j.at("points")) {
                if (!p.is_array() || (p.size() != 2 && p.size() != 3))
                    throw InputError("points must be [x, y] or [x, y, mult]");
                for (const auto& v : p)
                    if (!v.is_number())
                        throw InputError("points must hold numbers");
                std::int64_t mult = 1;
                if (p.size() == 3) {
                    const double m = p[2].get<double>();
                    if (m != std::floor(m) || m < 1)
                        throw InputError("multiplicity must be a positive integer");
                    mult = static_cast<std::int64_t>(m);
                }
                pts.push_back({{p[0].get<double>(), p[1].get<double>()}, mult});
            }
            return PointDistribution(std::move(pts), j.value("label", std::string("points")),
                                     number_or(j, "truncation_radius", std::numeric_limits<double>::infinity()));
        }
        if (j.contains("generator")) {
            const Json& g = j.at("generator");
            const std::string name = g.at("name").get<std::string>();
            if (name == "sine_lattice")
                return sine_lattice(number(g, "sigma"), integer(g, "count"));
            if (name == "radial_lattice")
                return radial_lattice(number(g, "density"), integer(g, "count"), number_or(g, "offset", 0.5),
                                      number_or(g, "angle", 0.0));
            if (name == "geometric_radii")
                return geometric_radii(number(g, "r1"), number(g, "ratio"), integer(g, "count"));
            if (name == "random_points") {
                const auto seed = g.contains("seed") ? static_cast<std::uint64_t>(integer(g, "seed")) : default_seed;
                return random_points(integer(g, "count"), number(g, "r_max"), seed);
            }
            throw InputError("unknown generator \"" + name + "\"");
        }
        throw InputError("expected \"points\", \"generator\", \"csv\" or \"merge\"");
    });
}

PointDistribution read_distribution_csv(const fs::path& path)
{
    std::istringstream in(read_file(path));
    std::vector<WeightedPoint> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto fields = split_fields(strip_comment(line));
        if (fields.empty())
            continue;
        if (lineno == 1 && fields[0] == "re")
            continue;
        double re = 0, im = 0, m = 1;
        if (fields.size() < 2 || fields.size() > 3 || !parse_double(fields[0], re) || !parse_double(fields[1], im) ||
            (fields.size() == 3 && !parse_double(fields[2], m)))
            throw InputError(path.string() + ": line " + std::to_string(lineno) + ": expected re, im, mult");
        if (m != std::floor(m) || m < 1)
            throw InputError(path.string() + ": line " + std::to_string(lineno) +
                             ": multiplicity must be a positive integer");
        pts.push_back({{re, im}, static_cast<std::int64_t>(m)});
    }
    return PointDistribution(std::move(pts), path.filename().string());
}

ConvexDecreasingFunction parse_function(const Json& j)
{
    return guarded("function", [&] {
        const std::string kind = j.at("kind").get<std::string>();
        ConvexDecreasingFunction f = [&] {
            if (kind == "constant")
                return ConvexDecreasingFunction::constant(number(j, "c"), number_or(j, "r0", 1.0));
            if (kind == "power")
                return ConvexDecreasingFunction::power(number(j, "p"), number_or(j, "r0", 1.0));
            if (kind == "reciprocal_log")
                return ConvexDecreasingFunction::reciprocal_log(static_cast<int>(integer(j, "depth")));
            if (kind == "piecewise_linear") {
                std::vector<double> x, v;
                for (const auto& k : j.at("knots")) {
                    const PlanePoint p = pair(k);
                    x.push_back(p.re);
                    v.push_back(p.im);
                }
                return ConvexDecreasingFunction::piecewise_linear(std::move(x), std::move(v));
            }
            throw InputError("unknown function kind \"" + kind + "\"");
        }();
        if (j.contains("scale"))
            f = f.scaled(number(j, "scale"));
        return f;
    });
}

SweepGrid parse_grid(const Json& j, double truncation)
{
    return guarded("grid", [&] {
        if (j.contains("r_values")) {
            SweepGrid g;
            g.r_values = number_list(j, "r_values");
            g.a_values = number_list(j, "a_values");
            g.R_values = number_list(j, "R_values");
            g.validate(0.0);
            return g;
        }
        const double r_min = number_or(j, "r_min", 2.0), a_min = number_or(j, "a_min", 2.0),
                     a_max = number_or(j, "a_max", 64.0);
        const int nr = static_cast<int>(j.contains("nr") ? integer(j, "nr") : 24);
        const int na = static_cast<int>(j.contains("na") ? integer(j, "na") : 12);
        if (j.contains("r_max"))
            return SweepGrid::geometric(r_min, number(j, "r_max"), nr, a_min, a_max, na);
        if (!std::isfinite(truncation))
            throw InputError("r_max is required when the distribution has no truncation radius");
        return SweepGrid::for_truncation(truncation, r_min, nr, a_min, a_max, na);
    });
}

std::vector<PlanePoint> read_points_file(const fs::path& path)
{
    const std::string text = read_file(path);
    std::istringstream in(text);
    std::vector<PlanePoint> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto fields = split_fields(strip_comment(line));
        if (fields.empty())
            continue;
        double x = 0, y = 0;
        if (fields.size() != 2 || !parse_double(fields[0], x) || !parse_double(fields[1], y))
            throw InputError(path.string() + ": line " + std::to_string(lineno) + ": expected two numbers");
        pts.push_back({x, y});
    }
    if (pts.empty())
        throw InputError(path.string() + ": no points");
    return pts;
}

std::string format_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string dump(const Json& j)
{
    std::string out;
    dump_into(j, out, 0);
    out += '\n';
    return out;
}

Json report_to_json(const CriterionReport& rep)
{
    Json j;
    j["criterion"] = rep.criterion;
    j["applicable"] = rep.applicable;
    j["note"] = rep.note;
    j["weight"] = rep.weight;
    j["parameters"] = Json::object();
    for (const auto& [k, v] : rep.parameters)
        j["parameters"][k] = v;
    j["grid"] = {{"r_values", rep.grid.r_values}, {"a_values", rep.grid.a_values}, {"R_values", rep.grid.R_values}};
    j["threshold"] = rep.threshold;
    j["estimate"] = rep.estimate;
    j["tolerance"] = rep.tolerance;
    j["verdict"] = to_string(rep.verdict_ge);
    j["verdict_ge"] = to_string(rep.verdict_ge);
    j["verdict_gt"] = to_string(rep.verdict_gt);
    j["trend"] = {{"slope", rep.trend.slope},
                  {"top_window", rep.trend.top_window},
                  {"second_window", rep.trend.second_window},
                  {"extrapolated", rep.trend.extrapolated}};
    j["outer_sup"] = rep.outer_sup ? Json(*rep.outer_sup) : Json(nullptr);
    j["outer_inf"] = rep.outer_inf ? Json(*rep.outer_inf) : Json(nullptr);
    j["values"] = Json::array();
    for (const auto& v : rep.values)
        j["values"].push_back({{"r", v.r}, {"a", v.a}, {"R", v.R}, {"value", v.value}});
    return j;
}

std::string report_to_csv(const CriterionReport& rep)
{
    std::string out = "r,a,R,value\n";
    for (const auto& v : rep.values) {
        out += format_double(v.r) + ',' + (std::isnan(v.a) ? std::string() : format_double(v.a)) + ',' +
               format_double(v.R) + ',' + format_double(v.value) + '\n';
    }
    return out;
}

Json classification_to_json(const Classification& c)
{
    Json j;
    j["if_diverges"] = to_string(c.if_diverges);
    j["lni_infinite"] = to_string(c.lni_infinite);
    j["decade_increments"] = c.decade_increments;
    j["psi"] = c.psi;
    j["decay_ratio"] = c.decay_ratio;
    j["windows"] = Json::array();
    for (const auto& w : c.windows)
        j["windows"].push_back({{"s", w.s}, {"log_a", w.log_a}, {"value", w.value}});
    return j;
}

void write_text(const fs::path& path, const std::string& text)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << text;
}

}  // namespace expsys::io
