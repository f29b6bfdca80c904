#pragma once

#include "expsys/convexfun.hpp"
#include "expsys/criteria.hpp"
#include "expsys/distributions.hpp"
#include "expsys/geometry.hpp"
#include "expsys/riesz.hpp"
#include "expsys/subharmonic.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace expsys::io {

using Json = nlohmann::ordered_json;

/// Malformed or missing input; the CLI maps it to exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Inline JSON when the argument starts with '{' or '[', otherwise the path of a JSON file.
Json load_spec(const std::string& arg);

ConvexBody parse_body(const Json& j);
Json body_to_json(const ConvexBody& body);

/** {"points": [[x, y, mult], ...], "truncation_radius": T}, or
    {"generator": {"name": ..., ...}}, or {"csv": path}. Several sources may be merged
    by listing them under "merge". Generators without a seed use `default_seed`. */
PointDistribution parse_distribution(const Json& j, std::uint64_t default_seed);
/// CSV with columns re, im, mult; a header line is optional.
PointDistribution read_distribution_csv(const std::filesystem::path& path);

ConvexDecreasingFunction parse_function(const Json& j);

/** {"r_values": [...], "a_values": [...], "R_values": [...]} or
    {"r_min": .., "r_max": .., "nr": .., "a_min": .., "a_max": .., "na": ..}; when r_max is
    absent the grid is sized from the truncation radius. */
SweepGrid parse_grid(const Json& j, double truncation);

/// Points for the hull command: one "x y" or "x,y" pair per line; '#' starts a comment.
std::vector<PlanePoint> read_points_file(const std::filesystem::path& path);

/// JSON text with every double printed with 17 significant digits; NaN and infinities become null.
std::string dump(const Json& j);
/// Decimal text of x with 17 significant digits.
std::string format_double(double x);

Json report_to_json(const CriterionReport& rep);
/// r, a, R, value rows of a report
std::string report_to_csv(const CriterionReport& rep);

Json classification_to_json(const Classification& c);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace expsys::io
