#pragma once

#include "lsf/elastica.hpp"
#include "lsf/ribaucour.hpp"
#include "lsf/surface_analysis.hpp"

#include <json.hpp>

#include <string>

namespace lsf::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormat = "lsf-1";

// 17 significant digits, lowercase exponent; non-finite values become null.
std::string format_double(double x);
// Deterministic text form: objects indented, numeric arrays on one line.
std::string dump(const Json& j);

Json read_json(const std::string& path);
void write_atomic(const std::string& path, const std::string& content);
void write_json(const std::string& path, const Json& j);

Json vec_to_json(const PseudoVector& x);
PseudoVector vec_from_json(const Json& j);

Json curve_to_json(const LegendreCurve& c);
Json curve_to_json(const LegendreCurve& c, const ElasticaSolution& sol, std::size_t stride);
LegendreCurve curve_from_json(const Json& j);

Json complex_to_json(const ComplexCurve& c);
// Accepts sampled curves ({"v", "l"}) or a named generator.
ComplexCurve complex_from_json(const Json& j, const SpaceFormFrame& frame = SpaceFormFrame::euclidean());

Json surface_to_json(const SurfaceGrid& g, double closure = 0.0);
SurfaceGrid surface_from_json(const Json& j);

Json report_to_json(const SurfaceReport& r);
Json report_to_json(const RibaucourReport& r);

enum class MeshFormat { obj, ply };
MeshFormat mesh_format(const std::string& name);
std::string export_mesh(const SurfaceGrid& g, const SpaceFormFrame& frame, MeshFormat format);

}  // namespace lsf::io
