#pragma once

#include <string>
#include <vector>

#include "zonalval/dspace.hpp"
#include "zonalval/geometry.hpp"

namespace zonalval::io {

// Body-spec JSON:
// {"n":3,"type":"cone","h":1.0,"scale":1.0,"translate":[0,0,0]}
// types: polytope (vertices), revolution (profile), disk/ball (radius),
// cylinder (radius, height), ballsum (base, t).
geom::ConvexBody body_from_json(const std::string& text);
std::string body_to_json(const geom::ConvexBody& K);
// canonical single-line key used by external valuation tables
std::string body_key(const geom::ConvexBody& K);

// Density-spec JSON:
// {"a":0.5,"type":"power","beta":0.25} | {"type":"poly","coeffs":[...],"a":..}
// | {"type":"sampled","nodes":[...],"g":[...],"tail":[dm,dp],"a":..}
dspace::ZonalDensity density_from_json(const std::string& text, double default_a = 0.0);
std::string density_to_json(const dspace::ZonalDensity& f);

// CLI shorthand: "power:0.25" | "poly:[c0,c1,...]" | a file path | inline JSON
dspace::ZonalDensity density_from_spec(const std::string& spec, double a);
// CLI shorthand: "cone:1" | "ball:1" | "disk:1" | "cylinder:1:2" | "cube:1"
// | file path | inline JSON
geom::ConvexBody body_from_spec(const std::string& spec, int n);

// CSV helpers ('.' decimal, 17 significant digits, no locale)
std::string density_to_csv(const dspace::ZonalDensity& f, const std::vector<double>& grid);
void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

struct CsvTable {
    std::vector<std::vector<std::string>> rows;
};
CsvTable parse_csv(const std::string& text);

}  // namespace zonalval::io
