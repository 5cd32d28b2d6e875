#ifndef SINGCONV_JSON_IO_HPP
#define SINGCONV_JSON_IO_HPP

#include <json.hpp>
#include <string>

#include "singconv/bases.hpp"
#include "singconv/fan.hpp"
#include "singconv/ghodge.hpp"
#include "singconv/newton.hpp"

namespace singconv {

using Json = nlohmann::ordered_json;

Json germ_to_json(const GermPoly& g);
GermPoly germ_from_json(const Json& j);
GermPoly load_germ(const std::string& path);

Json polyhedron_to_json(const NewtonPolyhedron& d);
Json faces_to_json(const NewtonPolyhedron& d);
Json polar_to_json(const PolarDual& d);

Json fan_to_json(const Fan& f);
Fan fan_from_json(const Json& j);
Fan load_fan(const std::string& path);
Json suspension_to_json(const SuspensionFan& sf);
Json reducedness_to_json(const ReducednessReport& r);

Json class_to_json(const EqHodgeClass& c);
EqHodgeClass class_from_json(const Json& j);

Json bundle_to_json(const GermClassBundle& b);
BundleLoadResult parse_bundle_json(const std::string& text);

Json registry_to_json(const InnerRegistry& r);
InnerRegistry registry_from_json(const Json& j);

Json spectral_to_json(const SpectralTable& t);

Json load_json(const std::string& path);
void write_json(const std::string& path, const Json& j);

}  // namespace singconv

#endif
