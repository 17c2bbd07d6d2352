#pragma once

#include <string>

#include "json.hpp"
#include "stonework/cartan.hpp"
#include "stonework/convolution.hpp"
#include "stonework/germ.hpp"
#include "stonework/twist.hpp"

namespace stonework {

using Json = nlohmann::json;

// Typed wrapper around one interchange file: a format tag ("stonework/<kind>"),
// a version, and the payload object. Serialization is deterministic (sorted
// keys, canonical rationals "p/q", phases as integers mod m).
struct Manifest {
  std::string kind;
  int version = 1;
  Json payload;
};

// Throws ParseError with line/column, or VersionUnsupported.
Manifest parse_manifest_text(const std::string& text);
Manifest load_manifest(const std::string& path);
std::string serialize(const Json& j);
void save_text(const std::string& path, const std::string& text);

Json groupoid_to_json(const Gpd& g);
Gpd groupoid_from_json(const Json& j);

Json semigroup_to_json(const InvSgp& s);
InvSgp semigroup_from_json(const Json& j);

Json cocycle_to_json(const Cocycle& c);
Cocycle cocycle_from_json(const Json& j, const Gpd& g);

Json measure_to_json(const Measure& m);
Measure measure_from_json(const Json& j);

Json element_to_json(const AlgElem& f);
AlgElem element_from_json(const Json& j, const Gpd& g);

struct AlgebraFile {
  StarAlg alg;
  DiagMasa masa;
  Measure state;
};
Json algebra_to_json(const AlgebraFile& a);
AlgebraFile algebra_from_json(const Json& j);

Json bisections_to_json(const std::vector<Bisection>& s);
std::vector<Bisection> bisections_from_json(const Json& j, const Gpd& g);

Json action_to_json(const MultAction& a);
MultAction action_from_json(const Json& j, const Gpd& h, const Gpd& g);

Json manifest_json(const std::string& kind, Json payload);
Manifest manifest_of(const Json& full);

// Dispatch: wraps an object of a known kind.
std::string kind_of(const Manifest& m);

}  // namespace stonework
