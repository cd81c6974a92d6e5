#ifndef ORBFOLD_IO_HPP
#define ORBFOLD_IO_HPP

#include <string>

#include "json.hpp"
#include "orbfold/decorated.hpp"
#include "orbfold/nielsen.hpp"
#include "orbfold/orbifold.hpp"

// JSON schemas for every object the CLI reads or writes, plus DOT export.
// Output is deterministic: ordered_json everywhere, stable key order.
// Schema errors carry JSON-pointer paths.

namespace orbfold {

using Json = nlohmann::ordered_json;

Json to_json(const FpcGroup& g);
Json to_json(const FpcWord& w);
Json to_json(const Graph& g);
Json to_json(const GraphOfGroups& gog);
Json to_json(const APath& p);
Json to_json(const GGMorphism& m);
Json to_json(const OrbifoldSpec& spec);
Json to_json(const OrbifoldPresentation& pres);
Json to_json(const DecoratedMorphism& dm);
Json to_json(const std::vector<NielsenMove>& trace);
Json to_json(const ComplexityReport& rep);
Json to_json(const FoldedReport& rep);
Json to_json(const LocalGraph& lg);
Json to_json(const AlmostCoverDescriptor& d);

FpcGroup group_from_json(const Json& j, const std::string& at = "");
FpcWord word_from_json(const Json& j, const std::string& at = "");
Graph graph_from_json(const Json& j, const std::string& at = "");
GraphOfGroups gog_from_json(const Json& j, const std::string& at = "");
APath path_from_json(const Json& j, const std::string& at = "");
// accepts an optional redundant "t" table and reports involution violations
GGMorphism morphism_from_json(const Json& j, std::vector<Violation>* extra = nullptr,
                              const std::string& at = "");
OrbifoldSpec spec_from_json(const Json& j, const std::string& at = "");
DecoratedMorphism decorated_from_json(const Json& j, const std::string& at = "");
std::vector<NielsenMove> trace_from_json(const Json& j, const std::string& at = "");
std::vector<FpcWord> tuple_from_json(const Json& j, const std::string& at = "");

std::string to_dot(const GraphOfGroups& gog);
std::string to_dot(const LocalGraph& lg);

Json load_json(const std::string& path_or_dash);  // "-" reads stdin
void write_output(const std::string& path_or_dash, const std::string& text);

}  // namespace orbfold

#endif
