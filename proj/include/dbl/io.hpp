#pragma once

#include <iosfwd>

#include "json.hpp"

#include "dbl/arrange.hpp"
#include "dbl/colim.hpp"
#include "dbl/nerve.hpp"

namespace dbl {

using Json = nlohmann::ordered_json;

inline constexpr int document_version = 1;

// Top-level file: {"kind": ..., "version": 1, "payload": ...}.
struct Document {
    std::string kind;
    Json payload;
};

// Throws Error(parse) with line and column for malformed JSON, and naming the field for
// schema violations.
Document parse_document(const std::string& text, const std::string& origin = "<input>");
Document load(const std::string& path);
std::string dump(const Document& d);
void store(const Document& d, const std::string& path);

Json to_json(const FinCategory& c);
Json to_json(const Functor& f); // maps only
Json to_json(const DoubleCategory& d);
Json to_json(const DoubleFunctor& f);
Json to_json(const DoubleDerivationScheme& s);
Json to_json(const Subdivision& s);
Json to_json(const Arrangement& a, const DoubleCategory& d);
Json to_json(const DblDiagram& d);
Json to_json(const SimplicialTruncation& x);

FinCategory category_from_json(const Json& j, const std::string& where = "payload");
Functor functor_from_json(const Json& j, std::shared_ptr<const FinCategory> src, std::shared_ptr<const FinCategory> tgt,
                          const std::string& where = "payload");
DoubleCategory double_from_json(const Json& j, const std::string& where = "payload");
DoubleFunctor double_functor_from_json(const Json& j, std::shared_ptr<const DoubleCategory> src = nullptr,
                                       std::shared_ptr<const DoubleCategory> tgt = nullptr,
                                       const std::string& where = "payload");
DoubleDerivationScheme scheme_from_json(const Json& j, const std::string& where = "payload");
Subdivision subdivision_from_json(const Json& j, const std::string& where = "payload");
// Cell labels are required; vertex labels come from cell corners and a segment label
// may be omitted when the segment is a whole cell side.
Arrangement arrangement_from_json(const Json& j, const DoubleCategory& d, const std::string& where = "payload");
DblDiagram diagram_from_json(const Json& j, const std::string& where = "payload");
SimplicialTruncation truncation_from_json(const Json& j, const std::string& where = "payload");

Document make_document(const std::string& kind, Json payload);

// The dblcat command line; returns the exit code (0 true/success, 1 false, 2 error).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace dbl
