#pragma once

#include <map>
#include <string>
#include <vector>

#include "fanlab/horospherical.hpp"

namespace fanlab {

// What a fan document carries. Toric documents imply a trivial datum of the
// fan's rank; validate-only documents carry a bare colored fan (possibly with
// explicit valuation halfspaces) and no group data at all.
enum class DocMode { Toric, Horospherical, SphericalValidateOnly };

struct ParsedDocument {
  DocMode mode = DocMode::Toric;
  // For SphericalValidateOnly only the fan member is meaningful.
  HorosphericalEmbedding embedding;
};

// Strict JSON schema reader. Malformed text raises ParseError with the
// parser's line/column message; structural problems (wrong types, unknown or
// missing keys, duplicate rays, out-of-range indices, labels absent from the
// diagram) raise SchemaError naming the exact path, e.g. "$.rays[3]".
// Semantic fan axioms are left to validate / validate_embedding.
ParsedDocument parse_document(const std::string& text);

// Canonical form: two-space indent, object keys sorted, one trailing
// newline; integers that fit in 64 bits are JSON numbers, anything larger a
// decimal string. Output always re-parses, and serialize(parse(t)) == t
// byte for byte whenever t itself came from serialize_document.
std::string serialize_document(const ParsedDocument& doc);

// Built-in examples. Names: p2, p1xp1, p1p1p1, p112, f1, f1xp1,
// hirzebruch (a >= 0), incidence and incidence-blowup (m >= 3,
// 2 <= k <= m-1). Unknown names raise UnknownName; missing, extra, or
// out-of-range parameters raise BadParams.
ParsedDocument catalog_document(const std::string& name,
                                const std::map<std::string, long>& params = {});

// Catalog names in presentation order, parameters spelled out.
std::vector<std::string> catalog_names();

}  // namespace fanlab
