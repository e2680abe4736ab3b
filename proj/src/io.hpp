#pragma once

// JSON ingestion of sequences and serialization of reports.
//
// Sequence documents:
//   {"prefix": [numbers], "tail": {"kind": "zero"}
//                                | {"kind": "geometric", "first": x, "ratio": r}}
// Numbers may be JSON numbers or decimal strings; either way the decimal text
// is parsed directly at the working precision. Reals are written back as
// shortest round-trip decimal strings; object keys are emitted sorted.

#include "order_checks.hpp"
#include "sequence.hpp"
#include "trumping.hpp"
#include "verdict.hpp"
#include "zeta.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace majz {

using Json = nlohmann::json;

/// Throws Error(Parse) naming the offending location as a JSON pointer.
/// With positive_entries every prefix entry must be > 0 (catalysts).
Ell1Seq parse_sequence(std::string_view text, unsigned precision, bool positive_entries = false);

/// Reads and parses a file; Error(Io) if it cannot be read. Messages are
/// prefixed with the path.
Ell1Seq load_sequence(const std::string& path, unsigned precision, bool positive_entries = false);

/// Validates and reports the first broken invariant as "<pointer>: reason".
/// Returns an empty string when the sequence is valid.
std::string validation_error(const Ell1Seq& seq);

Json to_json(const Real& x);
Json to_json(const Ell1Seq& seq);
Json to_json(const Witness& w);
Json to_json(const Verdict& v);
Json to_json(const CMReport& r, bool with_grid = false);
Json to_json(const TrumpReport& r);
Json to_json(const EvidenceRecord& r);

/// Pretty-printed with sorted keys and a trailing newline.
std::string dump(const Json& j);

/// Columns: s,zeta,f,f1,f2,f3 (derivatives of f) at `samples` geometric
/// points on [s_min, s_max].
std::string zeta_table_csv(const ZetaPair& pair, const SGrid& grid, unsigned precision);

/// Columns: s,n,signed_value,bound for every retained CM sample.
std::string cm_samples_csv(const CMReport& r);

/// Appends one compact JSON line.
void append_jsonl(const std::string& path, const Json& record);

}  // namespace majz
