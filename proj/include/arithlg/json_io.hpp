#pragma once

// JSON input and output for the command-line tool. Parsing is strict: unknown
// keys are rejected, exact values must be strings, and every error names the
// JSON pointer of the offending node. Output key order is fixed, and nothing
// in a report depends on timing or thread count.

#include "arithlg/connalg.hpp"
#include "arithlg/cyclotomic.hpp"
#include "arithlg/expsum.hpp"
#include "arithlg/frobdata.hpp"
#include "arithlg/laurent.hpp"
#include "arithlg/polytope.hpp"

#include "json.hpp"

#include <optional>
#include <string>

namespace arithlg {

using Json = nlohmann::ordered_json;

/// InvalidInput raised while reading a document; path() is a JSON pointer
/// ("" for the document root or for text that does not parse at all).
class JsonInputError : public Error {
public:
    JsonInputError(std::string path, const std::string& message)
        : Error(ErrorCode::InvalidInput, (path.empty() ? std::string("/") : path) + ": " + message),
          path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// Parses text; malformed text becomes a JsonInputError with the byte offset.
Json parse_json_text(const std::string& text);
Json read_json_file(const std::string& filename);

FieldSpec parse_field(const Json& j, const std::string& path = "");
Json to_json(const FieldSpec& F);

/// Element syntax: an integer or fraction reduced mod p ("-1", "1/2"), a power
/// of the primitive element ("g^3", "g^-1"), or coordinates in the modulus
/// basis, low-degree-first ("[1,0,2]").
FqElem parse_element(const FieldSpec& F, const std::string& text, const std::string& path = "");
/// Integers for prime-field elements, coordinate lists otherwise.
std::string element_to_string(const FqElem& a);

/// "a", "-a" or "a/b" with b != 0.
mpq_class parse_rational(const std::string& text, const std::string& path = "");

CycloNum parse_cyclo(const Json& j, const std::string& path = "");
Json to_json(const CycloNum& z);
/// {"p", "coeffs": [coords...], "text"}.
Json to_json(const CycloPoly& P);

struct Problem {
    FieldSpec field;
    Deformation deformation;
    /// Given explicitly, or monomial_table(deformation).
    MonomialTable table;
    bool explicit_table = false;
    std::uint64_t budget = kDefaultEnumerationBudget;
    double tolerance = kPurityTolerance;
    std::size_t max_rank = kDefaultMaxRank;
};

/// {"field", "n", "f", "deformations"?, "kind"?, "table"?, "budget"?,
/// "tolerance"?, "max_rank"?}.
Problem parse_problem(const Json& j);

/// {"r", "m", "A": {"t": M, "x1": M, ...}}; absent components are zero.
MatForm parse_connection(const Json& j);
/// {"r", "m", "A": [M...], "Phi": [M...], "R0": M, "Rinf": M, "g"?: M}.
FTSTuple parse_fts(const Json& j);
/// {"N": [[rational...]...]}.
QMatrix parse_nilpotent(const Json& j);

Json to_json(const Polytope& P);
Json to_json(const NondegeneracyVerdict& v);
Json to_json(const FrobeniusReport& r);
Json to_json(const LFunctionReport& r);
Json to_json(const Filtration& F);
Json to_json(const FTSReport& r);
Json to_json(const MetricReport& r);
Json matrix_to_json(const RMatrix& M, unsigned nvars);

/// Fixed-format decimal rendering of a double for reports.
std::string format_double(double v);

/// 0 is never returned: 1 for a failed verification, 2 for bad input, 3 for
/// an exhausted budget.
int exit_code(ErrorCode code) noexcept;

}  // namespace arithlg
