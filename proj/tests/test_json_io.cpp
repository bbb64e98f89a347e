#include "arithlg/json_io.hpp"

#include "doctest.h"

#include <random>

using namespace arithlg;

namespace {

const char* kKloosterman = R"({
  "field": {"p": "5"},
  "n": 1,
  "f": [{"c": "1", "w": [1]}, {"c": "1", "w": [-1]}],
  "deformations": [[{"c": "1", "w": [0]}]]
})";

std::string error_path(const std::string& text, Json (*build)(const std::string&)) {
    try {
        build(text);
    } catch (const JsonInputError& e) {
        return e.path();
    }
    return "<no error>";
}

Json problem_of(const std::string& text) {
    parse_problem(parse_json_text(text));
    return {};
}

}  // namespace

TEST_CASE("field specs and element syntax") {
    const FieldSpec F9 = parse_field(parse_json_text(R"({"p": "3", "m": 2})"));
    CHECK(F9.modulus() == std::vector<std::uint64_t>{1, 0, 1});
    CHECK(F9.is_canonical());
    CHECK(to_json(F9).dump() == R"({"p":"3","m":2})");

    const FieldSpec G = parse_field(parse_json_text(R"({"p": "3", "m": 2, "modulus": ["2", "2", "1"]})"));
    CHECK_FALSE(G.is_canonical());
    CHECK(to_json(G).dump() == R"({"p":"3","m":2,"modulus":["2","2","1"]})");

    CHECK_THROWS_AS(parse_field(parse_json_text(R"({"p": "9"})")), JsonInputError);
    CHECK_THROWS_AS(parse_field(parse_json_text(R"({"p": "3", "m": 2, "modulus": ["1", "1", "1"]})")), JsonInputError);
    CHECK_THROWS_AS(parse_field(parse_json_text(R"({"p": "3", "q": 9})")), JsonInputError);

    CHECK(parse_element(F9, "g^1") == F9.primitive());
    CHECK(parse_element(F9, "g^-1") * F9.primitive() == F9.one());
    CHECK(parse_element(F9, "[0,1]") == F9.gen());
    CHECK(parse_element(F9, "[2]") == F9.from_int(2));
    CHECK(parse_element(F9, "1/2") * F9.from_int(2) == F9.one());
    CHECK(parse_element(F9, "-1") == F9.from_int(2));
    CHECK(element_to_string(F9.gen()) == "[0,1]");
    CHECK(element_to_string(parse_element(F9, element_to_string(F9.primitive()))) == element_to_string(F9.primitive()));
    CHECK_THROWS_AS(parse_element(F9, "1/3"), JsonInputError);
    CHECK_THROWS_AS(parse_element(F9, "[1,2,0]"), JsonInputError);
    CHECK_THROWS_AS(parse_element(F9, "x"), JsonInputError);
    CHECK_THROWS_AS(parse_element(F9, "g^"), JsonInputError);
}

TEST_CASE("rationals are strict") {
    CHECK(parse_rational("-6/4") == mpq_class(-3, 2));
    CHECK(parse_rational("+7") == 7);
    CHECK_THROWS_AS(parse_rational("1/0"), JsonInputError);
    CHECK_THROWS_AS(parse_rational("1.5"), JsonInputError);
    CHECK_THROWS_AS(parse_rational(""), JsonInputError);
    CHECK_THROWS_AS(parse_rational("2/-3"), JsonInputError);
}

TEST_CASE("problem files") {
    const Problem P = parse_problem(parse_json_text(kKloosterman));
    CHECK(P.field.p() == 5);
    CHECK(P.deformation.n() == 1);
    CHECK(P.deformation.m() == 1);
    CHECK(P.deformation.kind == DeformationKind::Subdiagram);
    CHECK(P.table.size() == 3);
    CHECK_FALSE(P.explicit_table);
    CHECK(P.budget == kDefaultEnumerationBudget);

    const std::string extra = R"({"field": {"p": "5"}, "n": 1, "f": [{"c": "1", "w": [1]}, {"c": "g^2", "w": [-1]}],
        "table": [[-1], [1], [0]], "budget": "1000", "tolerance": "1e-9", "max_rank": 4, "kind": "newton-preserving"})";
    const Problem Q = parse_problem(parse_json_text(extra));
    CHECK(Q.explicit_table);
    CHECK(Q.table.points.front() == LatticePoint{-1});
    CHECK(Q.budget == 1000);
    CHECK(Q.tolerance == doctest::Approx(1e-9));
    CHECK(Q.max_rank == 4);
    CHECK(Q.deformation.base.coeff({-1}) == Q.field.primitive().pow(2));
}

TEST_CASE("input errors carry the JSON pointer of the offending node") {
    const auto path = [](const std::string& t) { return error_path(t, problem_of); };
    CHECK(path(R"({"field": {"p": "5"}, "n": 1, "f": [{"c": "1", "w": [1], "x": 0}]})") == "/f/0/x");
    CHECK(path(R"({"field": {"p": "5"}, "n": 1, "f": [{"c": "1", "w": [1]}, {"c": "1", "w": [1, 2]}]})") == "/f/1/w");
    CHECK(path(R"({"field": {"p": "5"}, "n": 1, "f": [{"c": 1, "w": [1]}]})") == "/f/0/c");
    CHECK(path(R"({"field": {"p": "4"}, "n": 1, "f": [{"c": "1", "w": [1]}]})") == "/field/p");
    CHECK(path(R"({"field": {"p": "5"}, "n": 7, "f": [{"c": "1", "w": [1]}]})") == "/n");
    CHECK(path(R"({"field": {"p": "5"}, "n": 1})") == "");
    CHECK(path(R"({"field": {"p": "5"}, "n": 1, "f": [{"c": "5", "w": [1]}]})") == "/f");
    CHECK(path(R"({"field": {"p": "5"}, "n": 1, "f": [{"c": "1", "w": [1]}, {"c": "1", "w": [-1]}], "table": [[1]]})") ==
          "/table");
    CHECK(path(R"({"field": {"p": "5"}, "n": 1, "f": [{"c": "1", "w": [1]}, {"c": "1", "w": [-1]}],
                   "deformations": [[{"c": "1", "w": [3]}]]})") == "/deformations");
    CHECK(path(R"({"field": {"p": "5"}, "n": 1, "f": [{"c": "1", "w": [1]}], "tolerance": "fast"})") == "/tolerance");
    CHECK(path("{\"field\": ") == "");
    CHECK(path("[1, 2]") == "");
}

TEST_CASE("mutated documents fail with library errors only") {
    const std::string base = kKloosterman;
    std::mt19937_64 rng(7);
    const std::string alphabet = "{}[]\",:0123456789-/gx^ ";
    int parsed = 0, rejected = 0;
    const auto attempt = [&](const std::string& text) {
        try {
            parse_problem(parse_json_text(text));
            ++parsed;
        } catch (const Error&) {
            ++rejected;
        }
    };
    for (std::size_t cut = 0; cut < base.size(); ++cut) attempt(base.substr(0, cut));
    for (int trial = 0; trial < 3000; ++trial) {
        std::string s = base;
        const int edits = 1 + static_cast<int>(rng() % 3);
        for (int e = 0; e < edits; ++e) {
            const std::size_t at = rng() % s.size();
            const char c = alphabet[rng() % alphabet.size()];
            switch (rng() % 3) {
                case 0: s[at] = c; break;
                case 1: s.insert(s.begin() + static_cast<std::ptrdiff_t>(at), c); break;
                default: s.erase(at, 1);
            }
        }
        attempt(s);
    }
    CHECK(parsed > 0);
    CHECK(rejected > 1000);
}

TEST_CASE("cyclotomic values round-trip") {
    const CycloNum z(5, {2, 0, 1, mpq_class(-1, 3)});
    const Json j = to_json(z);
    CHECK(j.dump() == R"({"p":"5","coords":["2","0","1","-1/3"]})");
    CHECK(parse_cyclo(j) == z);
    CHECK_THROWS_AS(parse_cyclo(parse_json_text(R"({"p": "5", "coords": ["1"]})")), JsonInputError);
}

TEST_CASE("connections and Frobenius type structures") {
    const char* conn = R"({"r": 1, "m": 1, "A": {
        "t": [[[{"c": "3", "deg": {"t": 0}}, {"c": "-1/2", "deg": {"x1": 2}}]]],
        "x1": [[{"num": [{"c": "1", "deg": {"x1": 1}}], "den": [{"c": "1", "deg": {"t": 1}}]}]]}})";
    const MatForm A = parse_connection(parse_json_text(conn));
    const MPoly t = MPoly::variable(2, 0), x = MPoly::variable(2, 1);
    CHECK(A.component(0)[0][0] == RatFunc(MPoly::constant(2, 3) - x * x * mpq_class(1, 2)));
    CHECK(A.component(1)[0][0] == RatFunc(x, t));
    CHECK(poincare_rank(A) == 1);

    CHECK_THROWS_AS(parse_connection(parse_json_text(R"({"r": 1, "m": 1, "A": {"y": [["0"]]}})")), JsonInputError);
    CHECK_THROWS_AS(parse_connection(parse_json_text(R"({"r": 1, "m": 1, "A": {"t": [[[{"c": "1", "deg": {"t": -1}}]]]}})")),
                    JsonInputError);
    CHECK_THROWS_AS(parse_connection(parse_json_text(R"({"r": 2, "m": 1, "A": {"t": [["0"]]}})")), JsonInputError);

    const char* good = R"({"r": 2, "m": 1,
        "A": [[["0", "0"], ["0", "0"]]],
        "Phi": [[["0", "1"], ["0", "0"]]],
        "R0": [["1", "0"], ["0", "1"]],
        "Rinf": [["0", "0"], ["0", "1"]]})";
    const FTSTuple T = parse_fts(parse_json_text(good));
    const FTSReport rep = verify_fts(T);
    CHECK(rep.all_conditions);
    CHECK(rep.assembled_flat);
    CHECK(to_json(rep)["conditions"].size() == 6);

    std::string bad = good;
    const std::string phi = R"(["0", "1"]])";
    bad.replace(bad.find(phi), phi.size(), R"(["0", "2"]])");
    CHECK_FALSE(verify_fts(parse_fts(parse_json_text(bad))).all_conditions);

    std::string tdep = good;
    const std::string r0 = R"("R0": [["1")";
    tdep.replace(tdep.find(r0), r0.size(), R"("R0": [[[{"c": "1", "deg": {"t": 1}}])");
    CHECK_THROWS_AS(parse_fts(parse_json_text(tdep)), JsonInputError);
}

TEST_CASE("nilpotent matrices and filtration output") {
    const QMatrix N = parse_nilpotent(parse_json_text(R"({"N": [["0", "1", "0"], ["0", "0", "1"], ["0", "0", "0"]]})"));
    const Json j = to_json(monodromy_filtration(N));
    CHECK(j["dim"] == 3);
    CHECK(j["graded"].dump() == R"([{"k":-2,"dim":1},{"k":0,"dim":1},{"k":2,"dim":1}])");
    CHECK_THROWS_AS(parse_nilpotent(parse_json_text(R"({"N": [["0", "1"]]})")), JsonInputError);
    CHECK_THROWS_AS(parse_nilpotent(parse_json_text(R"({"N": [[0]]})")), JsonInputError);
}

TEST_CASE("exit codes by error class") {
    CHECK(exit_code(ErrorCode::BudgetExceeded) == 3);
    CHECK(exit_code(ErrorCode::InvalidInput) == 2);
    CHECK(exit_code(ErrorCode::NotPrime) == 2);
    CHECK(exit_code(ErrorCode::NotNilpotent) == 2);
    CHECK(exit_code(ErrorCode::RankMismatch) == 1);
    CHECK(exit_code(ErrorCode::NotFlat) == 1);
    CHECK(exit_code(ErrorCode::Unstable) == 1);
}
