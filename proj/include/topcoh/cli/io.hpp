#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "topcoh/complexes/complex.hpp"
#include "topcoh/formulas/formulas.hpp"
#include "topcoh/homology/homology.hpp"

namespace topcoh::cli {

// Complex text format:
//
//   <family> <n> <m> <p>
//   vertices <count>
//   <id> <label entries...>
//   simplices <count>
//   <dim> <kind> <vertex ids...> [| <core ids...> [e<k>]]
//
// Simplices are listed by dimension, then lexicographically. An external core
// member is written e<k>, with k the 1-based index of the frame vector.
void write_complex(std::ostream& out, const complexes::SimplicialComplex& k);
/// Throws ParseError on malformed input.
complexes::SimplicialComplex read_complex(std::istream& in);

/// CSV with header "n,value", decimal integers.
void write_sequence_csv(std::ostream& out, const formulas::RankSequence& s);
nlohmann::json sequence_json(const formulas::RankSequence& s);
formulas::RankSequence sequence_from_json(const nlohmann::json& j);

nlohmann::json stats_json(const complexes::ComplexStats& s);
nlohmann::json homology_json(const homology::HomologyReport& r);

std::string join(const std::vector<mpz_class>& xs, const std::string& sep = " ");

}  // namespace topcoh::cli
