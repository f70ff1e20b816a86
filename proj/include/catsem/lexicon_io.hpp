#pragma once

#include <string>

#include <json.hpp>

#include "catsem/semantics.hpp"

namespace catsem {

/// Load a lexicon from a JSON document of the form
///   { "spaces": { "n": 2, "s": 2 },
///     "entries": [ { "word": ..., "type": ..., "data": [...] }, ... ] }
/// Data arrays are flat, row-major over the type's simple-type order with the
/// last index fastest.
Lexicon lexicon_from_json(const nlohmann::json& doc);

nlohmann::json lexicon_to_json(const Lexicon& lexicon);

/// Load a lexicon file; raises ParseError on malformed input, ShapeError on
/// data-length mismatches, and UnknownBaseType when a type uses a base symbol
/// without an assigned space.
Lexicon load_lexicon(const std::string& path);

void save_lexicon(const Lexicon& lexicon, const std::string& path);

}  // namespace catsem
