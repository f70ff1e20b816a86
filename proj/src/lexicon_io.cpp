#include "catsem/lexicon_io.hpp"

#include <fstream>

namespace catsem {

using nlohmann::json;

Lexicon lexicon_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("spaces") || !doc.contains("entries")) {
        throw ParseError("lexicon must be an object with 'spaces' and 'entries'");
    }
    const json& spaces = doc["spaces"];
    const json& entries = doc["entries"];
    if (!spaces.is_object() || !entries.is_array()) {
        throw ParseError("'spaces' must be an object and 'entries' an array");
    }

    SpaceAssignment assignment;
    for (auto it = spaces.begin(); it != spaces.end(); ++it) {
        if (!it.value().is_number_integer() || it.value().get<long long>() <= 0) {
            throw ParseError("space '" + it.key() + "' must have a positive integer dimension");
        }
        assignment.assign(it.key(), Space{it.key(), it.value().get<std::size_t>()});
    }

    Lexicon lexicon(assignment);
    for (const json& e : entries) {
        if (!e.is_object() || !e.contains("word") || !e.contains("type") || !e.contains("data")) {
            throw ParseError("each entry needs 'word', 'type' and 'data'");
        }
        if (!e["word"].is_string() || !e["type"].is_string() || !e["data"].is_array()) {
            throw ParseError("entry fields have the wrong JSON types");
        }
        const std::string word = e["word"].get<std::string>();
        PregroupType type = PregroupType::parse(e["type"].get<std::string>());

        std::vector<Space> axes;
        for (const auto& st : type.simples()) axes.push_back(assignment.space_of(st));
        std::vector<double> data;
        data.reserve(e["data"].size());
        for (const json& v : e["data"]) {
            if (!v.is_number()) throw ParseError("entry '" + word + "': data must be numeric");
            data.push_back(v.get<double>());
        }
        std::size_t expected = 1;
        for (const auto& s : axes) expected *= s.dim;
        if (data.size() != expected) {
            throw ShapeError("entry '" + word + "': " + std::to_string(data.size()) +
                             " values for type '" + type.str() + "' (expected " +
                             std::to_string(expected) + ")");
        }
        lexicon.add(LexiconEntry{word, std::move(type), Tensor(std::move(axes), std::move(data))});
    }
    return lexicon;
}

json lexicon_to_json(const Lexicon& lexicon) {
    json spaces = json::object();
    for (const auto& [base, space] : lexicon.spaces().map()) spaces[base] = space.dim;

    json entries = json::array();
    for (const auto& word : lexicon.words()) {
        const LexiconEntry& e = lexicon.entry(word);
        entries.push_back({{"word", e.word}, {"type", e.type.str()}, {"data", e.meaning.data()}});
    }
    return json{{"spaces", std::move(spaces)}, {"entries", std::move(entries)}};
}

Lexicon load_lexicon(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open lexicon file '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ParseError("malformed lexicon file '" + path + "': " + e.what());
    }
    return lexicon_from_json(doc);
}

void save_lexicon(const Lexicon& lexicon, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write lexicon file '" + path + "'");
    out << lexicon_to_json(lexicon).dump(2) << '\n';
}

}  // namespace catsem
