#include "catsem/semantics.hpp"

#include <algorithm>

namespace catsem {

void SpaceAssignment::assign(const std::string& base, Space space) {
    spaces_.insert_or_assign(base, std::move(space));
}

const Space& SpaceAssignment::space_of(const std::string& base) const {
    auto it = spaces_.find(base);
    if (it == spaces_.end()) throw UnknownBaseType("no space assigned to base type '" + base + "'");
    return it->second;
}

std::set<std::string> SpaceAssignment::alphabet() const {
    std::set<std::string> out;
    for (const auto& [base, _] : spaces_) out.insert(base);
    return out;
}

void Lexicon::add(LexiconEntry entry) {
    const auto& simples = entry.type.simples();
    if (entry.meaning.rank() != simples.size()) {
        throw ShapeError("entry '" + entry.word + "': tensor rank " +
                         std::to_string(entry.meaning.rank()) + " does not match type '" +
                         entry.type.str() + "'");
    }
    for (std::size_t i = 0; i < simples.size(); ++i) {
        const Space& expected = spaces_.space_of(simples[i]);
        if (!(entry.meaning.axes()[i] == expected)) {
            throw SpaceMismatch("entry '" + entry.word + "': axis " + std::to_string(i) +
                                " is not in space '" + expected.name + "'");
        }
    }
    entries_.insert_or_assign(entry.word, std::move(entry));
}

const LexiconEntry& Lexicon::entry(const std::string& word) const {
    auto it = entries_.find(word);
    if (it == entries_.end()) throw UnknownWord("word '" + word + "' is not in the lexicon");
    return it->second;
}

std::vector<std::string> Lexicon::words() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& [w, _] : entries_) out.push_back(w);
    return out;
}

ContractionPlan compile_reduction(const ReductionDiagram& diagram,
                                  const std::vector<PregroupType>& types,
                                  const SpaceAssignment& assignment) {
    // validate against the type spelled by the survivors themselves; the
    // intended target was already matched by parse
    const std::vector<SimpleType> seq = flatten(types);
    std::vector<SimpleType> survivor_type;
    for (std::size_t s : diagram.survivors) {
        if (s >= seq.size()) throw InvalidDiagram("survivor index out of range");
        survivor_type.push_back(seq[s]);
    }
    if (!is_valid(diagram, types, PregroupType(std::move(survivor_type)))) {
        throw InvalidDiagram("diagram is not a valid reduction of the type sequence");
    }

    // flattened index -> (word, axis)
    std::vector<AxisRef> slot;
    for (std::size_t w = 0; w < types.size(); ++w) {
        for (std::size_t a = 0; a < types[w].size(); ++a) slot.push_back(AxisRef{w, a});
    }
    // the assignment must cover every base type involved
    for (const auto& t : types)
        for (const auto& st : t.simples()) assignment.space_of(st);

    ContractionPlan plan;
    for (const auto& [i, j] : diagram.cups) plan.pairings.emplace_back(slot[i], slot[j]);
    for (std::size_t s : diagram.survivors) plan.output_axes.push_back(slot[s]);
    return plan;
}

Tensor evaluate_plan(const ContractionPlan& plan, std::span<const Tensor> meanings) {
    return contract(meanings, plan.pairings, plan.output_axes);
}

Tensor evaluate(const std::vector<std::string>& words, const Lexicon& lexicon,
                const PregroupType& target) {
    std::vector<PregroupType> types;
    std::vector<Tensor> meanings;
    for (const auto& w : words) {
        const LexiconEntry& e = lexicon.entry(w);
        types.push_back(e.type);
        meanings.push_back(e.meaning);
    }
    ReductionDiagram diagram = parse(types, target, lexicon.spaces().alphabet());
    ContractionPlan plan = compile_reduction(diagram, types, lexicon.spaces());
    return evaluate_plan(plan, meanings);
}

Tensor evaluate_relative_clause_matrix(const Tensor& head, const Tensor& verb_display,
                                       const Tensor& object) {
    if (head.rank() != 1 || object.rank() != 1 || verb_display.rank() != 2) {
        throw RankError("expected head/object vectors and a display matrix");
    }
    if (verb_display.dim(0) != object.dim(0)) {
        throw DimMismatch("display rows must match the object dimension");
    }
    const std::size_t d_head = head.dim(0);
    const std::size_t cols = verb_display.dim(1);
    if (cols % d_head != 0) {
        throw DimMismatch("display columns must factor as head dim times sentence dim");
    }
    const std::size_t d_s = cols / d_head;

    // (display)^T . object, laid out with the head-space index slow
    Tensor bound = matvec(transpose(verb_display), object);
    Tensor grid = bound.reshaped({head.axes()[0], Space{"w", d_s}});
    Tensor summed = iota_delete(grid, 1);
    return frobenius_mu(head, summed);
}

Tensor evaluate_relative_clause_diagram(const Tensor& head, const Tensor& verb,
                                        const Tensor& object) {
    if (head.rank() != 1 || object.rank() != 1 || verb.rank() != 3) {
        throw RankError("expected head/object vectors and a rank-3 verb");
    }
    if (verb.dim(2) != object.dim(0)) throw DimMismatch("verb object axis mismatch");
    if (verb.dim(0) != head.dim(0)) throw DimMismatch("verb subject axis mismatch");

    const Tensor ops[] = {verb, object};
    Tensor applied = contract(ops, {{AxisRef{0, 2}, AxisRef{1, 0}}},
                              {AxisRef{0, 0}, AxisRef{0, 1}});
    Tensor summed = iota_delete(applied, 1);
    return frobenius_mu(head, summed);
}

Tensor verb_display_matrix(const Tensor& verb) {
    if (verb.rank() != 3) throw RankError("display layout requires a rank-3 verb");
    const std::size_t di = verb.dim(0), dj = verb.dim(1), dk = verb.dim(2);
    std::vector<double> d(di * dk * dj);
    for (std::size_t i = 0; i < di; ++i)
        for (std::size_t j = 0; j < dj; ++j)
            for (std::size_t k = 0; k < dk; ++k)
                d[i * (dk * dj) + (k * dj + j)] = verb.at({i, j, k});
    return Tensor({verb.axes()[0], Space{"w", dk * dj}}, std::move(d));
}

bool is_subject_relative_pronoun_type(const PregroupType& t) {
    if (t.size() != 4) return false;
    const auto& s = t.simples();
    return s[0].adjoint == 1 && s[1].adjoint == 0 && s[2].adjoint == -1 && s[3].adjoint == 0 &&
           s[0].base == s[1].base && s[1].base == s[3].base && s[2].base != s[0].base;
}

namespace {

bool is_matrix_route(const PhraseSpec& phrase, const Lexicon& lexicon) {
    if (phrase.pipeline != RelClausePipeline::matrix) return false;
    if (phrase.words.size() != 4) return false;
    for (const auto& w : phrase.words)
        if (!lexicon.contains(w)) return false;
    const LexiconEntry& head = lexicon.entry(phrase.words[0]);
    const LexiconEntry& rel = lexicon.entry(phrase.words[1]);
    const LexiconEntry& verb = lexicon.entry(phrase.words[2]);
    const LexiconEntry& object = lexicon.entry(phrase.words[3]);
    return is_subject_relative_pronoun_type(rel.type) && head.meaning.rank() == 1 &&
           verb.meaning.rank() == 3 && object.meaning.rank() == 1;
}

}  // namespace

Tensor evaluate_phrase(const PhraseSpec& phrase, const Lexicon& lexicon) {
    if (is_matrix_route(phrase, lexicon)) {
        const Tensor& head = lexicon.entry(phrase.words[0]).meaning;
        const Tensor& verb = lexicon.entry(phrase.words[2]).meaning;
        const Tensor& object = lexicon.entry(phrase.words[3]).meaning;
        return evaluate_relative_clause_matrix(head, verb_display_matrix(verb), object);
    }
    return evaluate(phrase.words, lexicon, phrase.target);
}

double meaning_similarity(const PhraseSpec& a, const PhraseSpec& b, const Lexicon& lexicon) {
    Tensor va = evaluate_phrase(a, lexicon);
    Tensor vb = evaluate_phrase(b, lexicon);
    if (va.rank() != 1 || vb.rank() != 1 || va.size() != vb.size()) {
        throw SpaceMismatch("phrases evaluate to incomparable spaces");
    }
    return cosine(va, vb);
}

}  // namespace catsem
