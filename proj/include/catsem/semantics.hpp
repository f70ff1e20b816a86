#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "catsem/pregroup.hpp"
#include "catsem/tensor.hpp"

namespace catsem {

/// Assigns a vector space to every base type. Adjoint types share the space
/// of their base type (duals are identified through the fixed basis).
class SpaceAssignment {
public:
    void assign(const std::string& base, Space space);
    const Space& space_of(const std::string& base) const;
    const Space& space_of(const SimpleType& simple) const { return space_of(simple.base); }
    bool has(const std::string& base) const { return spaces_.count(base) != 0; }
    std::set<std::string> alphabet() const;
    const std::map<std::string, Space>& map() const { return spaces_; }

private:
    std::map<std::string, Space> spaces_;
};

/// A word with its pregroup type and its meaning tensor. The tensor's axes
/// are the images of the type's simple types, in order.
struct LexiconEntry {
    std::string word;
    PregroupType type;
    Tensor meaning;
};

class Lexicon {
public:
    Lexicon() = default;
    explicit Lexicon(SpaceAssignment spaces) : spaces_(std::move(spaces)) {}

    const SpaceAssignment& spaces() const { return spaces_; }

    /// Validates the meaning tensor against the type and space assignment.
    void add(LexiconEntry entry);
    bool contains(const std::string& word) const { return entries_.count(word) != 0; }
    const LexiconEntry& entry(const std::string& word) const;
    std::vector<std::string> words() const;

private:
    SpaceAssignment spaces_;
    std::map<std::string, LexiconEntry> entries_;
};

/// A reduction diagram compiled against concrete word tensors: one operand
/// slot per word, an axis pairing per cup, output axes from the survivors.
struct ContractionPlan {
    std::vector<std::pair<AxisRef, AxisRef>> pairings;
    std::vector<AxisRef> output_axes;
};

/// Compile a valid reduction diagram into a contraction plan.
ContractionPlan compile_reduction(const ReductionDiagram& diagram,
                                  const std::vector<PregroupType>& types,
                                  const SpaceAssignment& assignment);

/// Run a contraction plan on word meaning tensors.
Tensor evaluate_plan(const ContractionPlan& plan, std::span<const Tensor> meanings);

/// Meaning of a word sequence: parse to the target type, then contract the
/// word tensors along the reduction. The result's axes are the survivors'
/// spaces.
Tensor evaluate(const std::vector<std::string>& words, const Lexicon& lexicon,
                const PregroupType& target);

/// Relative-clause evaluation through the published matrix pipeline:
/// diag(head) . (sum over the fast axis) . (display matrix)^T . object.
/// The display matrix lays the verb out with the subject index on rows and
/// (object, sentence) pairs on columns, object slowest.
Tensor evaluate_relative_clause_matrix(const Tensor& head, const Tensor& verb_display,
                                       const Tensor& object);

/// Relative-clause evaluation derived from the string diagram with
/// type-ordered verb axes (subject, sentence, object):
/// result_i = head_i * sum_{j,k} verb[i,j,k] * object_k.
Tensor evaluate_relative_clause_diagram(const Tensor& head, const Tensor& verb,
                                        const Tensor& object);

/// Display-matrix layout of a rank-3 verb: rows = subject axis, columns =
/// (object, sentence) with object slowest.
Tensor verb_display_matrix(const Tensor& verb);

enum class RelClausePipeline { diagram, matrix };

/// A phrase to evaluate: words, the target type, and which relative-clause
/// pipeline to use when the phrase has the shape [head, rel-pronoun, verb,
/// object].
struct PhraseSpec {
    std::vector<std::string> words;
    PregroupType target;
    RelClausePipeline pipeline = RelClausePipeline::diagram;
};

/// True for the subject relative-pronoun shape x.r x y.l x.
bool is_subject_relative_pronoun_type(const PregroupType& t);

/// Evaluate a phrase, routing 4-word relative clauses through the matrix
/// pipeline when requested; otherwise the ordinary contraction path.
Tensor evaluate_phrase(const PhraseSpec& phrase, const Lexicon& lexicon);

/// Cosine similarity of two evaluated phrases. The outputs must have equal
/// dimension (same-dimensional spaces are comparable through the fixed basis).
double meaning_similarity(const PhraseSpec& a, const PhraseSpec& b, const Lexicon& lexicon);

}  // namespace catsem
