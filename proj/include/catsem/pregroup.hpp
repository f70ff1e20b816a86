#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "catsem/errors.hpp"

namespace catsem {

/// A base type decorated with an adjoint order: negative orders are iterated
/// left adjoints, positive orders iterated right adjoints, 0 is the plain type.
struct SimpleType {
    std::string base;
    int adjoint = 0;

    bool operator==(const SimpleType&) const = default;
    auto operator<=>(const SimpleType&) const = default;
};

/// A product of simple types; the empty product is the monoidal unit.
///
/// Text syntax: base symbols are identifiers, `.l` / `.r` suffixes take
/// adjoints (iterable, `n.l.l`), whitespace is the product, and `1` is the
/// unit, e.g. `"n.r s n.l"`.
class PregroupType {
public:
    PregroupType() = default;
    explicit PregroupType(std::vector<SimpleType> simples) : simples_(std::move(simples)) {}

    static PregroupType parse(std::string_view text);
    static PregroupType unit() { return PregroupType{}; }
    static PregroupType atom(std::string base, int adjoint = 0) {
        return PregroupType({SimpleType{std::move(base), adjoint}});
    }

    std::string str() const;

    const std::vector<SimpleType>& simples() const { return simples_; }
    std::size_t size() const { return simples_.size(); }
    bool empty() const { return simples_.empty(); }
    const SimpleType& operator[](std::size_t i) const { return simples_[i]; }

    friend PregroupType operator*(const PregroupType& a, const PregroupType& b);
    bool operator==(const PregroupType&) const = default;

private:
    std::vector<SimpleType> simples_;
};

/// Reverse the product and decrement every adjoint order.
PregroupType left_adjoint(const PregroupType& t);
/// Reverse the product and increment every adjoint order.
PregroupType right_adjoint(const PregroupType& t);

/// Witness that a sequence of types reduces to a target type.
///
/// Indices address the flattened simple-type sequence. Each cup (i, j) with
/// i < j contracts a pair (b, z) at i and (b, z+1) at j; survivors are the
/// unmatched wires, which spell the target in order.
struct ReductionDiagram {
    std::vector<std::pair<std::size_t, std::size_t>> cups;
    std::vector<std::size_t> survivors;

    bool operator==(const ReductionDiagram&) const = default;
};

/// Concatenation of the types' simple sequences.
std::vector<SimpleType> flatten(const std::vector<PregroupType>& types);

/// True iff the diagram is a valid planar reduction of `types` to `target`:
/// every index used exactly once, cups do not cross each other or survivors,
/// each cup contracts an adjacent adjoint pair, and survivors spell the target.
bool is_valid(const ReductionDiagram& diagram, const std::vector<PregroupType>& types,
              const PregroupType& target);

/// Find a planar reduction of the type sequence to the target, or nullopt.
///
/// Deterministic: among all valid diagrams, returns the one whose sorted cup
/// list is lexicographically smallest.
std::optional<ReductionDiagram> try_parse(const std::vector<PregroupType>& types,
                                          const PregroupType& target);

/// As try_parse, but throws NotGrammatical when no reduction exists.
ReductionDiagram parse(const std::vector<PregroupType>& types, const PregroupType& target);

/// As parse, restricted to a base-type alphabet; any base symbol outside the
/// alphabet raises AlphabetMismatch.
ReductionDiagram parse(const std::vector<PregroupType>& types, const PregroupType& target,
                       const std::set<std::string>& alphabet);

}  // namespace catsem
