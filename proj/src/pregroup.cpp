#include "catsem/pregroup.hpp"

#include <algorithm>
#include <cctype>

namespace catsem {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

PregroupType PregroupType::parse(std::string_view text) {
    std::vector<SimpleType> simples;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        if (text[i] == '1') {
            ++i;
            if (i < n && !std::isspace(static_cast<unsigned char>(text[i]))) {
                throw ParseError("unexpected character after unit type '1'");
            }
            continue;  // the unit contributes no simple types
        }
        if (!ident_start(text[i])) {
            throw ParseError(std::string("unexpected character '") + text[i] + "' in type");
        }
        std::size_t start = i;
        while (i < n && ident_char(text[i])) ++i;
        SimpleType st{std::string(text.substr(start, i - start)), 0};
        while (i + 1 < n && text[i] == '.' && (text[i + 1] == 'r' || text[i + 1] == 'l')) {
            st.adjoint += text[i + 1] == 'r' ? 1 : -1;
            i += 2;
        }
        if (i < n && text[i] == '.') throw ParseError("expected '.r' or '.l' adjoint suffix");
        simples.push_back(std::move(st));
    }
    return PregroupType(std::move(simples));
}

std::string PregroupType::str() const {
    if (simples_.empty()) return "1";
    std::string out;
    for (std::size_t k = 0; k < simples_.size(); ++k) {
        if (k) out += ' ';
        out += simples_[k].base;
        for (int z = simples_[k].adjoint; z > 0; --z) out += ".r";
        for (int z = simples_[k].adjoint; z < 0; ++z) out += ".l";
    }
    return out;
}

PregroupType operator*(const PregroupType& a, const PregroupType& b) {
    std::vector<SimpleType> s = a.simples_;
    s.insert(s.end(), b.simples_.begin(), b.simples_.end());
    return PregroupType(std::move(s));
}

PregroupType left_adjoint(const PregroupType& t) {
    std::vector<SimpleType> s(t.simples().rbegin(), t.simples().rend());
    for (auto& st : s) --st.adjoint;
    return PregroupType(std::move(s));
}

PregroupType right_adjoint(const PregroupType& t) {
    std::vector<SimpleType> s(t.simples().rbegin(), t.simples().rend());
    for (auto& st : s) ++st.adjoint;
    return PregroupType(std::move(s));
}

std::vector<SimpleType> flatten(const std::vector<PregroupType>& types) {
    std::vector<SimpleType> seq;
    for (const auto& t : types) seq.insert(seq.end(), t.simples().begin(), t.simples().end());
    return seq;
}

namespace {

// cup rule: (b, z) at the left end, (b, z+1) at the right end
bool cup_ok(const SimpleType& left, const SimpleType& right) {
    return left.base == right.base && right.adjoint == left.adjoint + 1;
}

// nullable[i][j]: the span [i, j) reduces to the unit with no survivors
std::vector<std::vector<char>> nullable_table(const std::vector<SimpleType>& seq) {
    const std::size_t n = seq.size();
    std::vector<std::vector<char>> nullable(n + 1, std::vector<char>(n + 1, 0));
    for (std::size_t i = 0; i <= n; ++i) nullable[i][i] = 1;
    for (std::size_t len = 2; len <= n; len += 2) {
        for (std::size_t i = 0; i + len <= n; ++i) {
            std::size_t j = i + len;
            for (std::size_t k = i + 1; k < j; k += 2) {
                if (cup_ok(seq[i], seq[k]) && nullable[i + 1][k] && nullable[k + 1][j]) {
                    nullable[i][j] = 1;
                    break;
                }
            }
        }
    }
    return nullable;
}

}  // namespace

bool is_valid(const ReductionDiagram& diagram, const std::vector<PregroupType>& types,
              const PregroupType& target) {
    const std::vector<SimpleType> seq = flatten(types);
    const std::size_t n = seq.size();

    std::vector<char> used(n, 0);
    for (const auto& [i, j] : diagram.cups) {
        if (i >= n || j >= n || i >= j) return false;
        if (used[i] || used[j]) return false;
        used[i] = used[j] = 1;
        if (!cup_ok(seq[i], seq[j])) return false;
    }
    for (std::size_t s : diagram.survivors) {
        if (s >= n || used[s]) return false;
        used[s] = 1;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!used[i]) return false;

    // planarity: cups cross neither each other nor a surviving wire
    for (const auto& [i, j] : diagram.cups) {
        for (const auto& [k, l] : diagram.cups) {
            if (i < k && k < j && j < l) return false;
        }
        for (std::size_t s : diagram.survivors) {
            if (i < s && s < j) return false;
        }
    }

    if (!std::is_sorted(diagram.survivors.begin(), diagram.survivors.end())) return false;
    if (diagram.survivors.size() != target.size()) return false;
    for (std::size_t k = 0; k < target.size(); ++k) {
        if (!(seq[diagram.survivors[k]] == target[k])) return false;
    }
    return true;
}

std::optional<ReductionDiagram> try_parse(const std::vector<PregroupType>& types,
                                          const PregroupType& target) {
    const std::vector<SimpleType> seq = flatten(types);
    const std::vector<SimpleType>& tgt = target.simples();
    const std::size_t n = seq.size();
    const std::size_t m = tgt.size();

    const auto nullable = nullable_table(seq);

    // feasible[i][k]: the suffix seq[i..n) reduces to the target suffix tgt[k..m)
    std::vector<std::vector<char>> feasible(n + 1, std::vector<char>(m + 1, 0));
    feasible[n][m] = 1;
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t k = m + 1; k-- > 0;) {
            if (k < m && seq[i] == tgt[k] && feasible[i + 1][k + 1]) {
                feasible[i][k] = 1;
                continue;
            }
            for (std::size_t j = i + 1; j < n; j += 2) {
                if (cup_ok(seq[i], seq[j]) && nullable[i + 1][j] && feasible[j + 1][k]) {
                    feasible[i][k] = 1;
                    break;
                }
            }
        }
    }
    if (!feasible[0][0]) return std::nullopt;

    // greedy construction of the lexicographically smallest sorted cup list:
    // at each leftmost open position a cup beats surviving, and the nearest
    // feasible partner beats any farther one
    ReductionDiagram d;
    auto emit_null_span = [&](auto&& self, std::size_t a, std::size_t b) -> void {
        if (a == b) return;
        for (std::size_t j = a + 1; j < b; j += 2) {
            if (cup_ok(seq[a], seq[j]) && nullable[a + 1][j] && nullable[j + 1][b]) {
                d.cups.emplace_back(a, j);
                self(self, a + 1, j);
                self(self, j + 1, b);
                return;
            }
        }
    };

    std::size_t i = 0, k = 0;
    while (i < n) {
        bool cupped = false;
        for (std::size_t j = i + 1; j < n; j += 2) {
            if (cup_ok(seq[i], seq[j]) && nullable[i + 1][j] && feasible[j + 1][k]) {
                d.cups.emplace_back(i, j);
                emit_null_span(emit_null_span, i + 1, j);
                i = j + 1;
                cupped = true;
                break;
            }
        }
        if (cupped) continue;
        // feasible[i][k] guarantees the survivor branch applies here
        d.survivors.push_back(i);
        ++i;
        ++k;
    }
    return d;
}

ReductionDiagram parse(const std::vector<PregroupType>& types, const PregroupType& target) {
    auto d = try_parse(types, target);
    if (!d) {
        std::string seq;
        for (std::size_t i = 0; i < types.size(); ++i) {
            if (i) seq += ", ";
            seq += types[i].str();
        }
        throw NotGrammatical("no planar reduction of [" + seq + "] to '" + target.str() + "'");
    }
    return *d;
}

ReductionDiagram parse(const std::vector<PregroupType>& types, const PregroupType& target,
                       const std::set<std::string>& alphabet) {
    auto check = [&](const PregroupType& t) {
        for (const auto& st : t.simples()) {
            if (!alphabet.count(st.base)) {
                throw AlphabetMismatch("base type '" + st.base + "' is not in the alphabet");
            }
        }
    };
    for (const auto& t : types) check(t);
    check(target);
    return parse(types, target);
}

}  // namespace catsem
