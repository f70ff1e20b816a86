#include <doctest.h>

#include <random>

#include "catsem/pregroup.hpp"
#include "oracles.hpp"

using namespace catsem;

namespace {

PregroupType T(const char* s) { return PregroupType::parse(s); }

std::vector<PregroupType> noun_verb_noun() { return {T("n"), T("n.r s n.l"), T("n")}; }

}  // namespace

TEST_CASE("type strings parse and print") {
    CHECK(T("n.r s n.l").str() == "n.r s n.l");
    CHECK(T("n").str() == "n");
    CHECK(T("1").str() == "1");
    CHECK(T("  n   s ").str() == "n s");
    CHECK(T("n.l.l").simples()[0].adjoint == -2);
    CHECK(T("n.r.r").str() == "n.r.r");
    CHECK(T("n 1 s") == T("n s"));
    CHECK(T("").empty());
    CHECK_THROWS_AS(T("n.x"), ParseError);
    CHECK_THROWS_AS(T("n..r"), ParseError);
    CHECK_THROWS_AS(T("3x"), ParseError);
}

TEST_CASE("adjoints reverse and shift") {
    CHECK(right_adjoint(T("n")) == T("n.r"));
    CHECK(left_adjoint(T("n.r")) == T("n"));
    CHECK(left_adjoint(T("n.r s n.l")) == T("n.l.l s.l n"));
    CHECK(right_adjoint(T("n.r s n.l")) == T("n s.r n.r.r"));
}

TEST_CASE("adjoints are mutually inverse") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> len(0, 6), adj(-2, 2), base(0, 1);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<SimpleType> simples;
        int n = len(rng);
        for (int i = 0; i < n; ++i) {
            simples.push_back(SimpleType{base(rng) ? "n" : "s", adj(rng)});
        }
        PregroupType t(simples);
        CHECK(left_adjoint(right_adjoint(t)) == t);
        CHECK(right_adjoint(left_adjoint(t)) == t);
    }
}

TEST_CASE("transitive sentence reduces with the expected cups") {
    ReductionDiagram d = parse(noun_verb_noun(), T("s"));
    CHECK(d.cups == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {3, 4}});
    CHECK(d.survivors == std::vector<std::size_t>{2});
    CHECK(is_valid(d, noun_verb_noun(), T("s")));
}

TEST_CASE("identity reduction survives everything") {
    ReductionDiagram d = parse({T("n")}, T("n"));
    CHECK(d.cups.empty());
    CHECK(d.survivors == std::vector<std::size_t>{0});

    ReductionDiagram d2 = parse({T("n.r s n.l")}, T("n.r s n.l"));
    CHECK(d2.cups.empty());
    CHECK(d2.survivors == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("ungrammatical sequences are rejected") {
    CHECK_THROWS_AS(parse({T("n"), T("n")}, T("s")), NotGrammatical);
    CHECK(!try_parse({T("n"), T("n")}, T("s")).has_value());
    CHECK(!try_parse({T("n"), T("n.r")}, T("s")).has_value());
}

TEST_CASE("reduction to the unit type is permitted") {
    ReductionDiagram d = parse({T("n"), T("n.r")}, T("1"));
    CHECK(d.cups == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});
    CHECK(d.survivors.empty());
}

TEST_CASE("iterated adjoints cancel through the uniform rule") {
    // n.l.l n.l reduces to n.l.l n.l? trivially; and a.l.l a.l cancels to 1
    ReductionDiagram d = parse({T("n.l.l"), T("n.l")}, T("1"));
    CHECK(d.cups == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});
    CHECK(try_parse({T("n.r"), T("n.r.r")}, T("1")).has_value());
    CHECK(!try_parse({T("n.r.r"), T("n.r")}, T("1")).has_value());
}

TEST_CASE("diagram validity rejects the documented defects") {
    auto types = noun_verb_noun();
    SUBCASE("crossing cups") {
        ReductionDiagram d{{{0, 2}, {1, 3}}, {4}};
        CHECK(!is_valid(d, types, T("n")));
    }
    SUBCASE("cup over a surviving wire") {
        // the cup satisfies the adjoint rule but traps the survivor at 1
        ReductionDiagram d{{{0, 2}}, {1}};
        CHECK(!is_valid(d, {T("n"), T("s"), T("n.r")}, T("s")));
    }
    SUBCASE("adjoint step violation") {
        ReductionDiagram d{{{0, 4}}, {1, 2, 3}};
        CHECK(!is_valid(d, {T("n"), T("n.r s n.l"), T("n")}, T("n.r s n.l")));
    }
    SUBCASE("same adjoint order never cups") {
        ReductionDiagram d{{{0, 1}}, {}};
        CHECK(!is_valid(d, {T("n"), T("n")}, T("1")));
    }
    SUBCASE("index reuse") {
        ReductionDiagram d{{{0, 1}, {1, 3}}, {2, 4}};
        CHECK(!is_valid(d, types, T("s n")));
    }
}

TEST_CASE("alphabet checking") {
    std::set<std::string> alphabet{"n", "s"};
    CHECK_NOTHROW(parse(noun_verb_noun(), T("s"), alphabet));
    CHECK_THROWS_AS(parse({T("q")}, T("q"), alphabet), AlphabetMismatch);
    CHECK_THROWS_AS(parse(noun_verb_noun(), T("q"), alphabet), AlphabetMismatch);
}

namespace {

std::vector<SimpleType> decode_sequence(std::size_t code, std::size_t length) {
    // six simple types over {n, s} with adjoint in {-1, 0, 1}
    static const SimpleType table[6] = {{"n", -1}, {"n", 0}, {"n", 1},
                                        {"s", -1}, {"s", 0}, {"s", 1}};
    std::vector<SimpleType> seq;
    for (std::size_t i = 0; i < length; ++i) {
        seq.push_back(table[code % 6]);
        code /= 6;
    }
    return seq;
}

}  // namespace

TEST_CASE("parser agrees with the planar-matching enumerator on short sequences") {
    const std::vector<SimpleType> target{SimpleType{"s", 0}};
    std::size_t grammatical = 0;
    for (std::size_t length = 1; length <= 5; ++length) {
        std::size_t count = 1;
        for (std::size_t i = 0; i < length; ++i) count *= 6;
        for (std::size_t code = 0; code < count; ++code) {
            std::vector<SimpleType> seq = decode_sequence(code, length);
            std::vector<PregroupType> types;
            for (const auto& st : seq) types.push_back(PregroupType({st}));
            bool expected = oracles::oracle_reduces(seq, target);
            auto got = try_parse(types, PregroupType(target));
            REQUIRE(got.has_value() == expected);
            if (expected) {
                ++grammatical;
                CHECK(is_valid(*got, types, PregroupType(target)));
            }
        }
    }
    CHECK(grammatical > 0);
}

TEST_CASE("parse returns the lexicographically smallest diagram") {
    // two valid reductions exist; the cup list [(0,1)] beats [(2,3)]
    std::vector<PregroupType> types{T("n"), T("n.r"), T("n"), T("n.r")};
    ReductionDiagram d = parse(types, T("n n.r"));
    CHECK(d.cups == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});
    CHECK(d.survivors == std::vector<std::size_t>{2, 3});

    // exhaustive cross-check against the enumerated minimum
    std::mt19937 rng(21);
    std::uniform_int_distribution<int> pick(0, 5);
    static const SimpleType table[6] = {{"n", -1}, {"n", 0}, {"n", 1},
                                        {"s", -1}, {"s", 0}, {"s", 1}};
    for (int trial = 0; trial < 400; ++trial) {
        std::vector<SimpleType> seq;
        int length = 2 + (trial % 5);
        for (int i = 0; i < length; ++i) seq.push_back(table[pick(rng)]);
        for (const auto& target :
             {std::vector<SimpleType>{}, std::vector<SimpleType>{SimpleType{"s", 0}},
              std::vector<SimpleType>{SimpleType{"n", 0}, SimpleType{"n", 1}}}) {
            auto all = oracles::oracle_all_diagrams(seq, target);
            std::vector<PregroupType> types2;
            for (const auto& st : seq) types2.push_back(PregroupType({st}));
            auto got = try_parse(types2, PregroupType(target));
            if (all.empty()) {
                CHECK(!got.has_value());
            } else {
                REQUIRE(got.has_value());
                auto best = *std::min_element(all.begin(), all.end());
                CHECK(got->cups == best);
            }
        }
    }
}

TEST_CASE("parsing a sequence already equal to the target is the empty diagram") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> len(1, 4), adj(-1, 1), base(0, 1);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<PregroupType> types;
        std::vector<SimpleType> all;
        int n = len(rng);
        for (int i = 0; i < n; ++i) {
            SimpleType st{base(rng) ? "n" : "s", adj(rng)};
            types.push_back(PregroupType({st}));
            all.push_back(st);
        }
        auto d = try_parse(types, PregroupType(all));
        REQUIRE(d.has_value());
        CHECK(d->cups.empty());
        CHECK(d->survivors.size() == all.size());
    }
}

TEST_CASE("every parsed diagram is valid") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> pick(0, 5), len(1, 8);
    static const SimpleType table[6] = {{"n", -1}, {"n", 0}, {"n", 1},
                                        {"s", -1}, {"s", 0}, {"s", 1}};
    int parsed = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        std::vector<PregroupType> types;
        int n = len(rng);
        for (int i = 0; i < n; ++i) types.push_back(PregroupType({table[pick(rng)]}));
        for (const char* target : {"s", "n", "1"}) {
            auto d = try_parse(types, T(target));
            if (d) {
                ++parsed;
                CHECK(is_valid(*d, types, T(target)));
            }
        }
    }
    CHECK(parsed > 100);
}
