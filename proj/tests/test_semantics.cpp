#include <doctest.h>

#include <random>

#include "catsem/lexicon_io.hpp"
#include "catsem/semantics.hpp"
#include "oracles.hpp"

using namespace catsem;

namespace {

const Space N{"n", 2};
const Space S{"s", 2};

Lexicon toy_lexicon() { return load_lexicon(CATSEM_LEXICON_PATH); }

bool all_close(const Tensor& t, const std::vector<double>& ref, double tol = 1e-12) {
    if (t.size() != ref.size()) return false;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        if (std::abs(t.data()[i] - ref[i]) > tol) return false;
    }
    return true;
}

std::vector<double> rand_vec(std::mt19937& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<double> d(n);
    for (double& x : d) x = u(rng);
    return d;
}

PregroupType T(const char* s) { return PregroupType::parse(s); }

}  // namespace

TEST_CASE("compile_reduction maps cups to axis pairings") {
    std::vector<PregroupType> types{T("n"), T("n.r s n.l"), T("n")};
    SpaceAssignment assign;
    assign.assign("n", N);
    assign.assign("s", S);
    ReductionDiagram d = parse(types, T("s"));
    ContractionPlan plan = compile_reduction(d, types, assign);

    REQUIRE(plan.pairings.size() == 2);
    CHECK(plan.pairings[0] == std::pair<AxisRef, AxisRef>{{0, 0}, {1, 0}});
    CHECK(plan.pairings[1] == std::pair<AxisRef, AxisRef>{{1, 2}, {2, 0}});
    REQUIRE(plan.output_axes.size() == 1);
    CHECK(plan.output_axes[0] == AxisRef{1, 1});

    SUBCASE("identity plan for a single word") {
        ReductionDiagram d1 = parse({T("n")}, T("n"));
        ContractionPlan p1 = compile_reduction(d1, {T("n")}, assign);
        CHECK(p1.pairings.empty());
        CHECK(p1.output_axes == std::vector<AxisRef>{{0, 0}});
    }
    SUBCASE("invalid diagrams are rejected") {
        ReductionDiagram bad{{{0, 2}, {1, 3}}, {4}};
        CHECK_THROWS_AS(compile_reduction(bad, types, assign), InvalidDiagram);
    }
}

TEST_CASE("evaluate reproduces the transitive sentence vector") {
    Lexicon lex = toy_lexicon();
    // independent oracle: brute-force triple sum over the stored entries
    const Tensor& tell = lex.entry("tell").meaning;
    const Tensor& clowns = lex.entry("Clowns").meaning;
    const Tensor& jokes = lex.entry("jokes").meaning;
    std::vector<double> expect(2, 0.0);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                expect[j] += tell.at({i, j, k}) * clowns.data()[i] * jokes.data()[k];
    REQUIRE(expect == std::vector<double>{289, 347});

    Tensor r = evaluate({"Clowns", "tell", "jokes"}, lex, T("s"));
    CHECK(all_close(r, expect, 1e-9));
    CHECK(r.axes() == std::vector<Space>{S});
}

TEST_CASE("evaluate handles single words and failure modes") {
    Lexicon lex = toy_lexicon();
    Tensor r = evaluate({"jokes"}, lex, T("n"));
    CHECK(all_close(r, {5, 1}));
    CHECK_THROWS_AS(evaluate({"jokes", "Clowns"}, lex, T("s")), NotGrammatical);
    CHECK_THROWS_AS(evaluate({"zebra"}, lex, T("n")), UnknownWord);
}

TEST_CASE("relative clause, matrix pipeline") {
    Lexicon lex = toy_lexicon();
    Tensor display = verb_display_matrix(lex.entry("tell").meaning);
    CHECK(all_close(display, {3, 8, 4, 1, 6, 2, 9, 5}));

    const Tensor& head = lex.entry("Comedians").meaning;
    const Tensor& object = lex.entry("jokes").meaning;

    Tensor bound = matvec(transpose(display), object);
    CHECK(all_close(bound, {21, 42, 29, 10}));

    Tensor r = evaluate_relative_clause_matrix(head, display, object);
    CHECK(all_close(r, {441, 156}, 1e-9));

    Tensor ones = Tensor::vector(N, {1, 1});
    CHECK(all_close(evaluate_relative_clause_matrix(ones, display, object), {63, 39}, 1e-9));

    CHECK_THROWS_AS(
        evaluate_relative_clause_matrix(head, display, Tensor::vector(Space{"x", 3}, {1, 2, 3})),
        DimMismatch);
}

TEST_CASE("relative clause, diagram pipeline") {
    Lexicon lex = toy_lexicon();
    const Tensor& head = lex.entry("Comedians").meaning;
    const Tensor& tell = lex.entry("tell").meaning;
    const Tensor& jokes = lex.entry("jokes").meaning;

    // brute-force double sum
    std::vector<double> expect(2, 0.0);
    for (std::size_t i = 0; i < 2; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k) acc += tell.at({i, j, k}) * jokes.data()[k];
        expect[i] = head.data()[i] * acc;
    }
    REQUIRE(expect == std::vector<double>{420, 216});

    Tensor r = evaluate_relative_clause_diagram(head, tell, jokes);
    CHECK(all_close(r, expect));

    CHECK(all_close(evaluate_relative_clause_diagram(head, tell, Tensor::vector(N, {0, 0})),
                    {0, 0}));

    Tensor e0 = Tensor::basis(N, 0);
    Tensor verb = tensor_product(tensor_product(e0, Tensor::basis(S, 0)), e0)
                      .reshaped({N, S, N});
    Tensor ones = Tensor::vector(N, {1, 1});
    CHECK(all_close(evaluate_relative_clause_diagram(ones, verb, e0), {1, 0}));
}

TEST_CASE("the stored relative pronoun tensor realizes the diagram pipeline") {
    Lexicon lex = toy_lexicon();
    Tensor via_word = evaluate({"Comedians", "who", "tell", "jokes"}, lex, T("n"));
    Tensor via_pipeline = evaluate_relative_clause_diagram(
        lex.entry("Comedians").meaning, lex.entry("tell").meaning, lex.entry("jokes").meaning);
    CHECK(all_close(via_word, via_pipeline.data()));
    CHECK(all_close(via_word, {420, 216}));
}

TEST_CASE("evaluate_phrase routes the matrix pipeline on demand") {
    Lexicon lex = toy_lexicon();
    PhraseSpec rel{{"Comedians", "who", "tell", "jokes"}, T("n"), RelClausePipeline::matrix};
    CHECK(all_close(evaluate_phrase(rel, lex), {441, 156}));
    rel.pipeline = RelClausePipeline::diagram;
    CHECK(all_close(evaluate_phrase(rel, lex), {420, 216}));
    // non-relative phrases ignore the flag
    PhraseSpec plain{{"Clowns", "tell", "jokes"}, T("s"), RelClausePipeline::matrix};
    CHECK(all_close(evaluate_phrase(plain, lex), {289, 347}));
}

TEST_CASE("meaning similarity") {
    Lexicon lex = toy_lexicon();
    PhraseSpec a{{"Clowns", "tell", "jokes"}, T("s")};
    CHECK(meaning_similarity(a, a, lex) == 1.0);

    // cross-structure comparison: a sentence against a noun phrase of the
    // same dimension
    PhraseSpec rel{{"Comedians", "who", "tell", "jokes"}, T("n"), RelClausePipeline::matrix};
    double sim = meaning_similarity(a, rel, lex);
    CHECK(std::abs(sim - 0.85958596153702878) <= 1e-12);
}

TEST_CASE("similarity is invariant under lexicon storage order") {
    // same entries inserted in a different order give the same lexicon
    Lexicon forward = toy_lexicon();
    Lexicon reversed(forward.spaces());
    auto words = forward.words();
    for (auto it = words.rbegin(); it != words.rend(); ++it) reversed.add(forward.entry(*it));
    PhraseSpec a{{"Clowns", "tell", "jokes"}, T("s")};
    CHECK(meaning_similarity(a, a, reversed) == 1.0);
    CHECK(all_close(evaluate_phrase(a, reversed), evaluate_phrase(a, forward).data()));
}

namespace {

// unfused oracle: full tensor product of all meanings, then one cup at a
// time summed out by explicit loops
Tensor unfused_evaluate(const std::vector<Tensor>& meanings, const ReductionDiagram& diagram) {
    Tensor big = Tensor::scalar(1.0);
    for (const auto& m : meanings) big = tensor_product(big, m);

    std::vector<std::size_t> alive(big.rank());
    for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;

    auto cups = diagram.cups;
    Tensor cur = big;
    for (const auto& [gi, gj] : cups) {
        std::size_t a = std::find(alive.begin(), alive.end(), gi) - alive.begin();
        std::size_t b = std::find(alive.begin(), alive.end(), gj) - alive.begin();
        if (a > b) std::swap(a, b);
        // sum the diagonal of axes a and b by explicit iteration
        std::vector<Space> axes;
        for (std::size_t i = 0; i < cur.rank(); ++i)
            if (i != a && i != b) axes.push_back(cur.axes()[i]);
        Tensor next = Tensor::zeros(axes);
        std::vector<std::size_t> idx(cur.rank(), 0);
        bool done = false;
        std::vector<double> acc(next.size(), 0.0);
        while (!done) {
            if (idx[a] == idx[b]) {
                std::size_t off = 0;
                for (std::size_t i = 0; i < cur.rank(); ++i) {
                    if (i == a || i == b) continue;
                    off = off * cur.dim(i) + idx[i];
                }
                std::vector<std::size_t> full(idx.begin(), idx.end());
                acc[off] += cur.at(std::span<const std::size_t>(full));
            }
            done = true;
            for (std::size_t i = cur.rank(); i-- > 0;) {
                if (++idx[i] < cur.dim(i)) {
                    done = false;
                    break;
                }
                idx[i] = 0;
            }
            if (cur.rank() == 0) break;
        }
        cur = Tensor(axes, acc);
        alive.erase(alive.begin() + b);
        alive.erase(alive.begin() + a);
    }
    return cur;
}

}  // namespace

TEST_CASE("evaluate agrees with the unfused tensor-product oracle") {
    std::mt19937 rng(31);
    SpaceAssignment assign;
    assign.assign("n", Space{"n", 3});
    assign.assign("s", Space{"s", 2});

    for (int trial = 0; trial < 40; ++trial) {
        Lexicon lex(assign);
        std::vector<std::string> sentence;
        std::vector<const char*> shape;
        switch (trial % 4) {
            case 0: shape = {"n", "n.r s n.l", "n"}; break;
            case 1: shape = {"n", "n.r s"}; break;
            case 2: shape = {"n n.l", "n", "n.r s n.l", "n n.l", "n"}; break;
            default: shape = {"s s.l", "n", "n.r s"}; break;
        }
        std::vector<Tensor> meanings;
        std::vector<PregroupType> types;
        for (std::size_t w = 0; w < shape.size(); ++w) {
            PregroupType t = T(shape[w]);
            std::vector<Space> axes;
            std::size_t total = 1;
            for (const auto& st : t.simples()) {
                axes.push_back(assign.space_of(st));
                total *= axes.back().dim;
            }
            Tensor m(axes, rand_vec(rng, total));
            std::string word = "w" + std::to_string(w);
            lex.add(LexiconEntry{word, t, m});
            sentence.push_back(word);
            meanings.push_back(m);
            types.push_back(t);
        }
        Tensor fused = evaluate(sentence, lex, T("s"));
        ReductionDiagram d = parse(types, T("s"));
        Tensor unfused = unfused_evaluate(meanings, d);
        CHECK(norm(fused - unfused) <= 1e-10 * (1.0 + norm(fused)));
    }
}

TEST_CASE("evaluate is linear in each word meaning") {
    std::mt19937 rng(37);
    Lexicon lex = toy_lexicon();
    for (int trial = 0; trial < 50; ++trial) {
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        double alpha = u(rng);
        Lexicon probe = lex;

        Tensor a = Tensor::vector(N, rand_vec(rng, 2));
        Tensor b = Tensor::vector(N, rand_vec(rng, 2));
        probe.add(LexiconEntry{"x", T("n"), a});
        probe.add(LexiconEntry{"y", T("n"), b});
        probe.add(LexiconEntry{"z", T("n"), a + (alpha * b)});

        Tensor rx = evaluate({"x", "tell", "jokes"}, probe, T("s"));
        Tensor ry = evaluate({"y", "tell", "jokes"}, probe, T("s"));
        Tensor rz = evaluate({"z", "tell", "jokes"}, probe, T("s"));
        Tensor expect = rx + (alpha * ry);
        CHECK(norm(rz - expect) <= 1e-10 * (1.0 + norm(expect)));
    }
}

TEST_CASE("outputs inhabit fixed spaces regardless of phrase length") {
    Lexicon lex = toy_lexicon();
    struct Case {
        std::vector<std::string> words;
        const char* target;
        Space space;
    };
    const std::vector<Case> cases{
        {{"jokes"}, "n", N},
        {{"funny", "jokes"}, "n", N},
        {{"Clowns", "tell", "jokes"}, "s", S},
        {{"Comedians", "who", "tell", "jokes"}, "n", N},
        {{"funny", "Clowns", "tell", "funny", "jokes"}, "s", S},
        {{"funny", "Comedians", "who", "tell", "funny", "jokes"}, "n", N},
    };
    for (const auto& c : cases) {
        Tensor r = evaluate(c.words, lex, T(c.target));
        REQUIRE(r.rank() == 1);
        CHECK(r.axes()[0] == c.space);
    }
}
