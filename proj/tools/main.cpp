// catsem command line: compose, compare, parse, compile, unbind, substitute,
// ics-encode and convolve over a lexicon file. Records go to standard output
// as JSON (or plain numbers with --output plain); diagnostics to stderr.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "catsem/binding.hpp"
#include "catsem/lexicon_io.hpp"
#include "catsem/semantics.hpp"
#include "catsem/tensor.hpp"
#include "catsem/unbinding.hpp"

using namespace catsem;
using nlohmann::json;

namespace {

json tensor_record(const Tensor& t) {
    json axes = json::array();
    for (const auto& s : t.axes()) axes.push_back({{"name", s.name}, {"dim", s.dim}});
    return json{{"axes", std::move(axes)}, {"data", t.data()}};
}

json diagram_record(const ReductionDiagram& d) {
    json cups = json::array();
    for (const auto& [i, j] : d.cups) cups.push_back({i, j});
    return json{{"cups", std::move(cups)}, {"survivors", d.survivors}};
}

void emit(const json& record, const std::string& format) {
    if (format == "json") {
        std::cout << record.dump() << '\n';
        return;
    }
    // plain: numbers only
    if (record.contains("output")) {
        const auto& data = record["output"]["data"];
        for (std::size_t i = 0; i < data.size(); ++i) {
            if (i) std::cout << ' ';
            std::cout << data[i].get<double>();
        }
        std::cout << '\n';
    } else if (record.contains("scalar")) {
        std::cout << record["scalar"].get<double>() << '\n';
    } else if (record.contains("diagram")) {
        std::cout << record["diagram"].dump() << '\n';
    } else {
        std::cout << record.dump() << '\n';
    }
}

std::vector<std::string> split_words(const std::string& sentence) {
    std::istringstream in(sentence);
    std::vector<std::string> words;
    std::string w;
    while (in >> w) words.push_back(w);
    return words;
}

std::vector<double> parse_number_list(const std::string& text) {
    json v;
    try {
        v = json::parse(text);
    } catch (const json::exception&) {
        throw CLI::ValidationError("expected a JSON array of numbers: " + text);
    }
    if (!v.is_array()) throw CLI::ValidationError("expected a JSON array of numbers: " + text);
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) throw CLI::ValidationError("expected numbers in: " + text);
        out.push_back(x.get<double>());
    }
    return out;
}

std::vector<std::vector<double>> parse_matrix(const std::string& text) {
    json v;
    try {
        v = json::parse(text);
    } catch (const json::exception&) {
        throw CLI::ValidationError("expected a JSON array of rows: " + text);
    }
    if (!v.is_array() || v.empty()) throw CLI::ValidationError("expected rows: " + text);
    std::vector<std::vector<double>> rows;
    for (const auto& row : v) {
        if (!row.is_array()) throw CLI::ValidationError("expected rows of numbers: " + text);
        rows.emplace_back();
        for (const auto& x : row) rows.back().push_back(x.get<double>());
        if (rows.back().size() != rows.front().size()) {
            throw CLI::ValidationError("ragged matrix: " + text);
        }
    }
    return rows;
}

// s-expression over lexicon words: "(v1 (v3 v4))"
BinaryTree parse_tree(const std::string& text, const Lexicon& lexicon) {
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto node = [&](auto&& self) -> BinaryTree {
        skip_ws();
        if (pos >= text.size()) throw ParseError("unexpected end of tree expression");
        if (text[pos] == '(') {
            ++pos;
            BinaryTree left = self(self);
            BinaryTree right = self(self);
            skip_ws();
            if (pos >= text.size() || text[pos] != ')') {
                throw ParseError("expected ')' in tree expression");
            }
            ++pos;
            return BinaryTree::node(std::move(left), std::move(right));
        }
        std::size_t start = pos;
        while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
               text[pos] != '(' && text[pos] != ')') {
            ++pos;
        }
        if (start == pos) throw ParseError("expected a word in tree expression");
        std::string word = text.substr(start, pos - start);
        const Tensor& meaning = lexicon.entry(word).meaning;
        if (meaning.rank() != 1) throw ShapeError("tree leaves must be rank-1 entries");
        return BinaryTree::leaf(meaning);
    };
    BinaryTree t = node(node);
    skip_ws();
    if (pos != text.size()) throw ParseError("trailing characters after tree expression");
    return t;
}

struct CommonOpts {
    std::string lexicon_path;
    std::string target = "s";
    std::string output = "json";
    std::string pipeline = "diagram";
    double tol = -1.0;
};

Lexicon need_lexicon(const CommonOpts& opts) {
    if (opts.lexicon_path.empty()) {
        throw CLI::ValidationError("--lexicon is required for this command");
    }
    return load_lexicon(opts.lexicon_path);
}

RelClausePipeline pipeline_of(const CommonOpts& opts) {
    return opts.pipeline == "paper" ? RelClausePipeline::matrix : RelClausePipeline::diagram;
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_pipeline = false) {
    cmd->add_option("--lexicon", opts.lexicon_path, "lexicon JSON file");
    cmd->add_option("--target", opts.target, "target type, e.g. 's' or 'n'");
    cmd->add_option("--output", opts.output, "output format")
        ->check(CLI::IsMember({"json", "plain"}));
    cmd->add_option("--tol", opts.tol, "pseudoinverse cutoff tolerance");
    if (with_pipeline) {
        cmd->add_option("--pipeline", opts.pipeline, "relative-clause evaluation pipeline")
            ->check(CLI::IsMember({"paper", "diagram"}));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"compositional vector semantics over pregroup grammars"};
    app.require_subcommand(1);

    CommonOpts opts;

    std::string sentence;
    std::string types_text;
    auto* cmd_parse = app.add_subcommand("parse", "find a type reduction");
    cmd_parse->add_option("sentence", sentence, "words separated by spaces");
    cmd_parse->add_option("--types", types_text, "explicit types separated by '|'");
    add_common(cmd_parse, opts);

    std::string compose_sentence;
    auto* cmd_compose = app.add_subcommand("compose", "evaluate a phrase to a vector");
    cmd_compose->add_option("sentence", compose_sentence)->required();
    add_common(cmd_compose, opts, true);

    std::string phrase_a, phrase_b, target2;
    auto* cmd_compare = app.add_subcommand("compare", "cosine of two phrase meanings");
    cmd_compare->add_option("first", phrase_a)->required();
    cmd_compare->add_option("second", phrase_b)->required();
    cmd_compare->add_option("--target2", target2, "target type of the second phrase");
    add_common(cmd_compare, opts, true);

    std::string compile_sentence;
    auto* cmd_compile = app.add_subcommand("compile", "factor a phrase into weight and filler");
    cmd_compile->add_option("sentence", compile_sentence)->required();
    add_common(cmd_compile, opts);

    std::string unbind_sentence, weight_text, vector_text;
    auto* cmd_unbind = app.add_subcommand("unbind", "apply the pseudoinverse of a weight");
    cmd_unbind->add_option("sentence", unbind_sentence, "compile this phrase and unbind it");
    cmd_unbind->add_option("--weight", weight_text, "explicit weight matrix (JSON rows)");
    cmd_unbind->add_option("--vector", vector_text, "explicit structure vector (JSON array)");
    add_common(cmd_unbind, opts);

    std::string subst_sentence, modifier_word;
    std::size_t slot = 0;
    auto* cmd_subst = app.add_subcommand("substitute", "modify one filler slot in place");
    cmd_subst->add_option("sentence", subst_sentence)->required();
    cmd_subst->add_option("--modifier", modifier_word, "rank-2 lexicon word to insert")
        ->required();
    cmd_subst->add_option("--slot", slot, "filler slot to modify (0-based)");
    add_common(cmd_subst, opts);

    std::string tree_text, role0_text = "[1,0]", role1_text = "[0,1]", unbind_path;
    auto* cmd_encode = app.add_subcommand("ics-encode", "encode a binary tree of lexicon words");
    cmd_encode->add_option("--tree", tree_text, "s-expression, e.g. \"(A (B C))\"")->required();
    cmd_encode->add_option("--role0", role0_text, "left role vector (JSON array)");
    cmd_encode->add_option("--role1", role1_text, "right role vector (JSON array)");
    cmd_encode->add_option("--path", unbind_path, "also unbind the filler at this address");
    add_common(cmd_encode, opts);

    std::string conv_a, conv_b;
    auto* cmd_conv = app.add_subcommand("convolve", "circular convolution of two vectors");
    cmd_conv->add_option("first", conv_a)->required();
    cmd_conv->add_option("second", conv_b)->required();
    add_common(cmd_conv, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 1;
    }

    try {
        if (*cmd_parse) {
            std::vector<PregroupType> types;
            json echo;
            if (!types_text.empty()) {
                std::istringstream in(types_text);
                std::string part;
                while (std::getline(in, part, '|')) types.push_back(PregroupType::parse(part));
                echo = types_text;
            } else {
                Lexicon lex = need_lexicon(opts);
                for (const auto& w : split_words(sentence)) types.push_back(lex.entry(w).type);
                echo = sentence;
            }
            ReductionDiagram d = parse(types, PregroupType::parse(opts.target));
            emit(json{{"command", "parse"},
                      {"input", echo},
                      {"target", opts.target},
                      {"diagram", diagram_record(d)}},
                 opts.output);
        } else if (*cmd_compose) {
            Lexicon lex = need_lexicon(opts);
            PhraseSpec phrase{split_words(compose_sentence), PregroupType::parse(opts.target),
                              pipeline_of(opts)};
            Tensor r = evaluate_phrase(phrase, lex);
            json record{{"command", "compose"},
                        {"sentence", compose_sentence},
                        {"target", opts.target},
                        {"pipeline", opts.pipeline},
                        {"output", tensor_record(r)}};
            // diagnostics: the reduction used, when the phrase went through
            // the ordinary contraction path
            std::vector<PregroupType> types;
            for (const auto& w : phrase.words) types.push_back(lex.entry(w).type);
            if (auto d = try_parse(types, phrase.target)) record["diagram"] = diagram_record(*d);
            emit(record, opts.output);
        } else if (*cmd_compare) {
            Lexicon lex = need_lexicon(opts);
            PhraseSpec a{split_words(phrase_a), PregroupType::parse(opts.target),
                         pipeline_of(opts)};
            PhraseSpec b{split_words(phrase_b),
                         PregroupType::parse(target2.empty() ? opts.target : target2),
                         pipeline_of(opts)};
            double sim = meaning_similarity(a, b, lex);
            emit(json{{"command", "compare"},
                      {"first", phrase_a},
                      {"second", phrase_b},
                      {"scalar", sim}},
                 opts.output);
        } else if (*cmd_compile) {
            Lexicon lex = need_lexicon(opts);
            FactoredForm ff = compile_sentence_factored(split_words(compile_sentence), lex,
                                                        PregroupType::parse(opts.target));
            emit(json{{"command", "compile"},
                      {"sentence", compile_sentence},
                      {"target", opts.target},
                      {"weight", tensor_record(ff.weight)},
                      {"filler", tensor_record(ff.filler)},
                      {"filler_words", ff.filler_words}},
                 opts.output);
        } else if (*cmd_unbind) {
            if (!weight_text.empty() || !vector_text.empty()) {
                if (weight_text.empty() || vector_text.empty()) {
                    throw CLI::ValidationError("--weight and --vector go together");
                }
                auto rows = parse_matrix(weight_text);
                auto vec = parse_number_list(vector_text);
                std::vector<double> flat;
                for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
                Tensor w({Space{"row", rows.size()}, Space{"col", rows.front().size()}},
                         std::move(flat));
                Tensor s = Tensor::vector(Space{"row", vec.size()}, vec);
                Tensor rec = approx_unbind(w, s, opts.tol);
                emit(json{{"command", "unbind"}, {"output", tensor_record(rec)}}, opts.output);
            } else if (!unbind_sentence.empty()) {
                Lexicon lex = need_lexicon(opts);
                FactoredForm ff = compile_sentence_factored(split_words(unbind_sentence), lex,
                                                            PregroupType::parse(opts.target));
                Tensor s = matvec(ff.weight, ff.filler);
                Tensor rec = approx_unbind(ff.weight, s, opts.tol);
                emit(json{{"command", "unbind"},
                          {"sentence", unbind_sentence},
                          {"filler_words", ff.filler_words},
                          {"output", tensor_record(rec)},
                          {"scalar", norm(rec - ff.filler)}},
                     opts.output);
            } else {
                throw CLI::ValidationError("give a sentence or --weight/--vector");
            }
        } else if (*cmd_subst) {
            Lexicon lex = need_lexicon(opts);
            FactoredForm ff = compile_sentence_factored(split_words(subst_sentence), lex,
                                                        PregroupType::parse(opts.target));
            const Tensor& mod_raw = lex.entry(modifier_word).meaning;
            if (mod_raw.rank() != 2) throw ShapeError("modifier word must be a rank-2 entry");
            if (slot >= ff.filler_words.size()) throw SlotOutOfRange("slot index out of range");
            std::vector<std::size_t> slot_dims;
            for (const auto& w : ff.filler_words) {
                slot_dims.push_back(lex.entry(w).meaning.dim(0));
            }
            Tensor modifier = Tensor::matrix(mod_raw.axes()[0], mod_raw.axes()[1], mod_raw.data());
            SubstitutionOp op = make_substitution(ff.weight, modifier, slot,
                                                  ff.filler_words.size(), slot_dims, opts.tol);
            Tensor s = matvec(ff.weight, ff.filler);
            Tensor result = apply_substitution(op, s);
            Tensor truth = matvec(
                matmul(ff.weight,
                       padded_modifier(modifier, slot, ff.filler_words.size(), slot_dims)),
                ff.filler);
            emit(json{{"command", "substitute"},
                      {"sentence", subst_sentence},
                      {"modifier", modifier_word},
                      {"slot", slot},
                      {"output", tensor_record(result)},
                      {"target_structure", tensor_record(truth)},
                      {"scalar", norm(result - truth)}},
                 opts.output);
        } else if (*cmd_encode) {
            Lexicon lex = need_lexicon(opts);
            BinaryTree tree = parse_tree(tree_text, lex);
            auto r0 = parse_number_list(role0_text);
            auto r1 = parse_number_list(role1_text);
            if (r0.size() != r1.size()) throw DimMismatch("roles must have equal dimensions");
            Space role_space{"role", r0.size()};
            RoleBasis roles{Tensor::vector(role_space, r0), Tensor::vector(role_space, r1)};
            DirectSumElement e = encode_tree(tree, roles);
            json components = json::array();
            for (std::size_t d : e.depths()) {
                components.push_back({{"depth", d}, {"tensor", tensor_record(e.component(d))}});
            }
            json record{{"command", "ics-encode"},
                        {"tree", tree_text},
                        {"components", std::move(components)}};
            if (!unbind_path.empty()) {
                record["path"] = unbind_path;
                record["output"] = tensor_record(unbind_role(e, unbind_path, roles));
            }
            emit(record, opts.output);
        } else if (*cmd_conv) {
            Tensor a, b;
            if (!opts.lexicon_path.empty()) {
                Lexicon lex = need_lexicon(opts);
                a = lex.entry(conv_a).meaning;
                b = lex.entry(conv_b).meaning;
            } else {
                auto va = parse_number_list(conv_a);
                auto vb = parse_number_list(conv_b);
                a = Tensor::vector(Space{"v", va.size()}, va);
                b = Tensor::vector(Space{"v", vb.size()}, vb);
            }
            Tensor r = circular_convolution(a, b);
            emit(json{{"command", "convolve"}, {"output", tensor_record(r)}}, opts.output);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const NotGrammatical& e) {
        std::cerr << "not grammatical: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
