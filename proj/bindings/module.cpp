#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "catsem/binding.hpp"
#include "catsem/lexicon_io.hpp"
#include "catsem/pregroup.hpp"
#include "catsem/semantics.hpp"
#include "catsem/tensor.hpp"
#include "catsem/unbinding.hpp"

namespace py = pybind11;
using namespace catsem;

namespace {

PregroupType as_type(const py::object& t) {
    if (py::isinstance<py::str>(t)) return PregroupType::parse(t.cast<std::string>());
    return t.cast<PregroupType>();
}

std::vector<std::pair<AxisRef, AxisRef>> as_pairings(
    const std::vector<std::pair<std::pair<std::size_t, std::size_t>,
                                std::pair<std::size_t, std::size_t>>>& raw) {
    std::vector<std::pair<AxisRef, AxisRef>> out;
    for (const auto& [a, b] : raw) {
        out.emplace_back(AxisRef{a.first, a.second}, AxisRef{b.first, b.second});
    }
    return out;
}

std::vector<AxisRef> as_refs(const std::vector<std::pair<std::size_t, std::size_t>>& raw) {
    std::vector<AxisRef> out;
    for (const auto& [o, a] : raw) out.push_back(AxisRef{o, a});
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Compositional vector semantics: pregroup parsing, tensor "
              "contraction, filler/role binding and approximate unbinding";
    m.attr("__version__") = "0.1.0";

    // exceptions
    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<NotGrammatical>(m, "NotGrammatical", base);
    py::register_exception<UnknownWord>(m, "UnknownWord", base);
    py::register_exception<ParseError>(m, "ParseError", base);
    py::register_exception<ShapeError>(m, "ShapeError", base);
    py::register_exception<SingularRoles>(m, "SingularRoles", base);

    py::class_<Space>(m, "Space")
        .def(py::init<std::string, std::size_t>(), py::arg("name"), py::arg("dim"))
        .def_readonly("name", &Space::name)
        .def_readonly("dim", &Space::dim)
        .def(py::self == py::self)
        .def("__repr__",
             [](const Space& s) { return "Space(" + s.name + ", " + std::to_string(s.dim) + ")"; });

    py::class_<Tensor>(m, "Tensor")
        .def(py::init<std::vector<Space>, std::vector<double>>(), py::arg("axes"),
             py::arg("data"))
        .def_static("scalar", &Tensor::scalar)
        .def_static("vector", &Tensor::vector)
        .def_static("matrix", &Tensor::matrix)
        .def_static("basis", &Tensor::basis)
        .def_property_readonly("axes", &Tensor::axes)
        .def_property_readonly("data", [](const Tensor& t) { return t.data(); })
        .def_property_readonly("rank", &Tensor::rank)
        .def_property_readonly(
            "shape",
            [](const Tensor& t) {
                std::vector<std::size_t> s;
                for (const auto& a : t.axes()) s.push_back(a.dim);
                return s;
            })
        .def("value", &Tensor::value)
        .def("at", [](const Tensor& t, const std::vector<std::size_t>& idx) {
            return t.at(std::span<const std::size_t>(idx));
        })
        .def("reshaped", &Tensor::reshaped)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def("__rmul__", [](const Tensor& t, double s) { return s * t; })
        .def("__repr__", [](const Tensor& t) {
            std::string r = "Tensor(";
            for (std::size_t i = 0; i < t.rank(); ++i) {
                if (i) r += "x";
                r += std::to_string(t.dim(i));
            }
            return r + ", " + std::to_string(t.size()) + " entries)";
        });

    py::class_<SimpleType>(m, "SimpleType")
        .def_readonly("base", &SimpleType::base)
        .def_readonly("adjoint", &SimpleType::adjoint);

    py::class_<PregroupType>(m, "PregroupType")
        .def_static("parse", &PregroupType::parse)
        .def_static("unit", &PregroupType::unit)
        .def("__str__", &PregroupType::str)
        .def("__repr__", [](const PregroupType& t) { return "PregroupType('" + t.str() + "')"; })
        .def("__len__", &PregroupType::size)
        .def("__eq__", [](const PregroupType& a, const PregroupType& b) { return a == b; })
        .def("__mul__", [](const PregroupType& a, const PregroupType& b) { return a * b; })
        .def_property_readonly("simples", &PregroupType::simples);

    m.def("parse_type", [](const std::string& s) { return PregroupType::parse(s); });
    m.def("left_adjoint", &left_adjoint);
    m.def("right_adjoint", &right_adjoint);

    py::class_<ReductionDiagram>(m, "ReductionDiagram")
        .def_readonly("cups", &ReductionDiagram::cups)
        .def_readonly("survivors", &ReductionDiagram::survivors)
        .def("__repr__", [](const ReductionDiagram& d) {
            std::string r = "ReductionDiagram(cups=[";
            for (std::size_t i = 0; i < d.cups.size(); ++i) {
                if (i) r += ", ";
                r += "(" + std::to_string(d.cups[i].first) + ", " +
                     std::to_string(d.cups[i].second) + ")";
            }
            r += "], survivors=[";
            for (std::size_t i = 0; i < d.survivors.size(); ++i) {
                if (i) r += ", ";
                r += std::to_string(d.survivors[i]);
            }
            return r + "])";
        });

    m.def(
        "parse",
        [](const std::vector<py::object>& types, const py::object& target) {
            std::vector<PregroupType> ts;
            for (const auto& t : types) ts.push_back(as_type(t));
            return parse(ts, as_type(target));
        },
        py::arg("types"), py::arg("target"));
    m.def(
        "try_parse",
        [](const std::vector<py::object>& types,
           const py::object& target) -> std::optional<ReductionDiagram> {
            std::vector<PregroupType> ts;
            for (const auto& t : types) ts.push_back(as_type(t));
            return try_parse(ts, as_type(target));
        },
        py::arg("types"), py::arg("target"));
    m.def(
        "is_valid",
        [](const ReductionDiagram& d, const std::vector<py::object>& types,
           const py::object& target) {
            std::vector<PregroupType> ts;
            for (const auto& t : types) ts.push_back(as_type(t));
            return is_valid(d, ts, as_type(target));
        },
        py::arg("diagram"), py::arg("types"), py::arg("target"));

    // tensor operations
    m.def("tensor_product", &tensor_product);
    m.def("epsilon", &epsilon);
    m.def("eta", &eta);
    m.def("identity", &identity);
    m.def("frobenius_mu", &frobenius_mu);
    m.def("iota_delete", &iota_delete, py::arg("tensor"), py::arg("axis"));
    m.def(
        "contract",
        [](const std::vector<Tensor>& operands,
           const std::vector<std::pair<std::pair<std::size_t, std::size_t>,
                                       std::pair<std::size_t, std::size_t>>>& pairings,
           const std::vector<std::pair<std::size_t, std::size_t>>& output_order) {
            return contract(operands, as_pairings(pairings), as_refs(output_order));
        },
        py::arg("operands"), py::arg("pairings"), py::arg("output_order"));
    m.def("pseudoinverse", &pseudoinverse, py::arg("m"), py::arg("tol") = -1.0);
    m.def("cosine", &cosine);
    m.def("dot", &dot);
    m.def("norm", &norm);
    m.def("matvec", &matvec);
    m.def("matmul", &matmul);
    m.def("transpose", &transpose);
    m.def("kron", &kron);

    // lexicon and evaluation
    py::class_<LexiconEntry>(m, "LexiconEntry")
        .def_readonly("word", &LexiconEntry::word)
        .def_readonly("type", &LexiconEntry::type)
        .def_readonly("meaning", &LexiconEntry::meaning);

    py::class_<Lexicon>(m, "Lexicon")
        .def("words", &Lexicon::words)
        .def("contains", &Lexicon::contains)
        .def("entry", &Lexicon::entry, py::return_value_policy::reference_internal)
        .def("meaning",
             [](const Lexicon& l, const std::string& w) { return l.entry(w).meaning; });

    m.def("load_lexicon", &load_lexicon);
    m.def("save_lexicon", &save_lexicon);

    m.def(
        "evaluate",
        [](const std::vector<std::string>& words, const Lexicon& lexicon,
           const py::object& target) { return evaluate(words, lexicon, as_type(target)); },
        py::arg("words"), py::arg("lexicon"), py::arg("target"));
    m.def("evaluate_relative_clause_matrix", &evaluate_relative_clause_matrix, py::arg("head"),
          py::arg("verb_display"), py::arg("object"));
    m.def("evaluate_relative_clause_diagram", &evaluate_relative_clause_diagram, py::arg("head"),
          py::arg("verb"), py::arg("object"));
    m.def("verb_display_matrix", &verb_display_matrix);
    m.def(
        "meaning_similarity",
        [](const std::vector<std::string>& a, const py::object& target_a,
           const std::vector<std::string>& b, const py::object& target_b, const Lexicon& lexicon,
           const std::string& pipeline) {
            RelClausePipeline p =
                pipeline == "paper" ? RelClausePipeline::matrix : RelClausePipeline::diagram;
            return meaning_similarity(PhraseSpec{a, as_type(target_a), p},
                                      PhraseSpec{b, as_type(target_b), p}, lexicon);
        },
        py::arg("words_a"), py::arg("target_a"), py::arg("words_b"), py::arg("target_b"),
        py::arg("lexicon"), py::arg("pipeline") = "diagram");

    // filler/role binding
    py::class_<RoleBasis>(m, "RoleBasis")
        .def(py::init<Tensor, Tensor>(), py::arg("r0"), py::arg("r1"))
        .def_readonly("r0", &RoleBasis::r0)
        .def_readonly("r1", &RoleBasis::r1);

    py::class_<BinaryTree>(m, "BinaryTree")
        .def_static("leaf", &BinaryTree::leaf)
        .def_static("node", &BinaryTree::node)
        .def_property_readonly("is_leaf", &BinaryTree::is_leaf);

    py::class_<DirectSumElement>(m, "DirectSumElement")
        .def("component", &DirectSumElement::component)
        .def("depths", &DirectSumElement::depths);

    m.def("bind", &bind, py::arg("filler"), py::arg("role"));
    m.def("encode_tree", &encode_tree);
    m.def("unbind_role", &unbind_role, py::arg("element"), py::arg("path"), py::arg("roles"));
    m.def("direct_sum_to_tensor",
          [](const std::vector<Tensor>& vs) { return direct_sum_to_tensor(vs); });
    m.def("circular_convolution", &circular_convolution);

    py::class_<FactoredForm>(m, "FactoredForm")
        .def_readonly("weight", &FactoredForm::weight)
        .def_readonly("filler", &FactoredForm::filler)
        .def_readonly("filler_words", &FactoredForm::filler_words);

    py::class_<FillerExpr>(m, "FillerExpr")
        .def_static("atom", &FillerExpr::atom)
        .def_static("apply", &FillerExpr::apply)
        .def_static("pair", &FillerExpr::pair)
        .def("eval", &FillerExpr::eval);

    m.def("factor_expression", &factor_expression);
    m.def(
        "compile_sentence_factored",
        [](const std::vector<std::string>& words, const Lexicon& lexicon,
           const py::object& target) {
            return compile_sentence_factored(words, lexicon, as_type(target));
        },
        py::arg("words"), py::arg("lexicon"), py::arg("target"));

    // unbinding
    py::class_<SubstitutionOp>(m, "SubstitutionOp")
        .def_readonly("op", &SubstitutionOp::op)
        .def_readonly("source_role", &SubstitutionOp::source_role)
        .def_readonly("modifier", &SubstitutionOp::modifier)
        .def_readonly("slot", &SubstitutionOp::slot);

    m.def("approx_unbind", &approx_unbind, py::arg("w"), py::arg("s"), py::arg("tol") = -1.0);
    m.def("make_substitution", &make_substitution, py::arg("w_r"), py::arg("modifier"),
          py::arg("slot"), py::arg("n_slots"), py::arg("slot_dims"), py::arg("tol") = -1.0);
    m.def("apply_substitution", &apply_substitution);
    m.def("padded_modifier", &padded_modifier, py::arg("modifier"), py::arg("slot"),
          py::arg("n_slots"), py::arg("slot_dims"));
}
