#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "thompson/cayley.hpp"
#include "thompson/error.hpp"
#include "thompson/io.hpp"
#include "thompson/witness.hpp"

namespace py = pybind11;
using namespace thompson;

namespace {

  Element parse(std::string const& text) {
    return parse_element(text).element;
  }

  WitnessConstants make_constants(std::string const& c, std::string const& C, std::uint64_t M,
                                  std::uint64_t Q, bool strict) {
    auto rational = [](std::string const& s) {
      auto slash = s.find('/');
      std::int64_t d = slash == std::string::npos ? 1 : std::stoll(s.substr(slash + 1));
      return Rational(std::stoll(s.substr(0, slash)), d);
    };
    if (strict) {
      return WitnessConstants::strict_from(rational(c), rational(C));
    }
    return WitnessConstants::custom(rational(c), rational(C), M, Q);
  }

}  // namespace

PYBIND11_MODULE(thompson, m) {
  m.doc() = "Tree-pair diagrams for Thompson's groups F, T and V";

  py::register_exception<Error>(m, "Error");

  py::class_<Element>(m, "Element")
      .def(py::init<>())
      .def(py::init(&parse), py::arg("text"))
      .def_property_readonly("num_leaves", &Element::num_leaves)
      .def("edge_depths",
           [](Element const& a) {
             auto d = edge_depths(a);
             return py::make_tuple(d.left, d.right);
           })
      .def("classify", [](Element const& a) { return std::string(name(classify(a))); })
      .def("inverse", [](Element const& a) { return invert(a); })
      .def("is_identity", &Element::is_identity)
      .def("__mul__", [](Element const& a, Element const& b) { return multiply(a, b); })
      .def("__eq__", [](Element const& a, Element const& b) { return a == b; })
      .def("__hash__", &Element::hash)
      .def("__str__", &serialize_element)
      .def("__repr__", [](Element const& a) {
        return "Element(\"" + serialize_element_inline(a) + "\")";
      });

  m.def("eval_word", [](std::string const& w) { return eval_word(parse_word(w)); },
        py::arg("word"));
  m.def("x_n", &x_n, py::arg("n"));
  m.def("copy_into_interval",
        [](Element const& h, std::string const& u) {
          return copy_into_interval(h, BinaryWord::from_string(u));
        },
        py::arg("h"), py::arg("u"));
  m.def(
      "word_length",
      [](Element const& a, std::string const& alphabet, unsigned cap) {
        return word_length(a, parse_alphabet(alphabet), cap);
      },
      py::arg("element"), py::arg("alphabet") = "A", py::arg("cap") = 8);
  m.def(
      "estimate_constants",
      [](std::string const& alphabet, unsigned radius) {
        auto e = estimate_constants(parse_alphabet(alphabet), radius);
        return py::make_tuple(
            py::make_tuple(e.c_hat.numerator(), e.c_hat.denominator()),
            py::make_tuple(e.C_hat.numerator(), e.C_hat.denominator()));
      },
      py::arg("alphabet"), py::arg("radius"));
  m.def(
      "witness",
      [](Element const& g, std::string const& alphabet, std::string const& c,
         std::string const& C, std::uint64_t M, std::uint64_t Q, bool strict) {
        return serialize_certificate(
            witness(g, make_constants(c, C, M, Q, strict), parse_alphabet(alphabet)));
      },
      py::arg("g"), py::arg("alphabet") = "A", py::arg("c") = "1/4", py::arg("C") = "3",
      py::arg("M") = 4, py::arg("Q") = 8, py::arg("strict") = false,
      "Certificate text for the witness path of g.");
  m.def(
      "verify",
      [](std::string const& certificate, std::string const& mode) {
        auto r = verify(parse_certificate(certificate), parse_verify_mode(mode));
        return py::make_tuple(r.passed(), r.to_text());
      },
      py::arg("certificate"), py::arg("mode") = "lemmas");
}
