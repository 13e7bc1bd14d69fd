// bindings.cpp
// Thin pybind11 layer; JSON payloads cross as strings and are decoded in Python.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bruhat/errors.hpp"
#include "bruhat/kl.hpp"
#include "bruhat/matching.hpp"
#include "bruhat/serialize.hpp"
#include "bruhat/verify.hpp"

namespace py = pybind11;
using namespace bruhat;

namespace {

std::vector<std::string> coeffs(const IntPoly& p) {
  std::vector<std::string> out;
  for (const BigInt& c : p.coefficients()) out.push_back(c.str());
  return out;
}

struct Ball {
  BallPtr ball;
  std::shared_ptr<PolyContext> ctx;

  Ball(const std::string& matrix_json, int bound)
      : ball(GroupBall::build(CoxeterMatrix::from_json(nlohmann::json::parse(matrix_json)), bound)),
        ctx(std::make_shared<PolyContext>(ball)) {}

  std::vector<std::string> elements() const {
    std::vector<std::string> out;
    for (ElemId x = 0; x < ball->size(); ++x) out.push_back(ball->format(x));
    return out;
  }
  Generator gen(const std::string& name) const { return ball->matrix().generator(name); }
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bruhat intervals, R and KL polynomials, special matchings";

  // later registrations are tried first
  py::register_exception<Error>(m, "BruhatError", PyExc_RuntimeError);
  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  py::class_<Ball>(m, "Ball")
      .def(py::init<const std::string&, int>(), py::arg("matrix_json"), py::arg("bound"))
      .def_property_readonly("size", [](const Ball& b) { return b.ball->size(); })
      .def_property_readonly("bound", [](const Ball& b) { return b.ball->bound(); })
      .def_property_readonly("complete", [](const Ball& b) { return b.ball->complete(); })
      .def("elements", &Ball::elements)
      .def("length", [](const Ball& b, const std::string& w) { return b.ball->len(b.ball->parse(w)); })
      .def("leq", [](const Ball& b, const std::string& x, const std::string& y) {
        return b.ball->leq(b.ball->parse(x), b.ball->parse(y));
      })
      .def("r", [](Ball& b, const std::string& x, const std::string& y) {
        return coeffs(b.ctx->r(b.ball->parse(x), b.ball->parse(y)));
      })
      .def("kl", [](Ball& b, const std::string& x, const std::string& y) {
        return coeffs(b.ctx->kl(b.ball->parse(x), b.ball->parse(y)));
      })
      .def("count_families", [](const Ball& b, const std::string& base) {
        return count_families(b.ball->matrix(), b.gen(base), b.ball->bound());
      })
      .def("extend", [](const Ball& b, const std::string& base, std::size_t index) {
        const MatchingFamily f = family_at(b.ball->matrix(), b.gen(base), b.ball->bound(), index);
        return matching_to_json(extend_maximal(f, b.ball)).dump();
      })
      .def("check_family", [](const Ball& b, const std::string& base, std::size_t index) {
        const MatchingFamily f = family_at(b.ball->matrix(), b.gen(base), b.ball->bound(), index);
        return check_to_json(*b.ball, is_special_matching(extend_maximal(f, b.ball))).dump();
      });

  m.def("default_bound", [](const std::string& matrix_json) {
    return default_bound(CoxeterMatrix::from_json(nlohmann::json::parse(matrix_json)));
  });
  m.def("suite_names", &suite_names);
  m.def("run_suite", [](const std::string& name, unsigned jobs) {
    py::gil_scoped_release nogil;
    return run_suite(name, default_corpus(name), {jobs}).to_json(false).dump();
  }, py::arg("name"), py::arg("jobs") = 1);
}
