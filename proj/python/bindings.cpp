// Python bindings. Rationals cross the boundary as fractions.Fraction.

#include "qfd/enumerate.hpp"
#include "qfd/global.hpp"
#include "qfd/inverse.hpp"
#include "qfd/local.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace qfd;

namespace {

py::object fraction(const Rational& q)
{
    static py::object Fraction = py::module_::import("fractions").attr("Fraction");
    return Fraction(to_string(q));
}

Rational from_python(const py::handle& x)
{
    return parse_rational(py::str(py::module_::import("fractions").attr("Fraction")(x)).cast<std::string>());
}

py::object table_object(const RepresentationTable& t)
{
    py::list v;
    for (long e : t.v) {
        if (e == kInfinity)
            v.append(py::none());
        else
            v.append(e);
    }
    py::dict d;
    d["p"] = t.p;
    d["reps"] = t.reps;
    d["v"] = v;
    return d;
}

QuadraticForm as_form(const py::handle& x)
{
    if (py::isinstance<py::str>(x))
        return parse_form(x.cast<std::string>());
    return x.cast<QuadraticForm>();
}

} // namespace

PYBIND11_MODULE(_qfd, m)
{
    m.doc() = "Densities of integers represented by integral quadratic forms";

    static py::exception<DomainError> domain_error(m, "DomainError", PyExc_RuntimeError);
    static py::exception<ParseError> parse_error(m, "ParseError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const DomainError& e) {
            py::set_error(domain_error, e.what());
        } catch (const ParseError& e) {
            py::set_error(parse_error, e.what());
        }
    });

    py::class_<QuadraticForm>(m, "QuadraticForm")
        .def(py::init<int, std::vector<std::int64_t>>(), py::arg("n"), py::arg("coeffs"))
        .def_static("parse", [](const std::string& s) { return parse_form(s); })
        .def_static("from_coeffs", [](const std::string& s) { return parse_coeffs(s); })
        .def_property_readonly("arity", &QuadraticForm::arity)
        .def_property_readonly("coeffs", [](const QuadraticForm& f) {
            return std::vector<std::int64_t>(f.coeffs().begin(), f.coeffs().end());
        })
        .def("__call__", [](const QuadraticForm& f, const std::vector<std::int64_t>& x) {
            if (static_cast<int>(x.size()) != f.arity())
                throw py::value_error("vector length does not match the arity");
            return py::int_(py::str(f.evaluate(std::span<const std::int64_t>(x)).get_str()));
        })
        .def("__eq__", [](const QuadraticForm& a, const QuadraticForm& b) { return a == b; })
        .def("__str__", &QuadraticForm::to_string)
        .def("__repr__", [](const QuadraticForm& f) { return "QuadraticForm('" + f.to_string() + "')"; });

    m.def("density", [](const py::handle& f) {
        auto rep = density(as_form(f));
        py::dict factors;
        for (const auto& [p, d] : rep.factors)
            factors[py::int_(p)] = fraction(d);
        py::dict out;
        out["density"] = fraction(rep.density);
        out["factors"] = factors;
        out["case"] = to_string(rep.case_tag);
        return out;
    });
    m.def("local_density", [](const py::handle& f, long p) { return fraction(local_density(as_form(f), p)); });
    m.def("representation_table", [](const py::handle& f, long p) { return table_object(representation_table(as_form(f), p)); });
    m.def("zp_represents", [](const py::handle& f, long p, long t) { return zp_represents(as_form(f), p, Int(t)); });
    m.def("locally_represented", [](const py::handle& f, long t) { return locally_represented(as_form(f), Int(t)); });
    m.def("is_isotropic_over_Q", [](const py::handle& f) { return is_isotropic_over_Q(as_form(f)); });
    m.def("hilbert_symbol", [](long a, long b, long p) {
        return hilbert_symbol(Int(a), Int(b), p == 0 ? Place::real() : Place::prime(p));
    }, py::arg("a"), py::arg("b"), py::arg("p"));

    m.def("exceptional_set", [](const py::handle& f, std::uint64_t X) {
        auto form = as_form(f);
        py::gil_scoped_release release;
        return exceptional_set(form, X).members;
    });
    m.def("empirical_density", [](const py::handle& f, std::uint64_t X) {
        auto form = as_form(f);
        Rational d;
        {
            py::gil_scoped_release release;
            d = empirical_density(form, X);
        }
        return fraction(d);
    });
    m.def("represented", [](const py::handle& f, std::uint64_t X) {
        auto form = as_form(f);
        py::gil_scoped_release release;
        return represented_set(form, X).members();
    });
    m.def("represents_isotropic_binary", [](const py::handle& f, long t) { return represents_isotropic_binary(as_form(f), Int(t)); });

    m.def("greedy_interval_product", [](const py::handle& alpha, const py::handle& beta) {
        auto plan = greedy_interval_product(from_python(alpha), from_python(beta));
        py::dict out;
        out["primes"] = plan.primes;
        out["product"] = fraction(plan.product);
        out["start_index"] = plan.start_index;
        return out;
    });
    m.def("v2_density_construction", [](int k) {
        auto c = v2_density_construction(k);
        return py::make_tuple(c.p, fraction(c.density));
    });
    m.def("attainable_local_density_set", [](long p) {
        py::set out;
        for (const auto& d : attainable_local_density_set(p))
            out.add(fraction(d));
        return out;
    });
    m.def("theorem_checks", [](const py::handle& f) {
        auto rep = theorem_checks(as_form(f));
        py::dict checks;
        for (const auto& c : rep.checks) {
            py::dict item;
            item["applicable"] = c.applicable;
            item["holds"] = c.holds;
            item["detail"] = c.detail;
            checks[py::str(c.name)] = item;
        }
        py::dict out;
        out["density"] = fraction(rep.density);
        out["checks"] = checks;
        out["all_hold"] = rep.all_hold();
        return out;
    });
}
