#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "balcat/calculus.hpp"
#include "balcat/cli.hpp"
#include "balcat/constructions.hpp"
#include "balcat/factorization.hpp"
#include "balcat/io.hpp"
#include "balcat/laws.hpp"

namespace py = pybind11;
using namespace balcat;

namespace {

/// Python-side handle; categories are immutable and shared.
struct Category {
    CategoryPtr ptr;
    const FiniteCategory& operator*() const { return *ptr; }
};

ObjId object_named(const Category& x, const std::string& name) {
    const auto o = x.ptr->find_object(name);
    if (!o) throw py::key_error("no object '" + name + "'");
    return *o;
}

py::tuple verdict(const Verdict& v) { return py::make_tuple(v.holds, v.witness); }

std::map<std::string, int> fiber_sizes(const CategoryPtr& base, const std::vector<std::vector<std::string>>& fiber) {
    std::map<std::string, int> out;
    for (ObjId x = 0; x < base->num_objects(); ++x) out[base->object_name(x)] = static_cast<int>(fiber[x].size());
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Finite categories, comprehensive factorizations and the balanced calculus";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<SizeGuardError>(m, "SizeGuardError", PyExc_RuntimeError);
    py::register_exception<io::InputError>(m, "InputError", PyExc_ValueError);

    py::class_<Category>(m, "Category")
        .def_static("from_json", [](const std::string& text) {
            return Category{io::category_from_json(io::parse_json(text, "<string>"))};
        })
        .def_static("from_file", [](const std::string& path) { return Category{io::category_from_json(io::read_json(path))}; })
        .def_static("interval", [] { return Category{interval_category()}; })
        .def_static("terminal", [] { return Category{terminal_category()}; })
        .def_static("discrete", [](const std::vector<std::string>& objects) { return Category{discrete_category(objects)}; },
                    py::arg("objects"))
        .def_static("cyclic_group", [](int n) { return Category{laws::cyclic_group_category(n)}; }, py::arg("n"))
        .def("to_json", [](const Category& x) { return io::dump(io::category_to_json(*x)); })
        .def_property_readonly("objects", [](const Category& x) { return (*x).object_names(); })
        .def_property_readonly("morphisms", [](const Category& x) {
            std::vector<std::string> out;
            for (MorId f = 0; f < (*x).num_morphisms(); ++f) out.push_back((*x).morphism_name(f));
            return out;
        })
        .def("__len__", [](const Category& x) { return (*x).num_objects(); })
        .def("hom", [](const Category& x, const std::string& a, const std::string& b) {
            std::vector<std::string> out;
            for (MorId f : (*x).hom(object_named(x, a), object_named(x, b))) out.push_back((*x).morphism_name(f));
            return out;
        })
        .def("opposite", [](const Category& x) { return Category{opposite(x.ptr)}; })
        .def("components", [](const Category& x) { return pi0(*x).elements; })
        .def("__eq__", [](const Category& a, const Category& b) { return *a == *b; })
        .def("__repr__", [](const Category& x) {
            std::ostringstream s;
            s << "<Category " << (*x).num_objects() << " objects, " << (*x).num_morphisms() << " morphisms>";
            return s.str();
        });

    py::class_<Functor>(m, "Functor")
        .def_static("from_file", [](const std::string& path) {
            const std::filesystem::path p(path);
            return io::functor_from_json(io::read_json(p), p.parent_path());
        })
        .def_static("identity", [](const Category& x) { return identity_functor(x.ptr); }, py::arg("category"))
        .def_static("point", [](const Category& x, const std::string& at) { return point(x.ptr, object_named(x, at)); },
                    py::arg("category"), py::arg("object"))
        .def_static("to_terminal", [](const Category& x) { return to_terminal(x.ptr); }, py::arg("category"))
        .def_property_readonly("dom", [](const Functor& f) { return Category{f.dom}; })
        .def_property_readonly("cod", [](const Functor& f) { return Category{f.cod}; })
        .def("then", [](const Functor& f, const Functor& g) { return compose(g, f); }, py::arg("g"),
             "The composite g after this functor.")
        .def("object_map", [](const Functor& f) {
            std::map<std::string, std::string> out;
            for (ObjId a = 0; a < f.dom->num_objects(); ++a) out[f.dom->object_name(a)] = f.cod->object_name(f.obj(a));
            return out;
        })
        .def("to_json", [](const Functor& f) { return io::dump(io::functor_to_json(f)); })
        .def("__eq__", [](const Functor& a, const Functor& b) { return a == b; });

    m.def("is_final", [](const Functor& f) { return verdict(is_final(f)); });
    m.def("is_initial", [](const Functor& f) { return verdict(is_initial(f)); });
    m.def("is_discrete_fibration", [](const Functor& f) { return verdict(is_discrete_fibration(f)); });
    m.def("is_discrete_opfibration", [](const Functor& f) { return verdict(is_discrete_opfibration(f)); });
    m.def("is_dense", [](const Functor& f) { return verdict(is_dense(f, slice_cache(f.cod))); });
    m.def("is_adjunctible", [](const Functor& f) { return verdict(is_adjunctible(f, slice_cache(f.cod))); });

    m.def("factorize", [](const Functor& f, const std::string& system) {
        if (system != "left" && system != "right") throw py::value_error("system is 'left' or 'right'");
        const FactorizationResult r = factorize(f, system == "left" ? System::Left : System::Right);
        return py::make_tuple(r.e, Category{r.mid}, r.m);
    }, py::arg("f"), py::arg("system") = "left", "Returns (e, mid, m) with m after e equal to f.");

    m.def("reflect", [](const Functor& f) { return fiber_sizes(f.cod, reflect_df(f).fiber); },
          "Fiber sizes of the reflection of f into discrete fibrations, by object name.");
    m.def("coreflect", [](const Functor& f) { return fiber_sizes(f.cod, reflect_dof(f).fiber); });

    m.def("hom_size", [](const Category& x, const std::string& a, const std::string& b) {
        return hom_interval(x.ptr, object_named(x, a), object_named(x, b)).size();
    });
    m.def("tensor_size", [](const Functor& p, const Functor& q) { return tensor(p, q).size(); });
    m.def("mu_violations", [](const Category& x) { return mu_associativity(enriched_structure(x.ptr)).violations; });

    m.def("law_ids", [] {
        std::vector<std::string> ids;
        for (const auto& info : laws::catalog()) ids.push_back(info.id);
        return ids;
    });
    m.def("run_laws", [](const std::vector<std::string>& ids, std::uint64_t seed, int count, int max_objects,
                         int max_morphisms) {
        laws::GeneratorConfig c;
        c.seed = seed;
        c.count = count;
        c.max_objects = max_objects;
        c.max_morphisms = max_morphisms;
        laws::validate_config(c);
        std::vector<laws::LawReport> reports;
        {
            py::gil_scoped_release release;
            reports = laws::run_laws(ids, c);
        }
        return io::dump(laws::suite_document(c, reports));
    }, py::arg("ids"), py::arg("seed") = 7, py::arg("count") = 12, py::arg("max_objects") = 4,
       py::arg("max_morphisms") = 12, "The suite report document as JSON text.");

    m.def("cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"), "Runs one command-line invocation in process; returns (exit code, stdout, stderr).");
}
