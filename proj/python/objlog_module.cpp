#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "objlog/converter.hpp"
#include "objlog/kb_store.hpp"
#include "objlog/metamodel.hpp"
#include "objlog/text_io.hpp"
#include "objlog/unify.hpp"

namespace py = pybind11;
using namespace objlog;

namespace {

// Python-side entity: a class name plus positional values in flattened
// attribute order.
struct PyEntity {
    std::string class_name;
    py::list values;
};

// Placeholder for an unbound slot in find().
struct PyVar {
    std::string name;
};

ObjectValue to_object(const py::handle& h)
{
    if (h.is_none()) return ObjectValue::null();
    // bool before int: True is an int in Python.
    if (py::isinstance<py::bool_>(h)) return ObjectValue::boolean(h.cast<bool>());
    if (py::isinstance<py::int_>(h)) return ObjectValue::integer(h.cast<std::int64_t>());
    if (py::isinstance<py::float_>(h)) return ObjectValue::floating(h.cast<double>());
    if (py::isinstance<py::str>(h)) return ObjectValue::string(h.cast<std::string>());
    if (py::isinstance<PyEntity>(h)) {
        const auto& e = h.cast<const PyEntity&>();
        std::vector<ObjectValue> values;
        for (const auto& v : e.values) values.push_back(to_object(v));
        return ObjectValue::entity(e.class_name, std::move(values));
    }
    if (py::isinstance<py::list>(h) || py::isinstance<py::tuple>(h)) {
        std::vector<ObjectValue> items;
        for (const auto& v : h) items.push_back(to_object(v));
        return ObjectValue::array(std::move(items));
    }
    throw py::type_error("cannot map " + std::string(py::str(py::type::handle_of(h))) + " to an object value");
}

py::object to_python(const ObjectValue& v)
{
    switch (v.kind()) {
    case ObjectValue::Kind::Null: return py::none();
    case ObjectValue::Kind::Bool: return py::bool_(v.as_bool());
    case ObjectValue::Kind::Int: return py::int_(v.as_int());
    case ObjectValue::Kind::Float: return py::float_(v.as_float());
    case ObjectValue::Kind::String: return py::str(v.as_string());
    case ObjectValue::Kind::Array: {
        py::list out;
        for (const ObjectValue& x : v.as_array()) out.append(to_python(x));
        return std::move(out);
    }
    case ObjectValue::Kind::Entity: {
        py::list values;
        for (const ObjectValue& x : v.as_entity().values) values.append(to_python(x));
        return py::cast(PyEntity{v.as_entity().class_name, values});
    }
    }
    return py::none();
}

Term as_term(const py::handle& h)
{
    if (py::isinstance<py::str>(h)) return parse_term(h.cast<std::string>());
    return h.cast<Term>();
}

py::dict bindings_of(const Term& templ, const Substitution& s)
{
    py::dict out;
    for (const Term& v : variables_of(templ)) {
        if (v.name() != "_") out[py::str(v.name())] = apply(s, v);
    }
    return out;
}

QueryObject query_object(const Registry& reg, const std::string& class_name, const py::dict& fixed)
{
    std::vector<AttributeSpec> attrs = reg.flattened_attributes(class_name);
    QueryObject q = QueryObject::any(reg, class_name);
    std::size_t used = 0;
    for (std::size_t i = 0; i < attrs.size(); ++i) {
        py::str key(attrs[i].name);
        if (!fixed.contains(key)) continue;
        ++used;
        py::handle v = fixed[key];
        if (py::isinstance<PyVar>(v)) {
            q.slots[i] = Unbound{v.cast<const PyVar&>().name};
        } else {
            q.slots[i] = to_object(v);
        }
    }
    if (used != fixed.size()) throw py::key_error("unknown attribute for class " + class_name);
    return q;
}

}  // namespace

PYBIND11_MODULE(_objlog, m)
{
    m.doc() = "Objects to ground Prolog facts and back";

    auto error = py::register_exception<Error>(m, "Error");
    py::register_exception<TermError>(m, "TermError", error);
    py::register_exception<SchemaError>(m, "SchemaError", error);
    py::register_exception<ConversionError>(m, "ConversionError", error);
    auto kb_error = py::register_exception<KbError>(m, "KbError", error);
    py::register_exception<IoError>(m, "KbIoError", kb_error);
    py::register_exception<ParseError>(m, "ParseError", error);

    py::class_<Term>(m, "Term")
        .def_static("variable", &Term::variable, py::arg("name"), py::arg("id"))
        .def_static("atom", &Term::atom)
        .def_static("integer", &Term::integer)
        .def_static("floating", &Term::floating)
        .def_static("compound", &Term::compound)
        .def_static("list", &Term::list)
        .def_property_readonly("kind", [](const Term& t) { return std::string(kind_name(t.kind())); })
        .def_property_readonly("name", [](const Term& t) { return std::string(t.name()); })
        .def_property_readonly("arity", &Term::arity)
        .def_property_readonly("args", [](const Term& t) { return std::vector<Term>(t.args().begin(), t.args().end()); })
        .def_property_readonly("value", [](const Term& t) -> py::object {
            if (t.kind() == Term::Kind::Int) return py::int_(t.int_value());
            if (t.kind() == Term::Kind::Float) return py::float_(t.float_value());
            return py::none();
        })
        .def("is_ground", [](const Term& t) { return is_ground(t); })
        .def("__eq__", [](const Term& a, const Term& b) { return a == b; })
        .def("__lt__", [](const Term& a, const Term& b) { return term_compare(a, b) < 0; })
        .def("__hash__", [](const Term& t) { return std::hash<std::string>{}(print_canonical(t)); })
        .def("__str__", [](const Term& t) { return print_canonical(t); })
        .def("__repr__", [](const Term& t) { return "Term(" + print_canonical(t) + ")"; });

    py::class_<PyEntity>(m, "Entity")
        .def(py::init([](std::string class_name, py::iterable values) { return PyEntity{std::move(class_name), py::list(values)}; }),
             py::arg("class_name"), py::arg("values"))
        .def_readwrite("class_name", &PyEntity::class_name)
        .def_readwrite("values", &PyEntity::values)
        .def("__eq__", [](const PyEntity& a, const py::object& b) {
            return py::isinstance<PyEntity>(b) && a.class_name == b.cast<const PyEntity&>().class_name &&
                   a.values.equal(b.cast<const PyEntity&>().values);
        })
        .def("__repr__", [](const PyEntity& e) { return "Entity(" + py::repr(py::str(e.class_name)).cast<std::string>() + ", " + py::repr(e.values).cast<std::string>() + ")"; });

    py::class_<PyVar>(m, "Var")
        .def(py::init<std::string>(), py::arg("name"))
        .def_readonly("name", &PyVar::name)
        .def("__repr__", [](const PyVar& v) { return "Var(" + v.name + ")"; });

    m.def("parse_term", [](const std::string& text) { return parse_term(text); });
    m.def("parse_program", [](const std::string& text) { return parse_program(text); });
    m.def("print_canonical", &print_canonical);
    // Strings are parsed as one clause, so equal names denote one variable.
    m.def("unify", [](const py::object& a, const py::object& b) -> py::object {
        Term pair = py::isinstance<py::str>(a) && py::isinstance<py::str>(b)
                        ? parse_term("'='(" + a.cast<std::string>() + "," + b.cast<std::string>() + ")")
                        : Term::compound("=", {as_term(a), as_term(b)});
        auto s = unify(pair.args()[0], pair.args()[1]);
        if (!s) return py::none();
        return bindings_of(pair, *s);
    });

    py::class_<Registry>(m, "Registry")
        .def(py::init<>())
        .def_static("from_schema", [](const std::string& text) { return load_schema(text); })
        .def("load_schema", [](Registry& r, const std::string& text) { load_schema(r, text); })
        .def("emit_schema", [](const Registry& r) { return emit_schema(r); })
        .def("emit_declarations", [](const Registry& r) { return emit_declarations(r); })
        .def("most_general_term", &Registry::most_general_term)
        .def("resolve", [](const Registry& r, const std::string& functor, std::size_t arity) { return r.resolve(functor, arity).name; })
        .def("attributes", [](const Registry& r, const std::string& cls) {
            std::vector<std::string> out;
            for (const AttributeSpec& a : r.flattened_attributes(cls)) out.push_back(a.name);
            return out;
        })
        .def("class_names", [](const Registry& r) {
            std::vector<std::string> out;
            for (const EntityClass& c : r.classes()) out.push_back(c.name);
            return out;
        })
        .def("is_subclass_of", &Registry::is_subclass_of);

    m.def("to_term", [](const Registry& r, const py::object& v) { return to_term(r, to_object(v)); });
    m.def("from_term", [](const Registry& r, const py::object& t) { return to_python(from_term(r, as_term(t))); });

    py::class_<KnowledgeBase>(m, "KnowledgeBase")
        .def(py::init([](const Registry& r, bool strict) { return KnowledgeBase(r, strict ? KbMode::Strict : KbMode::Permissive); }),
             py::arg("registry"), py::arg("strict") = true, py::keep_alive<1, 2>())
        .def("__len__", &KnowledgeBase::size)
        .def("__contains__", [](const KnowledgeBase& kb, const py::object& t) { return kb.contains(as_term(t)); })
        .def_property_readonly("facts", &KnowledgeBase::facts)
        .def("assert_fact", [](KnowledgeBase& kb, const py::object& t) { return kb.assert_fact(as_term(t)); })
        .def("retract", [](KnowledgeBase& kb, const py::object& t) { return kb.retract(as_term(t)); })
        .def("query", [](const KnowledgeBase& kb, const py::object& goal) {
            Term templ = as_term(goal);
            py::list out;
            for (const QueryResult& r : kb.query(templ)) out.append(py::make_tuple(r.fact, bindings_of(templ, r.bindings)));
            return out;
        })
        .def("save_object", [](KnowledgeBase& kb, const py::object& v) { return kb.save_object(to_object(v)); })
        .def("find", [](const KnowledgeBase& kb, const std::string& class_name, const py::kwargs& slots) {
            py::list out;
            for (const ObjectValue& v : kb.find(query_object(kb.registry(), class_name, slots))) out.append(to_python(v));
            return out;
        }, py::arg("class_name"))
        .def("load_text", &KnowledgeBase::load_text)
        .def("load_file", &KnowledgeBase::load_file)
        .def("store_file", &KnowledgeBase::store_file)
        .def("to_text", &KnowledgeBase::to_text);
}
