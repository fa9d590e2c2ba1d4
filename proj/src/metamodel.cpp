#include "objlog/metamodel.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "objlog/text_io.hpp"

namespace objlog {

TypeRef TypeRef::list_of(TypeRef element)
{
    TypeRef t(Kind::List);
    t.element_ = std::make_shared<const TypeRef>(std::move(element));
    return t;
}

TypeRef TypeRef::entity(std::string class_name)
{
    if (class_name.empty()) {
        throw SchemaError("entity type requires a class name");
    }
    TypeRef t(Kind::Entity);
    t.class_name_ = std::move(class_name);
    return t;
}

const TypeRef& TypeRef::element() const
{
    if (kind_ != Kind::List) {
        throw SchemaError("element() on non-list type " + to_string());
    }
    return *element_;
}

const std::string& TypeRef::class_name() const
{
    if (kind_ != Kind::Entity) {
        throw SchemaError("class_name() on non-entity type " + to_string());
    }
    return class_name_;
}

Term TypeRef::to_term() const
{
    switch (kind_) {
    case Kind::Bool: return Term::atom("bool");
    case Kind::Int: return Term::atom("int");
    case Kind::Float: return Term::atom("float");
    case Kind::String: return Term::atom("string");
    case Kind::List: return Term::compound("list", {element_->to_term()});
    case Kind::Entity: return Term::compound("entity", {Term::atom(class_name_)});
    }
    return Term::atom("?");
}

TypeRef TypeRef::from_term(const Term& t)
{
    if (t.is_atom()) {
        const std::string& n = t.name();
        if (n == "bool") return boolean();
        if (n == "int") return integer();
        if (n == "float") return floating();
        if (n == "string") return string();
    } else if (t.is_compound() && t.arity() == 1) {
        if (t.name() == "list") return list_of(from_term(t.args()[0]));
        if (t.name() == "entity" && t.args()[0].is_atom()) return entity(t.args()[0].name());
    }
    throw SchemaError("unknown attribute type " + print_canonical(t));
}

std::string TypeRef::to_string() const { return print_canonical(to_term()); }

bool operator==(const TypeRef& a, const TypeRef& b)
{
    if (a.kind_ != b.kind_) return false;
    if (a.kind_ == TypeRef::Kind::List) return *a.element_ == *b.element_;
    return a.class_name_ == b.class_name_;
}

namespace {

bool default_nullable(const TypeRef& type) { return !type.is_primitive(); }

bool valid_attribute_name(std::string_view name)
{
    if (name.empty()) return false;
    auto word = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    if (!word(name[0])) return false;
    for (char c : name) {
        if (!word(c) && !(c >= '0' && c <= '9')) return false;
    }
    return true;
}

std::string variable_name_for(const std::string& attribute)
{
    std::string name = attribute;
    if (name[0] >= 'a' && name[0] <= 'z') {
        name[0] = static_cast<char>(name[0] - 'a' + 'A');
    }
    return name;
}

}  // namespace

AttributeSpec::AttributeSpec(std::string name, TypeRef type)
    : name(std::move(name)), type(std::move(type)), nullable(default_nullable(this->type))
{
}

AttributeSpec::AttributeSpec(std::string name, TypeRef type, bool nullable)
    : name(std::move(name)), type(std::move(type)), nullable(nullable)
{
}

void Registry::register_class(EntityClass c)
{
    if (c.name.empty()) {
        throw SchemaError("class name must not be empty");
    }
    if (contains(c.name)) {
        throw SchemaError("duplicate class '" + c.name + "'");
    }
    if (c.functor.empty()) {
        c.functor = c.name;
    }

    std::vector<AttributeSpec> flat;
    if (c.superclass) {
        if (*c.superclass == c.name) {
            throw SchemaError("inheritance cycle at class '" + c.name + "'");
        }
        if (!contains(*c.superclass)) {
            throw SchemaError("class '" + c.name + "' extends unknown class '" + *c.superclass + "'");
        }
        if (c.own_attributes.empty()) {
            throw SchemaError("subclass '" + c.name + "' must add at least one attribute to '" + *c.superclass + "'");
        }
        flat = flattened_attributes(*c.superclass);
    }
    flat.insert(flat.end(), c.own_attributes.begin(), c.own_attributes.end());
    if (flat.empty()) {
        throw SchemaError("class '" + c.name + "' has no attributes");
    }

    std::set<std::string> seen;
    for (const AttributeSpec& a : flat) {
        if (!valid_attribute_name(a.name)) {
            throw SchemaError("invalid attribute name '" + a.name + "' in class '" + c.name + "'");
        }
        if (!seen.insert(a.name).second) {
            throw SchemaError("duplicate attribute '" + a.name + "' in class '" + c.name + "'");
        }
    }

    if (c.is_association) {
        auto refs = std::count_if(flat.begin(), flat.end(),
                                  [](const AttributeSpec& a) { return a.type.kind() == TypeRef::Kind::Entity; });
        if (refs < 2) {
            throw SchemaError("association '" + c.name + "' needs at least two entity attributes");
        }
    }

    Key key{c.functor, flat.size()};
    if (!c.is_abstract) {
        if (auto it = index_.find(key); it != index_.end()) {
            throw SchemaError("predicate " + format_atom(key.first) + "/" + std::to_string(key.second) +
                              " already mapped to class '" + it->second + "'");
        }
        index_.emplace(key, c.name);
    }
    by_name_.emplace(c.name, classes_.size());
    classes_.push_back(std::move(c));
}

void Registry::validate() const
{
    std::function<void(const EntityClass&, const TypeRef&)> check = [&](const EntityClass& owner, const TypeRef& t) {
        if (t.kind() == TypeRef::Kind::List) {
            check(owner, t.element());
        } else if (t.kind() == TypeRef::Kind::Entity && !contains(t.class_name())) {
            throw SchemaError("class '" + owner.name + "' refers to unknown class '" + t.class_name() + "'");
        }
    };
    for (const EntityClass& c : classes_) {
        for (const AttributeSpec& a : c.own_attributes) {
            check(c, a.type);
        }
    }
}

bool Registry::contains(std::string_view class_name) const { return by_name_.find(class_name) != by_name_.end(); }

const EntityClass& Registry::get(std::string_view class_name) const
{
    auto it = by_name_.find(class_name);
    if (it == by_name_.end()) {
        throw SchemaError("unknown class '" + std::string(class_name) + "'");
    }
    return classes_[it->second];
}

std::vector<AttributeSpec> Registry::flattened_attributes(std::string_view class_name) const
{
    std::vector<const EntityClass*> chain;
    for (const EntityClass* c = &get(class_name); c; c = c->superclass ? &get(*c->superclass) : nullptr) {
        chain.push_back(c);
    }
    std::vector<AttributeSpec> out;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        out.insert(out.end(), (*it)->own_attributes.begin(), (*it)->own_attributes.end());
    }
    return out;
}

std::size_t Registry::flattened_arity(std::string_view class_name) const
{
    std::size_t n = 0;
    for (const EntityClass* c = &get(class_name); c; c = c->superclass ? &get(*c->superclass) : nullptr) {
        n += c->own_attributes.size();
    }
    return n;
}

Term Registry::most_general_term(std::string_view class_name) const
{
    const EntityClass& c = get(class_name);
    if (c.is_abstract) {
        throw SchemaError("class '" + c.name + "' is abstract");
    }
    std::vector<Term> args;
    VarId id = 0;
    for (const AttributeSpec& a : flattened_attributes(class_name)) {
        args.push_back(Term::variable(variable_name_for(a.name), id++));
    }
    return Term::compound(c.effective_functor(), std::move(args));
}

const EntityClass* Registry::find(std::string_view functor, std::size_t arity) const
{
    auto it = index_.find(Key{std::string(functor), arity});
    return it == index_.end() ? nullptr : &get(it->second);
}

const EntityClass& Registry::resolve(std::string_view functor, std::size_t arity) const
{
    if (const EntityClass* c = find(functor, arity)) {
        return *c;
    }
    throw SchemaError("no class mapped to predicate " + format_atom(functor) + "/" + std::to_string(arity));
}

bool Registry::is_subclass_of(std::string_view class_name, std::string_view ancestor) const
{
    for (const EntityClass* c = &get(class_name); c; c = c->superclass ? &get(*c->superclass) : nullptr) {
        if (c->name == ancestor) return true;
    }
    return false;
}

namespace {

[[noreturn]] void schema_fail(const Clause& clause, const std::string& message)
{
    throw SchemaError(to_string(clause.pos) + ": " + message);
}

std::vector<Term> expect_list(const Clause& clause, const Term& t, const char* what)
{
    if (!t.is_list() || t.tail() != nullptr) {
        schema_fail(clause, std::string(what) + " must be a proper list, got " + print_canonical(t));
    }
    return {t.args().begin(), t.args().end()};
}

const std::string& expect_atom(const Clause& clause, const Term& t, const char* what)
{
    if (!t.is_atom()) {
        schema_fail(clause, std::string(what) + " must be an atom, got " + print_canonical(t));
    }
    return t.name();
}

EntityClass class_from_clause(const Clause& clause)
{
    const Term& t = clause.term;
    if (!t.is_compound() || t.name() != "class" || t.arity() != 3) {
        schema_fail(clause, "expected class(Name, Options, Attributes), got " + print_canonical(t));
    }
    EntityClass c;
    c.name = expect_atom(clause, t.args()[0], "class name");

    for (const Term& opt : expect_list(clause, t.args()[1], "class options")) {
        if (opt.is_atom() && opt.name() == "abstract") {
            c.is_abstract = true;
        } else if (opt.is_atom() && opt.name() == "association") {
            c.is_association = true;
        } else if (opt.is_compound() && opt.arity() == 1 && opt.name() == "extends") {
            if (c.superclass) {
                schema_fail(clause, "class '" + c.name + "': multiple inheritance is not supported");
            }
            c.superclass = expect_atom(clause, opt.args()[0], "superclass");
        } else if (opt.is_compound() && opt.arity() == 1 && opt.name() == "functor") {
            c.functor = expect_atom(clause, opt.args()[0], "functor");
        } else {
            schema_fail(clause, "unknown class option " + print_canonical(opt));
        }
    }

    for (const Term& attr : expect_list(clause, t.args()[2], "attribute list")) {
        if (!attr.is_compound() || attr.name() != "attr" || (attr.arity() != 2 && attr.arity() != 3)) {
            schema_fail(clause, "expected attr(Name, Type), got " + print_canonical(attr));
        }
        std::string name = expect_atom(clause, attr.args()[0], "attribute name");
        TypeRef type = TypeRef::boolean();
        try {
            type = TypeRef::from_term(attr.args()[1]);
        } catch (const SchemaError& e) {
            schema_fail(clause, e.what());
        }
        if (attr.arity() == 3) {
            const std::string& flag = expect_atom(clause, attr.args()[2], "nullability");
            if (flag != "nullable" && flag != "non_null") {
                schema_fail(clause, "nullability must be nullable or non_null, got " + flag);
            }
            c.own_attributes.emplace_back(std::move(name), std::move(type), flag == "nullable");
        } else {
            c.own_attributes.emplace_back(std::move(name), std::move(type));
        }
    }
    return c;
}

}  // namespace

void load_schema(Registry& target, std::string_view text)
{
    Registry registry = target;
    std::vector<Clause> clauses = parse_clauses(text);
    std::vector<EntityClass> pending;
    std::map<std::string, std::size_t> pending_index;
    for (const Clause& clause : clauses) {
        EntityClass c = class_from_clause(clause);
        if (!pending_index.emplace(c.name, pending.size()).second || registry.contains(c.name)) {
            schema_fail(clause, "duplicate class '" + c.name + "'");
        }
        pending.push_back(std::move(c));
    }

    // Parents register before children regardless of file order.
    enum class Mark { None, Active, Done };
    std::vector<Mark> marks(pending.size(), Mark::None);
    std::function<void(std::size_t)> visit = [&](std::size_t i) {
        if (marks[i] == Mark::Done) return;
        if (marks[i] == Mark::Active) {
            throw SchemaError("inheritance cycle at class '" + pending[i].name + "'");
        }
        marks[i] = Mark::Active;
        const EntityClass& c = pending[i];
        if (c.superclass) {
            if (auto it = pending_index.find(*c.superclass); it != pending_index.end()) {
                visit(it->second);
            }
        }
        registry.register_class(pending[i]);
        marks[i] = Mark::Done;
    };
    for (std::size_t i = 0; i < pending.size(); ++i) {
        visit(i);
    }
    registry.validate();
    target = std::move(registry);
}

Registry load_schema(std::string_view text)
{
    Registry registry;
    load_schema(registry, text);
    return registry;
}

std::string emit_schema(const Registry& registry)
{
    std::string out;
    for (const EntityClass& c : registry.classes()) {
        std::vector<Term> options;
        if (c.superclass) options.push_back(Term::compound("extends", {Term::atom(*c.superclass)}));
        if (c.effective_functor() != c.name) options.push_back(Term::compound("functor", {Term::atom(c.functor)}));
        if (c.is_abstract) options.push_back(Term::atom("abstract"));
        if (c.is_association) options.push_back(Term::atom("association"));
        std::vector<Term> attrs;
        for (const AttributeSpec& a : c.own_attributes) {
            std::vector<Term> parts{Term::atom(a.name), a.type.to_term()};
            if (a.nullable != default_nullable(a.type)) {
                parts.push_back(Term::atom(a.nullable ? "nullable" : "non_null"));
            }
            attrs.push_back(Term::compound("attr", std::move(parts)));
        }
        Term clause = Term::compound("class", {Term::atom(c.name), Term::list(std::move(options)), Term::list(std::move(attrs))});
        out += print_canonical(clause);
        out += ".\n";
    }
    return out;
}

std::string emit_declarations(const Registry& registry)
{
    std::string out;
    for (const auto& [key, class_name] : registry.index()) {
        out += print_canonical(registry.most_general_term(class_name));
        out += ".\n";
    }
    return out;
}

}  // namespace objlog
