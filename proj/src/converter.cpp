#include "objlog/converter.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "objlog/text_io.hpp"

namespace objlog {

namespace {

[[noreturn]] void wrong_kind(const char* what, ObjectValue::Kind actual)
{
    throw ConversionError(std::string("expected ") + what + " value, got " + kind_name(actual));
}

}  // namespace

ObjectValue ObjectValue::boolean(bool value)
{
    ObjectValue v;
    v.data_ = value;
    return v;
}

ObjectValue ObjectValue::integer(std::int64_t value)
{
    ObjectValue v;
    v.data_ = value;
    return v;
}

ObjectValue ObjectValue::floating(double value)
{
    if (!std::isfinite(value)) {
        throw ConversionError("float value must be finite");
    }
    ObjectValue v;
    v.data_ = value;
    return v;
}

ObjectValue ObjectValue::string(std::string value)
{
    ObjectValue v;
    v.data_ = std::move(value);
    return v;
}

ObjectValue ObjectValue::array(std::vector<ObjectValue> items)
{
    ObjectValue v;
    v.data_ = std::move(items);
    return v;
}

ObjectValue ObjectValue::entity(std::string class_name, std::vector<ObjectValue> values)
{
    return entity(std::make_shared<Entity>(Entity{std::move(class_name), std::move(values)}));
}

ObjectValue ObjectValue::entity(std::shared_ptr<Entity> node)
{
    if (!node) {
        throw ConversionError("entity node must not be null");
    }
    ObjectValue v;
    v.data_ = std::move(node);
    return v;
}

bool ObjectValue::as_bool() const
{
    if (const auto* p = std::get_if<bool>(&data_)) return *p;
    wrong_kind("bool", kind());
}

std::int64_t ObjectValue::as_int() const
{
    if (const auto* p = std::get_if<std::int64_t>(&data_)) return *p;
    wrong_kind("int", kind());
}

double ObjectValue::as_float() const
{
    if (const auto* p = std::get_if<double>(&data_)) return *p;
    wrong_kind("float", kind());
}

const std::string& ObjectValue::as_string() const
{
    if (const auto* p = std::get_if<std::string>(&data_)) return *p;
    wrong_kind("string", kind());
}

const std::vector<ObjectValue>& ObjectValue::as_array() const
{
    if (const auto* p = std::get_if<Array>(&data_)) return *p;
    wrong_kind("array", kind());
}

std::vector<ObjectValue>& ObjectValue::as_array()
{
    if (auto* p = std::get_if<Array>(&data_)) return *p;
    wrong_kind("array", kind());
}

const std::shared_ptr<Entity>& ObjectValue::entity_node() const
{
    if (const auto* p = std::get_if<std::shared_ptr<Entity>>(&data_)) return *p;
    wrong_kind("entity", kind());
}

const Entity& ObjectValue::as_entity() const { return *entity_node(); }

Entity& ObjectValue::as_entity() { return *entity_node(); }

bool operator==(const ObjectValue& a, const ObjectValue& b)
{
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case ObjectValue::Kind::Null: return true;
    case ObjectValue::Kind::Bool: return a.as_bool() == b.as_bool();
    case ObjectValue::Kind::Int: return a.as_int() == b.as_int();
    case ObjectValue::Kind::Float:
        return a.as_float() == b.as_float() && std::signbit(a.as_float()) == std::signbit(b.as_float());
    case ObjectValue::Kind::String: return a.as_string() == b.as_string();
    case ObjectValue::Kind::Array: return a.as_array() == b.as_array();
    case ObjectValue::Kind::Entity: {
        const Entity& x = a.as_entity();
        const Entity& y = b.as_entity();
        return &x == &y || (x.class_name == y.class_name && x.values == y.values);
    }
    }
    return false;
}

const char* kind_name(ObjectValue::Kind kind) noexcept
{
    switch (kind) {
    case ObjectValue::Kind::Null: return "null";
    case ObjectValue::Kind::Bool: return "bool";
    case ObjectValue::Kind::Int: return "int";
    case ObjectValue::Kind::Float: return "float";
    case ObjectValue::Kind::String: return "string";
    case ObjectValue::Kind::Array: return "array";
    case ObjectValue::Kind::Entity: return "entity";
    }
    return "?";
}

namespace {

void describe_into(const ObjectValue& v, std::string& out, int depth)
{
    if (depth > 32) {
        out += "...";
        return;
    }
    switch (v.kind()) {
    case ObjectValue::Kind::Null: out += "null"; break;
    case ObjectValue::Kind::Bool: out += v.as_bool() ? "true" : "false"; break;
    case ObjectValue::Kind::Int: out += std::to_string(v.as_int()); break;
    case ObjectValue::Kind::Float: out += format_float(v.as_float()); break;
    case ObjectValue::Kind::String: out += '"' + v.as_string() + '"'; break;
    case ObjectValue::Kind::Array: {
        out += '[';
        const char* sep = "";
        for (const ObjectValue& item : v.as_array()) {
            out += sep;
            describe_into(item, out, depth + 1);
            sep = ", ";
        }
        out += ']';
        break;
    }
    case ObjectValue::Kind::Entity: {
        const Entity& e = v.as_entity();
        out += e.class_name + '{';
        const char* sep = "";
        for (const ObjectValue& item : e.values) {
            out += sep;
            describe_into(item, out, depth + 1);
            sep = ", ";
        }
        out += '}';
        break;
    }
    }
}

bool valid_variable_name(std::string_view name)
{
    if (name.empty() || !((name[0] >= 'A' && name[0] <= 'Z') || name[0] == '_')) return false;
    return std::all_of(name.begin(), name.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    });
}

// Tracks the attribute path for error messages and the entity path for
// cycle detection.
class Context {
public:
    explicit Context(const Registry& registry) : registry_(registry) {}

    const Registry& registry() const { return registry_; }

    [[noreturn]] void fail(const std::string& message) const
    {
        std::string where;
        for (const std::string& seg : path_) where += seg;
        throw ConversionError(where.empty() ? message : where + ": " + message);
    }

    struct Segment {
        Segment(Context& ctx, std::string seg) : ctx_(ctx) { ctx_.path_.push_back(std::move(seg)); }
        ~Segment() { ctx_.path_.pop_back(); }
        Segment(const Segment&) = delete;
        Segment& operator=(const Segment&) = delete;

    private:
        Context& ctx_;
    };

    // Checks that value may appear where expected (null = untyped) and
    // returns the concrete class for entity values.
    const EntityClass& entity_class(const Entity& e, const TypeRef* expected)
    {
        if (!registry_.contains(e.class_name)) {
            fail("unknown class '" + e.class_name + "'");
        }
        const EntityClass& cls = registry_.get(e.class_name);
        if (cls.is_abstract) {
            fail("cannot encode instance of abstract class '" + cls.name + "'");
        }
        if (expected && !registry_.is_subclass_of(cls.name, expected->class_name())) {
            fail("class '" + cls.name + "' is not a '" + expected->class_name() + "'");
        }
        return cls;
    }

    std::vector<std::string> path_;
    std::vector<const Entity*> entities_;

private:
    const Registry& registry_;
};

void check_type(Context& ctx, const TypeRef* expected, TypeRef::Kind kind, ObjectValue::Kind actual)
{
    if (expected && expected->kind() != kind) {
        ctx.fail("expected " + expected->to_string() + ", got " + kind_name(actual) + " value");
    }
}

Term encode(Context& ctx, const ObjectValue& v, const TypeRef* expected, bool nullable);

Term encode_entity(Context& ctx, const ObjectValue& v, const TypeRef* expected)
{
    const Entity& e = v.as_entity();
    const EntityClass& cls = ctx.entity_class(e, expected);
    if (std::find(ctx.entities_.begin(), ctx.entities_.end(), &e) != ctx.entities_.end()) {
        ctx.fail("cycle detected at instance of '" + cls.name + "'");
    }
    std::vector<AttributeSpec> attrs = ctx.registry().flattened_attributes(cls.name);
    if (e.values.size() != attrs.size()) {
        ctx.fail("class '" + cls.name + "' has " + std::to_string(attrs.size()) + " attributes, instance has " +
                 std::to_string(e.values.size()));
    }
    ctx.entities_.push_back(&e);
    std::vector<Term> args;
    args.reserve(attrs.size());
    for (std::size_t i = 0; i < attrs.size(); ++i) {
        Context::Segment seg(ctx, (ctx.path_.empty() ? cls.name : "") + "." + attrs[i].name);
        args.push_back(encode(ctx, e.values[i], &attrs[i].type, attrs[i].nullable));
    }
    ctx.entities_.pop_back();
    return Term::compound(cls.effective_functor(), std::move(args));
}

Term encode(Context& ctx, const ObjectValue& v, const TypeRef* expected, bool nullable)
{
    using K = TypeRef::Kind;
    switch (v.kind()) {
    case ObjectValue::Kind::Null:
        if (expected && !nullable) {
            ctx.fail("null in non-nullable " + expected->to_string() + " slot");
        }
        return Term::atom("nil");
    case ObjectValue::Kind::Bool:
        check_type(ctx, expected, K::Bool, v.kind());
        return Term::atom(v.as_bool() ? "true" : "fail");
    case ObjectValue::Kind::Int:
        check_type(ctx, expected, K::Int, v.kind());
        return Term::integer(v.as_int());
    case ObjectValue::Kind::Float:
        check_type(ctx, expected, K::Float, v.kind());
        return Term::floating(v.as_float());
    case ObjectValue::Kind::String:
        check_type(ctx, expected, K::String, v.kind());
        if (v.as_string().empty()) {
            ctx.fail("empty string has no atom encoding");
        }
        if (expected && nullable && v.as_string() == "nil") {
            ctx.fail("string \"nil\" is indistinguishable from null in a nullable slot");
        }
        return Term::atom(v.as_string());
    case ObjectValue::Kind::Array: {
        check_type(ctx, expected, K::List, v.kind());
        const TypeRef* element = expected ? &expected->element() : nullptr;
        std::vector<Term> items;
        const auto& array = v.as_array();
        items.reserve(array.size());
        for (std::size_t i = 0; i < array.size(); ++i) {
            Context::Segment seg(ctx, "[" + std::to_string(i) + "]");
            items.push_back(encode(ctx, array[i], element, false));
        }
        return Term::list(std::move(items));
    }
    case ObjectValue::Kind::Entity:
        check_type(ctx, expected, K::Entity, v.kind());
        return encode_entity(ctx, v, expected);
    }
    ctx.fail("unsupported value");
}

ObjectValue decode(Context& ctx, const Term& t, const TypeRef& expected, bool nullable);

ObjectValue decode_entity(Context& ctx, const Term& t, const std::string* expected_class)
{
    if (!t.is_compound()) {
        ctx.fail(std::string("expected a structure, got ") + kind_name(t.kind()) + " " + print_canonical(t));
    }
    const EntityClass* cls = ctx.registry().find(t.name(), t.arity());
    if (!cls) {
        ctx.fail("no class mapped to predicate " + format_atom(t.name()) + "/" + std::to_string(t.arity()));
    }
    if (expected_class && !ctx.registry().is_subclass_of(cls->name, *expected_class)) {
        ctx.fail("predicate " + format_atom(t.name()) + "/" + std::to_string(t.arity()) + " maps to '" + cls->name +
                 "', which is not a '" + *expected_class + "'");
    }
    std::vector<AttributeSpec> attrs = ctx.registry().flattened_attributes(cls->name);
    std::vector<ObjectValue> values;
    values.reserve(attrs.size());
    for (std::size_t i = 0; i < attrs.size(); ++i) {
        Context::Segment seg(ctx, (ctx.path_.empty() ? cls->name : "") + "." + attrs[i].name);
        values.push_back(decode(ctx, t.args()[i], attrs[i].type, attrs[i].nullable));
    }
    return ObjectValue::entity(cls->name, std::move(values));
}

ObjectValue decode(Context& ctx, const Term& t, const TypeRef& expected, bool nullable)
{
    if (nullable && t.is_atom() && t.name() == "nil") {
        return ObjectValue::null();
    }
    auto mismatch = [&]() -> ObjectValue {
        ctx.fail("expected " + expected.to_string() + ", got " + kind_name(t.kind()) + " " + print_canonical(t));
    };
    switch (expected.kind()) {
    case TypeRef::Kind::Bool:
        if (t.is_atom()) {
            if (t.name() == "true") return ObjectValue::boolean(true);
            if (t.name() == "fail" || t.name() == "false") return ObjectValue::boolean(false);
        }
        return mismatch();
    case TypeRef::Kind::Int:
        if (t.kind() != Term::Kind::Int) return mismatch();
        return ObjectValue::integer(t.int_value());
    case TypeRef::Kind::Float:
        if (t.kind() != Term::Kind::Float) return mismatch();
        return ObjectValue::floating(t.float_value());
    case TypeRef::Kind::String:
        if (!t.is_atom()) return mismatch();
        return ObjectValue::string(t.name());
    case TypeRef::Kind::List: {
        if (!t.is_list() || t.tail()) return mismatch();
        std::vector<ObjectValue> items;
        items.reserve(t.arity());
        for (std::size_t i = 0; i < t.arity(); ++i) {
            Context::Segment seg(ctx, "[" + std::to_string(i) + "]");
            items.push_back(decode(ctx, t.args()[i], expected.element(), false));
        }
        return ObjectValue::array(std::move(items));
    }
    case TypeRef::Kind::Entity: return decode_entity(ctx, t, &expected.class_name());
    }
    return mismatch();
}

void require_ground(const Term& t)
{
    if (!is_ground(t)) {
        throw ConversionError("cannot decode non-ground term " + print_canonical(t));
    }
}

}  // namespace

std::string describe(const ObjectValue& v)
{
    std::string out;
    describe_into(v, out, 0);
    return out;
}

QueryObject QueryObject::any(const Registry& registry, std::string_view class_name)
{
    QueryObject q{std::string(class_name), {}};
    for (const AttributeSpec& a : registry.flattened_attributes(class_name)) {
        std::string name = a.name;
        if (name[0] >= 'a' && name[0] <= 'z') {
            name[0] = static_cast<char>(name[0] - 'a' + 'A');
        }
        q.slots.emplace_back(Unbound{std::move(name)});
    }
    return q;
}

Term to_term(const Registry& registry, const ObjectValue& value)
{
    Context ctx(registry);
    return encode(ctx, value, nullptr, true);
}

ObjectValue from_term(const Registry& registry, const Term& term, const TypeRef& expected, bool nullable)
{
    require_ground(term);
    Context ctx(registry);
    return decode(ctx, term, expected, nullable);
}

ObjectValue from_term(const Registry& registry, const Term& term)
{
    require_ground(term);
    Context ctx(registry);
    return decode_entity(ctx, term, nullptr);
}

Term to_template(const Registry& registry, const QueryObject& query)
{
    Context ctx(registry);
    const EntityClass& cls = registry.get(query.class_name);
    if (cls.is_abstract) {
        throw ConversionError("cannot query abstract class '" + cls.name + "'");
    }
    std::vector<AttributeSpec> attrs = registry.flattened_attributes(cls.name);
    if (query.slots.size() != attrs.size()) {
        throw ConversionError("class '" + cls.name + "' has " + std::to_string(attrs.size()) + " attributes, query has " +
                              std::to_string(query.slots.size()) + " slots");
    }
    std::unordered_map<std::string, VarId> names;
    VarId next_id = 0;
    std::vector<Term> args;
    for (std::size_t i = 0; i < attrs.size(); ++i) {
        Context::Segment seg(ctx, cls.name + "." + attrs[i].name);
        if (const auto* unbound = std::get_if<Unbound>(&query.slots[i])) {
            if (!valid_variable_name(unbound->name)) {
                ctx.fail("'" + unbound->name + "' is not a valid variable name");
            }
            if (unbound->name == "_") {
                args.push_back(Term::variable("_", next_id++));
                continue;
            }
            auto [it, inserted] = names.try_emplace(unbound->name, next_id);
            if (inserted) ++next_id;
            args.push_back(Term::variable(unbound->name, it->second));
        } else {
            args.push_back(encode(ctx, std::get<ObjectValue>(query.slots[i]), &attrs[i].type, attrs[i].nullable));
        }
    }
    return Term::compound(cls.effective_functor(), std::move(args));
}

}  // namespace objlog
