#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "objlog/error.hpp"
#include "objlog/term.hpp"

namespace objlog {

// Attribute type: a primitive, a homogeneous list, or a reference to an
// entity class by name.
class TypeRef {
public:
    enum class Kind { Bool, Int, Float, String, List, Entity };

    static TypeRef boolean() { return TypeRef(Kind::Bool); }
    static TypeRef integer() { return TypeRef(Kind::Int); }
    static TypeRef floating() { return TypeRef(Kind::Float); }
    static TypeRef string() { return TypeRef(Kind::String); }
    static TypeRef list_of(TypeRef element);
    static TypeRef entity(std::string class_name);

    Kind kind() const noexcept { return kind_; }
    bool is_primitive() const noexcept { return kind_ == Kind::Bool || kind_ == Kind::Int || kind_ == Kind::Float; }
    const TypeRef& element() const;
    const std::string& class_name() const;

    // Schema-file notation: bool, int, float, string, list(T), entity(Name).
    Term to_term() const;
    static TypeRef from_term(const Term& t);
    std::string to_string() const;

    friend bool operator==(const TypeRef& a, const TypeRef& b);

private:
    explicit TypeRef(Kind kind) : kind_(kind) {}

    Kind kind_;
    std::shared_ptr<const TypeRef> element_;
    std::string class_name_;
};

struct AttributeSpec {
    std::string name;
    TypeRef type;
    // Primitives default to non-nullable, references to nullable.
    bool nullable;

    AttributeSpec(std::string name, TypeRef type);
    AttributeSpec(std::string name, TypeRef type, bool nullable);

    friend bool operator==(const AttributeSpec&, const AttributeSpec&) = default;
};

struct EntityClass {
    std::string name;
    // Predicate name; empty means "same as name".
    std::string functor;
    std::optional<std::string> superclass;
    bool is_abstract = false;
    std::vector<AttributeSpec> own_attributes;
    bool is_association = false;

    const std::string& effective_functor() const { return functor.empty() ? name : functor; }

    friend bool operator==(const EntityClass&, const EntityClass&) = default;
};

// Maps entity classes to predicates. Concrete classes are indexed by
// (functor, flattened arity), which must identify exactly one class;
// abstract classes are never indexed.
class Registry {
public:
    using Key = std::pair<std::string, std::size_t>;

    // Requires the superclass to be registered already. Entity references
    // may point forward; validate() checks them.
    void register_class(EntityClass c);

    // Checks that every entity reference names a registered class.
    void validate() const;

    bool contains(std::string_view class_name) const;
    const EntityClass& get(std::string_view class_name) const;
    std::vector<AttributeSpec> flattened_attributes(std::string_view class_name) const;
    std::size_t flattened_arity(std::string_view class_name) const;

    // The class's relation with one fresh variable per attribute.
    Term most_general_term(std::string_view class_name) const;

    const EntityClass& resolve(std::string_view functor, std::size_t arity) const;
    const EntityClass* find(std::string_view functor, std::size_t arity) const;

    // True when class_name is ancestor or one of its descendants.
    bool is_subclass_of(std::string_view class_name, std::string_view ancestor) const;

    // Classes in registration order.
    const std::vector<EntityClass>& classes() const { return classes_; }
    const std::map<Key, std::string>& index() const { return index_; }
    bool empty() const { return classes_.empty(); }

private:
    std::vector<EntityClass> classes_;
    std::map<std::string, std::size_t, std::less<>> by_name_;
    std::map<Key, std::string> index_;
};

// Registers every class(Name, Options, Attributes) clause in text, in
// dependency order, then validates the registry.
void load_schema(Registry& registry, std::string_view text);
Registry load_schema(std::string_view text);

// The inverse of load_schema: one class/3 clause per class.
std::string emit_schema(const Registry& registry);

// One most-general clause per concrete class, sorted by (functor, arity).
std::string emit_declarations(const Registry& registry);

}  // namespace objlog
