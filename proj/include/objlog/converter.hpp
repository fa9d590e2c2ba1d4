#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "objlog/metamodel.hpp"
#include "objlog/term.hpp"

namespace objlog {

class ObjectValue;

// An object instance. Held by reference from ObjectValue so that object
// graphs can share nodes the way host-language references do.
struct Entity {
    std::string class_name;
    // One value per flattened attribute, in flattened order.
    std::vector<ObjectValue> values;
};

// Dynamic value on the object side of the mapping.
class ObjectValue {
public:
    enum class Kind { Null, Bool, Int, Float, String, Array, Entity };

    ObjectValue() = default;  // null

    static ObjectValue null() { return {}; }
    static ObjectValue boolean(bool value);
    static ObjectValue integer(std::int64_t value);
    static ObjectValue floating(double value);
    static ObjectValue string(std::string value);
    static ObjectValue array(std::vector<ObjectValue> items);
    // Allocates a fresh entity node.
    static ObjectValue entity(std::string class_name, std::vector<ObjectValue> values);
    static ObjectValue entity(std::shared_ptr<Entity> node);

    Kind kind() const noexcept { return static_cast<Kind>(data_.index()); }
    bool is_null() const noexcept { return kind() == Kind::Null; }

    bool as_bool() const;
    std::int64_t as_int() const;
    double as_float() const;
    const std::string& as_string() const;
    const std::vector<ObjectValue>& as_array() const;
    std::vector<ObjectValue>& as_array();
    const Entity& as_entity() const;
    Entity& as_entity();
    const std::shared_ptr<Entity>& entity_node() const;

    // Deep structural equality. Entities compare by content, not identity;
    // both sides must be acyclic.
    friend bool operator==(const ObjectValue& a, const ObjectValue& b);

private:
    using Array = std::vector<ObjectValue>;
    std::variant<std::monostate, bool, std::int64_t, double, std::string, Array, std::shared_ptr<Entity>> data_;
};

const char* kind_name(ObjectValue::Kind kind) noexcept;

// Debug rendering, e.g. Point{id="a", x=2, y=2}.
std::string describe(const ObjectValue& v);

struct Unbound {
    std::string name;
};

using QuerySlot = std::variant<ObjectValue, Unbound>;

// Query-by-example: a class plus one slot per flattened attribute, each
// either fixed or an unbound variable. Unbound slots sharing a name denote
// the same variable; the name "_" is always fresh.
struct QueryObject {
    std::string class_name;
    std::vector<QuerySlot> slots;

    // All slots unbound, named after the attributes.
    static QueryObject any(const Registry& registry, std::string_view class_name);
};

// Encodes a schema-conformant value as a ground term:
//   null -> nil, true -> true, false -> fail, int -> integer, float -> float,
//   string -> atom, array -> list, entity -> functor(flattened values...).
Term to_term(const Registry& registry, const ObjectValue& value);

// Decodes a ground term against the expected type. A bare type has no slot,
// so nil decodes to null only when nullable is set.
ObjectValue from_term(const Registry& registry, const Term& term, const TypeRef& expected, bool nullable = false);
// Decodes a ground term whose (functor, arity) resolves to a class.
ObjectValue from_term(const Registry& registry, const Term& term);

// Like to_term, with unbound slots becoming variables.
Term to_template(const Registry& registry, const QueryObject& query);

}  // namespace objlog
