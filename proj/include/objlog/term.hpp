#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "objlog/error.hpp"

namespace objlog {

using VarId = std::uint64_t;

namespace detail {
struct TermNode;
}

// An immutable Prolog term. Copies share the underlying tree.
//
// Variants, in standard-order rank:
//   Var < Int < Float < Atom < List < Struct
//
// A List may carry a tail variable ([a,b|T]); such partial lists only appear
// in query templates.
class Term {
public:
    enum class Kind : std::uint8_t { Var, Int, Float, Atom, List, Struct };

    static Term variable(std::string name, VarId id);
    static Term atom(std::string text);
    static Term integer(std::int64_t value);
    static Term floating(double value);
    // A zero-argument compound collapses to an atom.
    static Term compound(std::string functor, std::vector<Term> args);
    static Term list(std::vector<Term> items);
    static Term partial_list(std::vector<Term> items, Term tail);

    Kind kind() const noexcept;
    bool is_var() const noexcept { return kind() == Kind::Var; }
    bool is_atom() const noexcept { return kind() == Kind::Atom; }
    bool is_list() const noexcept { return kind() == Kind::List; }
    bool is_compound() const noexcept { return kind() == Kind::Struct; }

    // Variable name, atom text, or functor.
    const std::string& name() const;
    VarId var_id() const;
    std::int64_t int_value() const;
    double float_value() const;
    // Compound arguments or list items.
    std::span<const Term> args() const;
    std::size_t arity() const { return args().size(); }
    // Tail variable of a partial list; null for proper lists.
    const Term* tail() const;

    friend bool operator==(const Term& a, const Term& b);
    friend std::strong_ordering term_compare(const Term& a, const Term& b);
    friend std::strong_ordering operator<=>(const Term& a, const Term& b);

private:
    explicit Term(std::shared_ptr<const detail::TermNode> node) : node_(std::move(node)) {}

    std::shared_ptr<const detail::TermNode> node_;
};

namespace detail {

struct VarData {
    std::string name;
    VarId id;
};
struct AtomData {
    std::string text;
};
struct ListData {
    std::vector<Term> items;
    std::optional<Term> tail;
};
struct StructData {
    std::string functor;
    std::vector<Term> args;
};

// Alternative order mirrors Term::Kind.
struct TermNode {
    std::variant<VarData, std::int64_t, double, AtomData, ListData, StructData> data;
};

}  // namespace detail

const char* kind_name(Term::Kind kind) noexcept;

bool is_ground(const Term& t);

// Structural equality; variables are equal iff their ids are.
inline bool term_equal(const Term& a, const Term& b) { return a == b; }

// Standard order of terms; equal iff term_equal.
std::strong_ordering term_compare(const Term& a, const Term& b);

// Distinct variables of t in left-to-right first-occurrence order.
std::vector<Term> variables_of(const Term& t);

// Largest variable id in t plus one, or 0 for ground terms.
VarId next_free_var_id(const Term& t);

struct TermLess {
    bool operator()(const Term& a, const Term& b) const { return (a <=> b) < 0; }
};

}  // namespace objlog
