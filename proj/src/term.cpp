#include "objlog/term.hpp"

#include <cmath>
#include <unordered_set>

namespace objlog {

std::string to_string(const SourcePos& pos)
{
    return std::to_string(pos.line) + ":" + std::to_string(pos.column);
}

ParseError::ParseError(std::string message, SourcePos pos, std::string lexeme)
    : Error(to_string(pos) + ": " + message + (lexeme.empty() ? "" : " near '" + lexeme + "'")),
      message_(std::move(message)),
      pos_(pos),
      lexeme_(std::move(lexeme))
{
}

namespace {

template <class T>
std::shared_ptr<const detail::TermNode> make_node(T&& payload)
{
    return std::make_shared<const detail::TermNode>(detail::TermNode{std::forward<T>(payload)});
}

[[noreturn]] void wrong_kind(const char* what, Term::Kind actual)
{
    throw TermError(std::string(what) + " requested on " + kind_name(actual) + " term");
}

}  // namespace

Term Term::variable(std::string name, VarId id)
{
    if (name.empty()) {
        throw TermError("variable name must not be empty");
    }
    return Term(make_node(detail::VarData{std::move(name), id}));
}

Term Term::atom(std::string text)
{
    if (text.empty()) {
        throw TermError("atom text must not be empty");
    }
    return Term(make_node(detail::AtomData{std::move(text)}));
}

Term Term::integer(std::int64_t value) { return Term(make_node(value)); }

Term Term::floating(double value)
{
    if (!std::isfinite(value)) {
        throw TermError("float term must be finite");
    }
    return Term(make_node(value));
}

Term Term::compound(std::string functor, std::vector<Term> args)
{
    if (args.empty()) {
        return atom(std::move(functor));
    }
    if (functor.empty()) {
        throw TermError("functor must not be empty");
    }
    return Term(make_node(detail::StructData{std::move(functor), std::move(args)}));
}

Term Term::list(std::vector<Term> items)
{
    return Term(make_node(detail::ListData{std::move(items), std::nullopt}));
}

Term Term::partial_list(std::vector<Term> items, Term tail)
{
    if (!tail.is_var()) {
        throw TermError("list tail must be a variable");
    }
    return Term(make_node(detail::ListData{std::move(items), std::move(tail)}));
}

Term::Kind Term::kind() const noexcept { return static_cast<Kind>(node_->data.index()); }

const std::string& Term::name() const
{
    switch (kind()) {
    case Kind::Var: return std::get<detail::VarData>(node_->data).name;
    case Kind::Atom: return std::get<detail::AtomData>(node_->data).text;
    case Kind::Struct: return std::get<detail::StructData>(node_->data).functor;
    default: wrong_kind("name", kind());
    }
}

VarId Term::var_id() const
{
    if (const auto* v = std::get_if<detail::VarData>(&node_->data)) {
        return v->id;
    }
    wrong_kind("var_id", kind());
}

std::int64_t Term::int_value() const
{
    if (const auto* v = std::get_if<std::int64_t>(&node_->data)) {
        return *v;
    }
    wrong_kind("int_value", kind());
}

double Term::float_value() const
{
    if (const auto* v = std::get_if<double>(&node_->data)) {
        return *v;
    }
    wrong_kind("float_value", kind());
}

std::span<const Term> Term::args() const
{
    if (const auto* s = std::get_if<detail::StructData>(&node_->data)) {
        return s->args;
    }
    if (const auto* l = std::get_if<detail::ListData>(&node_->data)) {
        return l->items;
    }
    return {};
}

const Term* Term::tail() const
{
    if (const auto* l = std::get_if<detail::ListData>(&node_->data)) {
        return l->tail ? &*l->tail : nullptr;
    }
    return nullptr;
}

const char* kind_name(Term::Kind kind) noexcept
{
    switch (kind) {
    case Term::Kind::Var: return "variable";
    case Term::Kind::Int: return "integer";
    case Term::Kind::Float: return "float";
    case Term::Kind::Atom: return "atom";
    case Term::Kind::List: return "list";
    case Term::Kind::Struct: return "structure";
    }
    return "?";
}

namespace {

std::strong_ordering compare_floats(double a, double b)
{
    if (a < b) return std::strong_ordering::less;
    if (b < a) return std::strong_ordering::greater;
    // -0.0 sorts before 0.0 so that ordering agrees with printed form.
    return std::signbit(b) <=> std::signbit(a);
}

std::strong_ordering compare_sequences(std::span<const Term> a, std::span<const Term> b)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (auto c = term_compare(a[i], b[i]); c != 0) {
            return c;
        }
    }
    return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering term_compare(const Term& a, const Term& b)
{
    if (a.node_ == b.node_) {
        return std::strong_ordering::equal;
    }
    if (auto c = a.kind() <=> b.kind(); c != 0) {
        return c;
    }
    switch (a.kind()) {
    case Term::Kind::Var: return a.var_id() <=> b.var_id();
    case Term::Kind::Int: return a.int_value() <=> b.int_value();
    case Term::Kind::Float: return compare_floats(a.float_value(), b.float_value());
    case Term::Kind::Atom: return a.name().compare(b.name()) <=> 0;
    case Term::Kind::List: {
        if (auto c = a.arity() <=> b.arity(); c != 0) return c;
        if (auto c = compare_sequences(a.args(), b.args()); c != 0) return c;
        const Term* ta = a.tail();
        const Term* tb = b.tail();
        if (ta == nullptr || tb == nullptr) {
            return (ta != nullptr) <=> (tb != nullptr);
        }
        return ta->var_id() <=> tb->var_id();
    }
    case Term::Kind::Struct: {
        if (auto c = a.arity() <=> b.arity(); c != 0) return c;
        if (auto c = a.name().compare(b.name()) <=> 0; c != 0) return c;
        return compare_sequences(a.args(), b.args());
    }
    }
    return std::strong_ordering::equal;
}

bool operator==(const Term& a, const Term& b) { return term_compare(a, b) == 0; }

std::strong_ordering operator<=>(const Term& a, const Term& b) { return term_compare(a, b); }

bool is_ground(const Term& t)
{
    switch (t.kind()) {
    case Term::Kind::Var: return false;
    case Term::Kind::List:
        if (t.tail() != nullptr) return false;
        [[fallthrough]];
    case Term::Kind::Struct:
        for (const Term& arg : t.args()) {
            if (!is_ground(arg)) return false;
        }
        return true;
    default: return true;
    }
}

namespace {

void collect_vars(const Term& t, std::unordered_set<VarId>& seen, std::vector<Term>& out)
{
    if (t.is_var()) {
        if (seen.insert(t.var_id()).second) {
            out.push_back(t);
        }
        return;
    }
    for (const Term& arg : t.args()) {
        collect_vars(arg, seen, out);
    }
    if (const Term* tail = t.tail()) {
        collect_vars(*tail, seen, out);
    }
}

}  // namespace

std::vector<Term> variables_of(const Term& t)
{
    std::unordered_set<VarId> seen;
    std::vector<Term> out;
    collect_vars(t, seen, out);
    return out;
}

VarId next_free_var_id(const Term& t)
{
    VarId next = 0;
    for (const Term& v : variables_of(t)) {
        next = std::max(next, v.var_id() + 1);
    }
    return next;
}

}  // namespace objlog
