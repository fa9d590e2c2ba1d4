#include "objlog/unify.hpp"

#include "objlog/text_io.hpp"

namespace objlog {

namespace {

bool occurs(VarId id, const Term& t)
{
    if (t.is_var()) return t.var_id() == id;
    for (const Term& arg : t.args()) {
        if (occurs(id, arg)) return true;
    }
    const Term* tail = t.tail();
    return tail != nullptr && occurs(id, *tail);
}

template <class Lookup>
Term substitute(const Term& t, const Lookup& lookup)
{
    switch (t.kind()) {
    case Term::Kind::Var: {
        const Term* value = lookup(t.var_id());
        return value ? *value : t;
    }
    case Term::Kind::Struct: {
        std::vector<Term> args;
        args.reserve(t.arity());
        for (const Term& arg : t.args()) args.push_back(substitute(arg, lookup));
        return Term::compound(t.name(), std::move(args));
    }
    case Term::Kind::List: {
        std::vector<Term> items;
        items.reserve(t.arity());
        for (const Term& item : t.args()) items.push_back(substitute(item, lookup));
        const Term* tail = t.tail();
        if (!tail) return Term::list(std::move(items));
        Term rest = substitute(*tail, lookup);
        if (rest.is_var()) return Term::partial_list(std::move(items), std::move(rest));
        if (!rest.is_list()) {
            throw TermError("list tail bound to non-list " + print_canonical(rest));
        }
        items.insert(items.end(), rest.args().begin(), rest.args().end());
        return rest.tail() ? Term::partial_list(std::move(items), *rest.tail()) : Term::list(std::move(items));
    }
    default: return t;
    }
}

}  // namespace

const Term* Substitution::lookup(VarId id) const
{
    auto it = bindings_.find(id);
    return it == bindings_.end() ? nullptr : &it->second.value;
}

bool Substitution::bind(const Term& var, const Term& value, bool occurs_check)
{
    if (!var.is_var()) {
        throw TermError("only variables can be bound, got " + print_canonical(var));
    }
    if (lookup(var.var_id())) {
        return false;
    }
    Term resolved = apply(*this, value);
    if (resolved.is_var() && resolved.var_id() == var.var_id()) {
        return true;
    }
    if (occurs_check && occurs(var.var_id(), resolved)) {
        return false;
    }
    const VarId id = var.var_id();
    auto only_this = [&](VarId other) { return other == id ? &resolved : nullptr; };
    for (auto& [_, binding] : bindings_) {
        if (occurs(id, binding.value)) {
            binding.value = substitute(binding.value, only_this);
        }
    }
    bindings_.insert_or_assign(id, Binding{var, std::move(resolved)});
    return true;
}

Term apply(const Substitution& s, const Term& t)
{
    if (s.empty()) return t;
    return substitute(t, [&](VarId id) { return s.lookup(id); });
}

namespace {

class Unifier {
public:
    Unifier(Substitution s, UnifyOptions options) : s_(std::move(s)), options_(options) {}

    bool unify(const Term& lhs, const Term& rhs)
    {
        Term a = deref(lhs);
        Term b = deref(rhs);
        if (a.is_var()) {
            if (b.is_var() && b.var_id() == a.var_id()) return true;
            return s_.bind(a, b, options_.occurs_check);
        }
        if (b.is_var()) {
            return s_.bind(b, a, options_.occurs_check);
        }
        if (a.kind() != b.kind()) return false;
        switch (a.kind()) {
        case Term::Kind::Struct:
            if (a.arity() != b.arity() || a.name() != b.name()) return false;
            for (std::size_t i = 0; i < a.arity(); ++i) {
                if (!unify(a.args()[i], b.args()[i])) return false;
            }
            return true;
        case Term::Kind::List: return unify_lists(a, b);
        default: return a == b;
        }
    }

    Substitution take() { return std::move(s_); }

private:
    struct FlatList {
        std::vector<Term> items;
        std::optional<Term> tail;
    };

    Term deref(const Term& t) const
    {
        if (t.is_var()) {
            if (const Term* value = s_.lookup(t.var_id())) return *value;
        }
        return t;
    }

    // Follows bound tails; nullopt when a tail is bound to a non-list.
    std::optional<FlatList> flatten(const Term& list) const
    {
        FlatList flat;
        Term cur = list;
        for (;;) {
            flat.items.insert(flat.items.end(), cur.args().begin(), cur.args().end());
            const Term* tail = cur.tail();
            if (!tail) return flat;
            Term next = deref(*tail);
            if (next.is_var()) {
                flat.tail = next;
                return flat;
            }
            if (!next.is_list()) return std::nullopt;
            cur = next;
        }
    }

    static Term suffix(const FlatList& l, std::size_t from)
    {
        if (from == l.items.size() && l.tail) return *l.tail;
        std::vector<Term> rest(l.items.begin() + static_cast<std::ptrdiff_t>(from), l.items.end());
        return l.tail ? Term::partial_list(std::move(rest), *l.tail) : Term::list(std::move(rest));
    }

    bool unify_lists(const Term& a, const Term& b)
    {
        std::optional<FlatList> fa = flatten(a);
        std::optional<FlatList> fb = flatten(b);
        if (!fa || !fb) return false;
        const std::size_t common = std::min(fa->items.size(), fb->items.size());
        for (std::size_t i = 0; i < common; ++i) {
            if (!unify(fa->items[i], fb->items[i])) return false;
        }
        // The shorter list's tail absorbs the longer list's remainder.
        if (fa->items.size() < fb->items.size() || (fa->items.size() == fb->items.size() && fa->tail)) {
            return fa->tail && unify(*fa->tail, suffix(*fb, common));
        }
        if (fb->items.size() < fa->items.size() || fb->tail) {
            return fb->tail && unify(*fb->tail, suffix(*fa, common));
        }
        return true;
    }

    Substitution s_;
    UnifyOptions options_;
};

}  // namespace

std::optional<Substitution> unify(const Term& a, const Term& b, const Substitution& s, UnifyOptions options)
{
    Unifier u(s, options);
    try {
        if (!u.unify(a, b)) return std::nullopt;
    } catch (const TermError&) {
        // The only solution would need an improper list.
        return std::nullopt;
    }
    return u.take();
}

std::optional<Substitution> matches(const Term& templ, const Term& fact)
{
    if (!is_ground(fact)) {
        throw TermError("matches() requires a ground fact, got " + print_canonical(fact));
    }
    return unify(templ, fact);
}

}  // namespace objlog
