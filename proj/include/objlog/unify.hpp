#pragma once

#include <map>
#include <optional>
#include <string>

#include "objlog/term.hpp"

namespace objlog {

// Variable bindings in solved form: no bound variable occurs in any bound
// value, so applying a substitution is a single pass.
class Substitution {
public:
    struct Binding {
        Term var;
        Term value;
    };

    bool empty() const noexcept { return bindings_.empty(); }
    std::size_t size() const noexcept { return bindings_.size(); }
    const Term* lookup(VarId id) const;
    const std::map<VarId, Binding>& bindings() const noexcept { return bindings_; }

    // Binds an unbound variable, resolving value against the current
    // bindings and rewriting existing bindings that mention var. Returns
    // false when var is already bound or, with occurs_check, when it occurs
    // in the resolved value.
    bool bind(const Term& var, const Term& value, bool occurs_check = true);

private:
    std::map<VarId, Binding> bindings_;
};

// Replaces every bound variable in t, splicing bound partial-list tails.
// Throws TermError if a tail is bound to something other than a list or
// variable.
Term apply(const Substitution& s, const Term& t);

struct UnifyOptions {
    bool occurs_check = true;
};

// Most general unifier of a and b extending s, or nullopt. Unifiers that
// would bind a list tail to a non-list are not representable and fail.
std::optional<Substitution> unify(const Term& a, const Term& b, const Substitution& s = {}, UnifyOptions options = {});

// Succeeds iff fact is an instance of template. Throws TermError when fact is
// not ground.
std::optional<Substitution> matches(const Term& templ, const Term& fact);

}  // namespace objlog
