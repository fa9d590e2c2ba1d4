#pragma once

#include <filesystem>
#include <set>
#include <string_view>
#include <vector>

#include "objlog/converter.hpp"
#include "objlog/metamodel.hpp"
#include "objlog/term.hpp"
#include "objlog/unify.hpp"

namespace objlog {

enum class KbMode {
    // Every fact must resolve to a registered class.
    Strict,
    // Unresolvable facts are kept but never returned by find().
    Permissive,
};

struct QueryResult {
    Term fact;
    Substitution bindings;
};

// An insertion-ordered set of ground facts bound to a registry. No two
// stored facts are equal. Mutation requires exclusive access; concurrent
// readers are fine between mutations.
class KnowledgeBase {
public:
    explicit KnowledgeBase(const Registry& registry, KbMode mode = KbMode::Strict);

    const Registry& registry() const noexcept { return *registry_; }
    KbMode mode() const noexcept { return mode_; }
    std::size_t size() const noexcept { return facts_.size(); }
    bool empty() const noexcept { return facts_.empty(); }
    const std::vector<Term>& facts() const noexcept { return facts_; }
    bool contains(const Term& fact) const { return keys_.contains(fact); }

    // Appends fact unless an equal fact is stored; returns whether it was
    // inserted. Throws KbError for non-ground or (strict) unresolvable facts.
    bool assert_fact(const Term& fact);

    // Removes every fact matching the template; survivors keep their order.
    std::size_t retract(const Term& templ);

    std::vector<QueryResult> query(const Term& templ) const;

    bool save_object(const ObjectValue& value);

    // Decoded objects for every fact matching the query, in insertion order.
    std::vector<ObjectValue> find(const QueryObject& query) const;

    // Appends the file's facts, skipping duplicates; returns how many were
    // new. The whole file is checked before anything is inserted.
    std::size_t load_file(const std::filesystem::path& path);
    std::size_t load_text(std::string_view text);

    // Rewrites path with one canonical fact per line; returns the count.
    std::size_t store_file(const std::filesystem::path& path) const;
    std::string to_text() const;

private:
    void check_fact(const Term& fact) const;

    const Registry* registry_;
    KbMode mode_;
    std::vector<Term> facts_;
    std::set<Term, TermLess> keys_;
};

}  // namespace objlog
