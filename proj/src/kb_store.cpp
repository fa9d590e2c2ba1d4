#include "objlog/kb_store.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "objlog/text_io.hpp"

namespace objlog {

KnowledgeBase::KnowledgeBase(const Registry& registry, KbMode mode) : registry_(&registry), mode_(mode) {}

void KnowledgeBase::check_fact(const Term& fact) const
{
    if (!is_ground(fact)) {
        throw KbError("fact must be ground: " + print_canonical(fact));
    }
    if (mode_ == KbMode::Strict) {
        if (!fact.is_compound()) {
            throw KbError(std::string("fact must be a structure, got ") + kind_name(fact.kind()) + " " +
                          print_canonical(fact));
        }
        if (registry_->find(fact.name(), fact.arity()) == nullptr) {
            throw KbError("no class mapped to predicate " + format_atom(fact.name()) + "/" + std::to_string(fact.arity()) +
                          ": " + print_canonical(fact));
        }
    }
}

bool KnowledgeBase::assert_fact(const Term& fact)
{
    check_fact(fact);
    if (!keys_.insert(fact).second) {
        return false;
    }
    facts_.push_back(fact);
    return true;
}

std::size_t KnowledgeBase::retract(const Term& templ)
{
    auto removed = std::remove_if(facts_.begin(), facts_.end(), [&](const Term& fact) {
        if (!matches(templ, fact)) return false;
        keys_.erase(fact);
        return true;
    });
    auto count = static_cast<std::size_t>(std::distance(removed, facts_.end()));
    facts_.erase(removed, facts_.end());
    return count;
}

std::vector<QueryResult> KnowledgeBase::query(const Term& templ) const
{
    std::vector<QueryResult> out;
    for (const Term& fact : facts_) {
        if (auto s = matches(templ, fact)) {
            out.push_back(QueryResult{fact, std::move(*s)});
        }
    }
    return out;
}

bool KnowledgeBase::save_object(const ObjectValue& value)
{
    if (value.kind() != ObjectValue::Kind::Entity) {
        throw KbError(std::string("only entities can be saved, got ") + kind_name(value.kind()));
    }
    return assert_fact(to_term(*registry_, value));
}

std::vector<ObjectValue> KnowledgeBase::find(const QueryObject& query) const
{
    const TypeRef expected = TypeRef::entity(query.class_name);
    std::vector<ObjectValue> out;
    for (const QueryResult& r : this->query(to_template(*registry_, query))) {
        if (mode_ == KbMode::Permissive) {
            try {
                out.push_back(from_term(*registry_, r.fact, expected));
            } catch (const ConversionError&) {
                // Facts outside the schema are stored but not objects.
            }
        } else {
            out.push_back(from_term(*registry_, r.fact, expected));
        }
    }
    return out;
}

std::size_t KnowledgeBase::load_text(std::string_view text)
{
    std::vector<Clause> clauses = parse_clauses(text);
    for (const Clause& c : clauses) {
        try {
            check_fact(c.term);
        } catch (const KbError& e) {
            throw KbError(to_string(c.pos) + ": " + e.what());
        }
    }
    std::size_t inserted = 0;
    for (const Clause& c : clauses) {
        inserted += assert_fact(c.term) ? 1 : 0;
    }
    return inserted;
}

std::size_t KnowledgeBase::load_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError("error reading '" + path.string() + "'");
    }
    return load_text(buf.str());
}

std::string KnowledgeBase::to_text() const
{
    std::string out;
    for (const Term& fact : facts_) {
        out += print_canonical(fact);
        out += ".\n";
    }
    return out;
}

std::size_t KnowledgeBase::store_file(const std::filesystem::path& path) const
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open '" + tmp.string() + "' for writing");
        }
        out << to_text();
        out.flush();
        if (!out) {
            throw IoError("error writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw IoError("cannot replace '" + path.string() + "': " + ec.message());
    }
    return facts_.size();
}

}  // namespace objlog
