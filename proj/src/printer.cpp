#include <charconv>
#include <set>
#include <unordered_map>

#include "objlog/text_io.hpp"

namespace objlog {

bool atom_needs_quotes(std::string_view text)
{
    if (text.empty() || !(text[0] >= 'a' && text[0] <= 'z')) {
        return true;
    }
    for (char c : text) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
        if (!ok) return true;
    }
    return false;
}

std::string format_atom(std::string_view text)
{
    if (!atom_needs_quotes(text)) {
        return std::string(text);
    }
    std::string out;
    out.reserve(text.size() + 2);
    out.push_back('\'');
    for (char c : text) {
        switch (c) {
        case '\\': out += "\\\\"; break;
        case '\'': out += "\\'"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out.push_back(c);
        }
    }
    out.push_back('\'');
    return out;
}

std::string format_float(double value)
{
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    std::string text(buf, end);
    std::size_t exp = text.find_first_of("eE");
    std::string_view mantissa = std::string_view(text).substr(0, exp);
    if (mantissa.find('.') == std::string_view::npos) {
        text.insert(exp == std::string::npos ? text.size() : exp, ".0");
    }
    return text;
}

namespace {

class Printer {
public:
    explicit Printer(const Term& root) { assign_names(root); }

    void print(const Term& t, std::string& out) const
    {
        switch (t.kind()) {
        case Term::Kind::Var: out += names_.at(t.var_id()); break;
        case Term::Kind::Int: out += std::to_string(t.int_value()); break;
        case Term::Kind::Float: out += format_float(t.float_value()); break;
        case Term::Kind::Atom: out += format_atom(t.name()); break;
        case Term::Kind::List:
            out.push_back('[');
            print_args(t, out);
            if (const Term* tail = t.tail()) {
                out.push_back('|');
                print(*tail, out);
            }
            out.push_back(']');
            break;
        case Term::Kind::Struct:
            out += format_atom(t.name());
            out.push_back('(');
            print_args(t, out);
            out.push_back(')');
            break;
        }
    }

private:
    void print_args(const Term& t, std::string& out) const
    {
        bool first = true;
        for (const Term& arg : t.args()) {
            if (!first) out.push_back(',');
            first = false;
            print(arg, out);
        }
    }

    // Distinct ids that share a name get a numeric suffix, picked so that it
    // collides with no other variable name in the term.
    void assign_names(const Term& root)
    {
        std::vector<Term> vars = variables_of(root);
        std::set<std::string> taken;
        for (const Term& v : vars) taken.insert(v.name());
        std::set<std::string> used;
        for (const Term& v : vars) {
            std::string name = v.name();
            if (name != "_" && !used.insert(name).second) {
                for (int k = 1;; ++k) {
                    std::string candidate = v.name() + "_" + std::to_string(k);
                    if (!taken.contains(candidate) && !used.contains(candidate)) {
                        name = std::move(candidate);
                        used.insert(name);
                        break;
                    }
                }
            }
            names_.emplace(v.var_id(), std::move(name));
        }
    }

    std::unordered_map<VarId, std::string> names_;
};

}  // namespace

std::string print_canonical(const Term& t)
{
    std::string out;
    Printer(t).print(t, out);
    return out;
}

}  // namespace objlog
