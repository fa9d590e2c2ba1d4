#include <charconv>
#include <unordered_map>

#include "objlog/text_io.hpp"
#include "text_io_internal.hpp"

namespace objlog {

namespace {

class Parser {
public:
    Parser(std::string_view src, const std::vector<Token>& tokens, SourcePos end)
        : src_(src), tokens_(tokens), end_(end)
    {
    }

    bool done() const { return index_ >= tokens_.size(); }
    const SourcePos& position() const { return done() ? end_ : tokens_[index_].pos; }

    void reset_variables()
    {
        variables_.clear();
        next_id_ = 0;
    }

    Term term()
    {
        const Token& tok = take("a term");
        switch (tok.kind) {
        case TokenKind::Integer: return Term::integer(parse_number<std::int64_t>(tok));
        case TokenKind::Float: return Term::floating(parse_number<double>(tok));
        case TokenKind::Variable: return variable(tok.text);
        case TokenKind::Atom:
        case TokenKind::QuotedAtom: return atom_or_compound(tok);
        case TokenKind::Punct:
            if (tok.text == "[") return list();
            break;
        }
        fail("expected a term", tok);
    }

    // Consumes the clause terminator, which must be followed by layout or EOF.
    void end_of_clause()
    {
        const Token& tok = take("'.' ending the clause");
        if (!is_punct(tok, ".")) {
            fail("expected '.' ending the clause", tok);
        }
        if (tok.end_offset < src_.size()) {
            char c = src_[tok.end_offset];
            if (!(c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v' || c == '%')) {
                fail("expected layout after '.'", tok);
            }
        }
    }

    bool at_punct(const char* p) const { return !done() && is_punct(tokens_[index_], p); }
    const Token& peek() const { return tokens_[index_]; }

    // Skips past the next clause terminator, for error recovery.
    // Resumes at the token an error was reported on, then skips past the
    // next clause terminator.
    void skip_clause(std::size_t error_offset)
    {
        while (index_ > 0 && tokens_[index_ - 1].pos.offset >= error_offset) --index_;
        while (!done()) {
            const Token& tok = tokens_[index_++];
            if (is_punct(tok, ".")) {
                std::size_t after = tok.end_offset;
                if (after >= src_.size() || std::string_view(" \t\n\r\f\v%").find(src_[after]) != std::string_view::npos) {
                    return;
                }
            }
        }
    }

    [[noreturn]] void fail(const std::string& message, const Token& tok) const
    {
        throw ParseError(message, tok.pos, tok.kind == TokenKind::QuotedAtom ? format_atom(tok.text) : tok.text);
    }

    [[noreturn]] void fail_at_end(const std::string& what) const
    {
        throw ParseError("unexpected end of input, expected " + what, end_, "");
    }

private:
    static bool is_punct(const Token& tok, const char* p) { return tok.kind == TokenKind::Punct && tok.text == p; }

    const Token& take(const std::string& what)
    {
        if (done()) {
            fail_at_end(what);
        }
        return tokens_[index_++];
    }

    void expect(const char* p, const std::string& what)
    {
        const Token& tok = take(what);
        if (!is_punct(tok, p)) {
            fail("expected " + what, tok);
        }
    }

    template <class T>
    static T parse_number(const Token& tok)
    {
        T value{};
        std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
        return value;
    }

    Term variable(const std::string& name)
    {
        if (name == "_") {
            return Term::variable(name, next_id_++);
        }
        auto [it, inserted] = variables_.try_emplace(name, next_id_);
        if (inserted) {
            ++next_id_;
        }
        return Term::variable(name, it->second);
    }

    Term atom_or_compound(const Token& name)
    {
        // Functional notation requires '(' to follow the name immediately.
        if (!done() && is_punct(peek(), "(") && peek().pos.offset == name.end_offset) {
            ++index_;
            std::vector<Term> args;
            args.push_back(term());
            while (at_punct(",")) {
                ++index_;
                args.push_back(term());
            }
            expect(")", "',' or ')'");
            return Term::compound(name.text, std::move(args));
        }
        return Term::atom(name.text);
    }

    Term list()
    {
        std::vector<Term> items;
        if (at_punct("]")) {
            ++index_;
            return Term::list(std::move(items));
        }
        items.push_back(term());
        while (at_punct(",")) {
            ++index_;
            items.push_back(term());
        }
        if (at_punct("|")) {
            ++index_;
            const Token& tail_tok = done() ? take("list tail") : peek();
            Term tail = term();
            expect("]", "']'");
            if (tail.is_var()) {
                return Term::partial_list(std::move(items), std::move(tail));
            }
            if (tail.is_list()) {
                items.insert(items.end(), tail.args().begin(), tail.args().end());
                return tail.tail() ? Term::partial_list(std::move(items), *tail.tail()) : Term::list(std::move(items));
            }
            fail("list tail must be a variable or a list", tail_tok);
        }
        expect("]", "',', '|' or ']'");
        return Term::list(std::move(items));
    }

    std::string_view src_;
    const std::vector<Token>& tokens_;
    SourcePos end_;
    std::size_t index_ = 0;
    std::unordered_map<std::string, VarId> variables_;
    VarId next_id_ = 0;
};

}  // namespace

Term parse_term(std::string_view text)
{
    detail::LexResult lexed = detail::lex(text);
    if (lexed.error) {
        throw *lexed.error;
    }
    Parser parser(text, lexed.tokens, lexed.end);
    Term t = parser.term();
    if (parser.at_punct(".")) {
        parser.end_of_clause();
    }
    if (!parser.done()) {
        parser.fail("unexpected text after term", parser.peek());
    }
    return t;
}

std::vector<Clause> parse_clauses(std::string_view text)
{
    detail::LexResult lexed = detail::lex(text);
    if (lexed.error) {
        throw *lexed.error;
    }
    Parser parser(text, lexed.tokens, lexed.end);
    std::vector<Clause> clauses;
    while (!parser.done()) {
        parser.reset_variables();
        SourcePos start = parser.position();
        Term t = parser.term();
        parser.end_of_clause();
        clauses.push_back(Clause{std::move(t), start});
    }
    return clauses;
}

std::vector<Term> parse_program(std::string_view text)
{
    std::vector<Term> terms;
    for (Clause& c : parse_clauses(text)) {
        terms.push_back(std::move(c.term));
    }
    return terms;
}

RecoveredProgram parse_clauses_recovering(std::string_view text)
{
    detail::LexResult lexed = detail::lex(text);
    Parser parser(text, lexed.tokens, lexed.end);
    RecoveredProgram out;
    while (!parser.done()) {
        parser.reset_variables();
        SourcePos start = parser.position();
        try {
            Term t = parser.term();
            parser.end_of_clause();
            out.clauses.push_back(Clause{std::move(t), start});
        } catch (const ParseError& e) {
            // A truncated last clause is a consequence of the lexical error.
            if (!(lexed.error && parser.done())) {
                out.errors.push_back(e);
            }
            parser.skip_clause(e.pos().offset);
        }
    }
    if (lexed.error) {
        out.errors.push_back(*lexed.error);
    }
    return out;
}

}  // namespace objlog
