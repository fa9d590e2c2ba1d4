#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "objlog/converter.hpp"
#include "objlog/kb_store.hpp"
#include "objlog/metamodel.hpp"
#include "objlog/text_io.hpp"
#include "objlog/unify.hpp"

namespace objlog::cli {

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Sends payload to --out when given, otherwise to out.
void emit(const CliConfig& config, std::ostream& out, const std::string& payload)
{
    if (config.output.empty()) {
        out << payload;
        return;
    }
    std::ofstream file(config.output, std::ios::binary | std::ios::trunc);
    if (!file || !(file << payload) || !file.flush()) {
        throw IoError("cannot write '" + config.output + "'");
    }
}

// Maps library exceptions onto the exit-status contract.
template <class Fn>
int guarded(std::ostream& err, Fn&& fn)
{
    try {
        return fn();
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

Registry load_registry(const CliConfig& config)
{
    Registry registry;
    if (config.schema_path) {
        std::string text = read_file(*config.schema_path);
        try {
            load_schema(registry, text);
        } catch (const ParseError& e) {
            throw SchemaError(*config.schema_path + ":" + e.what());
        } catch (const SchemaError& e) {
            throw SchemaError(*config.schema_path + ": " + e.what());
        }
    }
    return registry;
}

KbMode mode_for(const CliConfig& config)
{
    return config.strict && config.schema_path ? KbMode::Strict : KbMode::Permissive;
}

void load_kb(KnowledgeBase& kb, const CliConfig& config)
{
    std::string text = read_file(*config.kb_path);
    try {
        kb.load_text(text);
    } catch (const ParseError& e) {
        throw KbError(*config.kb_path + ":" + e.what());
    } catch (const KbError& e) {
        throw KbError(*config.kb_path + ":" + e.what());
    }
}

}  // namespace

int cmd_validate(const CliConfig& config, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        std::string text = read_file(*config.kb_path);
        Registry registry = load_registry(config);
        const std::string& path = *config.kb_path;
        std::size_t problems = 0;
        auto report = [&](const SourcePos& pos, const std::string& message) {
            err << path << ':' << to_string(pos) << ": error: " << message << '\n';
            ++problems;
        };

        RecoveredProgram program = parse_clauses_recovering(text);
        for (const ParseError& e : program.errors) {
            report(e.pos(), e.message() + (e.lexeme().empty() ? "" : " near '" + e.lexeme() + "'"));
        }
        for (const Clause& clause : program.clauses) {
            const Term& fact = clause.term;
            if (!is_ground(fact)) {
                report(clause.pos, "non-ground clause " + print_canonical(fact));
                continue;
            }
            if (!config.schema_path) continue;
            if (!fact.is_compound() || !registry.find(fact.name(), fact.arity())) {
                if (config.strict) {
                    std::string pred = fact.is_compound() ? format_atom(fact.name()) + "/" + std::to_string(fact.arity())
                                                          : print_canonical(fact);
                    report(clause.pos, "no class mapped to predicate " + pred);
                }
                continue;
            }
            try {
                from_term(registry, fact);
            } catch (const ConversionError& e) {
                report(clause.pos, e.what());
            }
        }
        if (problems > 0) {
            err << problems << (problems == 1 ? " problem" : " problems") << '\n';
            return kExitFailure;
        }
        emit(config, out, std::to_string(program.clauses.size()) + (program.clauses.size() == 1 ? " clause ok\n" : " clauses ok\n"));
        return kExitOk;
    });
}

int cmd_canon(const CliConfig& config, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        std::string text = read_file(*config.kb_path);
        std::string payload;
        try {
            for (const Term& t : parse_program(text)) {
                payload += print_canonical(t);
                payload += ".\n";
            }
        } catch (const ParseError& e) {
            throw KbError(*config.kb_path + ":" + e.what());
        }
        emit(config, out, payload);
        return kExitOk;
    });
}

int cmd_decls(const CliConfig& config, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        emit(config, out, emit_declarations(load_registry(config)));
        return kExitOk;
    });
}

int cmd_query(const CliConfig& config, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        Registry registry = load_registry(config);
        KnowledgeBase kb(registry, mode_for(config));
        load_kb(kb, config);
        Term goal = Term::atom("?");
        try {
            goal = parse_term(*config.goal_text);
        } catch (const ParseError& e) {
            throw KbError("goal:" + std::string(e.what()));
        }
        std::vector<Term> vars = variables_of(goal);
        std::string payload;
        std::vector<QueryResult> results = kb.query(goal);
        for (const QueryResult& r : results) {
            payload += print_canonical(r.fact) + ".\n";
            for (const Term& v : vars) {
                if (v.name() == "_") continue;
                payload += "  " + v.name() + " = " + print_canonical(apply(r.bindings, v)) + "\n";
            }
        }
        payload += std::to_string(results.size()) + (results.size() == 1 ? " match\n" : " matches\n");
        emit(config, out, payload);
        return kExitOk;
    });
}

int cmd_roundtrip(const CliConfig& config, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        Registry registry = load_registry(config);
        KnowledgeBase kb(registry, mode_for(config));
        load_kb(kb, config);
        std::size_t checked = 0;
        for (std::size_t i = 0; i < kb.facts().size(); ++i) {
            const Term& fact = kb.facts()[i];
            if (!fact.is_compound() || !registry.find(fact.name(), fact.arity())) {
                continue;
            }
            const std::string where = *config.kb_path + ": fact " + std::to_string(i + 1);
            ObjectValue object;
            try {
                object = from_term(registry, fact);
            } catch (const ConversionError& e) {
                throw ConversionError(where + ": decode failed: " + e.what());
            }
            Term again = to_term(registry, object);
            if (again != fact) {
                throw ConversionError(where + ": round-trip mismatch\n  original:   " + print_canonical(fact) +
                                      "\n  re-encoded: " + print_canonical(again));
            }
            ++checked;
        }
        emit(config, out, std::to_string(checked) + (checked == 1 ? " fact round-tripped\n" : " facts round-tripped\n"));
        return kExitOk;
    });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Map objects to Prolog facts and back"};
    app.name("objlog");
    app.require_subcommand(1);

    CliConfig config;
    bool permissive = false;
    auto schema = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--schema", config.schema_path, "Schema file (.pls)")->check(CLI::ExistingFile);
        if (required) opt->required();
    };
    auto kb = [&](CLI::App* sub) {
        sub->add_option("--kb", config.kb_path, "Knowledge-base file (.pl)")->required()->check(CLI::ExistingFile);
    };
    auto output = [&](CLI::App* sub) { sub->add_option("--out", config.output, "Write payload to this file"); };
    auto strictness = [&](CLI::App* sub) {
        sub->add_flag("--permissive", permissive, "Accept facts that no class maps");
    };

    auto* validate = app.add_subcommand("validate", "Check a knowledge base, optionally against a schema");
    schema(validate, false);
    kb(validate);
    output(validate);
    strictness(validate);

    auto* canon = app.add_subcommand("canon", "Print a knowledge base in canonical form");
    kb(canon);
    output(canon);

    auto* decls = app.add_subcommand("decls", "Print the most general predicate of every class");
    schema(decls, true);
    output(decls);

    auto* query = app.add_subcommand("query", "Match a goal against a knowledge base");
    schema(query, false);
    kb(query);
    query->add_option("--goal", config.goal_text, "Goal term")->required();
    output(query);
    strictness(query);

    auto* roundtrip = app.add_subcommand("roundtrip", "Decode and re-encode every fact");
    schema(roundtrip, true);
    kb(roundtrip);
    output(roundtrip);
    strictness(roundtrip);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        if (e.get_name() != "RequiredError" || app.get_subcommands().empty()) {
            err << "run 'objlog --help' for usage\n";
        }
        return kExitUsage;
    }
    config.strict = !permissive;
    config.subcommand = app.get_subcommands().front()->get_name();

    if (config.subcommand == "validate") return cmd_validate(config, out, err);
    if (config.subcommand == "canon") return cmd_canon(config, out, err);
    if (config.subcommand == "decls") return cmd_decls(config, out, err);
    if (config.subcommand == "query") return cmd_query(config, out, err);
    return cmd_roundtrip(config, out, err);
}

}  // namespace objlog::cli
