// cyl: operator front end for the cyberlang toolkit.
//
// Exit codes are uniform across subcommands:
//   0  success
//   1  semantic or validation failure (diagnostics, dialect, expectations)
//   2  environment or IO failure (missing files, bad config, bind errors)
//   3  ambiguity (evaluation needed negotiation and none was possible)

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <csignal>
#include <cstdio>
#include <cstring>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cyberlang/broker.hpp"
#include "cyberlang/compile.hpp"
#include "cyberlang/context.hpp"
#include "cyberlang/dialect.hpp"
#include "cyberlang/errors.hpp"
#include "cyberlang/frame.hpp"
#include "cyberlang/ids.hpp"
#include "cyberlang/json_io.hpp"
#include "cyberlang/mapping.hpp"
#include "cyberlang/meaning.hpp"
#include "cyberlang/parser.hpp"
#include "cyberlang/printer.hpp"
#include "cyberlang/scenario.hpp"
#include "cyberlang/sign.hpp"

namespace {

using namespace cyberlang;

constexpr int kExitOk = 0;
constexpr int kExitSemantic = 1;
constexpr int kExitEnvironment = 2;
constexpr int kExitAmbiguous = 3;

struct CliConfig {
    std::string registry_path;
    std::string mappings_path;
    std::string dialect_path;
    std::string context_path;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

int exit_code_for(const Error& error) {
    return error.code() == ErrorCode::IoError ? kExitEnvironment
                                              : kExitSemantic;
}

void print_diagnostics(const std::string& file,
                       const std::vector<ParseDiagnostic>& diagnostics) {
    for (const auto& d : diagnostics) {
        std::cerr << file << ":" << d.span.line << ":" << d.span.column << ": "
                  << (d.severity == Severity::Error ? "error" : "warning")
                  << ": " << d.message << " [" << diagnostic_code_name(d.code)
                  << "]\n";
    }
}

bool has_error(const std::vector<ParseDiagnostic>& diagnostics) {
    for (const auto& d : diagnostics) {
        if (d.severity == Severity::Error) {
            return true;
        }
    }
    return false;
}

// -------------------------------------------------------------- parse

int cmd_parse(const CliConfig& config, const std::string& file) {
    std::string source = read_text_file(file);
    IdGenerator ids(config.seed);
    DocumentParse document = parse_document(source, ids);
    print_diagnostics(file, document.diagnostics);
    for (const auto& statement : document.statements) {
        std::cout << print_canonical(statement) << "\n";
    }
    return has_error(document.diagnostics) ? kExitSemantic : kExitOk;
}

// -------------------------------------------------------------- check

int cmd_check(const CliConfig& config, const std::string& file) {
    if (config.registry_path.empty() || config.mappings_path.empty() ||
        config.dialect_path.empty()) {
        std::cerr << "check: needs --registry, --mappings and --dialect "
                     "(or the CYL_* environment variables)\n";
        return kExitEnvironment;
    }
    SignRegistry signs = load_sign_registry(config.registry_path);
    MappingRegistry mappings = load_mapping_registry(config.mappings_path);
    Dialect dialect = load_dialect(config.dialect_path);

    std::string source = read_text_file(file);
    IdGenerator ids(config.seed);
    DocumentParse document = parse_document(source, ids);
    print_diagnostics(file, document.diagnostics);
    if (has_error(document.diagnostics)) {
        return kExitSemantic;
    }

    bool clean = true;
    std::size_t index = 0;
    for (const auto& statement : document.statements) {
        ++index;
        std::string label = "statement " + std::to_string(index);

        auto violations = validate_against_dialect(statement, dialect);
        if (violations.empty()) {
            std::cout << label << ": dialect ok\n";
        } else {
            clean = false;
            std::cout << label << ": " << violations.size()
                      << " dialect violation(s)\n";
            for (const auto& v : violations) {
                std::cout << "  - " << dimension_letter(v.dimension) << "."
                          << v.key << ": " << slot_problem_name(v.problem)
                          << " (" << v.message << ")\n";
            }
        }

        // Fusion coherence of every sign a slot identifier could denote.
        for (const auto& block : statement.blocks) {
            for (const auto& slot : block.slots) {
                if (slot.value.kind() != ValueKind::Identifier) {
                    continue;
                }
                const auto senses =
                    signs.lookup_signs(slot.value.as_identifier());
                for (std::size_t s = 0; s < senses.size(); ++s) {
                    std::string line = label + ": sign '" +
                                       slot.value.as_identifier() + "' sense " +
                                       std::to_string(s + 1) + ": ";
                    try {
                        FusionReport report = check_fusion(mappings, senses[s]);
                        if (report.coherent) {
                            std::cout << line << "coherent\n";
                        } else {
                            clean = false;
                            std::cout << line << "incoherent in";
                            for (Dimension d : report.mismatched) {
                                std::cout << " " << dimension_letter(d);
                            }
                            std::cout << "\n";
                        }
                    } catch (const UnmappedReferenceError& error) {
                        clean = false;
                        std::cout << line << "unverifiable: " << error.what()
                                  << "\n";
                    }
                }
            }
        }
    }
    std::cout << (clean ? "check: OK" : "check: FAILED") << "\n";
    return clean ? kExitOk : kExitSemantic;
}

// ------------------------------------------------------------ compile

int cmd_compile(const CliConfig& config, const std::string& file,
                const std::string& target_arg) {
    if (config.dialect_path.empty()) {
        std::cerr << "compile: needs --dialect (or CYL_DIALECT)\n";
        return kExitEnvironment;
    }
    Dialect dialect = load_dialect(config.dialect_path);

    std::vector<Target> targets;
    if (target_arg == "all") {
        targets = {Target::HumanNl, Target::MachineJson, Target::RobotCmd,
                   Target::TwinUpdate};
    } else if (auto target = target_from_name(target_arg)) {
        targets = {*target};
    } else {
        std::cerr << "compile: unknown target '" << target_arg << "'\n";
        return kExitEnvironment;
    }

    std::string source = read_text_file(file);
    IdGenerator ids(config.seed);
    DocumentParse document = parse_document(source, ids);
    print_diagnostics(file, document.diagnostics);
    if (has_error(document.diagnostics)) {
        return kExitSemantic;
    }

    bool failed = false;
    std::size_t index = 0;
    for (const auto& statement : document.statements) {
        ++index;
        for (Target target : targets) {
            try {
                CompiledForm form =
                    compile(statement, TargetProfile{target, dialect});
                if (targets.size() > 1) {
                    std::cout << "== statement " << index << " "
                              << target_name(target) << " ==\n";
                }
                std::cout << form.text << "\n";
            } catch (const Error& error) {
                failed = true;
                std::cerr << "compile: statement " << index << " ("
                          << target_name(target) << "): " << error.what()
                          << "\n";
            }
        }
    }
    return failed ? kExitSemantic : kExitOk;
}

// ------------------------------------------------------------ resolve

int cmd_resolve(const CliConfig& config, const std::string& file) {
    SignRegistry signs;
    if (!config.registry_path.empty()) {
        signs = load_sign_registry(config.registry_path);
    }
    ContextSnapshot context;
    if (!config.context_path.empty()) {
        context = load_context(config.context_path);
    }

    std::string source = read_text_file(file);
    IdGenerator ids(config.seed);
    DocumentParse document = parse_document(source, ids);
    print_diagnostics(file, document.diagnostics);
    if (has_error(document.diagnostics)) {
        return kExitSemantic;
    }

    bool ambiguous = false;
    for (const auto& statement : document.statements) {
        MeaningOutcome outcome = evaluate_meaning(statement, context, signs);
        if (const auto* ambiguity = std::get_if<Ambiguity>(&outcome)) {
            ambiguous = true;
            std::cout << ambiguity->to_json().dump() << "\n";
            std::cerr << "resolve: '" << ambiguity->lambda << "' in "
                      << dimension_letter(ambiguity->dimension) << "."
                      << ambiguity->key << " is ambiguous ("
                      << ambiguity->candidates.size() << " candidates)\n";
        } else {
            std::cout << std::get<ResolvedMeaning>(outcome).to_json().dump()
                      << "\n";
        }
    }
    return ambiguous ? kExitAmbiguous : kExitOk;
}

// ----------------------------------------------------------- simulate

int cmd_simulate(const CliConfig& config, const std::string& file,
                 const std::string& out_path) {
    Scenario scenario = load_scenario(file);
    if (config.seed_given) {
        scenario.seed = config.seed;
    }
    ScenarioRun run = run_scenario(scenario);

    if (out_path.empty() || out_path == "-") {
        std::cout << run.corpus_jsonl;
    } else {
        write_text_file(out_path, run.corpus_jsonl);
    }

    for (const auto& result : run.expectations) {
        std::cerr << "expectation on event " << result.event_index << ": "
                  << (result.passed ? "PASS" : "FAIL") << " '"
                  << result.assertion << "' (" << result.detail << ")\n";
    }
    return run.expectations_passed() ? kExitOk : kExitSemantic;
}

// ----------------------------------------------------- corpus validate

int cmd_corpus_validate(const std::string& file) {
    CorpusValidation result = validate_corpus(read_text_file(file));
    for (const auto& problem : result.problems) {
        std::cerr << file << ": " << problem << "\n";
    }
    std::cout << "validated " << result.records << " record(s), "
              << result.problems.size() << " problem(s)\n";
    return result.ok() ? kExitOk : kExitSemantic;
}

// -------------------------------------------------------------- serve

volatile std::sig_atomic_t g_stop = 0;

void handle_stop_signal(int) { g_stop = 1; }

struct AddrParts {
    std::string host;
    std::uint16_t port = 0;
};

std::optional<AddrParts> parse_addr(const std::string& addr) {
    auto colon = addr.rfind(':');
    if (colon == std::string::npos || colon == 0 ||
        colon + 1 >= addr.size()) {
        return std::nullopt;
    }
    AddrParts parts;
    parts.host = addr.substr(0, colon);
    if (parts.host == "localhost") {
        parts.host = "127.0.0.1";
    }
    try {
        int port = std::stoi(addr.substr(colon + 1));
        if (port < 1 || port > 65535) {
            return std::nullopt;
        }
        parts.port = static_cast<std::uint16_t>(port);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    return parts;
}

bool send_all(int fd, const std::string& bytes) {
    std::size_t sent = 0;
    while (sent < bytes.size()) {
        ssize_t n = ::send(fd, bytes.data() + sent, bytes.size() - sent, 0);
        if (n <= 0) {
            return false;
        }
        sent += static_cast<std::size_t>(n);
    }
    return true;
}

void send_error_frame(int fd, ErrorCode code, const std::string& message) {
    nlohmann::json body;
    body["code"] = std::string(error_code_name(code));
    body["message"] = message;
    send_all(fd, encode_frame(Frame{MsgType::Error, body.dump()}));
}

// One inbound frame, one reply frame. Statements are published on the
// shared bus and answered with the full corpus record; context updates
// are acknowledged with the stored snapshot.
void serve_frame(SemanticBus& bus, int fd, const Frame& frame) {
    try {
        switch (frame.type) {
        case MsgType::Statement: {
            nlohmann::json body = parse_json_strict(frame.payload, "frame payload");
            std::string publisher =
                require_string(body, "publisher", "statement frame");
            std::string source =
                require_string(body, "source", "statement frame");
            const CorpusRecord& record = bus.publish_source(publisher, source);
            std::cerr << "serve: publish from " << publisher << " -> "
                      << (record.ambiguous ? "ambiguous" : "resolved") << ", "
                      << record.deliveries.size() << " deliveries\n";
            send_all(fd, encode_frame(
                             Frame{MsgType::Delivery, record.to_json().dump()}));
            break;
        }
        case MsgType::ContextUpdate: {
            bus.update_context(
                ContextSnapshot::from_json(parse_json_strict(frame.payload, "frame payload")));
            std::cerr << "serve: context updated, timestamp "
                      << bus.context().timestamp << "\n";
            send_all(fd,
                     encode_frame(Frame{MsgType::ContextUpdate,
                                        bus.context().to_json().dump()}));
            break;
        }
        default:
            send_error_frame(fd, ErrorCode::ProtocolViolation,
                             std::string("unsupported inbound frame type ") +
                                 std::string(msg_type_name(frame.type)));
            break;
        }
    } catch (const Error& error) {
        send_error_frame(fd, error.code(), error.what());
    }
}

void serve_connection(SemanticBus& bus, int fd) {
    std::string buffer;
    char chunk[4096];
    while (!g_stop) {
        pollfd pfd{fd, POLLIN, 0};
        int ready = ::poll(&pfd, 1, 200);
        if (ready < 0) {
            break;
        }
        if (ready == 0) {
            continue;
        }
        ssize_t n = ::recv(fd, chunk, sizeof(chunk), 0);
        if (n <= 0) {
            break;
        }
        buffer.insert(buffer.end(), chunk, chunk + n);
        for (;;) {
            std::variant<DecodedFrame, NeedMoreBytes> step;
            try {
                step = decode_frame(buffer);
            } catch (const Error& error) {
                send_error_frame(fd, error.code(), error.what());
                return; // stream is unrecoverable after a framing error
            }
            if (std::holds_alternative<NeedMoreBytes>(step)) {
                break;
            }
            const DecodedFrame& decoded = std::get<DecodedFrame>(step);
            serve_frame(bus, fd, decoded.frame);
            buffer.erase(0, decoded.consumed);
        }
    }
}

int cmd_serve(const CliConfig& config, const std::string& addr,
              const std::vector<std::string>& agent_specs) {
    if (config.registry_path.empty() || config.mappings_path.empty() ||
        config.dialect_path.empty()) {
        std::cerr << "serve: needs --registry, --mappings and --dialect "
                     "(or the CYL_* environment variables)\n";
        return kExitEnvironment;
    }
    auto parts = parse_addr(addr);
    if (!parts) {
        std::cerr << "serve: bad --addr '" << addr
                  << "', expected host:port\n";
        return kExitEnvironment;
    }

    SignRegistry signs = load_sign_registry(config.registry_path);
    MappingRegistry mappings = load_mapping_registry(config.mappings_path);
    Dialect dialect = load_dialect(config.dialect_path);
    ContextSnapshot context;
    if (!config.context_path.empty()) {
        context = load_context(config.context_path);
    }
    SemanticBus bus(std::move(signs), std::move(mappings), std::move(dialect),
                    std::move(context), config.seed);
    for (const auto& spec : agent_specs) {
        auto colon = spec.find(':');
        auto kind = colon == std::string::npos
                        ? std::nullopt
                        : agent_kind_from_name(spec.substr(colon + 1));
        if (colon == std::string::npos || colon == 0 || !kind) {
            std::cerr << "serve: bad --agent '" << spec
                      << "', expected id:kind\n";
            return kExitEnvironment;
        }
        bus.register_agent(AgentProfile{spec.substr(0, colon), *kind});
    }

    int listen_fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd < 0) {
        std::cerr << "serve: socket: " << std::strerror(errno) << "\n";
        return kExitEnvironment;
    }
    int reuse = 1;
    ::setsockopt(listen_fd, SOL_SOCKET, SO_REUSEADDR, &reuse, sizeof(reuse));

    sockaddr_in bind_addr{};
    bind_addr.sin_family = AF_INET;
    bind_addr.sin_port = htons(parts->port);
    if (::inet_pton(AF_INET, parts->host.c_str(), &bind_addr.sin_addr) != 1) {
        std::cerr << "serve: bad host '" << parts->host << "'\n";
        ::close(listen_fd);
        return kExitEnvironment;
    }
    if (::bind(listen_fd, reinterpret_cast<sockaddr*>(&bind_addr),
               sizeof(bind_addr)) != 0 ||
        ::listen(listen_fd, 8) != 0) {
        std::cerr << "serve: cannot listen on " << addr << ": "
                  << std::strerror(errno) << "\n";
        ::close(listen_fd);
        return kExitEnvironment;
    }

    std::signal(SIGINT, handle_stop_signal);
    std::signal(SIGTERM, handle_stop_signal);
    std::cerr << "serve: listening on " << parts->host << ":" << parts->port
              << "\n";

    while (!g_stop) {
        pollfd pfd{listen_fd, POLLIN, 0};
        int ready = ::poll(&pfd, 1, 200);
        if (ready < 0 && errno != EINTR) {
            break;
        }
        if (ready <= 0) {
            continue;
        }
        int client = ::accept(listen_fd, nullptr, nullptr);
        if (client < 0) {
            continue;
        }
        serve_connection(bus, client);
        ::close(client);
    }
    ::close(listen_fd);
    std::cerr << "serve: shutting down\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cyberlang toolkit: parse, check, compile, resolve, "
                 "simulate, serve"};
    app.require_subcommand(1);

    CliConfig config;
    app.add_option("--registry", config.registry_path,
                   "Cybersign registry JSON")
        ->envname("CYL_REGISTRY");
    app.add_option("--mappings", config.mappings_path,
                   "cross-dimensional mapping tables JSON")
        ->envname("CYL_MAPPINGS");
    app.add_option("--dialect", config.dialect_path, "dialect contract JSON")
        ->envname("CYL_DIALECT");
    app.add_option("--context", config.context_path,
                   "context snapshot JSON")
        ->envname("CYL_CONTEXT");
    auto* seed_option =
        app.add_option("--seed", config.seed, "id-generator seed")
            ->default_val(std::uint64_t{0});

    std::string file;
    std::string target_arg = "machine-json";
    std::string out_path;
    std::string addr = "127.0.0.1:7707";
    std::vector<std::string> agent_specs;

    auto* parse_cmd =
        app.add_subcommand("parse", "parse a .cyl file, print canonical form");
    parse_cmd->add_option("file", file, "statement file")->required();

    auto* check_cmd = app.add_subcommand(
        "check", "dialect and fusion-coherence report for a .cyl file");
    check_cmd->add_option("file", file, "statement file")->required();

    auto* compile_cmd =
        app.add_subcommand("compile", "compile statements to a target form");
    compile_cmd->add_option("file", file, "statement file")->required();
    compile_cmd->add_option("--target", target_arg,
                            "human-nl | machine-json | robot-cmd | "
                            "twin-update | all");

    auto* resolve_cmd = app.add_subcommand(
        "resolve", "evaluate meaning against the configured context");
    resolve_cmd->add_option("file", file, "statement file")->required();

    auto* simulate_cmd =
        app.add_subcommand("simulate", "run a scenario, export its corpus");
    simulate_cmd->add_option("scenario", file, "scenario script")->required();
    simulate_cmd->add_option("--out", out_path,
                             "corpus output path (default: stdout)");

    auto* serve_cmd =
        app.add_subcommand("serve", "run the semantic bus over TCP frames");
    serve_cmd->add_option("--addr", addr, "listen address host:port");
    serve_cmd->add_option("--agent", agent_specs,
                          "register an agent as id:kind (repeatable)");

    auto* corpus_cmd = app.add_subcommand("corpus", "corpus log utilities");
    corpus_cmd->require_subcommand(1);
    auto* validate_cmd =
        corpus_cmd->add_subcommand("validate", "schema-check a corpus export");
    validate_cmd->add_option("file", file, "corpus JSONL file")->required();

    CLI11_PARSE(app, argc, argv);
    config.seed_given = seed_option->count() > 0;

    try {
        if (parse_cmd->parsed()) {
            return cmd_parse(config, file);
        }
        if (check_cmd->parsed()) {
            return cmd_check(config, file);
        }
        if (compile_cmd->parsed()) {
            return cmd_compile(config, file, target_arg);
        }
        if (resolve_cmd->parsed()) {
            return cmd_resolve(config, file);
        }
        if (simulate_cmd->parsed()) {
            return cmd_simulate(config, file, out_path);
        }
        if (serve_cmd->parsed()) {
            return cmd_serve(config, addr, agent_specs);
        }
        if (corpus_cmd->parsed()) {
            return cmd_corpus_validate(file);
        }
    } catch (const ScriptError& error) {
        std::cerr << "cyl: " << error.what() << "\n";
        return kExitSemantic;
    } catch (const Error& error) {
        std::cerr << "cyl: " << error.what() << "\n";
        return exit_code_for(error);
    } catch (const std::exception& error) {
        std::cerr << "cyl: " << error.what() << "\n";
        return kExitSemantic;
    }
    return kExitOk;
}
