#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "strsat/driver.hpp"

using namespace strsat;

namespace {

std::optional<ProcedureKind> parse_procedure(const std::string& s) {
    if (s == "stabilization") return ProcedureKind::Stabilization;
    if (s == "nielsen") return ProcedureKind::Nielsen;
    if (s == "regex-eq") return ProcedureKind::RegexEq;
    return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"String constraint solver for the SMT-LIB string fragment"};
    bool model = false;
    double timeout = 120;
    std::string procedure = "auto";
    std::uint64_t seed = 0;
    std::string file;
    app.add_flag("--model", model, "Print a model after sat");
    app.add_option("--timeout", timeout, "Wall budget per check-sat in seconds")->check(CLI::PositiveNumber);
    app.add_option("--procedure", procedure, "auto|stabilization|nielsen|regex-eq")
        ->check(CLI::IsMember({"auto", "stabilization", "nielsen", "regex-eq"}));
    app.add_option("--seed", seed, "Seed for decision phases");
    app.add_option("FILE", file, "Input .smt2 file")->required();
    CLI11_PARSE(app, argc, argv);

    SolveOptions options;
    options.timeout_seconds = timeout;
    options.procedure = parse_procedure(procedure);
    options.seed = seed;
    if (const char* lvl = std::getenv("SOLVER_LOG")) {
        std::string l = lvl;
        if (l == "debug") options.log = LogLevel::Debug;
        if (l == "info") options.log = LogLevel::Info;
        options.log_stream = &std::cerr;
    }

    std::ifstream in(file, std::ios::binary);
    if (!in) {
        std::cerr << "(error \"cannot open " << file << "\")\n";
        return 1;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();

    Script script;
    try {
        script = parse_script_text(text);
    } catch (const ParseError& e) {
        if (e.kind() == ParseError::Kind::Unsupported) {
            if (options.log != LogLevel::Off) std::cerr << "; unsupported: " << e.what() << '\n';
            for (std::size_t i = 0, n = count_check_sat(text); i < n; ++i) std::cout << "unknown\n";
            return 0;
        }
        std::cerr << "(error \"" << e.line() << ':' << e.column() << ": " << e.what() << "\")\n";
        return 1;
    }

    try {
        std::vector<FormulaPtr> asserted;
        std::optional<Verdict> last;
        for (const auto& c : script.commands) {
            switch (c.kind) {
            case Command::Kind::Assert: asserted.push_back(c.formula); break;
            case Command::Kind::CheckSat: {
                last = solve_assertions(asserted, options);
                std::cout << to_string(last->status) << '\n';
                if (last->status == Verdict::Status::Unknown && options.log != LogLevel::Off)
                    std::cerr << "; reason: " << last->reason << '\n';
                if (model && last->status == Verdict::Status::Sat)
                    std::cout << format_model(*last, script.declarations()) << '\n';
                break;
            }
            case Command::Kind::GetModel:
                if (!model && last && last->status == Verdict::Status::Sat)
                    std::cout << format_model(*last, script.declarations()) << '\n';
                break;
            case Command::Kind::Exit: return 0;
            default: break;
            }
            std::cout.flush();
        }
    } catch (const std::exception& e) {
        std::cerr << "(error \"internal: " << e.what() << "\")\n";
        return 2;
    }
    return 0;
}
