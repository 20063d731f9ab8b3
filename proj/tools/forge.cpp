// forge: run or check exterior-calculus scripts.

#include <forge/dsl/interpreter.hpp>
#include <forge/dsl/parser.hpp>
#include <forge/dsl/report.hpp>
#include <forge/error.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace {

bool read_source(const std::string& path, std::string& out)
{
    if (path == "-") {
        out.assign(std::istreambuf_iterator<char>(std::cin), {});
        return true;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Symbolic-numeric exterior calculus scripts"};
    app.require_subcommand(1);

    std::string script;
    std::string format = "text";
    std::uint64_t seed = 42;
    double tol = 1e-8;

    auto* run = app.add_subcommand("run", "Execute a script and print one report per command");
    run->add_option("SCRIPT", script, "Script path, or - for stdin")->required();
    run->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    run->add_option("--seed", seed, "Seed of the randomized zero tests");
    run->add_option("--tol", tol, "Default tolerance of stokes");

    auto* check = app.add_subcommand("check", "Parse a script without running it");
    check->add_option("SCRIPT", script, "Script path, or - for stdin")->required();

    CLI11_PARSE(app, argc, argv);

    std::string source;
    if (!read_source(script, source)) {
        std::cerr << "forge: cannot read " << script << "\n";
        return 2;
    }

    forge::dsl::Script parsed;
    try {
        parsed = forge::dsl::parse(source);
    } catch (const forge::ParseError& e) {
        std::cerr << (script == "-" ? "<stdin>" : script) << ":" << e.what() << "\n";
        return 1;
    }

    if (check->parsed()) {
        std::cout << "ok: " << parsed.statements.size() << " statements\n";
        return 0;
    }

    const auto reports = forge::dsl::execute(parsed, {seed, tol});
    const auto fmt = format == "json" ? forge::dsl::Format::Json : forge::dsl::Format::Text;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (fmt == forge::dsl::Format::Text && i > 0) std::cout << "\n";
        std::cout << forge::dsl::render(reports[i], fmt) << "\n";
    }
    const std::size_t failures = forge::dsl::count_failures(reports);
    return static_cast<int>(std::min<std::size_t>(failures, 125));
}
