#include "commands.hpp"

#include "kll/error.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace kll;
using namespace kll::cli;

namespace {

json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InvalidArgument("cannot open " + path);
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw SchemaError("/: " + path + " is not valid JSON (" + e.what() + ")");
    }
}

json parse_flag(const std::string& flag, const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error&) {
        throw SchemaError("/" + flag + ": not valid JSON: " + text);
    }
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw InvalidArgument("cannot write " + path);
    f << text;
}

int report_error(const std::string& kind, const std::string& message, int code) {
    nlohmann::ordered_json e;
    e["error"] = kind;
    e["message"] = message;
    std::cerr << e.dump() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kll: number fields, quaternion algebras, presentations and finite quotients"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string input, output, csv_path;
    int threads = 1;
    std::uint64_t budget_cap = 0;
    app.add_option("--input", input, "JSON input file");
    app.add_option("--output", output, "write the JSON report here instead of stdout");
    app.add_option("--threads", threads, "worker bound (output is identical for every value)")->check(CLI::PositiveNumber);
    app.add_option("--budget", budget_cap, "cap on enumeration nodes and group orders (overrides KLL_BUDGET)");

    json flags = json::object();
    auto json_flag = [&](CLI::App* sub, const std::string& name, const std::string& key, const std::string& help) {
        sub->add_option_function<std::string>("--" + name, [&flags, key](const std::string& v) { flags[key] = parse_flag(key, v); }, help);
    };

    auto* field = app.add_subcommand("field", "signature, discriminant and prime splitting of Q[x]/(f)");
    json_flag(field, "poly", "poly", "coefficients, constant term first, e.g. \"[1,0,-2,-1,0,1]\"");
    json_flag(field, "primes", "primes", "rational primes to split (default: all up to 50)");
    json_flag(field, "ramified", "ramified", "[[p, f], ...] primes to test against the local quadratic condition");

    auto* algebra = app.add_subcommand("algebra", "ramification of a quaternion algebra (a, b / k)");
    json_flag(algebra, "field", "field", "defining polynomial of k (default Q)");
    json_flag(algebra, "a", "a", "first parameter");
    json_flag(algebra, "b", "b", "second parameter");
    algebra->add_flag_function("--clozel", [&](std::int64_t) { flags["clozel"] = true; }, "also test the ramified primes");

    app.add_subcommand("order", "order generated by two matrices and its trace certificates");
    auto* orbifold = app.add_subcommand("orbifold", "singular-locus strata and mod-p homology bounds");
    orbifold->add_option_function<std::int64_t>("--p", [&](std::int64_t p) { flags["p"] = p; }, "prime (default 2)");
    app.add_subcommand("graph", "short cycles and b1 = 2 subgraphs of a trivalent graph");

    auto* tower = app.add_subcommand("tower", "minimal covering-tower sequence or linear growth of a tower record");
    tower->add_option_function<std::string>("--n1", [&](const std::string& v) { flags["n1"] = v; }, "first level degree");
    tower->add_option_function<int>("--depth", [&](int d) { flags["depth"] = d; }, "number of levels (default 30)");
    tower->add_option("--csv", csv_path, "also write the level table as CSV");

    app.add_subcommand("quotient", "finite quotients: surjectivity, normalizers, pullbacks, reduction");

    auto* cheeger = app.add_subcommand("cheeger", "Cheeger constants and family reports");
    cheeger->add_option_function<int>("--cycle", [&](int n) { flags["cycle"] = n; }, "cycle graph C_n");
    cheeger->add_option_function<int>("--complete", [&](int n) { flags["complete"] = n; }, "complete graph K_n");
    json_flag(cheeger, "cycle-family", "cycle_family", "[lo, hi]: family report over C_lo..C_hi");
    cheeger->add_option("--csv", csv_path, "also write the family table as CSV");

    auto* count = app.add_subcommand("count", "subgroup census of SL(2, Z/m) or SL(2, F_q)");
    count->add_option_function<std::int64_t>("--mod", [&](std::int64_t m) { flags["mod"] = m; }, "modulus m");
    count->add_option_function<std::int64_t>("--field", [&](std::int64_t p) { flags["field"] = p; }, "prime p");
    count->add_option_function<int>("--degree", [&](int f) { flags["degree"] = f; }, "extension degree over F_p");
    count->add_flag_function("--dump", [&](std::int64_t) { flags["dump"] = true; }, "include every subgroup");

    auto* verify = app.add_subcommand("verify", "check the worked-example corpus");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    RunOptions opt;
    opt.threads = threads;
    try {
        opt.budget = Budget::from_environment();
        if (budget_cap > 0) opt.budget = opt.budget.with_cap(budget_cap);

        if (verify->parsed()) {
            const json corpus = input.empty() ? builtin_corpus() : read_json_file(input);
            const VerifyOutcome v = verify_examples(corpus, opt);
            if (v.empty) std::cerr << "warning: empty corpus, nothing was checked\n";
            write_text(output, v.report.dump(2) + "\n");
            return v.all_passed ? 0 : 1;
        }

        const CLI::App* sub = app.get_subcommands().front();
        json in = input.empty() ? json::object() : read_json_file(input);
        if (!in.is_object()) throw SchemaError("/: expected an object");
        for (const auto& [k, v] : flags.items()) in[k] = v;

        const auto report = run_command(sub->get_name(), in, opt);
        if (!csv_path.empty()) write_text(csv_path, csv_for(sub->get_name(), in, opt));
        write_text(output, report.dump(2) + "\n");
        return 0;
    } catch (const PreconditionError& e) {
        return report_error(e.kind(), e.what(), 2);
    } catch (const BudgetExceeded& e) {
        return report_error("BudgetExceeded", e.what(), 3);
    } catch (const json::exception& e) {
        return report_error("SchemaError", e.what(), 2);
    } catch (const std::exception& e) {
        return report_error("InternalError", e.what(), 1);
    }
}
