// Command-line front end: every subcommand reads file inputs, prints one JSON
// report (or a human-readable table) on stdout, and exits 0 on success, 1 on
// domain errors, 2 on usage errors.

#include "incgen/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using incgen::Json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw incgen::Error("FileNotFound", "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// decimal rendering of an exact rational, round half up
std::string rational_decimal(const incgen::Rational& r, int precision) {
    incgen::Int num = boost::multiprecision::numerator(r);
    incgen::Int den = boost::multiprecision::denominator(r);
    bool negative = num < 0;
    if (negative)
        num = -num;
    incgen::Int scale = incgen::int_pow(incgen::Int(10), static_cast<std::uint64_t>(precision));
    incgen::Int scaled = (num * scale * 2 + den) / (den * 2);
    incgen::Int whole = scaled / scale;
    incgen::Int frac_part = scaled % scale;
    std::string frac = frac_part.str();
    frac.insert(frac.begin(), static_cast<std::size_t>(precision) - frac.size(), '0');
    std::string out = (negative ? "-" : "") + whole.str();
    if (precision > 0)
        out += "." + frac;
    return out;
}

bool is_rational_object(const Json& v) {
    return v.is_object() && v.size() == 2 && v.contains("num") && v.contains("den");
}

void print_table(const Json& report, int precision) {
    for (const auto& [key, value] : report.items()) {
        if (is_rational_object(value)) {
            incgen::Rational r(incgen::Int(value["num"].get<std::string>()),
                               incgen::Int(value["den"].get<std::string>()));
            std::cout << key << ": " << rational_decimal(r, precision) << "  (" +
                             value["num"].get<std::string>() + "/" +
                             value["den"].get<std::string>() + ")\n";
        } else if (value.is_null()) {
            std::cout << key << ": -\n";
        } else if (value.is_string()) {
            std::cout << key << ": " << value.get<std::string>() << "\n";
        } else {
            std::cout << key << ": " << value.dump() << "\n";
        }
    }
}

void emit(const Json& report, const std::string& output, int precision) {
    if (output == "table")
        print_table(report, precision);
    else
        std::cout << report.dump(2) << "\n";
}

struct CommonArgs {
    std::string poset_path;
    std::string ring_spec;
    int m = 1;
    std::string output = "json";
    int precision = 6;
};

incgen::Poset load_poset(const std::string& path) { return incgen::parse_poset(read_file(path)); }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"matrix incidence rings over finite posets: generation tests, exact"
                 " counting, and Monte Carlo verification over the reals and complexes"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string tuple_path;
    std::string field_name = "real";
    std::uint64_t trials = 10000, seed = 42;
    double tol = 1e-9;
    unsigned threads = 1;
    std::uint64_t guard = 1ull << 18;
    std::string margins_csv;

    auto add_output = [&](CLI::App* cmd) {
        cmd->add_option("--output", args.output, "json (stable) or table (human readable)")
            ->check(CLI::IsMember({"json", "table"}));
        cmd->add_option("--precision", args.precision,
                        "decimal digits for probabilities in table output")
            ->check(CLI::Range(1, 80));
    };
    auto add_poset = [&](CLI::App* cmd) {
        cmd->add_option("--poset", args.poset_path, "poset file")->required();
    };
    auto add_ring = [&](CLI::App* cmd) {
        cmd->add_option("--ring", args.ring_spec,
                        "ring spec: GF(q), M(k,GF(q)), products joined by x, or Z/p^e")
            ->required();
    };
    auto add_m = [&](CLI::App* cmd) {
        cmd->add_option("-m,--tuple-length", args.m, "tuple length m")->required()->check(
            CLI::PositiveNumber);
    };

    CLI::App* poset_cmd = app.add_subcommand("poset", "validate a poset file and report rho, c, covers");
    add_poset(poset_cmd);
    add_output(poset_cmd);

    CLI::App* count_cmd = app.add_subcommand("count", "exact number of generating m-tuples");
    add_poset(count_cmd);
    add_ring(count_cmd);
    add_m(count_cmd);
    add_output(count_cmd);

    CLI::App* prob_cmd = app.add_subcommand("prob", "generation probability in closed product form");
    add_poset(prob_cmd);
    add_ring(prob_cmd);
    add_m(prob_cmd);
    add_output(prob_cmd);

    CLI::App* mgen_cmd = app.add_subcommand("mgen", "least m with a generating m-tuple");
    add_poset(mgen_cmd);
    add_ring(mgen_cmd);
    add_output(mgen_cmd);

    CLI::App* check_cmd = app.add_subcommand("check", "test one matrix tuple from a JSON file");
    check_cmd->add_option("--tuple", tuple_path, "tuple JSON file")->required();
    add_output(check_cmd);

    CLI::App* enum_cmd =
        app.add_subcommand("enumerate", "count by brute-force closure and compare with the formula");
    add_poset(enum_cmd);
    add_ring(enum_cmd);
    add_m(enum_cmd);
    enum_cmd->add_option("--guard", guard, "refuse when |A|^m exceeds this bound");
    enum_cmd->add_option("--threads", threads, "worker count")->check(CLI::PositiveNumber);
    add_output(enum_cmd);

    CLI::App* radical_cmd = app.add_subcommand("radical", "radical size and additive basis");
    add_poset(radical_cmd);
    add_ring(radical_cmd);
    add_output(radical_cmd);

    CLI::App* mc_cmd = app.add_subcommand("mc", "Monte Carlo generation fraction on the unit sphere");
    add_poset(mc_cmd);
    mc_cmd->add_option("--field", field_name, "real or complex")
        ->check(CLI::IsMember({"real", "complex"}));
    add_m(mc_cmd);
    mc_cmd->add_option("--trials", trials, "number of sphere samples")->check(CLI::PositiveNumber);
    mc_cmd->add_option("--seed", seed, "base seed; trial i uses a seed derived from (seed, i)");
    mc_cmd->add_option("--tol", tol, "degeneracy tolerance for the criterion");
    mc_cmd->add_option("--threads", threads, "worker count")->check(CLI::PositiveNumber);
    mc_cmd->add_option("--margins-csv", margins_csv, "write per-trial margins as CSV");
    add_output(mc_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (poset_cmd->parsed()) {
            emit(incgen::cover_data_to_json(load_poset(args.poset_path)), args.output, args.precision);
        } else if (count_cmd->parsed() || prob_cmd->parsed()) {
            incgen::Poset poset = load_poset(args.poset_path);
            incgen::BaseRing ring = incgen::BaseRing::parse(args.ring_spec);
            incgen::CountReport rep = incgen::count_gen(poset, ring, args.m);
            if (prob_cmd->parsed())
                rep.probability = incgen::probability_closed_form(poset, ring, args.m);
            emit(incgen::count_report_to_json(rep), args.output, args.precision);
        } else if (mgen_cmd->parsed()) {
            incgen::Poset poset = load_poset(args.poset_path);
            incgen::BaseRing ring = incgen::BaseRing::parse(args.ring_spec);
            Json j = Json::object();
            j["mgen"] = incgen::mgen(poset, ring);
            emit(j, args.output, args.precision);
        } else if (check_cmd->parsed()) {
            incgen::TupleFile t = incgen::tuple_file_from_json(Json::parse(read_file(tuple_path)));
            emit(incgen::gen_report_to_json(incgen::check_generates(t.matrices)), args.output,
                 args.precision);
        } else if (enum_cmd->parsed()) {
            incgen::Poset poset = load_poset(args.poset_path);
            incgen::BaseRing ring = incgen::BaseRing::parse(args.ring_spec);
            incgen::EnumOptions opts;
            opts.guard = incgen::Int(guard);
            opts.threads = threads;
            incgen::Int enumerated = incgen::count_by_enumeration(poset, ring, args.m, opts);
            incgen::Int formula = incgen::count_gen_formula(poset, ring, args.m);
            Json j = Json::object();
            j["m"] = args.m;
            j["enumeration"] = enumerated.str();
            j["formula"] = formula.str();
            j["equal"] = enumerated == formula;
            emit(j, args.output, args.precision);
            if (enumerated != formula) {
                std::cerr << "error[CountMismatch]: enumeration disagrees with the formula\n";
                return 1;
            }
        } else if (radical_cmd->parsed()) {
            incgen::Poset poset = load_poset(args.poset_path);
            incgen::BaseRing ring = incgen::BaseRing::parse(args.ring_spec);
            emit(incgen::radical_to_json(incgen::radical_data(poset, ring)), args.output,
                 args.precision);
        } else if (mc_cmd->parsed()) {
            incgen::Poset poset = load_poset(args.poset_path);
            incgen::ScalarField field =
                field_name == "complex" ? incgen::ScalarField::complex : incgen::ScalarField::real;
            incgen::McOptions opts;
            opts.tol = tol;
            opts.threads = threads;
            opts.collect_margins = !margins_csv.empty();
            incgen::McReport rep = incgen::monte_carlo(poset, field, args.m, trials, seed, opts);
            if (!margins_csv.empty()) {
                std::ofstream csv(margins_csv, std::ios::binary);
                if (!csv)
                    throw incgen::Error("FileNotFound", "cannot write " + margins_csv);
                csv << "trial,margin\n";
                for (std::size_t i = 0; i < rep.margins.size(); ++i)
                    csv << i << "," << rep.margins[i] << "\n";
            }
            emit(incgen::mc_report_to_json(rep), args.output, args.precision);
        }
    } catch (const incgen::Error& e) {
        std::cerr << "error[" << e.code() << "]: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
