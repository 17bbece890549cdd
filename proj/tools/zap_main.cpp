#include "CLI11.hpp"

#include "zap/bench.hpp"
#include "zap/compiler.hpp"
#include "zap/sim.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;    // unreadable/invalid circuit, schedule, or config
constexpr int kExitRouting = 3;  // capacity shortfall or unroutable transition
constexpr int kExitVerify = 4;   // schedule semantics diverge from the circuit

struct CommonOpts {
    std::string config_path;
    std::string format = "auto";
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool no_reuse = false;
};

zap::CircuitFormat parse_format(const std::string& name) {
    if (name == "native") return zap::CircuitFormat::Native;
    if (name == "qasm") return zap::CircuitFormat::Qasm;
    return zap::CircuitFormat::Auto;
}

zap::KeyValueConfig load_kv(const CommonOpts& co) {
    if (co.config_path.empty()) return {};
    return zap::KeyValueConfig::from_file(co.config_path);
}

bool has_arch_dims(const zap::KeyValueConfig& kv) {
    return kv.has("arch.storage_rows") || kv.has("arch.storage_cols") ||
           kv.has("arch.ent_rows") || kv.has("arch.ent_sites_per_row");
}

zap::CompileOptions build_compile_options(const zap::KeyValueConfig& kv, const CommonOpts& co,
                                          const zap::Circuit& c) {
    zap::CompileOptions opts;
    opts.sa = zap::SaParams::from_config(kv);
    if (co.seed_set) opts.sa.seed = co.seed;
    opts.reuse = !co.no_reuse && kv.get_bool("compile.reuse", true);
    if (has_arch_dims(kv)) {
        opts.arch = zap::ArchitectureConfig::from_config(kv);
    } else {
        zap::StagePlan plan = zap::asap_schedule(c, zap::build_dag(c));
        zap::ArchitectureConfig sized =
            zap::ArchitectureConfig::sized_for(c.n_qubits, plan.max_stage_width());
        zap::KeyValueConfig merged = kv;
        merged.set("arch.storage_rows", std::to_string(sized.storage_rows));
        merged.set("arch.storage_cols", std::to_string(sized.storage_cols));
        merged.set("arch.ent_rows", std::to_string(sized.ent_rows));
        merged.set("arch.ent_sites_per_row", std::to_string(sized.ent_sites_per_row));
        opts.arch = zap::ArchitectureConfig::from_config(merged);
    }
    return opts;
}

void print_summary(std::ostream& os, const zap::CompileResult& res,
                   const zap::FidelityReport& fr) {
    os << "stages=" << res.plan.n_stages() << " batches=" << res.schedule.batch_count
       << " moves=" << res.schedule.move_count << " n_trans=" << res.schedule.n_trans
       << " n_res=" << res.schedule.n_res << " makespan_us=" << res.schedule.makespan_us
       << "\n";
    os << "sa: lambda=" << res.anneal.lambda_used << " t_initial=" << res.anneal.t_initial_used
       << " proposals=" << res.anneal.proposals << " accepts=" << res.anneal.accepts
       << " cost " << res.anneal.proposal_cost.total() << " -> " << res.anneal.best_cost.total()
       << "\n";
    os << "fidelity: gate=" << fr.gate_term << " crosstalk=" << fr.crosstalk_term
       << " transfer=" << fr.transfer_term << " decoherence=" << fr.decoherence_term
       << " total=" << fr.total << "\n";
}

int run_compile(const CommonOpts& co, const std::string& input, const std::string& out_path,
                bool print_stages) {
    zap::KeyValueConfig kv = load_kv(co);
    zap::Circuit c = zap::load_circuit(input, parse_format(co.format));
    zap::CompileOptions opts = build_compile_options(kv, co, c);
    zap::CompileResult res = zap::compile_circuit(c, opts);
    zap::PhysicalParams phys = zap::PhysicalParams::from_config(kv);
    zap::FidelityReport fr = zap::evaluate_fidelity(res.schedule, phys);

    if (print_stages) std::cout << res.plan.to_text(c);
    if (out_path.empty()) {
        res.schedule.write(std::cout);
        print_summary(std::cerr, res, fr);
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write schedule file: " + out_path);
        res.schedule.write(out);
        print_summary(std::cout, res, fr);
        std::cout << "schedule written to " << out_path << "\n";
    }
    return kExitOk;
}

int run_verify(const CommonOpts& co, const std::string& input, double tol) {
    zap::KeyValueConfig kv = load_kv(co);
    zap::Circuit c = zap::load_circuit(input, parse_format(co.format));
    if (c.n_qubits > zap::kSimQubitCap)
        throw std::runtime_error("verification is limited to " +
                                 std::to_string(zap::kSimQubitCap) + " qubits");
    zap::CompileOptions opts = build_compile_options(kv, co, c);
    zap::CompileResult res = zap::compile_circuit(c, opts);
    zap::StateVector ref = zap::simulate_circuit(c);
    zap::StateVector got = zap::simulate_schedule(res.schedule, c, res.arch);
    double overlap = zap::overlap_magnitude(ref, got);
    bool ok = overlap >= 1.0 - tol;
    std::cout << (ok ? "PASS" : "FAIL") << " overlap=" << std::setprecision(17) << overlap
              << " tol=" << tol << "\n";
    return ok ? kExitOk : kExitVerify;
}

int run_bench(const CommonOpts& co, const std::string& suite, const std::string& csv_path,
              bool no_verify) {
    zap::KeyValueConfig kv = load_kv(co);
    zap::BenchOptions opts;
    opts.sa = zap::SaParams::from_config(kv);
    if (co.seed_set) opts.sa.seed = co.seed;
    opts.phys = zap::PhysicalParams::from_config(kv);
    opts.reuse = !co.no_reuse && kv.get_bool("compile.reuse", true);
    opts.verify = !no_verify;

    std::vector<zap::BenchmarkSpec> specs;
    if (suite == "reference") {
        specs = zap::reference_suite();
    } else if (suite == "scaling") {
        specs.push_back({"random_regular", 100, 4, 3, 1, opts.sa.seed});
    } else {
        throw std::runtime_error("unknown suite '" + suite + "' (reference, scaling)");
    }
    zap::SuiteResult result = zap::run_suite(specs, opts);
    std::cout << result.to_table();
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw std::runtime_error("cannot write csv file: " + csv_path);
        out << result.to_csv();
        std::cout << "csv written to " << csv_path << "\n";
    }
    for (const zap::RunRecord& r : result.records)
        if (!r.ok()) return r.verify_ran && !r.verified ? kExitVerify : kExitRouting;
    return kExitOk;
}

int run_report(const CommonOpts& co, const std::string& sched_path, const std::string& sweep,
               const std::string& grid_text) {
    zap::KeyValueConfig kv = load_kv(co);
    zap::PhysicalParams phys = zap::PhysicalParams::from_config(kv);
    std::ifstream in(sched_path);
    if (!in) throw std::runtime_error("cannot open schedule file: " + sched_path);
    zap::Schedule sched = zap::Schedule::read(in);
    zap::FidelityInputs inputs = zap::FidelityInputs::from_schedule(sched);
    zap::FidelityReport fr = zap::evaluate_fidelity(inputs, phys);
    std::cout << sched.config_echo;
    std::cout << fr.to_text(phys);
    if (!sweep.empty()) {
        std::vector<double> grid;
        std::istringstream gs(grid_text);
        std::string tok;
        while (std::getline(gs, tok, ',')) grid.push_back(std::stod(tok));
        if (grid.empty()) throw std::runtime_error("--grid needs at least one value");
        std::cout << "sweep " << sweep << "\n";
        std::cout << std::setprecision(17);
        for (auto [v, total] : zap::sensitivity_sweep(inputs, phys, sweep, grid))
            std::cout << v << " " << total << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"zoned neutral-atom circuit compiler"};
    app.require_subcommand(1);

    CommonOpts co;
    app.add_option("--config", co.config_path, "key=value settings file")->capture_default_str();

    std::string input;
    std::string out_path;
    std::string csv_path;
    std::string suite = "reference";
    std::string sweep;
    std::string grid_text;
    std::string sched_path;
    bool print_stages = false;
    bool no_verify = false;
    double tol = 1e-9;

    auto add_common = [&](CLI::App* cmd, bool with_format) {
        if (with_format)
            cmd->add_option("--format", co.format, "circuit format: auto, native, qasm")
                ->check(CLI::IsMember({"auto", "native", "qasm"}));
        cmd->add_option("--seed", co.seed, "annealer seed")->each([&](const std::string&) {
            co.seed_set = true;
        });
        cmd->add_flag("--no-reuse", co.no_reuse, "return every qubit to storage between stages");
    };

    CLI::App* compile = app.add_subcommand("compile", "compile a circuit to a schedule");
    compile->add_option("input", input, "circuit file")->required();
    compile->add_option("-o,--out", out_path, "schedule output path (default: stdout)");
    compile->add_flag("--print-stages", print_stages, "print the stage assignment");
    add_common(compile, true);

    CLI::App* verify = app.add_subcommand("verify", "compile and check schedule semantics");
    verify->add_option("input", input, "circuit file")->required();
    verify->add_option("--tol", tol, "overlap tolerance")->capture_default_str();
    add_common(verify, true);

    CLI::App* bench = app.add_subcommand("bench", "run a benchmark suite");
    bench->add_option("--suite", suite, "reference or scaling")->capture_default_str();
    bench->add_option("--csv", csv_path, "write per-run records to a csv file");
    bench->add_flag("--no-verify", no_verify, "skip simulator checks");
    add_common(bench, false);

    CLI::App* report = app.add_subcommand("report", "fidelity report for a saved schedule");
    report->add_option("schedule", sched_path, "schedule file")->required();
    report->add_option("--sweep", sweep, "parameter to sweep");
    report->add_option("--grid", grid_text, "comma-separated sweep values");

    CLI11_PARSE(app, argc, argv);

    try {
        if (compile->parsed()) return run_compile(co, input, out_path, print_stages);
        if (verify->parsed()) return run_verify(co, input, tol);
        if (bench->parsed()) return run_bench(co, suite, csv_path, no_verify);
        if (report->parsed()) return run_report(co, sched_path, sweep, grid_text);
    } catch (const zap::CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRouting;
    } catch (const zap::RoutingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRouting;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
