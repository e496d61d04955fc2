// quditlab command-line front end: experiment simulation, certification
// pipelines, reference-data comparison, and mesh compilation.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "quditlab/bell.hpp"
#include "quditlab/circuit.hpp"
#include "quditlab/correlations.hpp"
#include "quditlab/json_io.hpp"
#include "quditlab/qkd.hpp"
#include "quditlab/reference_data.hpp"
#include "quditlab/steering.hpp"
#include "quditlab/tomography.hpp"
#include "quditlab/witness.hpp"

namespace {

using namespace quditlab;
using nlohmann::json;

int worker_count() {
    const char* env = std::getenv("QUDITLAB_THREADS");
    if (!env) return 1;
    const int n = std::atoi(env);
    return n > 0 ? n : 1;
}

template <typename Fn>
void parallel_for(int count, Fn&& fn) {
    const int workers = std::min(worker_count(), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::future<void>> futures;
    for (int w = 0; w < workers; ++w)
        futures.push_back(std::async(std::launch::async, [&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        }));
    for (auto& f : futures) f.get();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot open output file: " + path);
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// "werner:v=0.95,jitter:s=0.01"
circuit::NoiseModel parse_noise(const std::string& spec) {
    circuit::NoiseModel noise;
    if (spec.empty()) return noise;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto colon = part.find(':');
        const auto eq = part.find('=');
        if (colon == std::string::npos || eq == std::string::npos || eq < colon)
            throw InvalidInput("malformed noise spec: " + part);
        const std::string kind = part.substr(0, colon);
        const std::string key = part.substr(colon + 1, eq - colon - 1);
        const double value = std::stod(part.substr(eq + 1));
        if (kind == "werner" && key == "v")
            noise.werner_visibility = value;
        else if (kind == "jitter" && key == "s")
            noise.phase_jitter_sigma = value;
        else
            throw InvalidInput("unknown noise component: " + part);
    }
    noise.validate();
    return noise;
}

PureState build_state(int d, double gamma) {
    if (gamma == 1.0) return max_entangled_state(d);
    if (d != 3)
        throw InvalidInput("--gamma parametrizes the qutrit family; use --d 3");
    Vec c(3);
    c << 1.0, gamma, 1.0;
    return entangled_state(c);
}

struct BellArgs {
    int d = 3;
    std::string inequality = "satwap";
    double xi = 1.0;
    double gamma = 1.0;
    long long shots = 0;
    std::string noise;
    std::uint64_t seed = 1;
    std::string out_format = "json";
    std::string output;
};

corr::CorrelationTable bell_table_for(const BellArgs& args, Rng& rng) {
    auto [alice, bob] = bell::satwap_bases(args.d);
    const PureState psi = build_state(args.d, args.gamma);
    const circuit::NoiseModel noise = parse_noise(args.noise);
    const bool clean =
        noise.werner_visibility >= 1.0 && noise.phase_jitter_sigma <= 0.0;
    corr::CorrelationTable table = [&] {
        if (clean) return corr::born_probabilities(psi, alice, bob);
        const auto noisy = circuit::apply_noise(DensityMatrix::from_pure(psi),
                                                noise, alice, bob, rng);
        return corr::born_probabilities(noisy.rho, noisy.alice_bases,
                                        noisy.bob_bases);
    }();
    if (args.shots > 0)
        table = corr::sample_counts(table, args.shots, noise, args.seed);
    return table;
}

int run_bell(const BellArgs& args) {
    Rng rng(derive_seed(args.seed, 0xbe11ULL));
    const auto table = bell_table_for(args, rng);

    bell::BellResult result;
    if (args.inequality == "satwap") {
        result = bell::satwap_value(table);
    } else if (args.inequality == "cglmp") {
        result = bell::cglmp_value(table);
    } else if (args.inequality == "xi") {
        result = bell::qutrit_family_value(table, args.xi);
    } else {
        throw InvalidInput("unknown inequality: " + args.inequality);
    }

    if (args.out_format == "json") {
        json j;
        j["d"] = args.d;
        j["inequality"] = args.inequality;
        if (args.inequality == "xi") j["xi"] = args.xi;
        j["gamma"] = args.gamma;
        j["value"] = result.value;
        j["classical_bound"] = result.classical_bound;
        j["quantum_max"] = result.tsirelson;
        j["relative_violation"] = result.relative_violation;
        if (result.std) j["std"] = *result.std;
        j["shots"] = args.shots;
        j["seed"] = args.seed;
        write_output(args.output, j.dump(2));
    } else if (args.out_format == "csv") {
        char line[256];
        std::string csv = "d,inequality,value,classical_bound,quantum_max,std\r\n";
        std::snprintf(line, sizeof line, "%d,%s,%.17g,%.17g,%.17g,%.17g\r\n",
                      args.d, args.inequality.c_str(), result.value,
                      result.classical_bound, result.tsirelson,
                      result.std.value_or(0.0));
        csv += line;
        write_output(args.output, csv);
    } else {
        throw InvalidInput("unknown output format: " + args.out_format);
    }
    return 0;
}

struct WitnessArgs {
    std::string scenario = "II";
    int d = 4;
    long long shots = 0;
    std::string noise;
    std::uint64_t seed = 1;
    std::string output;
};

int run_witness(const WitnessArgs& args) {
    witness::GameStrategy strategy = [&] {
        if (args.scenario == "II" || args.d <= 0)
            return witness::GameStrategy{max_entangled_state(2), {}, {}, {}, {},
                                         {}, {}, 0, 0, 0};
        if (args.d <= 4) return witness::magic_square_strategy();
        if (args.d <= 8) return witness::magic_pentagram_strategy();
        if (args.d <= 16) return witness::two_copy_square_strategy();
        throw InvalidInput("scenario I strategies cover d <= 16");
    }();

    corr::CorrelationTable table = [&] {
        if (args.scenario == "II") {
            const auto basis = computational_basis(args.d);
            return corr::born_probabilities(max_entangled_state(args.d), {basis},
                                            {basis});
        }
        if (args.scenario != "I") throw InvalidInput("scenario must be I or II");
        const int host = strategy.state.dim() ==
                                 strategy.alice_bases.front().dim() *
                                     strategy.alice_bases.front().dim()
                             ? strategy.alice_bases.front().dim()
                             : 0;
        const PureState state = witness::embed_state(args.d, host);
        return witness::strategy_table(strategy, state);
    }();

    const circuit::NoiseModel noise = parse_noise(args.noise);
    if (noise.werner_visibility < 1.0) {
        // Werner mixing acts directly on the probability table
        corr::CorrelationTable mixed = table;
        for (int x = 0; x < table.settings_a(); ++x)
            for (int y = 0; y < table.settings_b(); ++y) {
                const double flat = 1.0 / (table.outcomes() * table.outcomes());
                mixed.joint(x, y) = noise.werner_visibility * table.joint(x, y) +
                                    (1.0 - noise.werner_visibility) *
                                        Eigen::MatrixXd::Constant(
                                            table.outcomes(), table.outcomes(),
                                            flat);
            }
        table = mixed;
    }
    if (args.shots > 0) table = corr::sample_counts(table, args.shots, noise, args.seed);

    const witness::WitnessResult result =
        args.scenario == "II"
            ? witness::witness_bound(table, 0, 0, 0)
            : witness::witness_bound(table, strategy.witness_y,
                                     strategy.witness_y_prime,
                                     strategy.witness_x);
    json j;
    j["scenario"] = args.scenario;
    j["d"] = args.d;
    j["f"] = result.f_value;
    j["D"] = result.dimension_bound;
    j["certified_dim"] = result.certified_dim;
    j["settings"] = {{"x", result.x}, {"y", result.y}, {"y_prime", result.y_prime}};
    j["shots"] = args.shots;
    j["seed"] = args.seed;
    write_output(args.output, j.dump(2));
    return 0;
}

struct SteeringArgs {
    int d = 2;
    long long shots = 0;
    std::string noise;
    std::uint64_t seed = 1;
    std::string output;
};

int run_steering(const SteeringArgs& args) {
    const circuit::NoiseModel noise = parse_noise(args.noise);
    const DensityMatrix rho =
        werner_mix(DensityMatrix::from_pure(max_entangled_state(args.d)),
                   noise.werner_visibility);
    json j;
    j["d"] = args.d;
    if (args.shots == 0) {
        const auto assemblage =
            steering::steered_assemblage(rho, steering::steering_alice_bases(args.d));
        const auto result = steering::steering_value(assemblage);
        j["beta"] = result.beta;
        j["lhs_bound"] = result.lhs_bound;
        j["quantum_max"] = result.quantum_max;
    } else {
        const auto table = corr::born_probabilities(
            rho, steering::steering_alice_bases(args.d),
            steering::steering_bases(args.d));
        const auto sampled = corr::sample_counts(table, args.shots, noise, args.seed);
        const auto result = steering::steering_value(sampled);
        j["beta"] = result.beta;
        j["lhs_bound"] = result.lhs_bound;
        j["quantum_max"] = result.quantum_max;
        if (result.std) j["std"] = *result.std;
    }
    j["shots"] = args.shots;
    j["seed"] = args.seed;
    write_output(args.output, j.dump(2));
    return 0;
}

struct RandomnessArgs {
    int d = 2;
    double beta = -1.0;  // negative: simulate from the ideal state
    long long shots = 0;
    std::string noise;
    std::uint64_t seed = 1;
    bool allow_large_d = false;
    std::string output;
};

int run_randomness(const RandomnessArgs& args) {
    double beta = args.beta;
    if (beta < 0.0) {
        const circuit::NoiseModel noise = parse_noise(args.noise);
        const DensityMatrix rho =
            werner_mix(DensityMatrix::from_pure(max_entangled_state(args.d)),
                       noise.werner_visibility);
        const auto assemblage = steering::steered_assemblage(
            rho, steering::steering_alice_bases(args.d));
        beta = steering::steering_value(assemblage).beta;
    }
    steering::RandomnessOptions options;
    options.allow_large_d = args.allow_large_d;
    const auto result = steering::local_randomness(args.d, beta, options);
    json j;
    j["d"] = args.d;
    j["beta"] = beta;
    j["guessing_probability"] = result.guessing_probability;
    j["min_entropy_bits"] = result.min_entropy_bits;
    j["worst_setting"] = result.worst_setting;
    j["certificate"] = {{"primal_residual", result.certificate.primal_residual},
                        {"dual_residual", result.certificate.dual_residual},
                        {"relative_gap", result.certificate.relative_gap}};
    write_output(args.output, j.dump(2));
    return 0;
}

struct TomoArgs {
    int d = 2;
    int ops = 0;  // 0: full family
    long long shots = 0;
    std::string method = "cs";
    std::uint64_t seed = 1;
    double gamma = 1.0;
    double epsilon_scale = 1.0;
    std::string noise;
    std::string output;
};

int run_tomo(const TomoArgs& args) {
    const int d_total = args.d * args.d;
    const PureState target = build_state(args.d, args.gamma);
    const circuit::NoiseModel noise = parse_noise(args.noise);
    const DensityMatrix rho =
        werner_mix(DensityMatrix::from_pure(target), noise.werner_visibility);

    const int family = d_total * d_total;
    const int m = args.ops > 0 ? args.ops : family;
    tomo::MeasureOptions measure;
    measure.shots = args.shots;
    measure.seed = args.seed;
    const auto job = tomo::make_job(
        rho,
        args.ops > 0 ? tomo::sample_operators(d_total, m, args.seed)
                     : tomo::operator_basis_labels(d_total),
        measure, tomo::epsilon_heuristic(m, args.shots, args.epsilon_scale));

    const DensityMatrix estimate = args.method == "linear"
                                       ? tomo::linear_inversion(job)
                                       : tomo::cs_reconstruct(job);
    json j;
    j["d"] = args.d;
    j["method"] = args.method;
    j["operators"] = m;
    j["shots"] = args.shots;
    j["seed"] = args.seed;
    j["epsilon"] = job.epsilon;
    j["fidelity_to_target"] = fidelity(estimate, target);
    j["rho"] = json::parse(io::to_json(estimate));
    write_output(args.output, j.dump(2));
    return 0;
}

struct QkdArgs {
    int d = 2;
    double fidelity = 1.0;
    std::string from_table;
    std::string attack = "individual";
    std::string output;
};

int run_qkd(const QkdArgs& args) {
    double f = args.fidelity;
    int d = args.d;
    if (!args.from_table.empty()) {
        const auto table = corr::table_from_json(read_file(args.from_table));
        d = table.outcomes();
        // matched-basis correlation averaged over the two key bases
        double sum = 0.0;
        for (int x = 0; x < std::min(2, table.settings_a()); ++x)
            for (int a = 0; a < d; ++a) sum += table.prob(a, a, x, x);
        f = sum / std::min(2, table.settings_a());
    }
    const auto attack = qkd::attack_from_string(args.attack);
    const auto result = qkd::key_rate(f, d, attack);
    json j;
    j["d"] = d;
    j["fidelity"] = result.fidelity;
    j["qber_percent"] = 100.0 * result.qber;
    j["i_ab_bits"] = result.i_ab;
    j["i_ae_bits"] = result.i_ae;
    j["key_rate_per_coincidence"] = result.key_rate;
    j["attack"] = args.attack;
    j["qber_threshold_percent"] = qkd::qber_threshold(d, attack);
    write_output(args.output, j.dump(2));
    return 0;
}

struct CompileArgs {
    std::string state_path;
    int k0 = -1;
    std::string placement = "lower";
    std::string output;
};

int run_compile(const CompileArgs& args) {
    const PureState psi = io::pure_state_from_json(read_file(args.state_path));
    circuit::CompileOptions options;
    options.k0 = args.k0;
    if (args.placement == "upper")
        options.placement = circuit::ShifterPlacement::Upper;
    else if (args.placement != "lower")
        throw InvalidInput("placement must be lower or upper");
    const auto settings = circuit::triangular_phases(psi, options);

    // 17 significant digits, stable field order
    std::string out = "{\n";
    char buf[64];
    out += "  \"dim\": " + std::to_string(settings.dim) + ",\n";
    out += "  \"k0\": " + std::to_string(settings.k0) + ",\n";
    out += "  \"placement\": \"" + args.placement + "\",\n";
    out += "  \"mzi_phases\": [";
    bool first = true;
    for (int n = 1; n <= settings.layers(); ++n)
        for (size_t i = 1; i <= settings.theta[n - 1].size(); ++i) {
            if (!first) out += ", ";
            first = false;
            std::snprintf(buf, sizeof buf, "[%d, %zu, %.17g]", n, i,
                          settings.mzi_phase(n, static_cast<int>(i)));
            out += buf;
        }
    out += "],\n  \"input_phases\": [";
    for (size_t l = 0; l < settings.input_phases.size(); ++l) {
        if (l > 0) out += ", ";
        std::snprintf(buf, sizeof buf, "%.17g", settings.input_phases[l]);
        out += buf;
    }
    out += "],\n  \"degenerate\": ";
    out += settings.degenerate ? "true" : "false";
    out += "\n}\n";
    write_output(args.output, out);
    return 0;
}

struct ReproduceArgs {
    std::string table = "table1";
    bool check = false;
    std::string output;
};

int run_reproduce(const ReproduceArgs& args) {
    std::string csv;
    char line[256];
    std::vector<refdata::ResultRow> rows;
    std::map<std::string, double> gates;
    std::string dataset;

    if (args.table == "table1") {
        csv = "d,cglmp_classical,cglmp_ideal,satwap_classical,satwap_ideal\r\n";
        const std::vector<int> dims = {2, 3, 4, 5, 6, 7, 8};
        std::vector<std::string> lines(dims.size());
        std::vector<refdata::ResultRow> result_rows(dims.size());
        parallel_for(static_cast<int>(dims.size()), [&](int i) {
            const int d = dims[i];
            auto [alice, bob] = bell::satwap_bases(d);
            const auto table =
                corr::born_probabilities(max_entangled_state(d), alice, bob);
            const auto satwap = bell::satwap_value(table);
            const auto cglmp = bell::cglmp_value(table);
            char buf[256];
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g\r\n", d,
                          cglmp.classical_bound, cglmp.value,
                          satwap.classical_bound, satwap.value);
            lines[i] = buf;
            result_rows[i] =
                refdata::ResultRow{double(d),
                                   {{"cglmp_classical", cglmp.classical_bound},
                                    {"cglmp_ideal", cglmp.value},
                                    {"satwap_classical", satwap.classical_bound},
                                    {"satwap_ideal", satwap.value}}};
        });
        for (const auto& l : lines) csv += l;
        rows = result_rows;
        gates = {{"cglmp_ideal", 1e-3}, {"satwap_ideal", 1e-8},
                 {"satwap_classical", 5e-4}};
        dataset = "bell-table";
    } else if (args.table == "steering") {
        csv = "d,beta_ideal,beta_lhs\r\n";
        for (int d : {2, 4, 6, 8, 10, 12, 14, 15}) {
            const auto assemblage = steering::steered_assemblage(
                DensityMatrix::from_pure(max_entangled_state(d)),
                steering::steering_alice_bases(d));
            const auto result = steering::steering_value(assemblage);
            std::snprintf(line, sizeof line, "%d,%.17g,%.17g\r\n", d, result.beta,
                          result.lhs_bound);
            csv += line;
            rows.push_back({double(d), {{"beta_lhs", result.lhs_bound}}});
        }
        gates = {{"beta_lhs", 5e-4}};
        dataset = "steering-table";
    } else if (args.table == "witness") {
        csv = "d,scenario,f,D,certified_dim\r\n";
        for (int d : {2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15}) {
            const auto result = witness::scenario_two(d);
            std::snprintf(line, sizeof line, "%d,II,%.17g,%.17g,%d\r\n", d,
                          result.f_value, result.dimension_bound,
                          result.certified_dim);
            csv += line;
        }
    } else if (args.table == "qkd") {
        csv = "d,rate_ideal,qber_individual_percent,qber_coherent_percent\r\n";
        for (int d : {2, 4, 8, 14}) {
            const auto result = qkd::key_rate(1.0, d, qkd::Attack::Individual);
            std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g\r\n", d,
                          result.key_rate,
                          qkd::qber_threshold(d, qkd::Attack::Individual),
                          qkd::qber_threshold(d, qkd::Attack::Coherent));
            csv += line;
            rows.push_back(
                {double(d),
                 {{"rate_ideal", result.key_rate},
                  {"qber_individual_percent",
                   qkd::qber_threshold(d, qkd::Attack::Individual)},
                  {"qber_coherent_percent",
                   qkd::qber_threshold(d, qkd::Attack::Coherent)}}});
        }
        gates = {{"rate_ideal", 1e-3},
                 {"qber_individual_percent", 0.5},
                 {"qber_coherent_percent", 0.5}};
        dataset = "qkd-table";
    } else {
        throw InvalidInput("unknown reproduction target: " + args.table);
    }

    if (args.check && !dataset.empty()) {
        const auto report = refdata::compare_with_reference(dataset, rows, gates);
        csv += "column,key,result,reference,delta,gated,pass\r\n";
        for (const auto& e : report.entries) {
            std::snprintf(line, sizeof line, "%s,%g,%.10g,%.10g,%.3g,%d,%d\r\n",
                          e.column.c_str(), e.key, e.result, e.reference, e.delta,
                          e.gated ? 1 : 0, e.pass ? 1 : 0);
            csv += line;
        }
        if (!report.all_gated_pass) {
            write_output(args.output, csv);
            std::cerr << "reference comparison failed\n";
            return 2;
        }
    }
    write_output(args.output, csv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale simulator for multidimensional photonic entanglement"};
    app.require_subcommand(1);

    BellArgs bell_args;
    auto* bell_cmd = app.add_subcommand("bell", "Bell-inequality tests");
    bell_cmd->add_option("--d", bell_args.d, "local dimension")->check(CLI::Range(2, 16));
    bell_cmd->add_option("--inequality", bell_args.inequality,
                         "satwap, cglmp, or xi");
    bell_cmd->add_option("--xi", bell_args.xi, "family parameter (inequality=xi)");
    bell_cmd->add_option("--gamma", bell_args.gamma, "qutrit state parameter");
    bell_cmd->add_option("--shots", bell_args.shots, "shots per setting (0 = exact)");
    bell_cmd->add_option("--noise", bell_args.noise,
                         "noise spec, e.g. werner:v=0.95,jitter:s=0.01");
    bell_cmd->add_option("--seed", bell_args.seed, "RNG seed");
    bell_cmd->add_option("--out", bell_args.out_format, "json or csv");
    bell_cmd->add_option("--output", bell_args.output, "output path (default stdout)");

    WitnessArgs witness_args;
    auto* witness_cmd = app.add_subcommand("witness", "dimension witness");
    witness_cmd->add_option("--scenario", witness_args.scenario, "I or II");
    witness_cmd->add_option("--d", witness_args.d, "local dimension")
        ->check(CLI::Range(2, 64));
    witness_cmd->add_option("--shots", witness_args.shots, "shots per setting");
    witness_cmd->add_option("--noise", witness_args.noise, "noise spec");
    witness_cmd->add_option("--seed", witness_args.seed, "RNG seed");
    witness_cmd->add_option("--output", witness_args.output, "output path");

    SteeringArgs steering_args;
    auto* steering_cmd = app.add_subcommand("steering", "steering functional");
    steering_cmd->add_option("--d", steering_args.d, "local dimension")
        ->check(CLI::Range(2, 32));
    steering_cmd->add_option("--shots", steering_args.shots, "shots per setting");
    steering_cmd->add_option("--noise", steering_args.noise, "noise spec");
    steering_cmd->add_option("--seed", steering_args.seed, "RNG seed");
    steering_cmd->add_option("--output", steering_args.output, "output path");

    RandomnessArgs randomness_args;
    auto* randomness_cmd =
        app.add_subcommand("randomness", "one-sided DI randomness certification");
    randomness_cmd->add_option("--d", randomness_args.d, "local dimension")
        ->check(CLI::Range(2, 16));
    randomness_cmd->add_option("--beta", randomness_args.beta,
                               "observed steering value (otherwise simulated)");
    randomness_cmd->add_option("--noise", randomness_args.noise, "noise spec");
    randomness_cmd->add_option("--seed", randomness_args.seed, "RNG seed");
    randomness_cmd->add_flag("--allow-large-d", randomness_args.allow_large_d,
                             "lift the d <= 4 SDP size guard");
    randomness_cmd->add_option("--output", randomness_args.output, "output path");

    TomoArgs tomo_args;
    auto* tomo_cmd = app.add_subcommand("tomo", "state tomography");
    tomo_cmd->add_option("--d", tomo_args.d, "local dimension")->check(CLI::Range(2, 12));
    tomo_cmd->add_option("--ops", tomo_args.ops, "sampled operator count (0 = full)");
    tomo_cmd->add_option("--shots", tomo_args.shots, "shots per operator (0 = exact)");
    tomo_cmd->add_option("--method", tomo_args.method, "cs or linear");
    tomo_cmd->add_option("--seed", tomo_args.seed, "RNG seed");
    tomo_cmd->add_option("--gamma", tomo_args.gamma, "qutrit target parameter");
    tomo_cmd->add_option("--epsilon-scale", tomo_args.epsilon_scale,
                         "scale of the noise-ball heuristic");
    tomo_cmd->add_option("--noise", tomo_args.noise, "noise spec");
    tomo_cmd->add_option("--output", tomo_args.output, "output path");

    QkdArgs qkd_args;
    auto* qkd_cmd = app.add_subcommand("qkd", "device-dependent QKD analysis");
    qkd_cmd->add_option("--d", qkd_args.d, "dimension")->check(CLI::Range(2, 64));
    qkd_cmd->add_option("--fidelity", qkd_args.fidelity, "matched-basis fidelity");
    qkd_cmd->add_option("--from-table", qkd_args.from_table,
                        "correlation table JSON to extract the fidelity from");
    qkd_cmd->add_option("--attack", qkd_args.attack, "individual or coherent");
    qkd_cmd->add_option("--output", qkd_args.output, "output path");

    auto* circuit_cmd = app.add_subcommand("circuit", "mesh utilities");
    circuit_cmd->require_subcommand(1);
    CompileArgs compile_args;
    auto* compile_cmd =
        circuit_cmd->add_subcommand("compile", "compile a state to phase settings");
    compile_cmd->add_option("--state", compile_args.state_path, "state JSON path")
        ->required();
    compile_cmd->add_option("--k0", compile_args.k0, "detection mode (default 2^(N-1))");
    compile_cmd->add_option("--placement", compile_args.placement,
                            "phase-shifter arm: lower or upper");
    compile_cmd->add_option("--output", compile_args.output, "output path");

    ReproduceArgs reproduce_args;
    auto* reproduce_cmd =
        app.add_subcommand("reproduce", "regenerate published ideal values");
    reproduce_cmd->add_option("table", reproduce_args.table,
                              "table1, steering, witness, or qkd");
    reproduce_cmd->add_flag("--check", reproduce_args.check,
                            "compare against the shipped reference data");
    reproduce_cmd->add_option("--output", reproduce_args.output, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // usage error
    }

    try {
        if (bell_cmd->parsed()) return run_bell(bell_args);
        if (witness_cmd->parsed()) return run_witness(witness_args);
        if (steering_cmd->parsed()) return run_steering(steering_args);
        if (randomness_cmd->parsed()) return run_randomness(randomness_args);
        if (tomo_cmd->parsed()) return run_tomo(tomo_args);
        if (qkd_cmd->parsed()) return run_qkd(qkd_args);
        if (circuit_cmd->parsed() && compile_cmd->parsed())
            return run_compile(compile_args);
        if (reproduce_cmd->parsed()) return run_reproduce(reproduce_args);
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const Infeasible& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
