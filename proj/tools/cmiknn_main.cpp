// cmiknn: nonparametric conditional-independence testing on CSV data plus
// a benchmark harness over the built-in synthetic models.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cmiknn/ci_test.hpp"
#include "cmiknn/estimator.hpp"
#include "cmiknn/metrics.hpp"
#include "cmiknn/rng.hpp"
#include "cmiknn/synth.hpp"
#include "cmiknn/types.hpp"
#include "csv.hpp"

using nlohmann::json;
using namespace cmiknn;
using namespace cmiknn::cli;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInsufficientData = 3;

int default_workers(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("CMIKNN_WORKERS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) return parsed;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// 0 stands for "auto" (rule of thumb at run time).
int parse_k_cmi(const std::string& text) {
    if (text == "auto") return 0;
    std::size_t used = 0;
    const int value = std::stoi(text, &used);
    if (used != text.size() || value < 1) {
        throw std::invalid_argument("--k-cmi expects a positive integer or 'auto'");
    }
    return value;
}

std::string alpha_key(double alpha) {
    char buffer[16];
    std::snprintf(buffer, sizeof(buffer), "%.2f", alpha);
    return buffer;
}

double quantile(std::vector<double> values, double q) {
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= values.size()) return values.back();
    const double frac = pos - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[lo + 1] * frac;
}

struct TestOptions {
    std::string data_path;
    std::string x_cols, y_cols, z_cols;
    std::string k_cmi_text = "auto";
    int k_perm = 5;
    int num_surrogates = 1000;
    std::uint64_t seed = 0;
    int workers = 0;
    double noise_amp = 1e-6;
    std::string na_string = "NA";
    std::string out_path;
};

int cmd_test(const TestOptions& opt) {
    const auto started = std::chrono::steady_clock::now();

    CsvTable table;
    try {
        table = read_csv(opt.data_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    ExtractedData data;
    try {
        data = extract_columns(table, split_list(opt.x_cols), split_list(opt.y_cols),
                               split_list(opt.z_cols), opt.na_string);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    int k_cmi = parse_k_cmi(opt.k_cmi_text);
    if (k_cmi == 0 && data.n_used >= 2) k_cmi = rule_of_thumb_k(data.n_used);
    if (data.n_used < 2 || data.n_used < k_cmi + 1) {
        std::cerr << "error: " << data.n_used << " usable rows after dropping " << data.n_dropped
                  << " with missing values; need at least k_cmi+1 = " << (k_cmi + 1) << "\n";
        return kExitInsufficientData;
    }

    CITestConfig cfg;
    cfg.k_cmi = k_cmi;
    cfg.k_perm = opt.k_perm;
    cfg.num_surrogates = opt.num_surrogates;
    cfg.seed = opt.seed;
    cfg.noise_amp = opt.noise_amp;
    cfg.workers = default_workers(opt.workers);

    CITestResult result;
    try {
        result = ci_test(data.x, data.y, data.z, cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    json out{
        {"statistic_nats", result.statistic},
        {"p_value", result.p_value},
        {"n_used", data.n_used},
        {"n_dropped", data.n_dropped},
        {"k_cmi", result.config.k_cmi},
        {"k_perm", cfg.k_perm},
        {"B", cfg.num_surrogates},
        {"seed", cfg.seed},
        {"null_quantiles",
         {{"q05", quantile(result.null_values, 0.05)},
          {"q50", quantile(result.null_values, 0.50)},
          {"q95", quantile(result.null_values, 0.95)}}},
        {"manifest",
         {{"command", "test"},
          {"data", opt.data_path},
          {"x", opt.x_cols},
          {"y", opt.y_cols},
          {"z", opt.z_cols},
          {"na", opt.na_string},
          {"noise_amp", cfg.noise_amp},
          {"workers", cfg.workers},
          {"out", opt.out_path},
          {"elapsed_seconds", elapsed}}},
    };

    if (opt.out_path.empty()) {
        std::cout << out.dump(2) << "\n";
    } else {
        std::ofstream stream(opt.out_path);
        if (!stream) {
            std::cerr << "error: cannot write " << opt.out_path << "\n";
            return kExitUsage;
        }
        stream << out.dump(2) << "\n";
    }
    return kExitOk;
}

struct GenOptions {
    std::string model = "postnonlinear";
    int n = 1000;
    int d_z = 1;
    double c = 0.5;
    double lambda = 30.0;
    bool dependent = false;
    std::uint64_t seed = 0;
    std::string out_path;
};

int cmd_gen(const GenOptions& opt) {
    ModelSpec spec;
    spec.family = parse_model_family(opt.model);
    spec.n = opt.n;
    spec.d_z = opt.d_z;
    spec.c = opt.c;
    spec.lambda = opt.lambda;
    spec.dependent = opt.dependent;
    spec.seed = opt.seed;
    const SyntheticData data = generate(spec);

    std::vector<std::string> header;
    for (int j = 0; j < data.x.cols(); ++j) header.push_back("x" + std::to_string(j));
    for (int j = 0; j < data.y.cols(); ++j) header.push_back("y" + std::to_string(j));
    for (int j = 0; j < data.z.cols(); ++j) header.push_back("z" + std::to_string(j));

    std::vector<std::vector<std::string>> rows(static_cast<std::size_t>(spec.n));
    for (int i = 0; i < spec.n; ++i) {
        auto& row = rows[static_cast<std::size_t>(i)];
        for (int j = 0; j < data.x.cols(); ++j) row.push_back(format_double(data.x.at(i, j)));
        for (int j = 0; j < data.y.cols(); ++j) row.push_back(format_double(data.y.at(i, j)));
        for (int j = 0; j < data.z.cols(); ++j) row.push_back(format_double(data.z.at(i, j)));
    }
    write_csv(opt.out_path, header, rows);
    std::cout << "wrote " << spec.n << " rows to " << opt.out_path << "\n";
    return kExitOk;
}

struct BenchOptions {
    std::string model = "postnonlinear";
    int n = 1000;
    int d_z = 1;
    double c = 0.5;
    double lambda = 30.0;
    int reps = 100;
    std::string k_cmi_text = "auto";
    int k_perm = 5;
    int num_surrogates = 1000;
    bool dependent = false;
    std::vector<std::string> sweeps;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    int workers = 0;
    double noise_amp = 1e-6;
};

struct BenchCombo {
    int n;
    int d_z;
    int k_cmi;  // 0 = auto
    int k_perm;
};

std::vector<BenchCombo> expand_combos(const BenchOptions& opt) {
    std::map<std::string, std::vector<long>> sweep;
    for (const auto& text : opt.sweeps) {
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("--sweep expects key=v1,v2,... got: " + text);
        }
        const std::string key = text.substr(0, eq);
        if (key != "k_cmi" && key != "k_perm" && key != "n" && key != "d_z") {
            throw std::invalid_argument("--sweep key must be one of k_cmi, k_perm, n, d_z");
        }
        std::vector<long> values;
        for (const auto& item : split_list(text.substr(eq + 1))) values.push_back(std::stol(item));
        if (values.empty()) {
            throw std::invalid_argument("--sweep " + key + " has no values");
        }
        sweep[key] = values;
    }

    auto axis = [&](const std::string& key, long base) {
        const auto it = sweep.find(key);
        return it != sweep.end() ? it->second : std::vector<long>{base};
    };
    const auto ns = axis("n", opt.n);
    const auto dzs = axis("d_z", opt.d_z);
    const auto kcs = axis("k_cmi", parse_k_cmi(opt.k_cmi_text));
    const auto kps = axis("k_perm", opt.k_perm);

    std::vector<BenchCombo> combos;
    for (long n : ns) {
        for (long dz : dzs) {
            for (long kc : kcs) {
                for (long kp : kps) {
                    combos.push_back(BenchCombo{static_cast<int>(n), static_cast<int>(dz),
                                                static_cast<int>(kc), static_cast<int>(kp)});
                }
            }
        }
    }
    return combos;
}

int cmd_bench(const BenchOptions& opt) {
    const ModelFamily family = parse_model_family(opt.model);
    const std::vector<BenchCombo> combos = expand_combos(opt);
    const int workers = default_workers(opt.workers);
    const std::vector<double> alphas{0.01, 0.05, 0.10};

    std::filesystem::create_directories(opt.out_dir);
    const std::string csv_path = (std::filesystem::path(opt.out_dir) / "results.csv").string();
    const std::string json_path = (std::filesystem::path(opt.out_dir) / "summary.json").string();

    std::vector<std::vector<std::string>> rows;
    json combo_summaries = json::array();

    for (std::size_t ci = 0; ci < combos.size(); ++ci) {
        const BenchCombo& combo = combos[ci];
        const std::uint64_t combo_seed = derive_seed(opt.seed, ci);

        std::vector<double> pvalues;
        std::vector<double> runtimes;
        int k_cmi_used = combo.k_cmi;

        for (int rep = 0; rep < opt.reps; ++rep) {
            ModelSpec spec;
            spec.family = family;
            spec.n = combo.n;
            spec.d_z = combo.d_z;
            spec.c = opt.c;
            spec.lambda = opt.lambda;
            spec.dependent = opt.dependent;
            spec.seed = derive_seed(combo_seed, static_cast<std::uint64_t>(2 * rep));
            const SyntheticData data = generate(spec);

            CITestConfig cfg;
            cfg.k_cmi = combo.k_cmi;
            cfg.k_perm = combo.k_perm;
            cfg.num_surrogates = opt.num_surrogates;
            cfg.seed = derive_seed(combo_seed, static_cast<std::uint64_t>(2 * rep + 1));
            cfg.noise_amp = opt.noise_amp;
            cfg.workers = workers;

            const auto started = std::chrono::steady_clock::now();
            const CITestResult result = ci_test(data.x, data.y, data.z, cfg);
            const double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

            k_cmi_used = result.config.k_cmi;
            pvalues.push_back(result.p_value);
            runtimes.push_back(elapsed);
            rows.push_back({opt.model, std::to_string(combo.n), std::to_string(combo.d_z),
                            format_double(opt.c), format_double(opt.lambda),
                            opt.dependent ? "1" : "0", std::to_string(result.config.k_cmi),
                            std::to_string(combo.k_perm), std::to_string(opt.num_surrogates),
                            std::to_string(rep), std::to_string(spec.seed),
                            std::to_string(cfg.seed), format_double(result.statistic),
                            format_double(result.p_value), format_double(elapsed)});
        }

        const ExperimentSummary summary =
            opt.dependent ? summarize({}, pvalues, alphas, runtimes)
                          : summarize(pvalues, {}, alphas, runtimes);

        json metrics;
        const std::uint64_t boot_seed = derive_seed(combo_seed, 0xb00757ULL);
        if (opt.dependent) {
            metrics["aupc"] = summary.aupc;
            if (pvalues.size() > 1) {
                metrics["aupc_se"] = bootstrap_se(
                    pvalues, [](std::span<const double> p) { return aupc(p); }, 1000, boot_seed);
            }
            json tpr;
            for (const auto& [alpha, rate] : summary.tpr_at) tpr[alpha_key(alpha)] = rate;
            metrics["tpr"] = tpr;
        } else {
            metrics["ks"] = summary.ks;
            if (pvalues.size() > 1) {
                metrics["ks_se"] = bootstrap_se(
                    pvalues, [](std::span<const double> p) { return ks_uniform(p); }, 1000,
                    boot_seed);
            }
            json fpr;
            for (const auto& [alpha, rate] : summary.fpr_at) fpr[alpha_key(alpha)] = rate;
            metrics["fpr"] = fpr;
        }

        double total = 0.0, lo = runtimes.front(), hi = runtimes.front();
        for (double t : runtimes) {
            total += t;
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
        combo_summaries.push_back(json{
            {"n", combo.n},
            {"d_z", combo.d_z},
            {"k_cmi", k_cmi_used},
            {"k_perm", combo.k_perm},
            {"B", opt.num_surrogates},
            {"reps", opt.reps},
            {"ground_truth", opt.dependent ? "dependent" : "independent"},
            {"metrics", metrics},
            {"runtime_seconds",
             {{"mean", total / static_cast<double>(runtimes.size())},
              {"min", lo},
              {"max", hi},
              {"total", total}}},
        });
    }

    write_csv(csv_path,
              {"model", "n", "d_z", "c", "lambda", "dependent", "k_cmi", "k_perm", "B", "rep",
               "data_seed", "test_seed", "statistic_nats", "p_value", "runtime_s"},
              rows);

    const json out{
        {"command", "bench"},
        {"model", opt.model},
        {"c", opt.c},
        {"lambda", opt.lambda},
        {"dependent", opt.dependent},
        {"master_seed", opt.seed},
        {"workers", workers},
        {"combos", combo_summaries},
        {"outputs", {{"results_csv", csv_path}, {"summary_json", json_path}}},
    };
    std::ofstream stream(json_path);
    if (!stream) {
        std::cerr << "error: cannot write " << json_path << "\n";
        return kExitUsage;
    }
    stream << out.dump(2) << "\n";
    std::cout << "wrote " << csv_path << " and " << json_path << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nearest-neighbor conditional mutual information CI testing"};
    app.require_subcommand(1);

    TestOptions test_opt;
    CLI::App* test = app.add_subcommand("test", "run one CI test on CSV data");
    test->add_option("--data", test_opt.data_path, "input CSV with a header row")->required();
    test->add_option("--x", test_opt.x_cols, "comma-separated X columns")->required();
    test->add_option("--y", test_opt.y_cols, "comma-separated Y columns")->required();
    test->add_option("--z", test_opt.z_cols, "comma-separated Z columns (empty: plain MI test)");
    test->add_option("--k-cmi", test_opt.k_cmi_text, "estimator neighbors, integer or 'auto'");
    test->add_option("--k-perm", test_opt.k_perm, "permutation neighborhood size");
    test->add_option("--b", test_opt.num_surrogates, "number of null surrogates");
    test->add_option("--seed", test_opt.seed, "master seed");
    test->add_option("--workers", test_opt.workers, "worker threads (env CMIKNN_WORKERS)");
    test->add_option("--noise-amp", test_opt.noise_amp, "tie-break noise amplitude");
    test->add_option("--na", test_opt.na_string, "missing-value sentinel (besides empty cells)");
    test->add_option("--out", test_opt.out_path, "output JSON path (default: stdout)");

    GenOptions gen_opt;
    CLI::App* gen = app.add_subcommand("gen", "write one synthetic realization as CSV");
    gen->add_option("--model", gen_opt.model,
                    "postnonlinear | postnonlinear_mult | sinusoidal | gaussian");
    gen->add_option("--n", gen_opt.n, "sample count");
    gen->add_option("--dz", gen_opt.d_z, "conditioning dimension");
    gen->add_option("--c", gen_opt.c, "dependence strength");
    gen->add_option("--lambda", gen_opt.lambda, "sinusoid frequency");
    gen->add_flag("--dependent", gen_opt.dependent, "generate the dependent (H1) case");
    gen->add_option("--seed", gen_opt.seed, "generator seed");
    gen->add_option("--out", gen_opt.out_path, "output CSV path")->required();

    BenchOptions bench_opt;
    CLI::App* bench = app.add_subcommand("bench", "repeated synthetic experiments with metrics");
    bench->add_option("--model", bench_opt.model,
                      "postnonlinear | postnonlinear_mult | sinusoidal | gaussian");
    bench->add_option("--n", bench_opt.n, "sample count");
    bench->add_option("--dz", bench_opt.d_z, "conditioning dimension");
    bench->add_option("--c", bench_opt.c, "dependence strength");
    bench->add_option("--lambda", bench_opt.lambda, "sinusoid frequency");
    bench->add_option("--reps", bench_opt.reps, "realizations per parameter combination");
    bench->add_option("--k-cmi", bench_opt.k_cmi_text, "estimator neighbors, integer or 'auto'");
    bench->add_option("--k-perm", bench_opt.k_perm, "permutation neighborhood size");
    bench->add_option("--b", bench_opt.num_surrogates, "surrogates per test");
    bench->add_flag("--dependent", bench_opt.dependent, "run the dependent (H1) case");
    bench->add_option("--sweep", bench_opt.sweeps,
                      "key=v1,v2,... over k_cmi, k_perm, n or d_z; repeatable");
    bench->add_option("--out-dir", bench_opt.out_dir, "output directory");
    bench->add_option("--seed", bench_opt.seed, "master seed");
    bench->add_option("--workers", bench_opt.workers, "worker threads (env CMIKNN_WORKERS)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*test) return cmd_test(test_opt);
        if (*gen) return cmd_gen(gen_opt);
        if (*bench) return cmd_bench(bench_opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
