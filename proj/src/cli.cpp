#include "faultscale/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "faultscale/analysis.hpp"
#include "faultscale/config.hpp"
#include "faultscale/report_io.hpp"

namespace faultscale {

namespace {

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  out << content;
}

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(std::string("cannot open ") + what + ": " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct RunArgs {
  std::string config_path = "default";
  std::string faults, slos, policies, seeds;
  std::string out_dir, catalog;
  int jobs = 0;
  bool strict = false;
};

int cmd_run(const RunArgs& args) {
  ScenarioConfig config =
      (args.config_path.empty() || args.config_path == "default" ||
       args.config_path == "builtin")
          ? default_config()
          : load_config_file(args.config_path);

  if (!args.faults.empty()) {
    config.matrix.faults.clear();
    for (const auto& name : split_list(args.faults)) {
      config.matrix.faults.push_back(fault_kind_from_string(name));
    }
  }
  if (!args.slos.empty()) {
    config.matrix.slos.clear();
    for (const auto& name : split_list(args.slos)) {
      config.matrix.slos.push_back({name, slo_preset(name).target});
    }
  }
  if (!args.policies.empty()) {
    config.matrix.policies.clear();
    for (const auto& name : split_list(args.policies)) {
      config.matrix.policies.push_back(policy_from_string(name));
    }
  }
  if (!args.seeds.empty()) {
    config.matrix.seeds.clear();
    for (const auto& s : split_list(args.seeds)) {
      config.matrix.seeds.push_back(std::stoull(s));
    }
  }
  if (!args.out_dir.empty()) config.output_dir = args.out_dir;
  if (!args.catalog.empty()) config.catalog_source = args.catalog;
  if (args.jobs > 0) config.matrix.jobs = args.jobs;
  if (args.strict) config.strict = true;

  config.resolve();
  const auto reports = run_matrix(config.matrix);

  std::size_t errored = 0;
  for (const auto& r : reports) {
    if (r.error) ++errored;
  }
  if (errored > 0) {
    std::cerr << errored << " of " << reports.size()
              << " scenarios recorded errors\n";
    for (const auto& r : reports) {
      if (r.error) {
        std::cerr << "  " << to_string(r.fault) << "," << r.family << "."
                  << r.size << "," << r.slo_name << "," << to_string(r.policy)
                  << ": " << *r.error << "\n";
      }
    }
    if (config.strict) return 3;
  }

  const std::filesystem::path dir(config.output_dir);
  std::filesystem::create_directories(dir);
  write_file(dir / "report.csv", report_csv(reports));
  write_file(dir / "report.json", report_json(reports, config.matrix));
  write_file(dir / "fig2_vertical.csv", fig2_vertical_csv(reports));
  write_file(dir / "fig3_horizontal.csv", fig3_horizontal_csv(reports));
  write_file(dir / "fig4_cost.csv", fig4_cost_csv(reports));
  std::cout << "wrote " << (dir / "report.csv").string() << " (" << reports.size()
            << " rows) and figure data\n";
  return errored > 0 ? 3 : 0;
}

WorkloadProfile profile_from(const std::string& config_path) {
  if (config_path.empty() || config_path == "default" || config_path == "builtin") {
    return default_config().matrix.profile;
  }
  return load_config_file(config_path).matrix.profile;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Deterministic simulator of fault-distorted autoscaling decisions "
               "and their cost impact"};
  app.require_subcommand(1);

  // run
  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run the experiment matrix and write reports");
  run->add_option("--config", run_args.config_path,
                  "Scenario config file, or 'default' for the built-in one");
  run->add_option("--faults", run_args.faults, "Comma list: syn,udp,vol,rtr,disk,app");
  run->add_option("--slos", run_args.slos, "Comma list of SLO presets, e.g. slo85,slo50");
  run->add_option("--policies", run_args.policies, "Comma list: vertical,horizontal");
  run->add_option("--seeds", run_args.seeds, "Comma list of workload seeds")
      ->envname("FAULTSCALE_SEED");
  run->add_option("--out", run_args.out_dir, "Output directory (default from config)");
  run->add_option("--catalog", run_args.catalog, "Catalog CSV path or 'builtin'");
  run->add_option("--jobs", run_args.jobs, "Parallel scenario workers");
  run->add_flag("--strict", run_args.strict, "Per-scenario errors fail the run");

  // trace gen | import | apply-fault
  auto* trace = app.add_subcommand("trace", "Generate, validate or distort traces");
  trace->require_subcommand(1);

  struct {
    std::string out = "trace.csv";
    std::string config = "default";
    std::string seed;
    double duration = 0.0;
    double interval = 0.0;
  } gen_args;
  auto* gen = trace->add_subcommand("gen", "Generate a baseline workload trace");
  gen->add_option("--out", gen_args.out, "Output trace file");
  gen->add_option("--config", gen_args.config, "Config supplying the workload profile");
  gen->add_option("--seed", gen_args.seed, "Workload seed")->envname("FAULTSCALE_SEED");
  gen->add_option("--duration", gen_args.duration, "Trace duration in seconds");
  gen->add_option("--interval", gen_args.interval, "Sample interval in seconds");

  struct {
    std::string in;
    std::string out;
  } import_args;
  auto* import_cmd = trace->add_subcommand("import", "Validate (and rewrite) a trace file");
  import_cmd->add_option("--in", import_args.in, "Input trace file")->required();
  import_cmd->add_option("--out", import_args.out, "Optional normalized output file");

  struct {
    std::string in = "trace.csv";
    std::string out;
    std::string kind;
    std::string seed;
    double start = 750.0;
    double duration = 300.0;
    bool burstable = false;
    std::vector<std::string> params;
  } fault_args;
  auto* apply = trace->add_subcommand("apply-fault", "Apply a fault distortion to a trace");
  apply->add_option("--in", fault_args.in, "Input trace file");
  apply->add_option("--out", fault_args.out, "Output trace file (default trace_<kind>.csv)");
  apply->add_option("--kind", fault_args.kind, "Fault kind: syn udp vol rtr disk app")
      ->required();
  apply->add_option("--seed", fault_args.seed, "Jitter seed")->envname("FAULTSCALE_SEED");
  apply->add_option("--start", fault_args.start, "Activation window start (s)");
  apply->add_option("--duration", fault_args.duration, "Activation window duration (s)");
  apply->add_flag("--burstable", fault_args.burstable, "Damp CPU distortion (burstable target)");
  apply->add_option("--param", fault_args.params, "Override, e.g. --param saturation_level=0.9");

  // catalog list | validate
  auto* catalog_cmd = app.add_subcommand("catalog", "Inspect or validate instance catalogs");
  catalog_cmd->require_subcommand(1);

  struct {
    std::string source = "builtin";
    std::string family;
  } list_args;
  auto* list = catalog_cmd->add_subcommand("list", "Print catalog entries");
  list->add_option("--catalog", list_args.source, "Catalog CSV path or 'builtin'");
  list->add_option("--family", list_args.family, "Filter by family");

  std::string validate_path;
  auto* validate = catalog_cmd->add_subcommand("validate", "Validate a catalog CSV");
  validate->add_option("path", validate_path, "Catalog CSV path")->required();

  // report merge
  auto* report = app.add_subcommand("report", "Combine report files");
  report->require_subcommand(1);
  struct {
    std::vector<std::string> inputs;
    std::string out = "merged.csv";
    bool aggregate = false;
  } merge_args;
  auto* merge = report->add_subcommand("merge", "Merge report.csv files across runs");
  merge->add_option("inputs", merge_args.inputs, "report.csv files")->required();
  merge->add_option("--out", merge_args.out, "Merged output file");
  merge->add_flag("--aggregate", merge_args.aggregate,
                  "Emit mean/min/max per scenario group across seeds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (run->parsed()) return cmd_run(run_args);

    if (gen->parsed()) {
      WorkloadProfile profile = profile_from(gen_args.config);
      profile.seed = gen_args.seed.empty() ? default_seed() : std::stoull(gen_args.seed);
      if (gen_args.duration > 0.0) profile.duration_s = gen_args.duration;
      if (gen_args.interval > 0.0) profile.sample_interval_s = gen_args.interval;
      export_trace_file(generate_baseline(profile), gen_args.out);
      std::cout << "wrote " << gen_args.out << "\n";
      return 0;
    }

    if (import_cmd->parsed()) {
      MetricTrace t = import_trace(read_file(import_args.in, "trace file"));
      std::cout << import_args.in << ": " << t.sample_count() << " samples, interval "
                << t.sample_interval << " s"
                << (t.latency_ms ? ", with latency channel" : "") << "\n";
      if (!import_args.out.empty()) {
        export_trace_file(t, import_args.out);
        std::cout << "wrote " << import_args.out << "\n";
      }
      return 0;
    }

    if (apply->parsed()) {
      FaultScenario scenario;
      scenario.kind = fault_kind_from_string(fault_args.kind);
      scenario.window = {fault_args.start, fault_args.duration};
      scenario.seed = fault_args.seed.empty() ? default_seed()
                                              : std::stoull(fault_args.seed);
      for (const auto& kv : fault_args.params) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) {
          throw std::runtime_error("--param expects key=value, got '" + kv + "'");
        }
        scenario.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
      }
      MetricTrace in = import_trace(read_file(fault_args.in, "trace file"));
      MetricTrace out = apply_fault(in, scenario, fault_args.burstable);
      std::string out_path = fault_args.out.empty()
                                 ? "trace_" + fault_args.kind + ".csv"
                                 : fault_args.out;
      export_trace_file(out, out_path);
      std::cout << "wrote " << out_path << "\n";
      return 0;
    }

    if (list->parsed()) {
      const InstanceCatalog catalog = list_args.source == "builtin"
                                          ? builtin_catalog()
                                          : load_catalog_file(list_args.source);
      std::printf("%-8s %-8s %8s %5s %9s %12s %9s\n", "family", "size", "ghz",
                  "vcpu", "memory_gb", "network_gbps", "cost_usd");
      std::size_t shown = 0;
      for (const auto& e : catalog.entries) {
        if (!list_args.family.empty() && e.family != list_args.family) continue;
        std::printf("%-8s %-8s %8.1f %5.0f %9.0f %12.0f %9.3f\n", e.family.c_str(),
                    e.size.c_str(), e.cpu_perf_ghz, e.specs.cpu, e.specs.memory,
                    e.specs.network, e.hourly_cost);
        ++shown;
      }
      std::printf("%zu entries\n", shown);
      return 0;
    }

    if (validate->parsed()) {
      load_catalog_file(validate_path);
      std::cout << validate_path << ": ok\n";
      return 0;
    }

    if (merge->parsed()) {
      std::vector<std::string> docs;
      docs.reserve(merge_args.inputs.size());
      for (const auto& path : merge_args.inputs) {
        docs.push_back(read_file(path, "report file"));
      }
      write_file(merge_args.out, merge_report_csvs(docs, merge_args.aggregate));
      std::cout << "wrote " << merge_args.out << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace faultscale
