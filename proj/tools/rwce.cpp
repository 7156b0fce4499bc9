// rwce: analyze, simulate, verify, and report on random walks whose edge
// weights change over time. Exit codes: 0 success, 1 a check failed,
// 2 invalid configuration, 3 walk left the truncation window.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <CLI11.hpp>

#include <rwce/config.hpp>
#include <rwce/report.hpp>
#include <rwce/verify.hpp>

namespace {

void write_file(const std::string& dir, const std::string& name,
                const std::string& body) {
  std::filesystem::create_directories(dir);
  const std::string path = dir + "/" + name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rwce::config_error("cannot write " + path);
  out << body;
  std::printf("wrote %s\n", path.c_str());
}

void emit(const rwce::Report& rep, const rwce::ExperimentConfig& cfg,
          const std::string& stem) {
  if (cfg.format == "csv") {
    if (rep.profile)
      write_file(cfg.out_dir, stem + "_profile.csv",
                 rwce::emit_profile_csv(*rep.profile));
    if (!rep.checks.empty())
      write_file(cfg.out_dir, stem + "_ledger.csv",
                 rwce::emit_ledger_csv(rep.checks));
  } else {
    write_file(cfg.out_dir, stem + ".json", rwce::emit_report_json(rep));
  }
}

rwce::Report base_report(const rwce::ExperimentConfig& cfg) {
  rwce::Report rep;
  rep.config = cfg;
  rep.config_hash = rwce::config_hash(cfg);
  rep.seed = cfg.seed;
  return rep;
}

int run_analyze(const rwce::ExperimentConfig& cfg) {
  rwce::Report rep = base_report(cfg);
  const rwce::GraphFamily fam = rwce::make_family(cfg);
  const rwce::WeightFn weights = rwce::make_weights(cfg);
  rep.profile = rwce::resistance_profile(fam, weights, cfg.radii);
  for (std::size_t i = 0; i < cfg.radii.size(); ++i) {
    rwce::Ball b = rwce::ball(fam, cfg.radii[i]);
    const double p = rwce::return_probability(b, rwce::make_config(b, weights));
    std::printf("radius %d: resistance %.12g, return probability %.12g\n",
                cfg.radii[i], rep.profile->values[i], p);
  }
  std::printf("profile verdict: %s\n", rep.profile->verdict.c_str());
  emit(rep, cfg, "analyze");
  return 0;
}

int run_simulate(const rwce::ExperimentConfig& cfg) {
  rwce::Report rep = rwce::detail::build_simulation_report(cfg);
  const auto& k = *rep.classification;
  std::printf("verdict: %s\n", k.verdict.c_str());
  std::printf("return frequency: %.6g over %ld trials (horizon %ld)\n",
              k.return_frequency, k.trials, k.horizon);
  emit(rep, cfg, "simulate");
  return 0;
}

int run_verify(const rwce::ExperimentConfig& cfg) {
  rwce::Report rep = base_report(cfg);
  rep.checks = rwce::run_full_verification(cfg);
  for (const auto& c : rep.checks)
    std::printf("[%s] %s: %s\n", c.pass ? "PASS" : "FAIL", c.id.c_str(),
                c.description.c_str());
  emit(rep, cfg, "verify");
  return rep.all_pass() ? 0 : 1;
}

int run_report(const rwce::ExperimentConfig& cfg) {
  rwce::Report rep = rwce::detail::build_simulation_report(cfg);
  rep.checks = rwce::run_full_verification(cfg);
  std::printf("verdict: %s; checks %s\n", rep.classification->verdict.c_str(),
              rep.all_pass() ? "all pass" : "FAILED");
  emit(rep, cfg, "report");
  return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"laboratory for random walks in changing environments"};
  app.require_subcommand(1);

  std::string config_path, out_dir, format;
  std::uint64_t seed = 0;
  bool seed_set = false;
  for (const char* name : {"analyze", "simulate", "verify", "report"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "experiment config (JSON)")
        ->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "override the configured seed")
        ->each([&](const std::string&) { seed_set = true; });
    sub->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  }

  CLI11_PARSE(app, argc, argv);

  try {
    rwce::ExperimentConfig cfg = rwce::load_config(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (seed_set) cfg.seed = seed;
    if (!format.empty()) cfg.format = format;
    rwce::validate(cfg);

    const std::string cmd = app.get_subcommands()[0]->get_name();
    if (cmd == "analyze") return run_analyze(cfg);
    if (cmd == "simulate") return run_simulate(cfg);
    if (cmd == "verify") return run_verify(cfg);
    return run_report(cfg);
  } catch (const rwce::config_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const rwce::truncation_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
