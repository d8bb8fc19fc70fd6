// magnon-lab: command-line runner for the concurrence experiments.
//
//   magnon-lab <experiment> [--config FILE] [--key value ...] [--out DIR] [--seed INT] [--svg]
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure, 1 I/O error.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "magnon/lab/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

unsigned thread_cap() {
  const char* env = std::getenv("MAGNON_LAB_THREADS");
  if (!env || !*env) return 0;
  const auto v = magnon::lab::detail::to_unsigned(env);
  if (!v) throw magnon::lab::ConfigError("MAGNON_LAB_THREADS", "expected a non-negative integer");
  return static_cast<unsigned>(*v);
}

// Turns leftover "--key value" and "--key=value" tokens into overrides.
std::vector<std::pair<std::string, std::string>> parse_overrides(const std::vector<std::string>& extras) {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& tok = extras[i];
    if (tok.rfind("--", 0) != 0 || tok.size() < 3) throw magnon::lab::ConfigError("", "unexpected argument '" + tok + "'");
    const std::string body = tok.substr(2);
    if (const auto eq = body.find('='); eq != std::string::npos) {
      out.emplace_back(body.substr(0, eq), body.substr(eq + 1));
      continue;
    }
    if (i + 1 >= extras.size()) throw magnon::lab::ConfigError(body, "missing value");
    out.emplace_back(body, extras[++i]);
  }
  return out;
}

std::string experiment_list() {
  std::string s;
  for (auto e : magnon::lab::kAllExperiments) s += std::string(s.empty() ? "" : ", ") + magnon::lab::to_string(e);
  return s;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concurrence experiments on Harper and kicked Harper chains"};
  app.allow_extras();
  std::string experiment_name;
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  bool svg = false;
  app.add_option("experiment", experiment_name, "one of: " + experiment_list())->required();
  app.add_option("--config", config_path, "key=value configuration file");
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--seed", seed, "master random seed");
  app.add_flag("--svg", svg, "also write SVG plots");
  app.footer("Any other --key value pair overrides a configuration key; later values win.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    const auto experiment = magnon::lab::parse_experiment(experiment_name);
    if (!experiment)
      throw magnon::lab::ConfigError("experiment", "unknown experiment '" + experiment_name + "' (expected " + experiment_list() + ")");
    magnon::lab::ExperimentConfig config(*experiment);
    if (!config_path.empty()) config.merge_file(config_path);
    for (const auto& [k, v] : parse_overrides(app.remaining())) config.set(k, v);
    if (seed) config.set("seed", std::to_string(*seed));

    magnon::lab::RunOptions options;
    options.threads = thread_cap();
    const auto output = magnon::lab::run(config, options);
    for (const auto& path : magnon::lab::write_outputs(output, out_dir, svg)) std::cout << path.string() << '\n';
    return kExitOk;
  } catch (const magnon::lab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const magnon::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const magnon::Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}
