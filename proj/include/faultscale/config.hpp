#ifndef FAULTSCALE_CONFIG_HPP
#define FAULTSCALE_CONFIG_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "faultscale/analysis.hpp"

namespace faultscale {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed();

/// Scenario configuration file: flat key = value pairs with [section]
/// blocks (nested sections use dots, e.g. [faults.syn]). '#' starts a
/// comment. Unknown keys are errors.
struct ScenarioConfig {
  std::string catalog_source = "builtin";  // "builtin" or a CSV path
  std::string output_dir = "out";
  bool strict = false;
  bool seeds_explicit = false;  // a seeds/seed key appeared in the file
  MatrixConfig matrix;          // catalog left empty until resolve()

  /// Loads the catalog (builtin or file) into matrix.catalog.
  void resolve();
};

ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config_file(const std::string& path);

/// Built-in default configuration (equivalent to parsing default_config_text()).
ScenarioConfig default_config();

/// The default configuration rendered in the config file format.
std::string default_config_text();

}  // namespace faultscale

#endif
