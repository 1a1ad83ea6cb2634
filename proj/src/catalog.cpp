#include "faultscale/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace faultscale {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_positive(const std::string& text, const std::string& what,
                      std::size_t row) {
  double v = 0.0;
  try {
    std::size_t pos = 0;
    v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw CatalogError("catalog row " + std::to_string(row) + ": bad " + what +
                       " value '" + text + "'");
  }
  if (!std::isfinite(v) || v <= 0.0) {
    throw CatalogError("catalog row " + std::to_string(row) + ": " + what +
                       " must be positive, got '" + text + "'");
  }
  return v;
}

constexpr const char* kHeaderNoDisk =
    "family,size,cpu_perf_ghz,vcpu,memory_gb,network_gbps,cost_per_hour";
constexpr const char* kHeaderWithDisk =
    "family,size,cpu_perf_ghz,vcpu,memory_gb,network_gbps,cost_per_hour,disk_mbps";

}  // namespace

UnsatisfiableDemandError::UnsatisfiableDemandError(std::vector<ResourceKind> dims)
    : std::runtime_error([&dims] {
        std::string msg = "demand unsatisfiable";
        if (!dims.empty()) {
          msg += " in dimension(s):";
          for (ResourceKind d : dims) msg += " " + std::string(to_string(d));
        }
        return msg;
      }()),
      violated_dimensions(std::move(dims)) {}

const InstanceType* InstanceCatalog::find(const std::string& family,
                                          const std::string& size) const {
  for (const auto& e : entries) {
    if (e.family == family && e.size == size) return &e;
  }
  return nullptr;
}

InstanceCatalog load_catalog(const std::string& document) {
  std::istringstream in(document);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    line = trim(line);
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  if (lines.empty()) throw CatalogError("empty catalog");

  const std::string header = lines.front();
  bool has_disk_column = false;
  if (header == kHeaderWithDisk) {
    has_disk_column = true;
  } else if (header != kHeaderNoDisk) {
    throw CatalogError("catalog header mismatch, expected '" +
                       std::string(kHeaderNoDisk) + "[,disk_mbps]'");
  }
  if (lines.size() == 1) throw CatalogError("empty catalog");

  InstanceCatalog catalog;
  std::set<std::pair<std::string, std::string>> seen;
  const std::size_t expected = has_disk_column ? 8 : 7;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto fields = split_csv_line(lines[i]);
    if (fields.size() != expected) {
      throw CatalogError("catalog row " + std::to_string(i) + ": expected " +
                         std::to_string(expected) + " fields, got " +
                         std::to_string(fields.size()));
    }
    InstanceType e;
    e.family = fields[0];
    e.size = fields[1];
    if (e.family.empty() || e.size.empty()) {
      throw CatalogError("catalog row " + std::to_string(i) +
                         ": family and size must be non-empty");
    }
    e.cpu_perf_ghz = parse_positive(fields[2], "cpu_perf_ghz", i);
    e.specs.cpu = parse_positive(fields[3], "vcpu", i);
    e.specs.memory = parse_positive(fields[4], "memory_gb", i);
    e.specs.network = parse_positive(fields[5], "network_gbps", i);
    e.hourly_cost = parse_positive(fields[6], "cost_per_hour", i);
    if (has_disk_column && !fields[7].empty()) {
      e.specs.disk_io = parse_positive(fields[7], "disk_mbps", i);
      e.has_disk_spec = true;
    }
    e.burstable = (e.family == "t3");
    if (!seen.insert({e.family, e.size}).second) {
      throw CatalogError("duplicate catalog entry " + e.name());
    }
    catalog.entries.push_back(std::move(e));
  }
  return catalog;
}

InstanceCatalog load_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CatalogError("cannot open catalog file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_catalog(buf.str());
}

std::string builtin_catalog_csv() {
  return "family,size,cpu_perf_ghz,vcpu,memory_gb,network_gbps,cost_per_hour\n"
         "m5,large,3.1,2,8,5,0.104\n"
         "m5,xlarge,3.1,4,16,5,0.208\n"
         "m5,2xlarge,3.1,8,32,5,0.416\n"
         "t3,large,3.1,2,8,10,0.118\n"
         "t3,xlarge,3.1,4,16,10,0.236\n"
         "t3,2xlarge,3.1,8,32,10,0.482\n"
         "c5,large,3.3,2,4,10,0.086\n"
         "c5,xlarge,3.3,4,8,10,0.172\n"
         "c5,2xlarge,3.3,8,16,10,0.344\n";
}

const InstanceCatalog& builtin_catalog() {
  static const InstanceCatalog catalog = load_catalog(builtin_catalog_csv());
  return catalog;
}

namespace {

bool dominates(const InstanceType& entry, const ResourceVector& demand) {
  if (entry.specs.cpu < demand.cpu) return false;
  if (entry.specs.memory < demand.memory) return false;
  if (entry.specs.network < demand.network) return false;
  // disk dimension only constrains entries that provide it
  if (entry.has_disk_spec && entry.specs.disk_io < demand.disk_io) return false;
  return true;
}

bool fails_dim(const InstanceType& entry, const ResourceVector& demand,
               ResourceKind dim) {
  if (dim == ResourceKind::DiskIo && !entry.has_disk_spec) return false;
  return entry.specs[dim] < demand[dim];
}

}  // namespace

const InstanceType& grid_search(const InstanceCatalog& catalog,
                                const ResourceVector& demand) {
  if (catalog.entries.empty()) throw CatalogError("empty catalog");
  require_valid(demand, "grid_search demand");

  const InstanceType* best = nullptr;
  for (const auto& entry : catalog.entries) {
    if (!dominates(entry, demand)) continue;
    if (best == nullptr || entry.hourly_cost < best->hourly_cost ||
        (entry.hourly_cost == best->hourly_cost &&
         std::pair(entry.family, entry.size) <
             std::pair(best->family, best->size))) {
      best = &entry;
    }
  }
  if (best != nullptr) return *best;

  std::vector<ResourceKind> violated;
  for (ResourceKind dim : kResourceKinds) {
    bool constrained = false;
    bool all_fail = true;
    for (const auto& entry : catalog.entries) {
      if (dim == ResourceKind::DiskIo && !entry.has_disk_spec) continue;
      constrained = true;
      if (!fails_dim(entry, demand, dim)) all_fail = false;
    }
    if (constrained && all_fail) violated.push_back(dim);
  }
  throw UnsatisfiableDemandError(std::move(violated));
}

const InstanceType& max_size_entry(const InstanceCatalog& catalog) {
  if (catalog.entries.empty()) throw CatalogError("empty catalog");
  const InstanceType* best = &catalog.entries.front();
  for (const auto& e : catalog.entries) {
    auto key = [](const InstanceType& x) {
      return std::tuple(x.specs.cpu, x.specs.memory, x.specs.network,
                        -x.hourly_cost, x.family, x.size);
    };
    if (key(e) > key(*best)) best = &e;
  }
  return *best;
}

double monthly_cost(const InstanceType& instance, int replicas,
                    double hours_per_month) {
  if (replicas < 1) throw std::invalid_argument("replicas must be >= 1");
  if (!(hours_per_month > 0.0) || !std::isfinite(hours_per_month)) {
    throw std::invalid_argument("hours_per_month must be positive");
  }
  return instance.hourly_cost * static_cast<double>(replicas) * hours_per_month;
}

}  // namespace faultscale
