#ifndef FAULTSCALE_CATALOG_HPP
#define FAULTSCALE_CATALOG_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "faultscale/resources.hpp"

namespace faultscale {

/// One instance-type row of the provider catalog.
struct InstanceType {
  std::string family;   // m5, t3, c5
  std::string size;     // large, xlarge, 2xlarge
  double cpu_perf_ghz = 0.0;
  ResourceVector specs;       // cpu: vCPU, memory: GB, disk_io: MB/s, network: Gbps
  bool has_disk_spec = false; // disk_io column is optional per row
  double hourly_cost = 0.0;   // USD/hour
  bool burstable = false;     // credit-based CPU (t3 family)

  std::string name() const { return family + "." + size; }
};

struct InstanceCatalog {
  std::vector<InstanceType> entries;

  const InstanceType* find(const std::string& family,
                           const std::string& size) const;
};

struct CatalogError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Grid search failed: no entry dominates the demand. Carries which
/// dimensions no catalog entry can satisfy.
struct UnsatisfiableDemandError : std::runtime_error {
  explicit UnsatisfiableDemandError(std::vector<ResourceKind> dims);
  std::vector<ResourceKind> violated_dimensions;
};

/// Parses a catalog document. Header:
///   family,size,cpu_perf_ghz,vcpu,memory_gb,network_gbps,cost_per_hour[,disk_mbps]
/// Rows may leave disk_mbps empty (dimension unavailable for that entry).
InstanceCatalog load_catalog(const std::string& document);
InstanceCatalog load_catalog_file(const std::string& path);

/// The built-in default catalog (nine entries across m5/t3/c5).
const InstanceCatalog& builtin_catalog();

/// Source text of the built-in catalog, in the document format above.
std::string builtin_catalog_csv();

/// Cheapest entry whose specs dominate the demand in every dimension the
/// entry provides. Ties on cost break by lexicographic (family, size).
/// Throws UnsatisfiableDemandError when no entry qualifies.
const InstanceType& grid_search(const InstanceCatalog& catalog,
                                const ResourceVector& demand);

/// Largest-spec entry (max vCPU, then memory, then network, then lowest
/// cost). Used as the fallback selection when grid_search is unsatisfiable.
const InstanceType& max_size_entry(const InstanceCatalog& catalog);

inline constexpr double kDefaultHoursPerMonth = 730.0;

/// hourly_cost x replicas x hours. Throws std::invalid_argument on
/// replicas < 1 or hours <= 0.
double monthly_cost(const InstanceType& instance, int replicas,
                    double hours_per_month = kDefaultHoursPerMonth);

}  // namespace faultscale

#endif
