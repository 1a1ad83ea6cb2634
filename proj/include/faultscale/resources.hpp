#ifndef FAULTSCALE_RESOURCES_HPP
#define FAULTSCALE_RESOURCES_HPP

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace faultscale {

/// The four resource dimensions an autoscaler observes and provisions.
enum class ResourceKind { Cpu, Memory, DiskIo, NetworkBandwidth };

inline constexpr std::array<ResourceKind, 4> kResourceKinds = {
    ResourceKind::Cpu, ResourceKind::Memory, ResourceKind::DiskIo,
    ResourceKind::NetworkBandwidth};

inline constexpr std::size_t kResourceCount = kResourceKinds.size();

constexpr std::size_t index_of(ResourceKind kind) {
  return static_cast<std::size_t>(kind);
}

std::string_view to_string(ResourceKind kind);
ResourceKind resource_kind_from_string(std::string_view name);

/// Per-resource quantities. Used both for capacities (vCPU, GB, MB/s, Gbps)
/// and for utilization fractions, depending on context.
struct ResourceVector {
  double cpu = 0.0;
  double memory = 0.0;
  double disk_io = 0.0;
  double network = 0.0;

  double& operator[](ResourceKind kind) {
    switch (kind) {
      case ResourceKind::Cpu: return cpu;
      case ResourceKind::Memory: return memory;
      case ResourceKind::DiskIo: return disk_io;
      case ResourceKind::NetworkBandwidth: return network;
    }
    throw std::logic_error("invalid ResourceKind");
  }

  double operator[](ResourceKind kind) const {
    switch (kind) {
      case ResourceKind::Cpu: return cpu;
      case ResourceKind::Memory: return memory;
      case ResourceKind::DiskIo: return disk_io;
      case ResourceKind::NetworkBandwidth: return network;
    }
    throw std::logic_error("invalid ResourceKind");
  }

  bool operator==(const ResourceVector&) const = default;

  /// All components non-negative and finite.
  bool valid() const;
};

/// Throws std::invalid_argument when a component is negative or non-finite.
void require_valid(const ResourceVector& v, std::string_view what);

}  // namespace faultscale

#endif
