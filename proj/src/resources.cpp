#include "faultscale/resources.hpp"

#include <cmath>

namespace faultscale {

std::string_view to_string(ResourceKind kind) {
  switch (kind) {
    case ResourceKind::Cpu: return "cpu";
    case ResourceKind::Memory: return "memory";
    case ResourceKind::DiskIo: return "disk_io";
    case ResourceKind::NetworkBandwidth: return "network";
  }
  throw std::logic_error("invalid ResourceKind");
}

ResourceKind resource_kind_from_string(std::string_view name) {
  for (ResourceKind kind : kResourceKinds) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown resource kind: " + std::string(name));
}

bool ResourceVector::valid() const {
  for (ResourceKind kind : kResourceKinds) {
    double v = (*this)[kind];
    if (!std::isfinite(v) || v < 0.0) return false;
  }
  return true;
}

void require_valid(const ResourceVector& v, std::string_view what) {
  if (!v.valid()) {
    throw std::invalid_argument(std::string(what) +
                                ": components must be non-negative and finite");
  }
}

}  // namespace faultscale
