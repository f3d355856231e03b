#pragma once

#include <string_view>

namespace casimir {

enum class UnitKind {
  energy,             // L^-1
  energy_per_length,  // L^-2
  energy_per_area,    // L^-3
};

constexpr std::string_view unit_label(UnitKind kind) {
  switch (kind) {
    case UnitKind::energy: return "L^-1";
    case UnitKind::energy_per_length: return "L^-2";
    case UnitKind::energy_per_area: return "L^-3";
  }
  return "?";
}

constexpr std::string_view unit_name(UnitKind kind) {
  switch (kind) {
    case UnitKind::energy: return "energy";
    case UnitKind::energy_per_length: return "energy_per_length";
    case UnitKind::energy_per_area: return "energy_per_area";
  }
  return "?";
}

}  // namespace casimir
