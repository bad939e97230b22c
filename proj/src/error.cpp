#include "cosmicrng/error.hpp"

namespace cosmicrng {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Duplicate: return "duplicate";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::NotFound: return "not-found";
    case ErrorKind::Geometry: return "geometry";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::Ordering: return "ordering";
    case ErrorKind::Range: return "range";
    case ErrorKind::EmptyData: return "empty-data";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Length: return "length";
    case ErrorKind::Shape: return "shape";
    case ErrorKind::Underdetermined: return "underdetermined";
    case ErrorKind::Division: return "division";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace cosmicrng
